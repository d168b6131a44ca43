#ifndef HARDY_ITERATION_HPP
#define HARDY_ITERATION_HPP

#include <vector>

#include "hardy/operator.hpp"

namespace hardy {

// Point on the l1 sphere O_n: n+1 block weights with sum |z_i| = 1.
struct SignPattern {
    std::vector<double> z;

    explicit SignPattern(std::vector<double> z_);

    static SignPattern constant(int n);            // (0,...,0,1)
    static SignPattern alternating(int n);         // z_i = (-1)^i/(n+1)
    // Alternating signs with block widths given by interior breakpoints
    // 0 < t_1 < ... < t_n < 1 of the cumulative |z| sums.
    static SignPattern from_breakpoints(const std::vector<double>& t);
    std::vector<double> breakpoints() const;
};

struct SpectralTriple {
    SampledFunction g;
    SampledFunction f;
    double lambda = 0.0;
    int nodal_count = 0;
    double residual_value = 0.0;
};

enum class StopReason { tol_met, max_iter, stagnation };

struct IterationTrace {
    std::vector<double> lambdas;
    std::vector<double> g_norms;
    int iterations = 0;
    bool converged = false;
    StopReason stop_reason = StopReason::max_iter;
};

struct IterationOptions {
    double tol = 1e-12;
    int max_iter = 10000;
    // plateau: lambda moves < stagnation_rel for stagnation_steps in a row
    double stagnation_rel = 1e-15;
    int stagnation_steps = 50;
    bool record_trace = true;
    bool throw_on_failure = false; // NotConverged on max_iter without tol
};

// Piecewise-constant sgn(z_j) on blocks of width |z_j|*(b-a).
SampledFunction initial_sign_function(const ProblemSpec& spec,
                                      const SignPattern& z);

struct IterateStep {
    SampledFunction g;      // g_k = T f_k
    SampledFunction f_next; // normalized
    double lambda;          // lambda_k
};

// One step of the fixed-point scheme:
//   g_k = T f_k,  f_{k+1} = (lambda_k T*((g_k)_(q)))_(p'),  ||f_{k+1}||_p = 1.
IterateStep iterate_once(const ProblemSpec& spec, const SampledFunction& f_k);

std::pair<SpectralTriple, IterationTrace> run_iteration(
    const ProblemSpec& spec, const SampledFunction& f0,
    const IterationOptions& opts = {});

// Relative defect of (f)_(p) = lambda T*((Tf)_(q)) in L_{p'}.
double residual(const ProblemSpec& spec, const SpectralTriple& triple);

struct DualPair {
    SampledFunction s;
    double lambda_star;
};

// s = (Tf)_(q), lambda* = lambda_(p'); satisfies the dual equation
// (s)_(q') = lambda* T((T*s)_(p')).
DualPair dual_transform(const ProblemSpec& spec, const SpectralTriple& triple);

// Relative defect of the dual equation for a given dual pair.
double dual_residual(const ProblemSpec& spec, const DualPair& dual);

} // namespace hardy

#endif
