#include "hardy/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hardy/kernels.hpp"

namespace hardy {

SignPattern::SignPattern(std::vector<double> z_) : z(std::move(z_)) {
    if (z.empty()) throw Error("sign pattern must be nonempty");
    double l1 = 0.0;
    bool any = false;
    for (double zi : z) {
        l1 += std::fabs(zi);
        any = any || zi != 0.0;
    }
    if (!any) throw Error("sign pattern must not be all zero");
    if (std::fabs(l1 - 1.0) > 1e-12)
        throw Error("sign pattern must have unit l1 norm");
}

SignPattern SignPattern::constant(int n) {
    std::vector<double> z(static_cast<std::size_t>(n) + 1, 0.0);
    z.back() = 1.0;
    return SignPattern(std::move(z));
}

SignPattern SignPattern::alternating(int n) {
    std::vector<double> z(static_cast<std::size_t>(n) + 1);
    const double w = 1.0 / static_cast<double>(n + 1);
    for (std::size_t i = 0; i < z.size(); ++i)
        z[i] = (i % 2 == 0) ? w : -w;
    return SignPattern(std::move(z));
}

SignPattern SignPattern::from_breakpoints(const std::vector<double>& t) {
    std::vector<double> z;
    double prev = 0.0;
    int sign = 1;
    for (double ti : t) {
        if (!(ti > prev && ti < 1.0))
            throw Error("breakpoints must be strictly increasing in (0,1)");
        z.push_back(sign * (ti - prev));
        prev = ti;
        sign = -sign;
    }
    z.push_back(sign * (1.0 - prev));
    return SignPattern(std::move(z));
}

std::vector<double> SignPattern::breakpoints() const {
    std::vector<double> t;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        acc += std::fabs(z[i]);
        t.push_back(acc);
    }
    return t;
}

SampledFunction initial_sign_function(const ProblemSpec& spec,
                                      const SignPattern& z) {
    const Interval& iv = spec.interval();
    // Cumulative block edges rescaled to [a,b]; zero-width blocks skipped.
    std::vector<double> edges{iv.a};
    for (double zi : z.z)
        edges.push_back(edges.back() + std::fabs(zi) * iv.length());
    edges.back() = iv.b;

    SampledFunction f0(spec.grid);
    std::size_t j = 0;
    for (std::size_t i = 0; i < f0.size(); ++i) {
        const double x = spec.grid->node(i);
        while (j + 1 < z.z.size() && x >= edges[j + 1]) ++j;
        f0[i] = z.z[j] > 0.0 ? 1.0 : (z.z[j] < 0.0 ? -1.0 : 0.0);
    }
    return f0;
}

IterateStep iterate_once(const ProblemSpec& spec, const SampledFunction& f_k) {
    SampledFunction g = apply_T(spec, f_k);
    if (lp_norm(g, spec.q) == 0.0)
        throw ZeroImage("T f vanished for nonzero f");
    SampledFunction raw =
        signed_power(apply_T_star(spec, signed_power(g, spec.q)),
                     spec.p_conj());
    const double m = lp_norm(raw, spec.p);
    if (m == 0.0) throw ZeroImage("iterate collapsed to zero");
    SampledFunction f_next(spec.grid);
    kernels::scale(raw.values, 1.0 / m, f_next.values);
    // f_{k+1} = (lambda_k T*((g_k)_(q)))_(p') with ||f_{k+1}||_p = 1 forces
    // lambda_k^{p'-1} * m = 1, i.e. lambda_k = m^{-(p-1)}.
    const double lambda = std::pow(m, -(spec.p - 1.0));
    return {std::move(g), std::move(f_next), lambda};
}

std::pair<SpectralTriple, IterationTrace> run_iteration(
    const ProblemSpec& spec, const SampledFunction& f0,
    const IterationOptions& opts) {
    if (!(opts.tol > 0.0)) throw Error("tolerance must be positive");

    IterationTrace trace;
    SampledFunction f = f0;
    const double nf0 = lp_norm(f, spec.p);
    if (nf0 == 0.0) throw ZeroImage("zero initial function");
    kernels::scale(f0.values, 1.0 / nf0, f.values);

    SampledFunction g(spec.grid);
    double lambda = 0.0, lambda_prev = -1.0;
    int flat = 0;
    for (int k = 0; k < opts.max_iter; ++k) {
        IterateStep step = iterate_once(spec, f);
        g = std::move(step.g);
        lambda = step.lambda;
        f = std::move(step.f_next);
        ++trace.iterations;
        if (opts.record_trace) {
            trace.lambdas.push_back(lambda);
            trace.g_norms.push_back(lp_norm(g, spec.q));
        }
        if (lambda_prev > 0.0) {
            const double delta = std::fabs(lambda - lambda_prev);
            if (delta <= opts.tol * lambda) {
                trace.converged = true;
                trace.stop_reason = StopReason::tol_met;
                break;
            }
            if (delta < opts.stagnation_rel * lambda) {
                if (++flat >= opts.stagnation_steps) {
                    trace.stop_reason = StopReason::stagnation;
                    break;
                }
            } else {
                flat = 0;
            }
        }
        lambda_prev = lambda;
    }
    if (!trace.converged && trace.stop_reason == StopReason::max_iter &&
        opts.throw_on_failure)
        throw NotConverged("iteration hit max_iter without meeting tol");

    SpectralTriple triple;
    // Final consistent pass: g paired with the final normalized f.
    triple.g = apply_T(spec, f);
    triple.f = std::move(f);
    triple.lambda = lambda;
    triple.nodal_count = count_zeros(triple.g);
    triple.residual_value = residual(spec, triple);
    return {std::move(triple), std::move(trace)};
}

double residual(const ProblemSpec& spec, const SpectralTriple& triple) {
    SampledFunction lhs = signed_power(triple.f, spec.p);
    SampledFunction rhs = apply_T_star(
        spec, signed_power(apply_T(spec, triple.f), spec.q));
    SampledFunction defect(spec.grid);
    kernels::axpy(lhs.values, -triple.lambda, rhs.values, defect.values);
    const double denom = lp_norm(lhs, spec.p_conj());
    return denom == 0.0 ? 0.0 : lp_norm(defect, spec.p_conj()) / denom;
}

DualPair dual_transform(const ProblemSpec& spec, const SpectralTriple& triple) {
    DualPair d{signed_power(apply_T(spec, triple.f), spec.q),
               signed_power(triple.lambda, spec.p_conj())};
    return d;
}

double dual_residual(const ProblemSpec& spec, const DualPair& dual) {
    SampledFunction lhs = signed_power(dual.s, spec.q_conj());
    SampledFunction rhs = apply_T(
        spec, signed_power(apply_T_star(spec, dual.s), spec.p_conj()));
    SampledFunction defect(spec.grid);
    kernels::axpy(lhs.values, -dual.lambda_star, rhs.values, defect.values);
    const double denom = lp_norm(lhs, spec.q_conj());
    return denom == 0.0 ? 0.0 : lp_norm(defect, spec.q_conj()) / denom;
}

} // namespace hardy
