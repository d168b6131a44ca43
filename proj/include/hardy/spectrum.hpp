#ifndef HARDY_SPECTRUM_HPP
#define HARDY_SPECTRUM_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "hardy/iteration.hpp"

namespace hardy {

enum class SearchMode { max, min };

struct SearchConfig {
    int n = 0;
    SearchMode mode = SearchMode::max;
    int starts = 16;
    std::uint64_t rng_seed = 0;
    double inner_tol = 1e-10;
    double outer_tol = 1e-4;   // breakpoint step below which search stops
    int max_outer = 60;        // objective evaluations per start
    int max_inner_iter = 5000;

    void validate() const;
};

struct SpectrumResult {
    int n = 0;
    double lambda_extreme = 0.0;
    SpectralTriple best_triple;
    std::vector<std::pair<double, SignPattern>> all_found; // distinct lambdas
    int starts_used = 0;
    int starts_converged = 0;
};

// Locates a spectral triple whose g has exactly n interior zeros. Uses
// the shooting form of the system (zero-count scan and bisection in
// lambda), then polishes with the fixed-point iteration; the pattern z0
// seeds a plain-iteration fallback when the scan finds nothing. Throws
// NodalCountMissed when both fail.
SpectralTriple find_spectral_triple(const ProblemSpec& spec, int n,
                                    const SignPattern& z0,
                                    const SearchConfig& config);

// Estimate of lambda-hat_n (mode=max) or lambda-check_n (mode=min) over
// all nodal-class-n spectral numbers found by the lambda scan; `starts`
// scales the scan density, so the found set is nondecreasing in it.
// Deterministic for fixed flags.
SpectrumResult lambda_extremes(const ProblemSpec& spec,
                               const SearchConfig& config);

// Both sides of the sign-change comparison
//   P(Tf1 - eps Tf2) <= P(Tf1 - eps^{(p-1)/(q-1)} (l2/l1)^{1/(q-1)} Tf2).
std::pair<int, int> sign_change_comparison(const ProblemSpec& spec,
                                           const SpectralTriple& t1,
                                           const SpectralTriple& t2,
                                           double eps);

// ||T: Lp -> Lq|| = lambda-hat_0^{-1/q} via the n=0 search.
double operator_norm_estimate(const ProblemSpec& spec);

} // namespace hardy

#endif
