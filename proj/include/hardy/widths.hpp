#ifndef HARDY_WIDTHS_HPP
#define HARDY_WIDTHS_HPP

#include "hardy/spectrum.hpp"

namespace hardy {

struct WidthsReport {
    int n = 0;
    double kolmogorov_lb = 0.0;
    double bernstein_val = 0.0;
    double approx_ub = 0.0;
    double lambda_hat = 0.0;
    double lambda_check = 0.0;
    double lambda_hat_pow = 0.0;   // lambda-hat^{-1/q}
    double lambda_check_pow = 0.0; // lambda-check^{-1/q}
    double union_max_pow = 0.0;    // (max over sp_0..sp_n)^{-1/q}
};

// Lower-bound estimate for d_n(T): minimum q-norm over two odd continuous
// images of the l1 sphere O_n inside T(unit ball) — sampled step patterns
// pushed through k_iters iteration steps, and the refined minimum of
// ||Tf||_q over the normalized span of the class-0..n spectral functions.
double kolmogorov_lower_bound(const ProblemSpec& spec, int n, int k_iters,
                              int samples, std::uint64_t rng_seed);

// Buslaev span value: split the triple's g at its zeros, f likewise, and
// take the exact infimum over coefficients of ||sum a_i g_i||_q /
// ||sum a_i f_i||_p via the disjoint-support reduction.
double bernstein_value(const ProblemSpec& spec, const SpectralTriple& triple);

// sup ||(T - T_n) f||_q over the unit ball, T_n the rank-n approximant
// anchored at the zeros of the triple's g; an upper-bound estimate for
// a_n(T).
double approximation_upper_bound(const ProblemSpec& spec,
                                 const SpectralTriple& triple);

WidthsReport widths_report(const ProblemSpec& spec, int n,
                           const SearchConfig& config);

} // namespace hardy

#endif
