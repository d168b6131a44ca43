#ifndef HARDY_ASYMPTOTICS_HPP
#define HARDY_ASYMPTOTICS_HPP

#include <vector>

#include "hardy/operator.hpp"

namespace hardy {

// Lanczos approximation; relative accuracy better than 1e-13 on (0, 20].
double log_gamma(double x);
double beta_function(double a, double b);

// c_{pq} = (p')^{1/q} q^{1/p'} (p'+q)^{1/p-1/q} / (2 B(1/q, 1/p'))
double constant_cpq(double p, double q);

// Generalized half-period pi_p = 2*pi / (p sin(pi/p)).
double pi_p(double p);

// (int_I (uv)^r dt)^{1/r} with r = 1/p' + 1/q.
double weight_integral(const ProblemSpec& spec);
// The alternative reading (int_I (uv)^{1/r} dt)^r, reported alongside in
// verbose output; the two coincide when r = 1.
double weight_integral_alt(const ProblemSpec& spec);

struct AsymptoticsRow {
    int n;
    double lambda;
    double n_lambda_pow; // n * lambda^{-1/q}
};

struct AsymptoticsReport {
    std::vector<AsymptoticsRow> rows; // sorted by n
    double c_pq = 0.0;
    double weight_integral_value = 0.0;
    double predicted_limit = 0.0;    // c_pq * weight integral
    double extrapolated_limit = 0.0; // Richardson on the last rows
    double relative_gap = 0.0;
};

// Needs at least 4 rows; extrapolates s_n = L + c/n from the last two rows
// with n >= 1.
AsymptoticsReport asymptote_report(const ProblemSpec& spec,
                                   std::vector<std::pair<int, double>> lambdas);

} // namespace hardy

#endif
