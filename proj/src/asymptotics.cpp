#include "hardy/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace hardy {

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
    // Lanczos, g = 7, 9 terms.
    static const double kCoef[] = {
        0.99999999999980993,     676.5203681218851,    -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,  12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double a = kCoef[0];
    for (int i = 1; i < 9; ++i) a += kCoef[i] / (z + static_cast<double>(i));
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t +
           std::log(a);
}

double beta_function(double a, double b) {
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double constant_cpq(double p, double q) {
    validate_exponent(p, "p");
    validate_exponent(q, "q");
    const double pc = conjugate_exponent(p);
    return std::pow(pc, 1.0 / q) * std::pow(q, 1.0 / pc) *
           std::pow(pc + q, 1.0 / p - 1.0 / q) /
           (2.0 * beta_function(1.0 / q, 1.0 / pc));
}

double pi_p(double p) {
    return 2.0 * M_PI / (p * std::sin(M_PI / p));
}

namespace {
double uv_pow_integral(const ProblemSpec& spec, double e) {
    const auto& u = spec.weights.samples_u;
    const auto& v = spec.weights.samples_v;
    const auto& w = spec.grid->quad_weights();
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        s += w[i] * std::pow(u[i] * v[i], e);
    return s;
}
} // namespace

double weight_integral(const ProblemSpec& spec) {
    const double r = spec.r();
    return std::pow(uv_pow_integral(spec, r), 1.0 / r);
}

double weight_integral_alt(const ProblemSpec& spec) {
    const double r = spec.r();
    return std::pow(uv_pow_integral(spec, 1.0 / r), r);
}

AsymptoticsReport asymptote_report(
    const ProblemSpec& spec, std::vector<std::pair<int, double>> lambdas) {
    if (lambdas.size() < 4)
        throw InsufficientData("asymptote report needs at least 4 rows");
    std::sort(lambdas.begin(), lambdas.end());

    AsymptoticsReport rep;
    for (const auto& [n, lam] : lambdas)
        rep.rows.push_back(
            {n, lam, static_cast<double>(n) * std::pow(lam, -1.0 / spec.q)});

    rep.c_pq = constant_cpq(spec.p, spec.q);
    rep.weight_integral_value = weight_integral(spec);
    rep.predicted_limit = rep.c_pq * rep.weight_integral_value;

    // Two-point Richardson on s_n = L + c/n using the last two rows with
    // n >= 1: L = (n2 s2 - n1 s1) / (n2 - n1).
    const AsymptoticsRow* r1 = nullptr;
    const AsymptoticsRow* r2 = nullptr;
    for (const auto& row : rep.rows) {
        if (row.n < 1) continue;
        r1 = r2;
        r2 = &row;
    }
    if (!r1 || !r2 || r1->n == r2->n)
        throw InsufficientData("need two distinct rows with n >= 1");
    rep.extrapolated_limit =
        (r2->n * r2->n_lambda_pow - r1->n * r1->n_lambda_pow) /
        static_cast<double>(r2->n - r1->n);
    rep.relative_gap = std::fabs(rep.extrapolated_limit - rep.predicted_limit) /
                       rep.predicted_limit;
    return rep;
}

} // namespace hardy
