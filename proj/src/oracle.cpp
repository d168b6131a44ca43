#include "hardy/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hardy {

void ShootingConfig::validate() const {
    if (ode_steps < 1000) throw Error("ode_steps must be >= 1000");
    if (!(lambda_lo > 0.0 && lambda_lo < lambda_hi))
        throw Error("lambda bracket requires 0 < lo < hi");
    if (!(bracket_tol > 0.0)) throw Error("bracket_tol must be positive");
}

double classical_eigen_p2(int n, const Interval& interval) {
    if (n < 0) throw Error("nodal count must be >= 0");
    const double k = (static_cast<double>(n) + 0.5) * M_PI / interval.length();
    return k * k;
}

namespace {

struct ShotResult {
    int zero_count;    // sign changes of y on (a, b]
    double fp_norm;    // ||w'||_p along the trajectory
};

// RK4 on w' = (y)_(p'), y' = -lambda (w)_(q) from (w,y)(a) = (0,1).
ShotResult shoot(double p, double q, double lambda, const Interval& iv,
                 int steps) {
    const double pc = conjugate_exponent(p);
    const double h = iv.length() / static_cast<double>(steps);
    auto dw = [&](double y) { return signed_power(y, pc); };
    auto dy = [&](double w) { return -lambda * signed_power(w, q); };

    double w = 0.0, y = 1.0;
    int zeros = 0;
    double prev_y = y;
    double fp_sum = 0.0;
    double prev_fp = std::pow(std::fabs(dw(y)), p);
    for (int i = 0; i < steps; ++i) {
        const double k1w = dw(y), k1y = dy(w);
        const double k2w = dw(y + 0.5 * h * k1y), k2y = dy(w + 0.5 * h * k1w);
        const double k3w = dw(y + 0.5 * h * k2y), k3y = dy(w + 0.5 * h * k2w);
        const double k4w = dw(y + h * k3y), k4y = dy(w + h * k3w);
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        if ((prev_y > 0.0 && y <= 0.0) || (prev_y < 0.0 && y >= 0.0)) ++zeros;
        if (y != 0.0) prev_y = y;
        const double fp = std::pow(std::fabs(dw(y)), p);
        fp_sum += 0.5 * h * (prev_fp + fp);
        prev_fp = fp;
    }
    return {zeros, std::pow(fp_sum, 1.0 / p)};
}

} // namespace

double shoot_pq_laplacian(double p, double q, int n, const Interval& interval,
                          const ShootingConfig& config) {
    validate_exponent(p, "p");
    validate_exponent(q, "q");
    if (n < 0) throw Error("nodal count must be >= 0");
    config.validate();

    // lambda_n is the threshold where the count of zeros of y on (a,b]
    // reaches n+1; there y(b) = 0 with n interior zeros of w'.
    auto reached = [&](double lam) {
        return shoot(p, q, lam, interval, config.ode_steps).zero_count >= n + 1;
    };

    double lo = config.lambda_lo, hi = config.lambda_hi;
    int guard = 0;
    while (reached(lo)) {
        lo *= 0.5;
        if (++guard > 200) throw BracketFailed("lower bracket did not clear");
    }
    guard = 0;
    while (!reached(hi)) {
        hi *= 2.0;
        if (++guard > 200) throw BracketFailed("upper bracket not found");
    }
    while ((hi - lo) > config.bracket_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        (reached(mid) ? hi : lo) = mid;
    }
    const double lambda_ode = 0.5 * (lo + hi);

    // Rescale to the ||f||_p = 1 convention: w -> w/eta maps lambda to
    // lambda * eta^{q-p}.
    const double eta =
        shoot(p, q, lambda_ode, interval, config.ode_steps).fp_norm;
    return lambda_ode * std::pow(eta, q - p);
}

namespace {

using Vec = std::vector<double>;

double dot_w(const Vec& a, const Vec& b, const Vec& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
    return s;
}

// Jacobi eigenvalue iteration for a small dense symmetric matrix.
std::vector<double> symmetric_eigenvalues(std::vector<Vec> m) {
    const std::size_t k = m.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) off += m[i][j] * m[i][j];
        if (off < 1e-30) break;
        for (std::size_t pi = 0; pi < k; ++pi)
            for (std::size_t qi = pi + 1; qi < k; ++qi) {
                if (std::fabs(m[pi][qi]) < 1e-300) continue;
                const double theta =
                    0.5 * std::atan2(2.0 * m[pi][qi], m[qi][qi] - m[pi][pi]);
                const double c = std::cos(theta), s = std::sin(theta);
                for (std::size_t r = 0; r < k; ++r) {
                    const double a = m[r][pi], b = m[r][qi];
                    m[r][pi] = c * a - s * b;
                    m[r][qi] = s * a + c * b;
                }
                for (std::size_t r = 0; r < k; ++r) {
                    const double a = m[pi][r], b = m[qi][r];
                    m[pi][r] = c * a - s * b;
                    m[qi][r] = s * a + c * b;
                }
            }
    }
    std::vector<double> ev(k);
    for (std::size_t i = 0; i < k; ++i) ev[i] = m[i][i];
    return ev;
}

} // namespace

std::vector<double> svd_eigen_p2(const ProblemSpec& spec, int count) {
    if (spec.p != 2.0 || spec.q != 2.0)
        throw NotApplicable("singular-value oracle requires p = q = 2");
    if (count < 1) throw Error("count must be >= 1");
    if (spec.grid->size() > 4097)
        throw ResourceLimit("oracle limited to grids of <= 4097 nodes");

    const std::size_t n = spec.grid->size();
    const auto& w = spec.grid->quad_weights();
    const std::size_t k =
        std::min<std::size_t>(n, static_cast<std::size_t>(count) + 8);

    // Subspace iteration on T*T with the quadrature inner product.
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss;
    std::vector<Vec> basis(k, Vec(n));
    for (auto& b : basis)
        for (auto& x : b) x = gauss(rng);

    auto orthonormalize = [&](std::vector<Vec>& vs) {
        for (std::size_t i = 0; i < vs.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                const double c = dot_w(vs[i], vs[j], w);
                for (std::size_t m = 0; m < n; ++m) vs[i][m] -= c * vs[j][m];
            }
            const double nrm = std::sqrt(dot_w(vs[i], vs[i], w));
            if (nrm > 0.0)
                for (auto& x : vs[i]) x /= nrm;
        }
    };

    auto apply_TtT = [&](const Vec& x) {
        SampledFunction f(spec.grid, x);
        return apply_T_star(spec, apply_T(spec, f)).values;
    };

    std::vector<double> prev(k, 0.0);
    std::vector<double> ritz(k, 0.0);
    for (int iter = 0; iter < 500; ++iter) {
        orthonormalize(basis);
        std::vector<Vec> img(k);
        for (std::size_t i = 0; i < k; ++i) img[i] = apply_TtT(basis[i]);
        std::vector<Vec> B(k, Vec(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                B[i][j] = dot_w(basis[i], img[j], w);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                const double sym = 0.5 * (B[i][j] + B[j][i]);
                B[i][j] = B[j][i] = sym;
            }
        ritz = symmetric_eigenvalues(B);
        std::sort(ritz.begin(), ritz.end(), std::greater<>());
        bool done = iter > 2;
        for (int i = 0; i < count && done; ++i)
            done = std::fabs(ritz[i] - prev[i]) <= 1e-14 * ritz[0];
        prev = ritz;
        if (done) break;
        basis = std::move(img);
    }

    std::vector<double> s(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) s[i] = std::sqrt(std::max(0.0, ritz[i]));
    return s;
}

} // namespace hardy
