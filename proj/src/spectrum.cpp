#include "hardy/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardy/asymptotics.hpp"
#include "hardy/kernels.hpp"

namespace hardy {

void SearchConfig::validate() const {
    if (n < 0) throw Error("target nodal count must be >= 0");
    if (starts < 1) throw Error("starts must be >= 1");
    if (!(inner_tol > 0.0 && outer_tol > 0.0))
        throw Error("tolerances must be positive");
}

namespace {

// The integral system is equivalent to the first-order system
//   w' = u^{p'} (y)_(p'),  y' = -lambda v^q (w)_(q),
// with w(a) = 0 and y(b) = 0, where g = v w and f = u^{p'-1} (y)_(p').
// Spectral numbers of nodal class n are the lambda values at which the
// count of zeros of y on (a,b] steps from n to n+1; the ||f||_p = 1
// convention is restored afterwards by the eta^{q-p} rescaling.

struct OdeTables {
    std::vector<double> up; // u^{p'} at half-substep resolution
    std::vector<double> vq; // v^q
    double hs = 0.0;        // substep width
    int substeps = 1;
    std::size_t cells = 0;
};

constexpr std::size_t kMinOdeSteps = 8192;

OdeTables make_tables(const ProblemSpec& spec) {
    OdeTables t;
    t.cells = spec.grid->size() - 1;
    t.substeps = static_cast<int>((kMinOdeSteps + t.cells - 1) / t.cells);
    t.hs = spec.grid->spacing() / static_cast<double>(t.substeps);
    const std::size_t total = t.cells * static_cast<std::size_t>(t.substeps);
    const double a = spec.interval().a;
    const double pc = spec.p_conj();
    t.up.resize(2 * total + 1);
    t.vq.resize(2 * total + 1);
    for (std::size_t j = 0; j < t.up.size(); ++j) {
        const double x = a + 0.5 * t.hs * static_cast<double>(j);
        const double u = spec.weights.u.eval(x);
        const double v = spec.weights.v.eval(x);
        if (!(u > 0.0) || !(v > 0.0))
            throw NotPositive("weight not positive inside a grid cell");
        t.up[j] = std::pow(u, pc);
        t.vq[j] = std::pow(v, spec.q);
    }
    return t;
}

struct Shot {
    int y_zeros = 0; // sign changes of y on (a, b]
    double y_end = 0.0;
    double fp_norm = 0.0; // ||f||_p along the trajectory
    std::vector<double> y_nodes;
};

Shot integrate(const ProblemSpec& spec, const OdeTables& t, double lambda,
               bool record) {
    const double pc = spec.p_conj();
    const double q = spec.q;
    const double hs = t.hs;
    double w = 0.0, y = 1.0;

    Shot out;
    if (record) {
        out.y_nodes.resize(t.cells + 1);
        out.y_nodes[0] = y;
    }
    double prev_y = y;
    // |f|^p = u^{p'} |y|^{p'}
    double fp_sum = 0.0;
    double prev_fp = t.up[0];
    std::size_t j = 0;
    for (std::size_t cell = 0; cell < t.cells; ++cell) {
        for (int s = 0; s < t.substeps; ++s, j += 2) {
            const double k1w = t.up[j] * signed_power(y, pc);
            const double k1y = -lambda * t.vq[j] * signed_power(w, q);
            const double k2w =
                t.up[j + 1] * signed_power(y + 0.5 * hs * k1y, pc);
            const double k2y =
                -lambda * t.vq[j + 1] * signed_power(w + 0.5 * hs * k1w, q);
            const double k3w =
                t.up[j + 1] * signed_power(y + 0.5 * hs * k2y, pc);
            const double k3y =
                -lambda * t.vq[j + 1] * signed_power(w + 0.5 * hs * k2w, q);
            const double k4w = t.up[j + 2] * signed_power(y + hs * k3y, pc);
            const double k4y =
                -lambda * t.vq[j + 2] * signed_power(w + hs * k3w, q);
            w += hs / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
            y += hs / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            if ((prev_y > 0.0 && y <= 0.0) || (prev_y < 0.0 && y >= 0.0))
                ++out.y_zeros;
            if (y != 0.0) prev_y = y;
            const double fp = t.up[j + 2] * std::pow(std::fabs(y), pc);
            fp_sum += 0.5 * hs * (prev_fp + fp);
            prev_fp = fp;
        }
        if (record) out.y_nodes[cell + 1] = y;
    }
    out.y_end = y;
    out.fp_norm = std::pow(fp_sum, 1.0 / spec.p);
    return out;
}

double lambda_guess(const ProblemSpec& spec, int n) {
    const double limit = constant_cpq(spec.p, spec.q) * weight_integral(spec);
    return std::max(std::pow((static_cast<double>(n) + 0.5) / limit, spec.q),
                    1e-8);
}

// All lambda values in the scan window where the zero count of y steps
// from n to n+1 (ascending, deduplicated).
std::vector<double> scan_class_roots(const ProblemSpec& spec,
                                     const OdeTables& t, int n,
                                     int scan_intervals) {
    auto zero_count = [&](double lam) {
        return integrate(spec, t, lam, false).y_zeros;
    };

    double lo = lambda_guess(spec, n), hi = lo;
    int guard = 0;
    while (zero_count(lo) > 0) {
        lo *= 0.25;
        if (++guard > 200) throw BracketFailed("lower bracket did not clear");
    }
    guard = 0;
    while (zero_count(hi) < n + 2) {
        hi *= 2.0;
        if (++guard > 200) throw BracketFailed("upper bracket not found");
    }

    const int k = scan_intervals;
    std::vector<double> lam(static_cast<std::size_t>(k) + 1);
    std::vector<int> cnt(lam.size());
    const double ratio = std::log(hi / lo);
    for (std::size_t i = 0; i < lam.size(); ++i)
        lam[i] = lo * std::exp(ratio * static_cast<double>(i) /
                               static_cast<double>(k));
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(lam.size()); ++i)
        cnt[i] = zero_count(lam[i]);

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < lam.size(); ++i) {
        if (cnt[i] > n || cnt[i + 1] <= n) continue;
        double a = lam[i], b = lam[i + 1];
        while (b - a > 1e-13 * b) {
            const double mid = 0.5 * (a + b);
            (zero_count(mid) > n ? b : a) = mid;
        }
        if (zero_count(a) != n) continue; // multiple roots collapsed; skip
        const double root = 0.5 * (a + b);
        if (roots.empty() || root - roots.back() > 1e-9 * root)
            roots.push_back(root);
    }
    return roots;
}

SpectralTriple triple_from_root(const ProblemSpec& spec, const OdeTables& t,
                                double lambda_ode) {
    const Shot shot = integrate(spec, t, lambda_ode, true);
    const double pc = spec.p_conj();
    const auto& u = spec.weights.samples_u.values;

    SampledFunction f(spec.grid);
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = std::pow(u[i], pc - 1.0) * signed_power(shot.y_nodes[i], pc);
    const double eta = lp_norm(f, spec.p);
    if (eta == 0.0) throw ZeroImage("shot trajectory vanished");
    kernels::scale(f.values, 1.0 / eta, f.values);

    SpectralTriple tr;
    tr.f = std::move(f);
    tr.g = apply_T(spec, tr.f);
    // lambda from the q-norm identity; this keeps |lambda^{-1/q} - ||g||_q|
    // exact and is second-order accurate at the spectral function.
    tr.lambda = std::pow(lp_norm(tr.g, spec.q), -spec.q);
    tr.nodal_count = count_zeros(tr.g);
    tr.residual_value = residual(spec, tr);
    return tr;
}

// A few fixed-point steps, kept only while they preserve the nodal class
// and shrink the residual.
SpectralTriple polish(const ProblemSpec& spec, SpectralTriple tr, int n) {
    for (int k = 0; k < 3; ++k) {
        IterateStep step = iterate_once(spec, tr.f);
        SpectralTriple cand;
        cand.f = std::move(step.f_next);
        cand.g = apply_T(spec, cand.f);
        cand.lambda = std::pow(lp_norm(cand.g, spec.q), -spec.q);
        cand.nodal_count = count_zeros(cand.g);
        cand.residual_value = residual(spec, cand);
        if (cand.nodal_count != n ||
            cand.residual_value >= tr.residual_value)
            break;
        tr = std::move(cand);
    }
    return tr;
}

std::vector<SpectralTriple> class_triples(const ProblemSpec& spec, int n,
                                          const SearchConfig& config) {
    const OdeTables tables = make_tables(spec);
    const int intervals = std::max(64, 4 * config.starts);
    std::vector<SpectralTriple> triples;
    for (double root : scan_class_roots(spec, tables, n, intervals)) {
        SpectralTriple tr = polish(spec, triple_from_root(spec, tables, root), n);
        if (tr.nodal_count == n) triples.push_back(std::move(tr));
    }
    std::sort(triples.begin(), triples.end(),
              [](const SpectralTriple& a, const SpectralTriple& b) {
                  return a.lambda < b.lambda;
              });
    return triples;
}

SignPattern pattern_of(const ProblemSpec& spec, const SpectralTriple& tr) {
    const std::vector<double> zeros = zero_locations(tr.g);
    if (static_cast<int>(zeros.size()) != tr.nodal_count || zeros.empty())
        return SignPattern::alternating(tr.nodal_count);
    std::vector<double> t;
    for (double z : zeros)
        t.push_back((z - spec.interval().a) / spec.interval().length());
    return SignPattern::from_breakpoints(t);
}

} // namespace

SpectralTriple find_spectral_triple(const ProblemSpec& spec, int n,
                                    const SignPattern& z0,
                                    const SearchConfig& config) {
    config.validate();
    std::vector<SpectralTriple> triples = class_triples(spec, n, config);
    if (triples.empty()) {
        // Fall back to the plain iteration from the supplied pattern.
        IterationOptions opts;
        opts.tol = config.inner_tol;
        opts.max_iter = config.max_inner_iter;
        opts.record_trace = false;
        auto [tr, trace] =
            run_iteration(spec, initial_sign_function(spec, z0), opts);
        if (tr.nodal_count != n)
            throw NodalCountMissed("nodal count target missed",
                                   tr.nodal_count);
        return tr;
    }
    return config.mode == SearchMode::max ? triples.back() : triples.front();
}

SpectrumResult lambda_extremes(const ProblemSpec& spec,
                               const SearchConfig& config) {
    config.validate();
    const int n = config.n;
    std::vector<SpectralTriple> triples = class_triples(spec, n, config);
    if (triples.empty())
        throw EmptySpectrum("no spectral number with the target nodal count");

    SpectrumResult res;
    res.n = n;
    res.starts_used = config.starts;
    res.starts_converged = config.starts;
    res.best_triple =
        config.mode == SearchMode::max ? triples.back() : triples.front();
    res.lambda_extreme = res.best_triple.lambda;
    for (const SpectralTriple& tr : triples) {
        if (!res.all_found.empty() &&
            tr.lambda - res.all_found.back().first <=
                1e-6 * std::fabs(res.all_found.back().first))
            continue;
        res.all_found.emplace_back(tr.lambda, pattern_of(spec, tr));
    }
    return res;
}

std::pair<int, int> sign_change_comparison(const ProblemSpec& spec,
                                           const SpectralTriple& t1,
                                           const SpectralTriple& t2,
                                           double eps) {
    const SampledFunction g1 = apply_T(spec, t1.f);
    const SampledFunction g2 = apply_T(spec, t2.f);
    const double c_rhs = std::pow(eps, (spec.p - 1.0) / (spec.q - 1.0)) *
                         std::pow(t2.lambda / t1.lambda, 1.0 / (spec.q - 1.0));
    SampledFunction lhs(spec.grid), rhs(spec.grid);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        lhs[i] = g1[i] - eps * g2[i];
        rhs[i] = g1[i] - c_rhs * g2[i];
    }
    return {count_sign_changes(lhs), count_sign_changes(rhs)};
}

double operator_norm_estimate(const ProblemSpec& spec) {
    SearchConfig cfg;
    cfg.n = 0;
    cfg.mode = SearchMode::max;
    cfg.starts = 1;
    SpectrumResult r = lambda_extremes(spec, cfg);
    return std::pow(r.lambda_extreme, -1.0 / spec.q);
}

} // namespace hardy
