#include "hardy/widths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hardy/kernels.hpp"

namespace hardy {

namespace {

std::uint64_t mix(std::uint64_t base, int j) {
    std::uint64_t x = base ^ (0xd1342543de82ef95ull * (static_cast<std::uint64_t>(j) + 1));
    x ^= x >> 32; x *= 0xd6e8feb86659fd93ull;
    x ^= x >> 32;
    return x;
}

std::vector<double> random_breakpoints(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> widths(static_cast<std::size_t>(n) + 1);
    double total = 0.0;
    for (double& w : widths) {
        w = exp1(rng) + 1e-3;
        total += w;
    }
    std::vector<double> t;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
        acc += widths[i] / total;
        t.push_back(acc);
    }
    return t;
}

double g_norm_after(const ProblemSpec& spec, const SignPattern& z,
                    int k_iters) {
    SampledFunction f = initial_sign_function(spec, z);
    const double nf = lp_norm(f, spec.p);
    kernels::scale(f.values, 1.0 / nf, f.values);
    double gq = 0.0;
    for (int k = 0; k < k_iters; ++k) {
        IterateStep step = iterate_once(spec, f);
        gq = lp_norm(step.g, spec.q);
        f = std::move(step.f_next);
    }
    return gq;
}

// Minimal ||Tf||_q / ||f||_p over the span of the class-0..n spectral
// functions. T applied to the normalized span is itself a continuous odd
// image of the l1 sphere inside T(unit ball), so this is a valid Makovoz
// candidate; unlike the iterated step family it stays at the saddle, so
// the minimum does not drift toward the class-0 norm as k grows.
double span_minimum(const ProblemSpec& spec, int n) {
    std::vector<SampledFunction> span;
    for (int i = 0; i <= n; ++i) {
        SearchConfig cfg;
        cfg.n = i;
        span.push_back(
            find_spectral_triple(spec, i, SignPattern::alternating(i), cfg).f);
    }
    auto value = [&](const std::vector<double>& z) {
        SampledFunction f(spec.grid);
        for (std::size_t c = 0; c < z.size(); ++c)
            kernels::axpy(f.values, z[c], span[c].values, f.values);
        const double np = lp_norm(f, spec.p);
        if (np < 1e-14) return std::numeric_limits<double>::infinity();
        return lp_norm(apply_T(spec, f), spec.q) / np;
    };

    // The objective is 0-homogeneous, so coordinates need no projection.
    std::vector<double> z(static_cast<std::size_t>(n) + 1, 0.0);
    z.back() = 1.0;
    double best = value(z);
    double step = 0.5;
    int evals = 0;
    while (step > 1e-9 && evals < 4000) {
        bool improved = false;
        for (std::size_t i = 0; i < z.size(); ++i) {
            for (double dir : {+1.0, -1.0}) {
                std::vector<double> cand = z;
                cand[i] += dir * step;
                double l1 = 0.0;
                for (double c : cand) l1 += std::fabs(c);
                if (l1 < 1e-9) continue;
                ++evals;
                const double cv = value(cand);
                if (cv < best) {
                    best = cv;
                    z = std::move(cand);
                    improved = true;
                    break;
                }
            }
            if (improved) break;
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

} // namespace

double kolmogorov_lower_bound(const ProblemSpec& spec, int n, int k_iters,
                              int samples, std::uint64_t rng_seed) {
    if (k_iters < 1) throw Error("k_iters must be >= 1");

    // Sampled step patterns pushed through k_iters iteration steps. With
    // ||g_k||_q nondecreasing in k, these only rise as k_iters grows.
    std::vector<std::vector<double>> starts;
    starts.push_back(SignPattern::alternating(n).breakpoints());
    for (int j = 1; j < samples && n > 0; ++j)
        starts.push_back(random_breakpoints(n, mix(rng_seed, j)));

    std::vector<double> vals(starts.size(),
                             std::numeric_limits<double>::infinity());
#pragma omp parallel for schedule(dynamic)
    for (long j = 0; j < static_cast<long>(starts.size()); ++j)
        vals[j] = g_norm_after(spec, SignPattern::from_breakpoints(starts[j]),
                               k_iters);

    double best = *std::min_element(vals.begin(), vals.end());
    return std::min(best, span_minimum(spec, n));
}

namespace {

// Trapezoid mass of |fn|^power over [lo, hi]. Block edges are the exact
// interpolated zero crossings, not grid nodes, so the cells containing
// them are split with linearly interpolated endpoint values; snapping the
// edges to nodes instead biases the smallest block ratio by O(h).
double block_mass(const SampledFunction& fn, double power, double lo,
                  double hi) {
    const Grid& grid = *fn.grid;
    const double h = grid.spacing();
    const double a = grid.interval().a;
    const std::size_t last = grid.size() - 1;
    auto val = [&](double x) {
        const double s = std::clamp((x - a) / h, 0.0, double(last));
        const auto i = std::min(static_cast<std::size_t>(s), last - 1);
        const double t = s - static_cast<double>(i);
        return std::pow(std::fabs(fn[i] + t * (fn[i + 1] - fn[i])), power);
    };
    const double slo = (lo - a) / h, shi = (hi - a) / h;
    auto i0 = static_cast<std::size_t>(std::ceil(slo - 1e-9));
    auto i1 = static_cast<std::size_t>(std::floor(shi + 1e-9));
    i0 = std::min(i0, last);
    i1 = std::min(i1, last);
    if (i0 > i1) return 0.5 * (hi - lo) * (val(lo) + val(hi));

    double mass = 0.5 * (grid.node(i0) - lo) * (val(lo) + val(grid.node(i0)));
    for (std::size_t i = i0; i < i1; ++i)
        mass += 0.5 * h * (val(grid.node(i)) + val(grid.node(i + 1)));
    mass += 0.5 * (hi - grid.node(i1)) * (val(grid.node(i1)) + val(hi));
    return mass;
}

} // namespace

double bernstein_value(const ProblemSpec& spec, const SpectralTriple& triple) {
    const std::vector<double> zeros = zero_locations(triple.g);
    const Interval& iv = spec.interval();

    std::vector<double> edges{iv.a};
    edges.insert(edges.end(), zeros.begin(), zeros.end());
    edges.push_back(iv.b);

    const std::size_t blocks = edges.size() - 1;
    std::vector<double> c(blocks, 0.0), d(blocks, 0.0);
    for (std::size_t b = 0; b < blocks; ++b) {
        c[b] = block_mass(triple.g, spec.q, edges[b], edges[b + 1]);
        d[b] = block_mass(triple.f, spec.p, edges[b], edges[b + 1]);
        if (c[b] <= 0.0 || d[b] <= 0.0)
            throw DegenerateBlock("block with zero mass in Buslaev split");
    }

    // inf over alpha of (sum |a_i|^q c_i)^{1/q} / (sum |a_i|^p d_i)^{1/p}
    // with disjoint supports. Substituting m_i = |a_i|^p d_i on the simplex
    // reduces to minimizing sum m_i^s gamma_i with s = q/p and
    // gamma_i = c_i / d_i^{q/p}.
    const double s = spec.q / spec.p;
    std::vector<double> gamma(blocks);
    for (std::size_t b = 0; b < blocks; ++b)
        gamma[b] = c[b] / std::pow(d[b], s);

    if (s <= 1.0) {
        // concave (or linear): vertex minimum
        double best = std::numeric_limits<double>::infinity();
        for (double gb : gamma) best = std::min(best, gb);
        return std::pow(best, 1.0 / spec.q);
    }
    // convex: interior stationary point m_i proportional to gamma_i^{-1/(s-1)}
    double msum = 0.0;
    std::vector<double> m(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        m[b] = std::pow(gamma[b], -1.0 / (s - 1.0));
        msum += m[b];
    }
    double val = 0.0;
    for (std::size_t b = 0; b < blocks; ++b)
        val += std::pow(m[b] / msum, s) * gamma[b];
    return std::pow(val, 1.0 / spec.q);
}

namespace {

// Nonlinear power iteration with T replaced by the residual operator
// T - T_n; the normalization constant plays the role of lambda.
double residual_operator_norm(const ProblemSpec& spec,
                              const RankNApproximant& op,
                              const SampledFunction& start) {
    SampledFunction f = start;
    const double nf = lp_norm(f, spec.p);
    if (nf == 0.0) return 0.0;
    kernels::scale(start.values, 1.0 / nf, f.values);
    double value = 0.0;
    int quiet = 0;
    for (int k = 0; k < 20000; ++k) {
        SampledFunction g = op.apply_residual(f);
        const double gq = lp_norm(g, spec.q);
        SampledFunction raw = signed_power(
            op.apply_residual_adjoint(signed_power(g, spec.q)), spec.p_conj());
        const double m = lp_norm(raw, spec.p);
        if (m == 0.0) return gq;
        kernels::scale(raw.values, 1.0 / m, f.values);
        // Transients can plateau well away from the fixed point, so a
        // single small step is not enough to stop.
        quiet = std::fabs(gq - value) <= 1e-13 * gq ? quiet + 1 : 0;
        value = gq;
        if (quiet >= 30) break;
    }
    return value;
}

} // namespace

double approximation_upper_bound(const ProblemSpec& spec,
                                 const SpectralTriple& triple) {
    const std::vector<double> g_zeros = zero_locations(triple.g);
    const std::vector<double> f_zeros = zero_locations(triple.f);
    const Interval& iv = spec.interval();

    // Block ends: one zero of f between consecutive anchors (midpoint
    // fallback when the discrete counts disagree), then b.
    std::vector<double> anchors_full{iv.a};
    anchors_full.insert(anchors_full.end(), g_zeros.begin(), g_zeros.end());
    std::vector<double> ends;
    for (std::size_t i = 0; i + 1 < anchors_full.size(); ++i) {
        const double lo = anchors_full[i], hi = anchors_full[i + 1];
        double pick = 0.5 * (lo + hi);
        for (double z : f_zeros)
            if (z > lo && z < hi) pick = z;
        ends.push_back(pick);
    }
    ends.push_back(iv.b);

    ZeroAnchors anchors(spec.grid, g_zeros);
    RankNApproximant op(spec, anchors, ends);

    // Two starts: the triple's own f (near-extremal) and the constant one.
    double best = residual_operator_norm(spec, op, triple.f);
    SampledFunction ones(spec.grid);
    std::fill(ones.values.begin(), ones.values.end(), 1.0);
    best = std::max(best, residual_operator_norm(spec, op, ones));
    return best;
}

WidthsReport widths_report(const ProblemSpec& spec, int n,
                           const SearchConfig& config) {
    WidthsReport rep;
    rep.n = n;

    SearchConfig cfg = config;
    cfg.n = n;
    cfg.mode = SearchMode::max;
    SpectrumResult rmax = lambda_extremes(spec, cfg);
    cfg.mode = SearchMode::min;
    SpectrumResult rmin = spec.p == spec.q ? rmax : lambda_extremes(spec, cfg);

    rep.lambda_hat = rmax.lambda_extreme;
    rep.lambda_check = spec.p == spec.q ? rmax.lambda_extreme
                                        : rmin.lambda_extreme;
    rep.lambda_hat_pow = std::pow(rep.lambda_hat, -1.0 / spec.q);
    rep.lambda_check_pow = std::pow(rep.lambda_check, -1.0 / spec.q);

    // max over the union of sp_0..sp_n (exposed separately; the Kolmogorov
    // width bound is stated in terms of this union).
    double union_max = rep.lambda_hat;
    for (int i = 0; i < n; ++i) {
        SearchConfig ci = config;
        ci.n = i;
        ci.mode = SearchMode::max;
        try {
            union_max = std::max(union_max,
                                 lambda_extremes(spec, ci).lambda_extreme);
        } catch (const EmptySpectrum&) {
        }
    }
    rep.union_max_pow = std::pow(union_max, -1.0 / spec.q);

    rep.kolmogorov_lb = kolmogorov_lower_bound(
        spec, n, /*k_iters=*/8, /*samples=*/16, config.rng_seed);
    rep.bernstein_val = bernstein_value(spec, rmin.best_triple);
    rep.approx_ub = approximation_upper_bound(spec, rmax.best_triple);
    return rep;
}

} // namespace hardy
