#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hardy/operator.hpp"
#include "test_util.hpp"

using namespace hardy;
using testutil::make_spec;

static double inner(const SampledFunction& a, const SampledFunction& b) {
    const auto& w = a.grid->quad_weights();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
    return s;
}

TEST_CASE("apply_T closed forms") {
    auto spec = make_spec(2, 2, 10);
    SampledFunction one =
        SampledFunction::sample(spec.grid, [](double) { return 1.0; });
    SampledFunction g = apply_T(spec, one);
    CHECK(g[0] == 0.0);
    for (std::size_t i = 0; i < g.size(); i += 512)
        CHECK(g[i] == doctest::Approx(spec.grid->node(i)).epsilon(1e-12));

    auto spec2 = make_spec(2, 2, 10, "1+2*x", "1");
    SampledFunction one2 =
        SampledFunction::sample(spec2.grid, [](double) { return 1.0; });
    SampledFunction g2 = apply_T(spec2, one2);
    for (std::size_t i = 0; i < g2.size(); i += 512) {
        const double x = spec.grid->node(i);
        CHECK(g2[i] == doctest::Approx(x + x * x).epsilon(1e-6));
    }

    SampledFunction cosf = SampledFunction::sample(spec.grid, [](double x) {
        return std::sqrt(2.0) * std::cos(M_PI * x / 2.0);
    });
    SampledFunction g3 = apply_T(spec, cosf);
    CHECK(lp_norm(g3, 2.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-5));
}

TEST_CASE("apply_T_star closed forms") {
    auto spec = make_spec(2, 2, 10);
    SampledFunction one =
        SampledFunction::sample(spec.grid, [](double) { return 1.0; });
    SampledFunction h = apply_T_star(spec, one);
    for (std::size_t i = 0; i < h.size(); i += 512)
        CHECK(h[i] == doctest::Approx(1.0 - spec.grid->node(i)).epsilon(1e-12));
    CHECK(h[h.size() - 1] == 0.0);
    SampledFunction z = apply_T_star(spec, SampledFunction(spec.grid));
    CHECK(lp_norm(z, 2.0) == 0.0);
}

TEST_CASE("adjoint identity") {
    auto spec = make_spec(2, 2, 10, "1+x", "exp(-x)");
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    SampledFunction lin =
        SampledFunction::sample(spec.grid, [](double x) { return x; });
    SampledFunction one =
        SampledFunction::sample(spec.grid, [](double) { return 1.0; });
    // exact adjointness holds in the continuum; the trapezoid discretization
    // carries an O(h^2) defect
    CHECK(inner(apply_T(spec, lin), one) ==
          doctest::Approx(inner(lin, apply_T_star(spec, one))).epsilon(1e-5));
    for (int trial = 0; trial < 20; ++trial) {
        const double a = coef(rng), b = coef(rng), c = coef(rng);
        SampledFunction f = SampledFunction::sample(spec.grid, [&](double x) {
            return a + b * std::sin(5 * x);
        });
        SampledFunction h = SampledFunction::sample(spec.grid, [&](double x) {
            return c + a * std::cos(3 * x);
        });
        const double lhs = inner(apply_T(spec, f), h);
        const double rhs = inner(f, apply_T_star(spec, h));
        CHECK(std::fabs(lhs - rhs) <=
              1e-5 * (lp_norm(f, 2.0) * lp_norm(h, 2.0) + 1e-30));
    }

    // and the defect shrinks at second order
    double prev = 0.0;
    for (int level : {7, 9}) {
        auto sp = make_spec(2, 2, level, "1+x", "exp(-x)");
        SampledFunction f = SampledFunction::sample(
            sp.grid, [](double x) { return std::sin(5 * x) - 0.3; });
        SampledFunction h = SampledFunction::sample(
            sp.grid, [](double x) { return std::cos(3 * x); });
        const auto& w = sp.grid->quad_weights();
        double lhs = 0.0, rhs = 0.0;
        SampledFunction tf = apply_T(sp, f), tsh = apply_T_star(sp, h);
        for (std::size_t i = 0; i < f.size(); ++i) {
            lhs += w[i] * tf[i] * h[i];
            rhs += w[i] * f[i] * tsh[i];
        }
        const double err = std::fabs(lhs - rhs);
        if (prev > 0.0) CHECK(err < prev / 8.0);
        prev = err;
    }
}

TEST_CASE("positivity and linearity") {
    auto spec = make_spec(2, 2, 8, "1+x", "exp(-x)");
    SampledFunction f = SampledFunction::sample(
        spec.grid, [](double x) { return 0.5 + std::fabs(std::sin(9 * x)); });
    SampledFunction g = apply_T(spec, f), h = apply_T_star(spec, f);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(g[i] >= 0.0);
        CHECK(h[i] >= 0.0);
    }
    SampledFunction a = SampledFunction::sample(
        spec.grid, [](double x) { return std::sin(4 * x); });
    SampledFunction b = SampledFunction::sample(
        spec.grid, [](double x) { return std::cos(2 * x); });
    SampledFunction combo(spec.grid);
    for (std::size_t i = 0; i < combo.size(); ++i)
        combo[i] = 2.0 * a[i] - 3.0 * b[i];
    SampledFunction Tc = apply_T(spec, combo);
    SampledFunction Ta = apply_T(spec, a), Tb = apply_T(spec, b);
    for (std::size_t i = 0; i < Tc.size(); i += 64)
        CHECK(Tc[i] ==
              doctest::Approx(2.0 * Ta[i] - 3.0 * Tb[i]).epsilon(1e-13));
}

TEST_CASE("anchored operator T+") {
    auto spec = make_spec(2, 2, 10);
    SampledFunction one =
        SampledFunction::sample(spec.grid, [](double) { return 1.0; });

    ZeroAnchors trivial(spec.grid, {});
    SampledFunction same = apply_T_plus(spec, trivial, one);
    SampledFunction Tone = apply_T(spec, one);
    for (std::size_t i = 0; i < same.size(); i += 256)
        CHECK(same[i] == doctest::Approx(Tone[i]).epsilon(1e-14));

    ZeroAnchors half(spec.grid, {0.5});
    SampledFunction split = apply_T_plus(spec, half, one);
    for (std::size_t i = 0; i < split.size(); i += 128) {
        const double x = spec.grid->node(i);
        const double expect = x <= 0.5 ? x : x - 0.5;
        CHECK(split[i] == doctest::Approx(expect).epsilon(1e-10));
    }

    // f with zero mean on each anchor block satisfies (Tf)(a_i)=0, where
    // T+ must coincide with T
    SampledFunction f = SampledFunction::sample(
        spec.grid, [](double x) { return std::sin(4.0 * M_PI * x); });
    SampledFunction diff = apply_T_plus(spec, half, f);
    SampledFunction Tf = apply_T(spec, f);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= Tf[i];
    CHECK(lp_norm(diff, 2.0) < 1e-10);
}

TEST_CASE("rank-n approximant") {
    auto spec = make_spec(2, 2, 8);
    SampledFunction one =
        SampledFunction::sample(spec.grid, [](double) { return 1.0; });

    // n=0: T_0 = 0 and the residual is T itself
    ZeroAnchors a0(spec.grid, {});
    RankNApproximant t0(spec, a0, {1.0});
    SampledFunction zero_img = t0.apply(one);
    CHECK(lp_norm(zero_img, 2.0) == doctest::Approx(0.0));
    SampledFunction res = t0.apply_residual(one);
    SampledFunction Tone = apply_T(spec, one);
    for (std::size_t i = 0; i < res.size(); i += 32)
        CHECK(res[i] == doctest::Approx(Tone[i]).epsilon(1e-14));

    // image of random inputs spans at most n directions
    ZeroAnchors a2(spec.grid, {0.3, 0.7});
    RankNApproximant t2(spec, a2, {0.2, 0.5});
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    std::vector<SampledFunction> basis;
    for (int trial = 0; trial < 50; ++trial) {
        SampledFunction f(spec.grid);
        for (double& v : f.values) v = nd(rng);
        SampledFunction img = t2.apply(f);
        for (const auto& b : basis) {
            const double c = inner(img, b);
            for (std::size_t i = 0; i < img.size(); ++i) img[i] -= c * b[i];
        }
        const double norm = lp_norm(img, 2.0);
        if (norm > 1e-9) {
            for (double& v : img.values) v /= norm;
            basis.push_back(img);
        }
    }
    CHECK(basis.size() <= 2);
}

TEST_CASE("anchor validation") {
    auto spec = make_spec(2, 2, 6);
    CHECK_THROWS_AS(ZeroAnchors(spec.grid, {1.7}), AnchorOffGrid);
    SampledFunction other(make_grid(Interval(0, 1), 5));
    CHECK_THROWS_AS(apply_T(spec, other), GridMismatch);
}
