#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hardy/oracle.hpp"
#include "hardy/spectrum.hpp"
#include "test_util.hpp"

using namespace hardy;
using testutil::make_spec;

TEST_CASE("classical nodal classes") {
    auto spec = make_spec(2, 2, 11);
    SearchConfig cfg;
    cfg.n = 3;
    SpectralTriple t =
        find_spectral_triple(spec, 3, SignPattern::alternating(3), cfg);
    CHECK(t.nodal_count == 3);
    const double classical = std::pow(3.5 * M_PI, 2.0);
    CHECK(t.lambda == doctest::Approx(classical).epsilon(1e-3));
    CHECK(std::pow(t.lambda, -0.5) ==
          doctest::Approx(lp_norm(t.g, 2.0)).epsilon(1e-8));

    cfg.n = 0;
    SpectralTriple ground =
        find_spectral_triple(spec, 0, SignPattern::constant(0), cfg);
    CHECK(ground.nodal_count == 0);
    CHECK(ground.lambda == doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-5));
}

TEST_CASE("max and min modes agree for p = q") {
    auto spec = make_spec(2, 2, 10, "1+x", "1");
    SearchConfig cfg;
    cfg.n = 2;
    cfg.mode = SearchMode::max;
    SpectrumResult mx = lambda_extremes(spec, cfg);
    cfg.mode = SearchMode::min;
    SpectrumResult mn = lambda_extremes(spec, cfg);
    CHECK(mx.lambda_extreme ==
          doctest::Approx(mn.lambda_extreme).epsilon(1e-8));
    CHECK(mx.best_triple.nodal_count == 2);
}

TEST_CASE("weighted p=q=2 classes match the singular value oracle") {
    auto spec = make_spec(2, 2, 10, "1+x", "1");
    auto svals = svd_eigen_p2(spec, 3);
    SearchConfig cfg;
    for (int n : {0, 1, 2}) {
        cfg.n = n;
        SpectralTriple t =
            find_spectral_triple(spec, n, SignPattern::alternating(n), cfg);
        CHECK(std::pow(t.lambda, -0.5) ==
              doctest::Approx(svals[static_cast<std::size_t>(n)])
                  .epsilon(1e-5));
    }
}

TEST_CASE("extreme estimates do not shrink with more starts") {
    auto spec = make_spec(3, 2, 9);
    SearchConfig cfg;
    cfg.n = 2;
    cfg.mode = SearchMode::max;
    cfg.starts = 8;
    const double few = lambda_extremes(spec, cfg).lambda_extreme;
    cfg.starts = 16;
    const double many = lambda_extremes(spec, cfg).lambda_extreme;
    CHECK(many >= few * (1.0 - 1e-9));
}

TEST_CASE("operator norm estimate") {
    auto spec = make_spec(2, 2, 10);
    CHECK(operator_norm_estimate(spec) ==
          doctest::Approx(2.0 / M_PI).epsilon(1e-5));

    auto doubled = make_spec(2, 2, 10, "1", "2");
    CHECK(operator_norm_estimate(doubled) ==
          doctest::Approx(4.0 / M_PI).epsilon(1e-5));

    auto weighted = make_spec(2, 2, 10, "1+x", "1");
    auto svals = svd_eigen_p2(weighted, 1);
    CHECK(operator_norm_estimate(weighted) ==
          doctest::Approx(svals[0]).epsilon(1e-6));
}

TEST_CASE("sign change comparison") {
    auto spec = make_spec(2, 2, 10);
    SearchConfig cfg;
    cfg.n = 0;
    SpectralTriple t0 =
        find_spectral_triple(spec, 0, SignPattern::constant(0), cfg);
    cfg.n = 1;
    SpectralTriple t1 =
        find_spectral_triple(spec, 1, SignPattern::alternating(1), cfg);

    auto [lhs, rhs] = sign_change_comparison(spec, t0, t1, 0.5);
    CHECK(lhs <= rhs);

    // eps to 0: both sides approach P(T f_1) = 0
    auto [l0, r0] = sign_change_comparison(spec, t0, t1, 1e-9);
    CHECK(l0 == r0);
}

TEST_CASE("empty spectrum is reported") {
    auto spec = make_spec(2, 2, 6);
    SearchConfig cfg;
    cfg.n = 200; // not resolvable on a 65-node grid
    cfg.mode = SearchMode::max;
    CHECK_THROWS_AS(lambda_extremes(spec, cfg), Error);
}
