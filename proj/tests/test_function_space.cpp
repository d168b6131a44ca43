#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hardy/function_space.hpp"

using namespace hardy;

TEST_CASE("signed power point values") {
    CHECK(signed_power(-2.0, 3.0) == doctest::Approx(-4.0));
    CHECK(signed_power(0.37, 2.0) == doctest::Approx(0.37));
    CHECK(signed_power(0.0, 2.7) == 0.0);
    CHECK(signed_power(signed_power(0.7, 3.0), 1.5) == doctest::Approx(0.7));
}

TEST_CASE("signed power is odd and invertible") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ts(-10.0, 10.0), ps(1.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double t = ts(rng), p = ps(rng);
        CHECK(signed_power(-t, p) == doctest::Approx(-signed_power(t, p)));
        const double back = signed_power(signed_power(t, p),
                                         conjugate_exponent(p));
        CHECK(back == doctest::Approx(t).epsilon(1e-12));
    }
}

TEST_CASE("conjugate exponent") {
    CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0));
    CHECK(conjugate_exponent(3.0) == doctest::Approx(1.5));
    CHECK(conjugate_exponent(1.5) == doctest::Approx(3.0));
}

TEST_CASE("lp norms on closed forms") {
    auto grid = make_grid(Interval(0, 1), 10);
    SampledFunction one = SampledFunction::sample(grid, [](double) { return 1.0; });
    SampledFunction lin = SampledFunction::sample(grid, [](double x) { return x; });
    SampledFunction zero(grid);
    CHECK(lp_norm(one, 2.0) == doctest::Approx(1.0));
    CHECK(lp_norm(lin, 2.0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
    CHECK(lp_norm(zero, 2.0) == 0.0);
}

TEST_CASE("lp norm homogeneity") {
    auto grid = make_grid(Interval(0, 1), 8);
    SampledFunction f = SampledFunction::sample(
        grid, [](double x) { return std::sin(3.0 * x) - 0.2; });
    SampledFunction cf = f;
    for (double& v : cf.values) v *= -3.7;
    CHECK(lp_norm(cf, 2.5) ==
          doctest::Approx(3.7 * lp_norm(f, 2.5)).epsilon(1e-12));
}

TEST_CASE("quadrature converges at second order") {
    const double exact = 1.0 / std::sqrt(3.0);
    double prev = 0.0;
    for (int level : {6, 8, 10}) {
        auto grid = make_grid(Interval(0, 1), level);
        SampledFunction lin =
            SampledFunction::sample(grid, [](double x) { return x; });
        const double err = std::fabs(lp_norm(lin, 2.0) - exact);
        if (prev > 0.0) CHECK(err < prev / 8.0); // order 2 gives factor 16
        prev = err;
    }
}

TEST_CASE("zero and sign change counting") {
    auto grid = make_grid(Interval(0, 1), 10);
    SampledFunction sine = SampledFunction::sample(
        grid, [](double x) { return std::sin(3.0 * M_PI * x); });
    SampledFunction one = SampledFunction::sample(grid, [](double) { return 1.0; });
    SampledFunction touch = SampledFunction::sample(
        grid, [](double x) { return (x - 0.5) * (x - 0.5); });
    SampledFunction step = SampledFunction::sample(
        grid, [](double x) { return x < 0.5 ? 1.0 : -1.0; });

    CHECK(count_zeros(sine) == 2);
    CHECK(count_zeros(one) == 0);
    CHECK(count_zeros(touch) == 1);
    CHECK(count_sign_changes(sine) == 2);
    CHECK(count_sign_changes(touch) == 0);
    CHECK(count_sign_changes(step) == 1);
    CHECK_THROWS_AS(count_zeros(SampledFunction(grid)), AllZero);
}

TEST_CASE("sign changes never exceed zeros") {
    auto grid = make_grid(Interval(0, 1), 8);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = coef(rng), b = coef(rng), c = coef(rng);
        SampledFunction f = SampledFunction::sample(grid, [&](double x) {
            return a * std::sin(7 * x) + b * std::cos(3 * x) + c;
        });
        CHECK(count_sign_changes(f) <= count_zeros(f));
    }
}

TEST_CASE("zero locations interpolate crossings") {
    auto grid = make_grid(Interval(0, 1), 10);
    SampledFunction sine = SampledFunction::sample(
        grid, [](double x) { return std::sin(3.0 * M_PI * x); });
    auto zs = zero_locations(sine);
    REQUIRE(zs.size() == 2);
    CHECK(zs[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    CHECK(zs[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("grid refinement") {
    auto g4 = make_grid(Interval(0, 1), 4);
    CHECK(g4->size() == 17);
    auto g5 = refine(g4);
    CHECK(g5->size() == 33);
    CHECK(g5->node(0) == 0.0);
    CHECK(g5->node(g5->size() - 1) == 1.0);
    for (std::size_t i = 0; i < g4->size(); ++i)
        CHECK(g5->node(2 * i) == doctest::Approx(g4->node(i)).epsilon(1e-15));
    double wsum = 0.0;
    for (double w : g5->quad_weights()) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exponent validation") {
    CHECK_THROWS_AS(validate_exponent(1.0, "p"), Error);
    CHECK_THROWS_AS(validate_exponent(0.5, "p"), Error);
    CHECK_NOTHROW(validate_exponent(1.01, "p"));
}
