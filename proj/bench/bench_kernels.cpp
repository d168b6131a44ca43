// Compares the serial and OpenMP kernel paths and the multistart search
// loop. Prints wall times and the speedup; results are checked to agree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "hardy/kernels.hpp"
#include "hardy/spectrum.hpp"

using namespace hardy;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point t0, Clock::time_point t1) {
    return std::chrono::duration<double>(t1 - t0).count();
}

template <class F>
double time_best_of(int reps, F&& f) {
    double best = 1e30;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        f();
        best = std::min(best, seconds(t0, Clock::now()));
    }
    return best;
}

void bench_kernels(std::size_t n) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> dist;
    std::vector<double> x(n), w(n), out_s(n), out_p(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = dist(rng);
        w[i] = 1.0 + 0.5 * std::sin(0.001 * static_cast<double>(i));
    }

    const double ts = time_best_of(5, [&] {
        kernels::set_backend(kernels::Backend::serial);
        kernels::trapezoid_prefix(x, w, out_s);
        kernels::signed_power_array(out_s, 2.5, out_s);
    });
    const double tp = time_best_of(5, [&] {
        kernels::set_backend(kernels::Backend::openmp);
        kernels::trapezoid_prefix(x, w, out_p);
        kernels::signed_power_array(out_p, 2.5, out_p);
    });
    kernels::set_backend(kernels::Backend::openmp);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        err = std::max(err, std::fabs(out_s[i] - out_p[i]));
    std::printf("prefix+power n=%zu  serial %.4fs  openmp %.4fs  "
                "speedup %.2fx  max_diff %.3e\n",
                n, ts, tp, ts / tp, err);
}

void bench_multistart() {
    GridPtr grid = make_grid(Interval(0.0, 1.0), 10);
    WeightPair w(parse_weight("1+x"), parse_weight("1"), grid);
    ProblemSpec spec(3.0, 2.0, grid, w);
    SearchConfig cfg;
    cfg.n = 4;
    cfg.mode = SearchMode::max;
    cfg.starts = 16;
    cfg.rng_seed = 1;

    double lam_s = 0.0, lam_p = 0.0;
    const double ts = time_best_of(2, [&] {
        kernels::set_backend(kernels::Backend::serial);
        lam_s = lambda_extremes(spec, cfg).lambda_extreme;
    });
    const double tp = time_best_of(2, [&] {
        kernels::set_backend(kernels::Backend::openmp);
        lam_p = lambda_extremes(spec, cfg).lambda_extreme;
    });
    kernels::set_backend(kernels::Backend::openmp);
    std::printf("multistart n=4 starts=16  serial %.3fs  openmp %.3fs  "
                "speedup %.2fx  lambda diff %.3e\n",
                ts, tp, ts / tp, std::fabs(lam_s - lam_p));
}

} // namespace

int main() {
    std::printf("threads available: %d\n", kernels::max_threads());
    for (std::size_t n : {std::size_t(1) << 16, std::size_t(1) << 20,
                          std::size_t(1) << 22})
        bench_kernels(n);
    bench_multistart();
    return 0;
}
