#include "hardy/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hardy::kernels {

namespace {
std::atomic<Backend> g_backend{
#ifdef _OPENMP
    Backend::openmp
#else
    Backend::serial
#endif
};

// OpenMP pays off only on large arrays; typical grids here are a few
// thousand nodes, so the cutoff matters.
constexpr std::size_t kParallelCutoff = 1 << 14;

inline bool use_omp(std::size_t n) {
#ifdef _OPENMP
    return g_backend.load(std::memory_order_relaxed) == Backend::openmp &&
           n >= kParallelCutoff;
#else
    (void)n;
    return false;
#endif
}

inline double spow(double t, double p) {
    if (t == 0.0) return 0.0;
    double m = std::pow(std::fabs(t), p - 1.0);
    return t > 0.0 ? m : -m;
}
} // namespace

Backend backend() noexcept { return g_backend.load(std::memory_order_relaxed); }
void set_backend(Backend b) noexcept { g_backend.store(b, std::memory_order_relaxed); }

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

double weighted_abs_pow_sum_serial(std::span<const double> x,
                                   std::span<const double> w, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += w[i] * std::pow(std::fabs(x[i]), p);
    return s;
}

double weighted_abs_pow_sum(std::span<const double> x,
                            std::span<const double> w, double p) {
    const std::size_t n = x.size();
    if (!use_omp(n)) return weighted_abs_pow_sum_serial(x, w, p);
    double s = 0.0;
#pragma omp parallel for reduction(+ : s)
    for (long i = 0; i < static_cast<long>(n); ++i)
        s += w[i] * std::pow(std::fabs(x[i]), p);
    return s;
}

void signed_power_array_serial(std::span<const double> x, double p,
                               std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = spow(x[i], p);
}

void signed_power_array(std::span<const double> x, double p,
                        std::span<double> out) {
    const std::size_t n = x.size();
    if (!use_omp(n)) return signed_power_array_serial(x, p, out);
#pragma omp parallel for
    for (long i = 0; i < static_cast<long>(n); ++i) out[i] = spow(x[i], p);
}

void multiply_serial(std::span<const double> a, std::span<const double> b,
                     std::span<double> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
    const std::size_t n = a.size();
    if (!use_omp(n)) return multiply_serial(a, b, out);
#pragma omp parallel for
    for (long i = 0; i < static_cast<long>(n); ++i) out[i] = a[i] * b[i];
}

void scale_serial(std::span<const double> x, double c, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = c * x[i];
}

void scale(std::span<const double> x, double c, std::span<double> out) {
    const std::size_t n = x.size();
    if (!use_omp(n)) return scale_serial(x, c, out);
#pragma omp parallel for
    for (long i = 0; i < static_cast<long>(n); ++i) out[i] = c * x[i];
}

void axpy_serial(std::span<const double> a, double c,
                 std::span<const double> b, std::span<double> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + c * b[i];
}

void axpy(std::span<const double> a, double c, std::span<const double> b,
          std::span<double> out) {
    const std::size_t n = a.size();
    if (!use_omp(n)) return axpy_serial(a, c, b, out);
#pragma omp parallel for
    for (long i = 0; i < static_cast<long>(n); ++i) out[i] = a[i] + c * b[i];
}

void trapezoid_prefix_serial(std::span<const double> nodes,
                             std::span<const double> x,
                             std::span<double> out) {
    out[0] = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (nodes[i] - nodes[i - 1]) * (x[i - 1] + x[i]);
}

void trapezoid_prefix(std::span<const double> nodes, std::span<const double> x,
                      std::span<double> out) {
    const std::size_t n = x.size();
#ifdef _OPENMP
    if (use_omp(n)) {
        // Block scan: local prefix per chunk, then carry propagation.
        const int nt = omp_get_max_threads();
        std::vector<double> carry(static_cast<std::size_t>(nt) + 1, 0.0);
        const std::size_t chunk = (n + nt - 1) / nt;
#pragma omp parallel num_threads(nt)
        {
            const int t = omp_get_thread_num();
            const std::size_t lo = static_cast<std::size_t>(t) * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            if (lo < hi) {
                out[lo] = 0.0;
                for (std::size_t i = lo + 1; i < hi; ++i)
                    out[i] = out[i - 1] +
                             0.5 * (nodes[i] - nodes[i - 1]) * (x[i - 1] + x[i]);
                double c = out[hi - 1];
                if (hi < n)
                    c += 0.5 * (nodes[hi] - nodes[hi - 1]) * (x[hi - 1] + x[hi]);
                carry[static_cast<std::size_t>(t) + 1] = c;
            }
#pragma omp barrier
#pragma omp single
            for (int k = 1; k <= nt; ++k) carry[k] += carry[k - 1];
            if (lo < hi) {
                const double c = carry[t];
                for (std::size_t i = lo; i < hi; ++i) out[i] += c;
            }
        }
        return;
    }
#endif
    trapezoid_prefix_serial(nodes, x, out);
}

} // namespace hardy::kernels
