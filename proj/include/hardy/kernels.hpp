#ifndef HARDY_KERNELS_HPP
#define HARDY_KERNELS_HPP

#include <cstddef>
#include <span>
#include <vector>

// Low-level array kernels. Every kernel has a serial reference version and an
// OpenMP version; which one runs is a process-wide switch so tests and the
// benchmark can compare them on identical inputs. The numerical results must
// agree to roundoff (reductions are reassociated under OpenMP).

namespace hardy::kernels {

enum class Backend { serial, openmp };

Backend backend() noexcept;
void set_backend(Backend b) noexcept;

// sum_i w[i] * |x[i]|^p
double weighted_abs_pow_sum(std::span<const double> x,
                            std::span<const double> w, double p);
double weighted_abs_pow_sum_serial(std::span<const double> x,
                                   std::span<const double> w, double p);

// out[i] = |x[i]|^{p-1} sgn(x[i])
void signed_power_array(std::span<const double> x, double p,
                        std::span<double> out);
void signed_power_array_serial(std::span<const double> x, double p,
                               std::span<double> out);

// out[i] = a[i] * b[i]
void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out);
void multiply_serial(std::span<const double> a, std::span<const double> b,
                     std::span<double> out);

// out[i] = c * x[i]
void scale(std::span<const double> x, double c, std::span<double> out);
void scale_serial(std::span<const double> x, double c, std::span<double> out);

// out[i] = a[i] + c * b[i]
void axpy(std::span<const double> a, double c, std::span<const double> b,
          std::span<double> out);
void axpy_serial(std::span<const double> a, double c,
                 std::span<const double> b, std::span<double> out);

// Trapezoid prefix integral: out[0] = 0,
// out[i] = out[i-1] + (nodes[i]-nodes[i-1]) * (x[i-1]+x[i]) / 2.
// Inherently sequential in its recurrence; the OpenMP version uses a
// two-pass block scan.
void trapezoid_prefix(std::span<const double> nodes,
                      std::span<const double> x, std::span<double> out);
void trapezoid_prefix_serial(std::span<const double> nodes,
                             std::span<const double> x, std::span<double> out);

int max_threads() noexcept;

} // namespace hardy::kernels

#endif
