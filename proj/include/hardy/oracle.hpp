#ifndef HARDY_ORACLE_HPP
#define HARDY_ORACLE_HPP

#include <vector>

#include "hardy/operator.hpp"

namespace hardy {

struct ShootingConfig {
    int ode_steps = 20000;
    double bracket_tol = 1e-10; // relative width of the final lambda bracket
    double lambda_lo = 0.1;
    double lambda_hi = 10.0;

    void validate() const;
};

// Eigenvalue ((n+1/2) pi / (b-a))^2 of -w'' = lambda w, w(a)=0, w'(b)=0.
double classical_eigen_p2(int n, const Interval& interval);

// Shooting solver for -((w')_(p))' = lambda (w)_(q), w(a)=0, w'(b)=0 with
// exactly n interior zeros of w'. Returns lambda in the integral-system
// convention (rescaled so that ||w'||_p = 1). u = v = 1 only.
double shoot_pq_laplacian(double p, double q, int n, const Interval& interval,
                          const ShootingConfig& config = {});

// Leading singular values of the discretized T for p = q = 2, descending.
// lambda_n of the nonlinear system is recovered as s_{n+1}^{-2}.
std::vector<double> svd_eigen_p2(const ProblemSpec& spec, int count);

} // namespace hardy

#endif
