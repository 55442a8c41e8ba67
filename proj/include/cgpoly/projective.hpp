// Projective machinery: the metric d on the 1-simplex, Birkhoff-style
// contraction coefficients, certified forward/backward direction limits,
// ergodic averages of the simplex chain, and Perron-Frobenius
// comparability checks.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cgpoly/core.hpp"
#include "cgpoly/env.hpp"

namespace cgpoly {

// d(x,y) = phi(m(x,y) m(y,x)), phi(s) = (1-s)/(1+s), with
// m(x,y) = min_i x_i/y_i over coordinates with y_i > 0. Values in [0,1];
// boundary-vs-interior pairs sit at distance 1.
double proj_distance(const SimplexPoint& x, const SimplexPoint& y);

// c(g) = sup over the simplex of d(g.x, g.y), realized at basis-vector
// image pairs: max_{i<j} d(g e_i, g e_j). O(N^3).
double contraction_coeff(const EnvironmentMatrix& g);

// Projective action g . x = gx / ||gx||_1 in log domain.
SimplexPoint projective_action(const EnvironmentMatrix& g, const SimplexPoint& x);

struct DirectionLimit {
    SimplexPoint point;
    double bound = 1.0; // certified d-distance to the true limit
    int steps = 0;
};

inline constexpr int kLimitStepCap = 100000;

// Forward limit V(anchor) = lim_T Psi_alpha(xi(anchor+1)...xi(T) v):
// later-time slices enter on the inner side, the running product of
// c(xi(s)) certifies d(estimate, limit). Throws past the step cap.
DirectionLimit limit_direction(EnvironmentWindow& env, long long anchor,
                               double alpha, double tol,
                               int step_cap = kLimitStepCap);

// Backward limit Vbar(anchor) = lim Psi_alpha(xi(anchor)* xi(anchor-1)* ... v).
DirectionLimit backward_limit_direction(EnvironmentWindow& env, long long anchor,
                                        double alpha, double tol,
                                        int step_cap = kLimitStepCap);

// Convenience overloads anchored at time 0 on a fresh keyed environment.
DirectionLimit limit_direction(const EnvSpec& spec, int n, double alpha,
                               double tol, std::uint64_t key);
DirectionLimit backward_limit_direction(const EnvSpec& spec, int n, double alpha,
                                        double tol, std::uint64_t key);

struct ShiftCovarianceReport {
    double distance = 0.0;       // d(xi(0) . V(0),  V(-1))
    double combined_bound = 0.0; // bound arithmetic for the two estimates
    bool pass = false;
};

// Checks xi(0) . V(0) = V(-1) within certified bounds on one environment.
ShiftCovarianceReport shift_covariance_check(const EnvSpec& spec, int n,
                                             double alpha, double tol,
                                             std::uint64_t key);

// (1/t) sum_s f(X(s)) along the simplex chain X(s) = Psi_alpha(xi(s)* X(s-1))
// started from the uniform point.
double ergodic_average(const std::function<double(const SimplexPoint&)>& f,
                       const EnvSpec& spec, int n, double alpha, int t,
                       std::uint64_t key);

struct PfReport {
    double log_pf = 0.0;             // log lambda^PF(Pi(t))
    double discrepancy = 0.0;        // |log lambda^PF - log ||Pi(t) 1||_1|
    double entry_ratio = 0.0;        // log max Pi_ij / min Pi_ij
    double entry_ratio_bound = 0.0;  // from time-1 and time-t slices
    double image_ratio = 0.0;        // log max (Pi y) / min (Pi y), random y
    double image_ratio_bound = 0.0;  // from time-1 slice
    int power_iterations = 0;
    bool ratios_ok = false;
};

// Power iteration for the Perron root of Pi(t) = xi(1)...xi(t) plus the
// matrix-coefficient comparability bounds that only involve the first and
// last slices.
PfReport pf_comparability_check(std::span<const EnvironmentMatrix> xis,
                                std::uint64_t key, double tol = 1e-12,
                                int iter_cap = 10000);

// Log-domain matrix product (used by limits and the PF check).
EnvironmentMatrix log_matmul(const EnvironmentMatrix& a, const EnvironmentMatrix& b);

} // namespace cgpoly
