// Height and front statistics: the profile U_N, its centered convergence to
// u_alpha, fluctuation scaling, the Poisson point process limit of the
// invariant simplex point, and the perturbative (domain-of-attraction)
// checks.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cgpoly/env.hpp"
#include "cgpoly/stats.hpp"

namespace cgpoly {

// U_N(x) = (1/N) #{j : height_j > x}, right-continuous nonincreasing step
// function with N jumps of size 1/N.
class FrontProfile {
  public:
    explicit FrontProfile(std::vector<double> heights);
    double value(double x) const;
    const std::vector<double>& sorted_heights() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

FrontProfile front_profile(const LogVec& z);

struct CenteredFrontReport {
    double sup_deviation = 0.0; // sup_x |U_N(t, x + phi(t-1)) - u_alpha(x)|
    int n = 0;
    int t = 0;
};

// Runs the real recursion for t steps and takes the sup over the height
// points of |U - u_alpha| on the centered heights log Z(t,j) - phi(t-1).
// The env spec must carry an alpha-regular tail (stable or pareto).
CenteredFrontReport centered_front_check(const EnvSpec& spec, int n, int t,
                                         std::uint64_t key);

struct FluctuationReport {
    std::vector<double> samples;   // log N [U_N(...) - u_alpha(x)]
    double u_prime = 0.0;          // u_alpha'(x)
    double cf_modulus = 0.0;       // |CF| at the probe frequency
    double cf_target = 0.0;        // exp(-(t-1)|u u'| pi/2)
    double v_n = 0.0;              // centering velocity used
};

// Front fluctuations at fixed x, via the exact stable-case
// representation of the heights (random-walk centering plus an i.i.d.
// stable row). v_n is Monte Carlo with its SE folded into the tolerance.
FluctuationReport front_fluctuation_experiment(double alpha, int n, int t,
                                               double x, int replicas,
                                               std::uint64_t key, double u_probe = 1.0,
                                               long v_mc_samples = 100000);

struct PppReport {
    double mean_count_nonneg = 0.0;   // points with sigma >= 0 per replica
    TestResult chi_square;            // pooled bin counts vs intensity mass
    std::vector<double> bin_observed;
    std::vector<double> bin_expected;
    double raw_unit_count = 0.0;      // raw-tail points c N S^-alpha in [0,1]
    double median_max_sigma = 0.0;    // location of the top transformed point
    std::vector<std::pair<double, double>> bin_bounds;
};

// Transformed extremes alpha log X_{N,alpha}(i) + log log N of the
// stationary simplex point X = S/||S||_alpha against the limit intensity
// e^{-sigma} d sigma, plus the raw-tail unit-intensity sanity count.
PppReport ppp_experiment(double alpha, int n, int replicas,
                         const std::vector<std::pair<double, double>>& bins,
                         std::uint64_t key);

struct MaxWeightReport {
    double max_weight = 0.0;   // max_i a_{N,i}
    double alpha_mass_error = 0.0; // |sum_i a_{N,i}^alpha - 1|
};

// a_{N,i} = Z(t-1,i)/||Z(t-1)||_alpha from the real recursion; requires t >= 2.
MaxWeightReport max_weight_check(const EnvSpec& spec, int n, int t,
                                 std::uint64_t key);

struct PerturbedReport {
    std::vector<double> zbar;  // pooled Z(t,i)/||Z(t-1)||_alpha samples
    TestResult ks;             // vs the stable CDF
    double pair_correlation = 0.0; // replica-wise correlation of 2 coordinates
    int replicas = 0;
    int coords_per_replica = 0;
};

// Domain-of-attraction convergence: normalized heights across replicas
// vs S_alpha,
// with k coordinates per replica (asymptotically independent).
PerturbedReport perturbed_convergence_check(const EnvSpec& spec, int n, int t,
                                            int replicas, int coords,
                                            std::uint64_t key,
                                            double level = 0.05);

} // namespace cgpoly
