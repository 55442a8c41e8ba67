// Partition-function engine: the L2P recursion Z(t)* = Z(t-1)* xi(t) in log
// domain, alpha-norms, simplex projection, and the brute-force path oracle.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cgpoly/env.hpp"
#include "cgpoly/logdomain.hpp"

namespace cgpoly {

// log ||v||_alpha = (1/alpha) log sum_i e^{alpha v_i}.
double alpha_norm_log(const LogVec& v, double alpha);

// Point of the alpha-simplex: sum_i e^{alpha c_i} = 1.
struct SimplexPoint {
    double alpha = 1.0;
    LogVec log_coords;

    double coord(int i) const; // e^{log_coords[i]}
    void check_on_simplex(double tol = 1e-12) const;
};

// Psi_alpha(v) = v / ||v||_alpha, log domain.
SimplexPoint project_simplex(const LogVec& v, double alpha);

// Re-project a simplex point onto a different alpha-simplex.
SimplexPoint reproject(const SimplexPoint& x, double alpha);

// Z'(j) = log sum_i exp(z(i) + log xi_{i,j}); the transposed action xi* z.
LogVec step_recursion(const LogVec& z, const EnvironmentMatrix& xi);

// Trajectory of the recursion with heights phi(s) = log||Z(s)||_alpha.
struct PartitionTrajectory {
    double alpha = 1.0;
    std::vector<LogVec> z;            // z[s], s = 0..t
    std::vector<double> phi;          // phi[s], s = 0..t
    std::vector<double> increments;   // phi[s]-phi[s-1], s = 1..t
    std::vector<double> increments_l1; // 1-norm increments, s = 1..t

    // S_N(s,j) in log form: log Z(s,j) - phi(s-1), s >= 1.
    double log_s(int s, int j) const { return z[s][j] - phi[s - 1]; }
};

// Runs t steps from z0 (default all-ones, i.e. zeros in log domain) with
// slices streamed row-by-row from (key, step). Never materializes a slice,
// so N = 10^4 runs in O(N) memory.
PartitionTrajectory run_partition(const EnvSpec& spec, int n, int t,
                                  double alpha, std::uint64_t key,
                                  const LogVec* z0 = nullptr);

// Single streamed step; exposed for estimators that keep only increments.
class PartitionStepper {
  public:
    PartitionStepper(EnvSpec spec, int n, std::uint64_t key, LogVec z0);

    // Advances one step; returns the pair of increments (alpha handled by
    // caller through alpha_norm_log on state()).
    void step();
    const LogVec& state() const { return z_; }
    long long time() const { return t_; }

  private:
    EnvSpec spec_;
    int n_;
    std::uint64_t key_;
    LogVec z_;
    long long t_ = 0;
    std::vector<double> row_;
    std::vector<double> acc_;
    std::vector<double> colmax_;
};

// Point-to-point partition function oracles. Both return
// log Z_N(0,i;t,j) for slices xis[0..t-1] = xi(1..t).
//
// p2p_bruteforce enumerates all N^{t-1} paths (guarded); p2p_matrix computes
// the (i,j) entry of the product xi(1)...xi(t) by log mat-vec products.
double p2p_bruteforce(std::span<const EnvironmentMatrix> xis, int i, int j);
double p2p_matrix(std::span<const EnvironmentMatrix> xis, int i, int j);

inline constexpr long long kBruteforcePathGuard = 10'000'000;

} // namespace cgpoly
