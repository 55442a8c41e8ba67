// Polymer path measures: finite-horizon P2L chain, its infinite-volume
// limit, the co-variant site law nu_N, stationarity and time-reversal
// checks, and Markov path sampling.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cgpoly/core.hpp"
#include "cgpoly/env.hpp"
#include "cgpoly/projective.hpp"

namespace cgpoly {

struct TransitionRow {
    int source = 0;         // state k (or l for the reversed chain)
    long long time = 0;     // transition from time t to t+1
    LogVec log_probs;       // normalized, sums to 1

    std::vector<double> probs() const;
    void check_normalized(double tol = 1e-12) const;
};

// Finite-horizon row: P(j_{t+1} = l | j_t = k) proportional to
// omega_{k,l}(t+1) Z_N(t+1,l; T,*). `xis` are the slices xi(t+1..T).
TransitionRow finite_horizon_transition(std::span<const EnvironmentMatrix> xis,
                                        long long t, int horizon, int k);

// Infinite-volume row via the forward limit V(t+1), both the direct form
// and the normalized identity form; `cross_check_gap` records their
// disagreement (bounded by the limit's truncation error).
struct InfiniteTransition {
    TransitionRow row;
    double limit_bound = 0.0;
    double cross_check_gap = 0.0;
};
InfiniteTransition infinite_transition(EnvironmentWindow& env, long long t,
                                       int k, double tol);

struct CovariantLaw {
    long long time = 0;
    LogVec log_nu;       // normalized
    double bound = 0.0;  // certified entrywise error propagated from limits

    std::vector<double> probs() const;
};

// nu_N(t,j) proportional to Vbar(t,j) V(t,j); computed from independent
// forward/backward truncations, each certified to tol/4.
CovariantLaw covariant_law(EnvironmentWindow& env, long long t, double tol);

struct StationarityReport {
    double residual = 0.0;       // max_l |nu(t+1,l) - sum_k nu(t,k) P(l|k)|
    double combined_bound = 0.0; // sum of certified bounds entering the check
    bool pass = false;           // residual <= 10 x combined bound
};

// Stationarity of nu under the infinite-volume transitions.
StationarityReport covariance_check(EnvironmentWindow& env, long long t, double tol);

// Reversed-chain row: P(j_{t+1}=k | j_t=l) proportional to
// omega_{k,l}(t+1) Vbar(t,k).
TransitionRow time_reversed_transition(EnvironmentWindow& env, long long t,
                                       int ell, double tol);

struct ReversalReport {
    double residual = 0.0;       // max_{k,l} balance violation
    double combined_bound = 0.0;
    bool pass = false;
};

// Detailed balance nu(t,k) P(l|k) = nu(t+1,l) Pbar(k|l), entrywise.
ReversalReport time_reversal_check(EnvironmentWindow& env, long long t, double tol);

// Markov sampling along supplied rows; transitions[s] carries the step from
// time s to s+1 for every source state.
std::vector<int> sample_polymer_path(
    const std::vector<std::vector<TransitionRow>>& transitions,
    const std::vector<double>& start_probs, RngStream& rng);

} // namespace cgpoly
