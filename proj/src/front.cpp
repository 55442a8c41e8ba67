#include "cgpoly/front.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cgpoly/core.hpp"
#include "cgpoly/lyapunov.hpp"
#include "cgpoly/parallel.hpp"
#include "cgpoly/stable.hpp"

namespace cgpoly {

FrontProfile::FrontProfile(std::vector<double> heights)
    : sorted_(std::move(heights)) {
    if (sorted_.empty()) throw std::invalid_argument("front_profile: empty heights");
    std::sort(sorted_.begin(), sorted_.end());
}

double FrontProfile::value(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(sorted_.end() - it) /
           static_cast<double>(sorted_.size());
}

FrontProfile front_profile(const LogVec& z) { return FrontProfile(z); }

namespace {

double env_alpha_index(const EnvSpec& spec) {
    if (spec.dist != EnvSpec::Dist::Stable && spec.dist != EnvSpec::Dist::Pareto)
        throw std::invalid_argument(
            "front check: env spec must have an alpha-regular tail");
    return spec.alpha;
}

// sup over jump points of |U - u_alpha| for sorted centered heights; the sup
// of a step function against a continuous one is attained at the steps.
double sup_deviation_vs_u_alpha(const std::vector<double>& sorted_heights,
                                double alpha) {
    const std::size_t n = sorted_heights.size();
    double sup = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double u = u_alpha(sorted_heights[k], alpha);
        const double above = static_cast<double>(n - k) / n; // U just below h_k
        const double below = static_cast<double>(n - k - 1) / n;
        sup = std::max(sup, std::max(std::abs(above - u), std::abs(below - u)));
    }
    return sup;
}

} // namespace

CenteredFrontReport centered_front_check(const EnvSpec& spec, int n, int t,
                                         std::uint64_t key) {
    const double alpha = env_alpha_index(spec);
    if (t < 2) throw std::invalid_argument("centered_front_check: t must be >= 2");
    PartitionTrajectory traj = run_partition(spec, n, t, alpha, key);
    std::vector<double> centered(n);
    for (int j = 0; j < n; ++j) centered[j] = traj.z[t][j] - traj.phi[t - 1];
    std::sort(centered.begin(), centered.end());
    CenteredFrontReport rep;
    rep.n = n;
    rep.t = t;
    rep.sup_deviation = sup_deviation_vs_u_alpha(centered, alpha);
    return rep;
}

FluctuationReport front_fluctuation_experiment(double alpha, int n, int t,
                                               double x, int replicas,
                                               std::uint64_t key, double u_probe,
                                               long v_mc_samples) {
    validate_stable_alpha(alpha);
    if (replicas < 500)
        throw std::invalid_argument("fluctuation experiment: need >= 500 replicas");
    if (t < 2) throw std::invalid_argument("fluctuation experiment: t must be >= 2");

    FluctuationReport rep;
    rep.v_n = velocity_variance_exact_mc(alpha, n, v_mc_samples,
                                         mix64(key ^ hash_label("fluct.vn")))
                  .v;
    rep.u_prime = u_alpha_derivative(x, alpha);
    const double u_ax = u_alpha(x, alpha);
    const double log_n = std::log(static_cast<double>(n));

    // Stable-case height representation: conditional on the past the heights
    // are phi(t-1) + log S with an i.i.d. stable row, and
    // phi(t-1) - phi(0) - (t-1) v_N is the centered Upsilon walk.
    rep.samples.resize(replicas);
    parallel_for(replicas, [&](std::size_t r) {
        RngStream rng = derive_substream(key, r, "fluct.replica");
        double walk = 0.0;
        for (int l = 1; l <= t - 1; ++l)
            walk += upsilon_sample(alpha, n, rng) - rep.v_n;
        // U_N(t, x + (t-1)v_N + phi(0)) counts log S > x - walk.
        const double threshold = x - walk;
        int count = 0;
        for (int j = 0; j < n; ++j)
            if (sample_stable_log(alpha, rng) > threshold) ++count;
        rep.samples[r] =
            log_n * (static_cast<double>(count) / static_cast<double>(n) - u_ax);
    });

    auto cf = empirical_cf(rep.samples, {u_probe});
    rep.cf_modulus = std::abs(cf[0]);
    rep.cf_target = std::exp(-static_cast<double>(t - 1) *
                             std::abs(u_probe * rep.u_prime) *
                             std::numbers::pi / 2.0);
    return rep;
}

PppReport ppp_experiment(double alpha, int n, int replicas,
                         const std::vector<std::pair<double, double>>& bins,
                         std::uint64_t key) {
    validate_stable_alpha(alpha);
    if (replicas < 100)
        throw std::invalid_argument("ppp experiment: need >= 100 replicas");
    const double loglog_n = std::log(std::log(static_cast<double>(n)));
    const double log_c = -std::lgamma(1.0 - alpha);

    PppReport rep;
    rep.bin_bounds = bins;
    rep.bin_observed.assign(bins.size(), 0.0);
    std::vector<double> count_nonneg(replicas, 0.0), raw_unit(replicas, 0.0),
        max_sigma(replicas, 0.0);
    std::vector<std::vector<double>> bin_counts(replicas,
                                                std::vector<double>(bins.size(), 0.0));

    parallel_for(replicas, [&](std::size_t r) {
        RngStream rng = derive_substream(key, r, "ppp.replica");
        LogVec logs(n);
        for (auto& v : logs) v = sample_stable_log(alpha, rng);
        const double norm = alpha_norm_log(logs, alpha);
        double top = -1e300;
        for (int i = 0; i < n; ++i) {
            const double sigma = alpha * (logs[i] - norm) + loglog_n;
            top = std::max(top, sigma);
            if (sigma >= 0.0) count_nonneg[r] += 1.0;
            for (std::size_t b = 0; b < bins.size(); ++b)
                if (sigma >= bins[b].first && sigma < bins[b].second)
                    bin_counts[r][b] += 1.0;
            // Raw-tail point c N S_i^{-alpha} lands in [0,1] iff
            // log c + log N - alpha log S_i <= 0.
            if (log_c + std::log(static_cast<double>(n)) - alpha * logs[i] <= 0.0)
                raw_unit[r] += 1.0;
        }
        max_sigma[r] = top;
    });

    rep.mean_count_nonneg = mean(count_nonneg);
    rep.raw_unit_count = mean(raw_unit);
    rep.median_max_sigma = median(max_sigma);
    for (int r = 0; r < replicas; ++r)
        for (std::size_t b = 0; b < bins.size(); ++b)
            rep.bin_observed[b] += bin_counts[r][b];
    for (const auto& [lo, hi] : bins)
        rep.bin_expected.push_back(
            static_cast<double>(replicas) *
            (std::exp(-lo) - (std::isinf(hi) ? 0.0 : std::exp(-hi))));
    rep.chi_square = chi_square_counts(rep.bin_observed, rep.bin_expected, 0.01);
    return rep;
}

MaxWeightReport max_weight_check(const EnvSpec& spec, int n, int t,
                                 std::uint64_t key) {
    const double alpha = env_alpha_index(spec);
    if (t < 2) throw std::invalid_argument("max_weight_check: t must be >= 2");
    PartitionTrajectory traj = run_partition(spec, n, t - 1, alpha, key);
    const LogVec& z = traj.z[t - 1];
    const double norm = traj.phi[t - 1];
    MaxWeightReport rep;
    double mass = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = std::exp(z[i] - norm);
        rep.max_weight = std::max(rep.max_weight, a);
        mass += std::pow(a, alpha);
    }
    rep.alpha_mass_error = std::abs(mass - 1.0);
    return rep;
}

PerturbedReport perturbed_convergence_check(const EnvSpec& spec, int n, int t,
                                            int replicas, int coords,
                                            std::uint64_t key, double level) {
    const double alpha = env_alpha_index(spec);
    if (t < 2) throw std::invalid_argument("perturbed check: t must be >= 2");
    if (coords < 1 || coords > n)
        throw std::invalid_argument("perturbed check: bad coordinate count");

    PerturbedReport rep;
    rep.replicas = replicas;
    rep.coords_per_replica = coords;
    rep.zbar.assign(static_cast<std::size_t>(replicas) * coords, 0.0);
    std::vector<double> c0(replicas), c1(replicas);

    parallel_for(replicas, [&](std::size_t r) {
        const std::uint64_t rkey = mix64(key ^ mix64(0x9000 + r));
        // Z(t-1) via the streamed recursion, then k columns of xi(t).
        PartitionTrajectory traj = run_partition(spec, n, t - 1, alpha, rkey);
        const LogVec& z = traj.z[t - 1];
        const double norm = traj.phi[t - 1];
        std::vector<double> colw;
        LogVec terms(n);
        for (int c = 0; c < coords; ++c) {
            env_col(spec, n, rkey, t, c, colw);
            for (int i = 0; i < n; ++i) terms[i] = z[i] - norm + colw[i];
            const double zbar = std::exp(log_sum_exp(terms));
            rep.zbar[r * coords + c] = zbar;
            if (c == 0) c0[r] = zbar;
            if (c == 1) c1[r] = zbar;
        }
    });

    rep.ks = ks_one_sample(rep.zbar,
                           [alpha](double x) { return stable_cdf(x, alpha); },
                           level);
    if (coords >= 2) rep.pair_correlation = correlation(c0, c1);
    return rep;
}

} // namespace cgpoly
