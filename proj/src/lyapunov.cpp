#include "cgpoly/lyapunov.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cgpoly/core.hpp"
#include "cgpoly/parallel.hpp"
#include "cgpoly/stable.hpp"

namespace cgpoly {

LyapunovEstimate lyapunov_estimate(const EnvSpec& spec, int n, long t,
                                   std::uint64_t key, int n_batches,
                                   double burn_in_fraction) {
    if (t < 10 * n_batches)
        throw std::invalid_argument("lyapunov_estimate: t too small for batching");
    PartitionStepper stepper(spec, n, key, LogVec(n, 0.0));
    const long burn = static_cast<long>(burn_in_fraction * t);
    std::vector<double> incs;
    incs.reserve(t - burn);
    double prev = alpha_norm_log(stepper.state(), 1.0);
    for (long s = 1; s <= t; ++s) {
        stepper.step();
        const double cur = alpha_norm_log(stepper.state(), 1.0);
        if (s > burn) incs.push_back(cur - prev);
        prev = cur;
    }
    LyapunovEstimate est;
    est.t = t;
    est.n = n;
    est.v_hat = mean(incs);
    est.std_err = batch_means_se(incs, n_batches);
    est.sigma_hat = batch_means_sigma(incs, n_batches);
    est.degenerate = spec.is_degenerate() || est.sigma_hat == 0.0;
    return est;
}

double upsilon_sample(double alpha, int n, RngStream& rng) {
    LogVec logs(n);
    for (auto& v : logs) v = sample_stable_log(alpha, rng);
    return alpha_norm_log(logs, alpha);
}

VelocityVariance velocity_variance_exact_mc(double alpha, int n, long n_samples,
                                            std::uint64_t key) {
    if (n_samples < 10000)
        throw std::invalid_argument("velocity_variance_exact_mc: need >= 1e4 samples");
    std::vector<double> ups(n_samples);
    parallel_for(n_samples, [&](std::size_t k) {
        RngStream rng = derive_substream(key, k, "upsilon");
        ups[k] = upsilon_sample(alpha, n, rng);
    });
    VelocityVariance out;
    out.n_samples = n_samples;
    out.v = mean(ups);
    out.sigma2 = variance(ups);
    double m4 = 0.0;
    for (double u : ups) {
        const double d = u - out.v;
        m4 += d * d * d * d;
    }
    m4 /= static_cast<double>(n_samples);
    out.se_v = std::sqrt(out.sigma2 / static_cast<double>(n_samples));
    out.se_sigma2 =
        std::sqrt(std::max(0.0, m4 - out.sigma2 * out.sigma2) /
                  static_cast<double>(n_samples));
    return out;
}

AsymptoticValues asymptotics(double alpha, double n_sites) {
    validate_stable_alpha(alpha);
    if (!(n_sites > std::numbers::e))
        throw std::invalid_argument("asymptotics: need N > e for log log N");
    AsymptoticValues out;
    out.c_alpha = std::tgamma(alpha) * std::sin(std::numbers::pi * alpha) /
                  (std::numbers::pi * alpha);
    const double log_n = std::log(n_sites);
    out.v_asym =
        (log_n + std::log(log_n) - std::lgamma(1.0 - alpha)) / alpha;
    out.sigma2_asym =
        std::numbers::pi * std::numbers::pi / (3.0 * alpha * alpha * log_n);
    return out;
}

CltReport clt_fluctuation_experiment(const EnvSpec& spec, int n, long t,
                                     int replicas, std::uint64_t key,
                                     double level, int est_t_factor) {
    if (replicas < 200)
        throw std::invalid_argument("clt experiment: need >= 200 replicas");
    CltReport rep;
    if (spec.is_degenerate()) {
        rep.degenerate = true;
        rep.estimate = LyapunovEstimate{std::log(static_cast<double>(n)),
                                        0.0, 0.0, t, n, true};
        rep.standardized.assign(replicas, 0.0);
        return rep;
    }
    // Long dedicated estimation run; 200 batches keep the sigma error well
    // under the KS resolution at these replica counts.
    rep.estimate = lyapunov_estimate(
        spec, n, est_t_factor * t,
        mix64(key ^ hash_label("clt.estimate")), 200);
    if (rep.estimate.sigma_hat == 0.0) {
        rep.degenerate = true;
        rep.standardized.assign(replicas, 0.0);
        return rep;
    }

    rep.standardized.resize(replicas);
    parallel_for(replicas, [&](std::size_t r) {
        PartitionStepper stepper(
            spec, n, mix64(key ^ mix64(0x1000 + r)), LogVec(n, 0.0));
        for (long s = 0; s < t; ++s) stepper.step();
        const double log_z = stepper.state()[0];
        rep.standardized[r] =
            (log_z - rep.estimate.v_hat * static_cast<double>(t)) /
            (rep.estimate.sigma_hat * std::sqrt(static_cast<double>(t)));
    });
    rep.ks = ks_one_sample(rep.standardized,
                           [](double x) { return normal_cdf(x); }, level);
    return rep;
}

RescaledWalkReport rescaled_walk_marginal(double alpha, int n, int k_n,
                                          double tau, int replicas,
                                          std::uint64_t key,
                                          const std::vector<double>& us) {
    validate_stable_alpha(alpha);
    if (k_n < 10) throw std::invalid_argument("rescaled_walk: k_N must be >= 10");
    const double log_n = std::log(static_cast<double>(n));
    const double gamma_n =
        (std::log(static_cast<double>(n) * log_n) - std::lgamma(1.0 - alpha)) /
            alpha +
        std::log(static_cast<double>(k_n)) / (alpha * log_n);
    const double scale = alpha * log_n / static_cast<double>(k_n);
    const double phi0 = log_n / alpha; // log ||1||_alpha

    // In the stable case the height is a random walk with Upsilon jumps, so
    // the marginal is sampled directly from k_N tau jumps.
    auto draw_marginal = [&](double tau_loc, std::uint64_t subkey,
                             std::vector<double>& out) {
        const int steps = static_cast<int>(std::lround(k_n * tau_loc));
        parallel_for(out.size(), [&](std::size_t r) {
            RngStream rng = derive_substream(subkey, r, "walk.replica");
            double phi = phi0;
            for (int s = 0; s < steps; ++s) phi += upsilon_sample(alpha, n, rng);
            out[r] = (phi - gamma_n * k_n * tau_loc) * scale;
        });
    };

    RescaledWalkReport rep;
    rep.us = us;
    rep.samples.resize(replicas);
    if (tau == 0.0) {
        rep.samples.assign(replicas, 0.0);
    } else {
        draw_marginal(tau, mix64(key ^ hash_label("walk.tau")), rep.samples);
    }
    auto cf = empirical_cf(rep.samples, rep.us);
    for (std::size_t i = 0; i < us.size(); ++i) {
        rep.cf_modulus.push_back(std::abs(cf[i]));
        rep.cf_target.push_back(
            std::exp(-std::numbers::pi * std::abs(us[i]) * tau / 2.0));
    }

    // Independent-increment structure: tau=2 marginal vs the sum of two
    // independent tau=1 marginals. The sum carries the phi(0) offset twice,
    // so one copy is removed before comparing.
    std::vector<double> two(replicas), one_a(replicas), one_b(replicas);
    draw_marginal(2.0, mix64(key ^ hash_label("walk.two")), two);
    draw_marginal(1.0, mix64(key ^ hash_label("walk.one_a")), one_a);
    draw_marginal(1.0, mix64(key ^ hash_label("walk.one_b")), one_b);
    std::vector<double> summed(replicas);
    for (int r = 0; r < replicas; ++r)
        summed[r] = one_a[r] + one_b[r] - phi0 * scale;
    rep.additivity_ks = ks_two_sample(two, summed, 0.05);
    return rep;
}

} // namespace cgpoly
