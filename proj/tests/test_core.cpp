#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cgpoly/core.hpp"
#include "cgpoly/env.hpp"
#include "cgpoly/logdomain.hpp"

using namespace cgpoly;

TEST_CASE("log_sum_exp basics") {
    CHECK(log_sum_exp(LogVec{0.0, 0.0}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(log_sum_exp(LogVec{kNegInf, 3.0}) == doctest::Approx(3.0).epsilon(1e-15));
    // High-precision reference: 1000.5 + log1p(e^{-0.5})
    CHECK(log_sum_exp(LogVec{1000.0, 1000.5}) ==
          doctest::Approx(1000.5 + std::log1p(std::exp(-0.5))).epsilon(1e-15));
    CHECK(log_sum_exp(LogVec{1000.0, 1000.5}) == doctest::Approx(1000.974077).epsilon(1e-9));
    CHECK(log_sum_exp(LogVec{7.25}) == 7.25); // exact for a single element
    CHECK(log_sum_exp(LogVec{kNegInf, kNegInf}) == kNegInf);
    CHECK_THROWS_AS(log_sum_exp(LogVec{}), std::invalid_argument);
}

TEST_CASE("alpha_norm_log") {
    // all-ones vector, N=4, alpha=1/2 -> log 16
    CHECK(alpha_norm_log(LogVec(4, 0.0), 0.5) ==
          doctest::Approx(std::log(16.0)).epsilon(1e-14));
    // alpha=1 reduces to log_sum_exp
    const LogVec v{0.3, -1.2, 2.0};
    CHECK(alpha_norm_log(v, 1.0) == doctest::Approx(log_sum_exp(v)).epsilon(1e-15));
    // 3-4-5: ||(3,4)||_2 = 5
    CHECK(alpha_norm_log(LogVec{std::log(3.0), std::log(4.0)}, 2.0) ==
          doctest::Approx(std::log(5.0)).epsilon(1e-14));
    CHECK_THROWS_AS(alpha_norm_log(v, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(alpha_norm_log(v, -1.0), std::invalid_argument);
}

TEST_CASE("project_simplex") {
    auto p = project_simplex(LogVec{std::log(2.0), std::log(2.0)}, 1.0);
    CHECK(p.log_coords[0] == doctest::Approx(std::log(0.5)).epsilon(1e-14));
    p.check_on_simplex();

    auto q = project_simplex(LogVec{0.0, std::log(3.0)}, 1.0);
    CHECK(q.coord(0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(q.coord(1) == doctest::Approx(0.75).epsilon(1e-14));

    // idempotence by homogeneity
    auto q2 = project_simplex(q.log_coords, 1.0);
    for (int i = 0; i < 2; ++i)
        CHECK(q2.log_coords[i] == doctest::Approx(q.log_coords[i]).epsilon(1e-14));

    CHECK_THROWS_AS(project_simplex(LogVec{kNegInf, kNegInf}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("sample_environment shapes and determinism") {
    RngStream rng = derive_substream(42, 0, "test.env");
    auto m = sample_environment(EnvSpec::constant_ones(), 3, rng);
    for (double w : m.logw) CHECK(w == 0.0);

    RngStream r1 = derive_substream(7, 1, "test.env");
    RngStream r2 = derive_substream(7, 1, "test.env");
    auto a = sample_environment(EnvSpec::stable(0.5), 4, r1);
    auto b = sample_environment(EnvSpec::stable(0.5), 4, r2);
    CHECK(a.logw == b.logw); // bit-identical for identical stream state

    CHECK_THROWS_AS(sample_environment(EnvSpec::stable(0.5), 1, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(EnvSpec::stable(1.5), std::invalid_argument);
    CHECK_THROWS_AS(EnvSpec::pareto(0.0), std::invalid_argument);
}

TEST_CASE("pareto draws carry the exact stable tail constant") {
    // P[omega > x] = x^{-alpha}/Gamma(1-alpha) for x above the support edge.
    const double alpha = 0.5;
    RngStream rng = derive_substream(88, 0, "test.pareto");
    const EnvSpec spec = EnvSpec::pareto(alpha);
    const int n = 200000;
    std::vector<double> logs(n);
    for (auto& v : logs) v = spec.log_draw(rng);
    const double gamma_term = std::tgamma(1.0 - alpha);
    for (double x : {1.0, 4.0, 25.0, 100.0}) {
        double tail = 0.0;
        for (double v : logs)
            if (v > std::log(x)) tail += 1.0;
        tail /= n;
        CHECK(tail * std::pow(x, alpha) * gamma_term ==
              doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("step_recursion closed forms and homogeneity") {
    RngStream rng = derive_substream(11, 0, "test.step");
    auto ones = sample_environment(EnvSpec::constant_ones(), 3, rng);

    LogVec z(3, 0.0);
    z = step_recursion(z, ones);
    for (double v : z) CHECK(v == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    // t iterations from zeros: t log N exactly (within fp additions)
    LogVec zz(3, 0.0);
    for (int s = 0; s < 10; ++s) zz = step_recursion(zz, ones);
    for (double v : zz) CHECK(v == doctest::Approx(10 * std::log(3.0)).epsilon(1e-13));

    auto xi = sample_environment(EnvSpec::lognormal(0.0, 1.0), 5, rng);
    LogVec z0{0.1, -0.7, 2.0, 0.0, -3.0};
    const double c = 12.75;
    LogVec shifted = z0;
    for (auto& v : shifted) v += c;
    LogVec a = step_recursion(z0, xi);
    LogVec b = step_recursion(shifted, xi);
    for (int j = 0; j < 5; ++j)
        CHECK(b[j] - c == doctest::Approx(a[j]).epsilon(1e-12));

    CHECK_THROWS_AS(step_recursion(LogVec(4, 0.0), xi), std::invalid_argument);
}

TEST_CASE("p2p oracles agree and match closed forms") {
    // constantOnes, N=2, t=2: two intermediate choices -> log 2
    RngStream rng = derive_substream(3, 0, "test.p2p");
    std::vector<EnvironmentMatrix> ones = {
        sample_environment(EnvSpec::constant_ones(), 2, rng),
        sample_environment(EnvSpec::constant_ones(), 2, rng)};
    CHECK(p2p_bruteforce(ones, 0, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(p2p_matrix(ones, 0, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    // t=1: single edge weight
    auto xi = sample_environment(EnvSpec::stable(0.5), 3, rng);
    std::vector<EnvironmentMatrix> single = {xi};
    CHECK(p2p_bruteforce(single, 1, 2) == xi.log_at(1, 2));
    CHECK(p2p_matrix(single, 1, 2) == xi.log_at(1, 2));

    // oracle equivalence across N <= 3, t <= 4, 20 seeds
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        for (int n : {2, 3})
            for (int t : {2, 3, 4}) {
                RngStream r = derive_substream(seed, {static_cast<std::uint64_t>(n),
                                                      static_cast<std::uint64_t>(t)},
                                               "test.oracle");
                std::vector<EnvironmentMatrix> xis;
                for (int s = 0; s < t; ++s)
                    xis.push_back(sample_environment(EnvSpec::stable(0.5), n, r));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        CHECK(std::abs(p2p_matrix(xis, i, j) -
                                       p2p_bruteforce(xis, i, j)) < 1e-9);
            }
}

TEST_CASE("p2p bruteforce guard") {
    RngStream rng = derive_substream(5, 0, "test.guard");
    std::vector<EnvironmentMatrix> xis;
    for (int s = 0; s < 10; ++s)
        xis.push_back(sample_environment(EnvSpec::lognormal(0.0, 1.0), 8, rng));
    // 8^9 = 1.3e8 paths > guard
    CHECK_THROWS_WITH_AS(p2p_bruteforce(xis, 0, 0),
                         "p2p_bruteforce: oracle too large", std::invalid_argument);
}

TEST_CASE("run_partition: constantOnes heights and decomposition identity") {
    const int n = 4, t = 6;
    const double alpha = 0.5;
    auto traj = run_partition(EnvSpec::constant_ones(), n, t, alpha, 99);
    const double log_n = std::log(static_cast<double>(n));
    for (int s = 0; s <= t; ++s) {
        CHECK(traj.phi[s] ==
              doctest::Approx(s * log_n + log_n / alpha).epsilon(1e-12));
        for (int j = 0; j < n; ++j)
            CHECK(traj.z[s][j] == doctest::Approx(s * log_n).epsilon(1e-12));
    }

    // decomposition: log Z(t,i) = phi(t) + alpha-simplex coordinate, exact
    auto rnd = run_partition(EnvSpec::stable(0.4), 6, 5, alpha, 123);
    for (int s = 0; s <= 5; ++s) {
        auto x = project_simplex(rnd.z[s], alpha);
        for (int j = 0; j < 6; ++j)
            CHECK(rnd.z[s][j] ==
                  doctest::Approx(rnd.phi[s] + x.log_coords[j]).epsilon(1e-12));
    }
}

TEST_CASE("run_partition matches materialized recursion on the same slices") {
    // The streamed stepper and the matrix step must agree when fed the same
    // environment: rebuild the slices from the row streams.
    const int n = 5, t = 4;
    const EnvSpec spec = EnvSpec::lognormal(0.2, 1.3);
    const std::uint64_t key = 2024;
    auto traj = run_partition(spec, n, t, 1.0, key);

    LogVec z(n, 0.0);
    std::vector<double> row;
    for (int s = 1; s <= t; ++s) {
        EnvironmentMatrix xi;
        xi.n = n;
        xi.logw.resize(n * n);
        for (int i = 0; i < n; ++i) {
            env_row(spec, n, key, s, i, row);
            for (int j = 0; j < n; ++j) xi.log_at(i, j) = row[j];
        }
        z = step_recursion(z, xi);
        for (int j = 0; j < n; ++j)
            CHECK(z[j] == doctest::Approx(traj.z[s][j]).epsilon(1e-12));
    }
}

TEST_CASE("environment window is consistent across accesses") {
    EnvironmentWindow env(EnvSpec::stable(0.6), 3, 77);
    const auto& a = env.matrix(-2);
    const auto& b = env.matrix(-2);
    CHECK(a.logw == b.logw);
    CHECK(env.matrix(5).logw != env.matrix(6).logw);
}
