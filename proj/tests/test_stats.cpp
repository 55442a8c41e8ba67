#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cgpoly/rng.hpp"
#include "cgpoly/stats.hpp"

using namespace cgpoly;

TEST_CASE("ecdf") {
    Ecdf f({3.0, 1.0, 2.0});
    CHECK(f(0.5) == 0.0);
    CHECK(f(1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(f(2.5) == doctest::Approx(2.0 / 3.0));
    CHECK(f(10.0) == 1.0);
}

TEST_CASE("ks one-sample: type-I error within [level/2, 2 level]") {
    // Calibration: uniform samples against the uniform CDF, fixed seeds.
    int rejects = 0;
    const int runs = 1000;
    for (int k = 0; k < runs; ++k) {
        RngStream rng = derive_substream(500, k, "ks.calib");
        std::vector<double> xs(200);
        for (auto& x : xs) x = rng.uniform01();
        auto r = ks_one_sample(xs, [](double x) { return std::min(1.0, std::max(0.0, x)); },
                               0.05);
        if (!r.pass) ++rejects;
    }
    const double rate = static_cast<double>(rejects) / runs;
    CHECK(rate >= 0.05 / 2.0);
    CHECK(rate <= 2.0 * 0.05);
}

TEST_CASE("ks gross mismatch fails") {
    RngStream rng = derive_substream(501, 0, "ks.gross");
    std::vector<double> xs(10000);
    for (auto& x : xs) x = rng.uniform01();
    auto r = ks_one_sample(xs, [](double x) { return normal_cdf(x); }, 0.01);
    CHECK(!r.pass);
}

TEST_CASE("ks two-sample basics") {
    RngStream rng = derive_substream(502, 0, "ks.two");
    std::vector<double> a(300);
    for (auto& x : a) x = rng.normal();
    auto same = ks_two_sample(a, a, 0.05);
    CHECK(same.statistic == 0.0);
    CHECK(same.pass);

    std::vector<double> b(300);
    for (auto& x : b) x = rng.normal() + 3.0;
    CHECK(!ks_two_sample(a, b, 0.01).pass);

    CHECK_THROWS_AS(ks_two_sample(std::vector<double>(10, 0.0), b, 0.05),
                    std::invalid_argument);
}

TEST_CASE("ks invariance under increasing transforms") {
    RngStream rng = derive_substream(503, 0, "ks.inv");
    std::vector<double> a(200), b(200);
    for (auto& x : a) x = rng.exponential();
    for (auto& x : b) x = rng.exponential() * 1.3;
    const double d0 = ks_two_sample(a, b, 0.05).statistic;
    for (auto& x : a) x = std::log(x);
    for (auto& x : b) x = std::log(x);
    const double d1 = ks_two_sample(a, b, 0.05).statistic;
    CHECK(d0 == doctest::Approx(d1).epsilon(1e-12));
}

TEST_CASE("empirical cf") {
    auto cf0 = empirical_cf({1.0, 2.0, 3.0}, {0.0});
    CHECK(cf0[0].real() == 1.0);
    CHECK(cf0[0].imag() == 0.0);

    auto cfc = empirical_cf(std::vector<double>(50, 2.5), {0.7});
    CHECK(std::abs(cfc[0]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::arg(cfc[0]) == doctest::Approx(0.7 * 2.5).epsilon(1e-12));
}

TEST_CASE("chi-square counts") {
    auto exact = chi_square_counts({10.0, 20.0, 30.0}, {10.0, 20.0, 30.0}, 0.01);
    CHECK(exact.statistic == 0.0);
    CHECK(exact.pass);
    CHECK_THROWS_AS(chi_square_counts({1.0}, {1.0}, 0.01), std::invalid_argument);

    // Poisson(1) counts over 300 replicas vs expectation, fixed seed.
    RngStream rng = derive_substream(504, 0, "chi.calib");
    std::vector<double> obs(4, 0.0); // counts of 0,1,2,>=3
    const int reps = 300;
    for (int r = 0; r < reps; ++r) {
        int k = 0;
        double p = rng.uniform01();
        double acc = std::exp(-1.0), pk = acc;
        while (p > acc && k < 3) {
            ++k;
            pk *= 1.0 / k;
            acc += pk;
        }
        obs[std::min(k, 3)] += 1.0;
    }
    const double e = std::exp(-1.0);
    std::vector<double> expd = {reps * e, reps * e, reps * e / 2.0,
                                reps * (1.0 - 2.5 * e)};
    CHECK(chi_square_counts(obs, expd, 0.01).pass);
}

TEST_CASE("chi-square quantiles match tabulated values") {
    CHECK(chi_square_quantile(0.99, 4) == doctest::Approx(13.2767).epsilon(1e-4));
    CHECK(chi_square_quantile(0.95, 1) == doctest::Approx(3.8415).epsilon(1e-4));
    CHECK(chi_square_quantile(0.99, 10) == doctest::Approx(23.2093).epsilon(1e-4));
}

TEST_CASE("batch means approximates sd/sqrt(n) for iid series") {
    RngStream rng = derive_substream(505, 0, "bm");
    std::vector<double> xs(20000);
    for (auto& x : xs) x = rng.normal() * 2.0 + 1.0;
    const double se = batch_means_se(xs, 20);
    const double iid_se = std::sqrt(variance(xs) / xs.size());
    CHECK(se == doctest::Approx(iid_se).epsilon(0.5));
    const double sigma = batch_means_sigma(xs, 20);
    CHECK(sigma == doctest::Approx(2.0).epsilon(0.5));
}

TEST_CASE("normal cdf") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(normal_cdf(1.959963985) == doctest::Approx(0.975).epsilon(1e-8));
}

TEST_CASE("summary helpers") {
    CHECK(median({1.0, 5.0, 3.0}) == 3.0);
    CHECK(median({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(2.5));
    CHECK(correlation({1, 2, 3, 4}, {2, 4, 6, 8}) == doctest::Approx(1.0));
    CHECK(mann_kendall_z({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}) > 2.33);
    CHECK(std::abs(mann_kendall_z({3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8})) < 2.33);
}
