#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cgpoly/stable.hpp"
#include "cgpoly/stats.hpp"

using namespace cgpoly;

namespace {
constexpr double kPi = std::numbers::pi;

// Levy(1/2) closed form: F(x) = erfc(1/(2 sqrt x)) for E e^{-l S} = e^{-sqrt l}.
double levy_cdf(double x) { return std::erfc(1.0 / (2.0 * std::sqrt(x))); }
} // namespace

TEST_CASE("kanter_A hand values and limits") {
    // alpha=1/2, theta=pi/2: sin(pi/4) sin(pi/4) / sin(pi/2) = 1/2
    CHECK(kanter_A(kPi / 2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-14));

    // theta -> 0 limit: (1-a) a^{a/(1-a)}
    for (double a : {0.3, 0.5, 0.7}) {
        const double lim = (1.0 - a) * std::pow(a, a / (1.0 - a));
        CHECK(kanter_A(1e-8, a) == doctest::Approx(lim).epsilon(1e-6));
    }

    // monotone blow-up towards pi
    CHECK(kanter_A(kPi - 1e-3, 0.5) > kanter_A(kPi - 1e-2, 0.5));
    CHECK(kanter_A(kPi - 1e-6, 0.5) > 1e6);

    CHECK_THROWS_AS(kanter_A(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(kanter_A(kPi, 0.5), std::invalid_argument);
}

TEST_CASE("sampler vs Levy closed form at alpha=1/2") {
    RngStream rng = derive_substream(101, 0, "stable.test");
    // S = 1/(2 G^2) for standard normal G realizes the same law; two-sample KS.
    std::vector<double> kanter_draws(60000), levy_draws(60000);
    for (auto& v : kanter_draws) v = sample_stable(0.5, rng);
    for (auto& v : levy_draws) {
        const double g = rng.normal();
        v = 1.0 / (2.0 * g * g);
    }
    auto ks = ks_two_sample(kanter_draws, levy_draws, 0.01);
    CHECK(ks.pass);
}

TEST_CASE("Laplace transform at lambda=1 and tail index") {
    RngStream rng = derive_substream(102, 0, "stable.test");
    const int n = 200000;
    double acc = 0.0;
    std::vector<double> draws(n);
    for (int i = 0; i < n; ++i) {
        draws[i] = sample_stable(0.5, rng);
        acc += std::exp(-draws[i]);
    }
    CHECK(acc / n == doctest::Approx(std::exp(-1.0)).epsilon(0.005));

    // P[S > x] x^a Gamma(1-a) ~ 1 for large x
    const double x = 1e4;
    double tail = 0.0;
    for (double d : draws)
        if (d > x) tail += 1.0;
    tail /= n;
    CHECK(tail * std::pow(x, 0.5) * std::tgamma(0.5) ==
          doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("validate_laplace z-scores") {
    RngStream rng = derive_substream(103, 0, "stable.test");
    auto checks = validate_laplace(0.3, {0.0, 2.0}, 20000, rng);
    CHECK(checks[0].empirical == 1.0); // lambda = 0 exactly
    CHECK(checks[1].expected ==
          doctest::Approx(std::exp(-std::pow(2.0, 0.3))).epsilon(1e-12));
    CHECK(std::abs(checks[1].z_score) < 4.0);
}

TEST_CASE("stability under weighted sums (Eq-1.19-style)") {
    // sum a_i S_i with sum a_i^alpha = 1 is again stable.
    RngStream rng = derive_substream(104, 0, "stable.test");
    const double alpha = 0.5;
    const int k = 7;
    std::vector<double> a(k);
    double mass = 0.0;
    for (int i = 0; i < k; ++i) {
        a[i] = 0.2 + 0.1 * i;
        mass += std::pow(a[i], alpha);
    }
    for (auto& w : a) w /= std::pow(mass, 1.0 / alpha);

    std::vector<double> sums(60000), plain(60000);
    for (auto& v : sums) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += a[i] * sample_stable(alpha, rng);
        v = s;
    }
    for (auto& v : plain) v = sample_stable(alpha, rng);
    CHECK(ks_two_sample(sums, plain, 0.01).pass);
}

TEST_CASE("scaling stability: N^{-1/a} sum of N draws is again stable") {
    RngStream rng = derive_substream(106, 0, "stable.scale");
    const double alpha = 0.5;
    const int n = 100;
    const double scale = std::pow(static_cast<double>(n), -1.0 / alpha);
    std::vector<double> sums(60000), plain(60000);
    for (auto& v : sums) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += sample_stable(alpha, rng);
        v = scale * s;
    }
    for (auto& v : plain) v = sample_stable(alpha, rng);
    CHECK(ks_two_sample(sums, plain, 0.01).pass);
}

TEST_CASE("stable_cdf against the Levy closed form and tail") {
    for (double x : {0.1, 0.5, 1.0, 3.0, 10.0, 1e4})
        CHECK(stable_cdf(x, 0.5) == doctest::Approx(levy_cdf(x)).epsilon(1e-9));

    // u_{1/2}(0) = erf(1/2)
    CHECK(u_alpha(0.0, 0.5) == doctest::Approx(std::erf(0.5)).epsilon(1e-9));

    // monotone, limits
    CHECK(stable_cdf(1e-4, 0.5) < 1e-8);
    CHECK(stable_cdf(1e8, 0.5) > 1.0 - 1e-3);
    double prev = 0.0;
    for (double x = 0.25; x < 40.0; x *= 2.0) {
        const double f = stable_cdf(x, 0.7);
        CHECK(f >= prev);
        prev = f;
    }

    // large-x tail vs x^{-a}/Gamma(1-a), within 5% at x=1e4, a=0.5
    const double surv = stable_survival(1e4, 0.5);
    CHECK(surv * std::pow(1e4, 0.5) * std::tgamma(0.5) ==
          doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("sampler and cdf are consistent across alphas") {
    for (double alpha : {0.3, 0.5, 0.7}) {
        RngStream rng = derive_substream(105, static_cast<std::uint64_t>(alpha * 10),
                                         "stable.ks");
        std::vector<double> draws(100000);
        for (auto& v : draws) v = sample_stable(alpha, rng);
        auto ks = ks_one_sample(
            draws, [alpha](double x) { return stable_cdf(x, alpha); }, 0.01);
        CHECK(ks.pass); // critical value 1.628/sqrt(1e5)
    }
}

TEST_CASE("u_alpha shape") {
    CHECK(u_alpha(-40.0, 0.5) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(u_alpha(60.0, 0.5) < 1e-6);
    double prev = 1.0;
    for (double y = -10.0; y <= 10.0; y += 0.5) {
        const double u = u_alpha(y, 0.4);
        CHECK(u <= prev + 1e-12);
        prev = u;
    }
    // derivative at 0 for alpha=1/2: -e^{-1/4}/(2 sqrt(pi))
    CHECK(u_alpha_derivative(0.0, 0.5) ==
          doctest::Approx(-std::exp(-0.25) / (2.0 * std::sqrt(kPi))).epsilon(1e-7));
}

TEST_CASE("levy exponent closed forms") {
    CHECK(levy_exponent(0.0) == std::complex<double>(0.0, 0.0));
    const auto psi1 = levy_exponent(1.0);
    CHECK(psi1.real() == doctest::Approx(-kPi / 2.0).epsilon(1e-9));

    const double c = stable1_shift_constant();
    CHECK(c == doctest::Approx(0.4227843351).epsilon(1e-7)); // 1 - Euler gamma

    // decomposition psi(u) = iCu - (pi/2)|u| - i u ln|u|
    for (double u : {0.5, 2.0, -1.5}) {
        const auto psi = levy_exponent(u);
        CHECK(psi.real() == doctest::Approx(-kPi * std::abs(u) / 2.0).epsilon(1e-8));
        CHECK(psi.imag() ==
              doctest::Approx(c * u - u * std::log(std::abs(u))).epsilon(1e-8));
    }
}
