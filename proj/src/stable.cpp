#include "cgpoly/stable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cgpoly/quadrature.hpp"

namespace cgpoly {

namespace {
constexpr double kPi = std::numbers::pi;
}

void validate_stable_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("stable alpha must lie in (0,1)");
}

double log_kanter_A(double theta, double alpha) {
    validate_stable_alpha(alpha);
    if (!(theta > 0.0 && theta < kPi))
        throw std::invalid_argument("kanter_A: theta must lie in (0,pi)");
    const double r = alpha / (1.0 - alpha);
    return std::log(std::sin((1.0 - alpha) * theta)) +
           r * std::log(std::sin(alpha * theta)) -
           (1.0 + r) * std::log(std::sin(theta));
}

double kanter_A(double theta, double alpha) {
    return std::exp(log_kanter_A(theta, alpha));
}

double sample_stable_log(double alpha, RngStream& rng) {
    const double theta = kPi * rng.uniform01();
    const double w = rng.exponential();
    return ((1.0 - alpha) / alpha) * (log_kanter_A(theta, alpha) - std::log(w));
}

double sample_stable(double alpha, RngStream& rng) {
    return std::exp(sample_stable_log(alpha, rng));
}

namespace {

// 1 - F(x) = (1/pi) int_0^pi (1 - exp(-A(theta) r)) dtheta with
// r = x^{-a/(1-a)}. The integrand vanishes exponentially at theta=pi when
// r > 0 (A blows up) and tends to -expm1(-A(0+) r) at theta=0.
double survival_integral(double x, double alpha, double tol) {
    const double log_r = -(alpha / (1.0 - alpha)) * std::log(x);
    auto integrand = [=](double theta) {
        if (theta <= 0.0 || theta >= kPi) theta = std::nextafter(theta, kPi / 2);
        const double e = log_kanter_A(theta, alpha) + log_r;
        if (e > 700.0) return 1.0; // exp(-huge): survival term saturates
        return -std::expm1(-std::exp(e));
    };
    auto q = integrate_adaptive(integrand, 0.0, kPi, tol);
    return q.value / kPi;
}

} // namespace

double stable_survival(double x, double alpha) {
    validate_stable_alpha(alpha);
    if (!(x > 0.0)) return 1.0;
    return survival_integral(x, alpha, 1e-10);
}

double stable_cdf(double x, double alpha) {
    validate_stable_alpha(alpha);
    if (!(x > 0.0)) throw std::invalid_argument("stable_cdf: x must be > 0");
    return 1.0 - survival_integral(x, alpha, 1e-10);
}

double stable_pdf(double x, double alpha) {
    validate_stable_alpha(alpha);
    if (!(x > 0.0)) return 0.0;
    // d/dx of the theta-integral: (a/(1-a)) x^{-a/(1-a)-1} *
    //   (1/pi) int A(theta) exp(-A(theta) x^{-a/(1-a)}) dtheta
    const double r = alpha / (1.0 - alpha);
    const double log_xr = -r * std::log(x);
    auto integrand = [=](double theta) {
        if (theta <= 0.0 || theta >= kPi) theta = std::nextafter(theta, kPi / 2);
        const double la = log_kanter_A(theta, alpha);
        const double e = la + log_xr;
        if (e > 700.0) return 0.0;
        return std::exp(la - std::exp(e));
    };
    auto q = integrate_adaptive(integrand, 0.0, kPi, 1e-12);
    return (r / x) * std::exp(log_xr) * q.value / kPi;
}

double u_alpha(double y, double alpha) {
    return stable_survival(std::exp(y), alpha);
}

double u_alpha_derivative(double y, double alpha) {
    const double x = std::exp(y);
    return -x * stable_pdf(x, alpha);
}

std::complex<double> levy_exponent(double u) {
    using namespace std::complex_literals;
    if (u == 0.0) return {0.0, 0.0};
    const double sign = u > 0 ? 1.0 : -1.0;
    u = std::abs(u);

    const double tol = 1e-12;
    // [0,1]: e^{iux}-1-iux over x^2 is smooth (limit -u^2/2 at 0).
    auto head_re = integrate_adaptive(
        [u](double x) {
            if (x < 1e-8) return -0.5 * u * u;
            return (std::cos(u * x) - 1.0) / (x * x);
        },
        0.0, 1.0, tol);
    auto head_im = integrate_adaptive(
        [u](double x) {
            if (x < 1e-8) return -u * u * u * x / 6.0;
            return (std::sin(u * x) - u * x) / (x * x);
        },
        0.0, 1.0, tol);

    // [1,L]: oscillatory but absolutely integrable.
    const double L = std::max(2000.0, 64.0 / u);
    auto mid_re = integrate_adaptive(
        [u](double x) { return (std::cos(u * x) - 1.0) / (x * x); }, 1.0, L,
        tol, 60);
    auto mid_im = integrate_adaptive(
        [u](double x) { return std::sin(u * x) / (x * x); }, 1.0, L, tol, 60);

    // [L,inf): int (e^{iux}-1)/x^2 = -1/L + I2 with, by parts twice,
    //   I2 = -e^{iuL}/(iuL^2) + 2 e^{iuL}/(u^2 L^3) - (6/u^2) I4,
    //   |I4| <= 1/(3 L^3)  =>  remainder <= 2/(u^2 L^3).
    const std::complex<double> eiuL(std::cos(u * L), std::sin(u * L));
    const std::complex<double> I2 =
        -eiuL / (1i * u * L * L) + 2.0 * eiuL / (u * u * L * L * L);
    const std::complex<double> tail = -1.0 / L + I2;

    std::complex<double> psi(head_re.value + mid_re.value + tail.real(),
                             head_im.value + mid_im.value + tail.imag());
    return {psi.real(), sign * psi.imag()};
}

double stable1_shift_constant() { return levy_exponent(1.0).imag(); }

std::vector<LaplaceCheck> validate_laplace(double alpha,
                                           const std::vector<double>& lambdas,
                                           long n_samples, RngStream& rng) {
    validate_stable_alpha(alpha);
    if (n_samples < 10000)
        throw std::invalid_argument("validate_laplace: need >= 1e4 samples");
    std::vector<double> sum(lambdas.size(), 0.0), sumsq(lambdas.size(), 0.0);
    for (long k = 0; k < n_samples; ++k) {
        const double s = sample_stable(alpha, rng);
        for (std::size_t j = 0; j < lambdas.size(); ++j) {
            const double v = std::exp(-lambdas[j] * s);
            sum[j] += v;
            sumsq[j] += v * v;
        }
    }
    std::vector<LaplaceCheck> out;
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        LaplaceCheck c;
        c.lambda = lambdas[j];
        c.empirical = sum[j] / static_cast<double>(n_samples);
        c.expected = std::exp(-std::pow(lambdas[j], alpha));
        const double var =
            (sumsq[j] - sum[j] * sum[j] / static_cast<double>(n_samples)) /
            static_cast<double>(n_samples - 1);
        c.standard_error = std::sqrt(var / static_cast<double>(n_samples));
        c.z_score = c.standard_error > 0.0
                        ? (c.empirical - c.expected) / c.standard_error
                        : 0.0;
        out.push_back(c);
    }
    return out;
}

} // namespace cgpoly
