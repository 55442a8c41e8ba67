// Totally asymmetric stable law S_alpha, alpha in (0,1), normalized so that
// E e^{-lambda S} = e^{-lambda^alpha}. Exact sampling via the Kanter
// representation, distribution function via the theta-integral it induces,
// and the index-1 stable law entering the large-N height fluctuations.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cgpoly/rng.hpp"

namespace cgpoly {

struct StableParams {
    double alpha; // in (0,1)
};

void validate_stable_alpha(double alpha);

// A(theta) = sin((1-a)theta) sin(a theta)^{a/(1-a)} / sin(theta)^{1/(1-a)}
// on (0, pi). Blows up at theta -> pi; endpoint arguments throw.
double kanter_A(double theta, double alpha);
double log_kanter_A(double theta, double alpha);

// S = (A(theta)/W)^{(1-a)/a}, theta ~ U(0,pi), W ~ Exp(1). Returned as log S
// since realizations span hundreds of e-folds.
double sample_stable_log(double alpha, RngStream& rng);
double sample_stable(double alpha, RngStream& rng);

// F(x) = (1/pi) int_0^pi exp(-A(theta) x^{-a/(1-a)}) dtheta, from
// S <= x  <=>  W >= A(theta) x^{-a/(1-a)}. Survival computed with expm1 so
// the far tail keeps full relative accuracy.
double stable_cdf(double x, double alpha);
double stable_survival(double x, double alpha);
double stable_pdf(double x, double alpha);

// u_alpha(y) = P(S > e^y), the front-profile limit shape, and its derivative.
double u_alpha(double y, double alpha);
double u_alpha_derivative(double y, double alpha);

// Totally asymmetric Levy exponent of index 1:
//   psi(u) = int_1^inf (e^{iux}-1) x^{-2} dx + int_0^1 (e^{iux}-1-iux) x^{-2} dx.
// Computed by quadrature on [0,L] plus an integration-by-parts tail whose
// remainder is bounded by 2/(u^2 L^3). Closed form: Re psi(u) = -pi|u|/2,
// Im psi(u) = Cu - u ln|u|.
std::complex<double> levy_exponent(double u);

// The shift constant C in the exponent decomposition, C = Im psi(1).
double stable1_shift_constant();

struct LaplaceCheck {
    double lambda;
    double empirical;     // mean of e^{-lambda S}
    double expected;      // e^{-lambda^alpha}
    double standard_error;
    double z_score;
};

// Monte Carlo validation of the defining Laplace transform.
std::vector<LaplaceCheck> validate_laplace(double alpha,
                                           const std::vector<double>& lambdas,
                                           long n_samples, RngStream& rng);

} // namespace cgpoly
