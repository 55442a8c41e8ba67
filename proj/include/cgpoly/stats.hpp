// Statistical toolkit: ECDF, Kolmogorov-Smirnov tests with asymptotic
// critical values, empirical characteristic function, chi-square counts,
// batch-means standard errors.

#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace cgpoly {

struct TestResult {
    double statistic = 0.0;
    double critical_value = 0.0;
    bool pass = false;
    double level = 0.0;
};

// Sorted-copy empirical CDF.
class Ecdf {
  public:
    explicit Ecdf(std::vector<double> samples);
    double operator()(double x) const; // P_n(X <= x)
    const std::vector<double>& sorted() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

// Asymptotic KS coefficients: c(0.05) = 1.358, c(0.01) = 1.628.
double ks_critical_coefficient(double level);

// One-sample KS against a continuous reference CDF. Requires n >= 50
// (asymptotic critical values only).
TestResult ks_one_sample(const std::vector<double>& samples,
                         const std::function<double(double)>& cdf,
                         double level);

// Two-sample KS with effective size nm/(n+m).
TestResult ks_two_sample(const std::vector<double>& a,
                         const std::vector<double>& b, double level);

// (1/n) sum_k e^{i u X_k} for each u.
std::vector<std::complex<double>> empirical_cf(const std::vector<double>& samples,
                                               const std::vector<double>& us);

// Pearson chi-square against given expected counts (all >= 5), df = #bins.
TestResult chi_square_counts(const std::vector<double>& observed,
                             const std::vector<double>& expected, double level);

// Standard error of the series mean by batch means.
double batch_means_se(const std::vector<double>& series, int n_batches);

// Asymptotic-CLT scale from batch means: sqrt(b * Var(batch means)), the
// per-sqrt(t) fluctuation of the partial sums.
double batch_means_sigma(const std::vector<double>& series, int n_batches);

double normal_cdf(double x);

// Regularized incomplete gamma P(a,x) and the chi-square quantile built on it.
double regularized_gamma_p(double a, double x);
double chi_square_cdf(double x, int df);
double chi_square_quantile(double p, int df);

double mean(const std::vector<double>& xs);
double variance(const std::vector<double>& xs); // unbiased
double median(std::vector<double> xs);
double correlation(const std::vector<double>& a, const std::vector<double>& b);

// Mann-Kendall trend z-score; positive means upward trend.
double mann_kendall_z(const std::vector<double>& series);

} // namespace cgpoly
