#include "cgpoly/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cgpoly {

Ecdf::Ecdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw std::invalid_argument("ecdf: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) /
           static_cast<double>(sorted_.size());
}

double ks_critical_coefficient(double level) {
    if (level == 0.05) return 1.358;
    if (level == 0.01) return 1.628;
    throw std::invalid_argument("ks: only levels 0.05 and 0.01 are tabulated");
}

TestResult ks_one_sample(const std::vector<double>& samples,
                         const std::function<double(double)>& cdf,
                         double level) {
    const std::size_t n = samples.size();
    if (n < 50) throw std::invalid_argument("ks_one_sample: need n >= 50");
    std::vector<double> xs(samples);
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double f = cdf(xs[k]);
        const double hi = static_cast<double>(k + 1) / n - f;
        const double lo = f - static_cast<double>(k) / n;
        d = std::max(d, std::max(hi, lo));
    }
    TestResult r;
    r.statistic = d;
    r.level = level;
    r.critical_value = ks_critical_coefficient(level) / std::sqrt(static_cast<double>(n));
    r.pass = r.statistic < r.critical_value;
    return r;
}

TestResult ks_two_sample(const std::vector<double>& a,
                         const std::vector<double>& b, double level) {
    const std::size_t n = a.size(), m = b.size();
    if (n < 50 || m < 50) throw std::invalid_argument("ks_two_sample: need n,m >= 50");
    std::vector<double> xs(a), ys(b);
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < n && j < m) {
        const double x = std::min(xs[i], ys[j]);
        while (i < n && xs[i] <= x) ++i;
        while (j < m && ys[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n -
                                 static_cast<double>(j) / m));
    }
    TestResult r;
    r.statistic = d;
    r.level = level;
    const double ne = static_cast<double>(n) * m / static_cast<double>(n + m);
    r.critical_value = ks_critical_coefficient(level) / std::sqrt(ne);
    r.pass = r.statistic < r.critical_value;
    return r;
}

std::vector<std::complex<double>> empirical_cf(const std::vector<double>& samples,
                                               const std::vector<double>& us) {
    std::vector<std::complex<double>> out(us.size(), {0.0, 0.0});
    for (double x : samples)
        for (std::size_t k = 0; k < us.size(); ++k)
            out[k] += std::complex<double>(std::cos(us[k] * x), std::sin(us[k] * x));
    for (auto& v : out) v /= static_cast<double>(samples.size());
    return out;
}

TestResult chi_square_counts(const std::vector<double>& observed,
                             const std::vector<double>& expected, double level) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi_square: size mismatch");
    double stat = 0.0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        if (expected[k] < 5.0)
            throw std::invalid_argument("chi_square: bin underflow (expected < 5)");
        const double d = observed[k] - expected[k];
        stat += d * d / expected[k];
    }
    TestResult r;
    r.statistic = stat;
    r.level = level;
    r.critical_value = chi_square_quantile(1.0 - level, static_cast<int>(observed.size()));
    r.pass = r.statistic < r.critical_value;
    return r;
}

double batch_means_se(const std::vector<double>& series, int n_batches) {
    if (n_batches < 2) throw std::invalid_argument("batch_means: need >= 2 batches");
    const std::size_t b = series.size() / n_batches;
    if (b < 1) throw std::invalid_argument("batch_means: series too short");
    std::vector<double> bm(n_batches);
    for (int k = 0; k < n_batches; ++k) {
        double s = 0.0;
        for (std::size_t i = k * b; i < (k + 1) * b; ++i) s += series[i];
        bm[k] = s / static_cast<double>(b);
    }
    return std::sqrt(variance(bm) / n_batches);
}

double batch_means_sigma(const std::vector<double>& series, int n_batches) {
    if (n_batches < 2) throw std::invalid_argument("batch_means: need >= 2 batches");
    const std::size_t b = series.size() / n_batches;
    if (b < 1) throw std::invalid_argument("batch_means: series too short");
    std::vector<double> bm(n_batches);
    for (int k = 0; k < n_batches; ++k) {
        double s = 0.0;
        for (std::size_t i = k * b; i < (k + 1) * b; ++i) s += series[i];
        bm[k] = s / static_cast<double>(b);
    }
    return std::sqrt(static_cast<double>(b) * variance(bm));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Series for P(a,x) on x < a+1, continued fraction for Q(a,x) otherwise.
double regularized_gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // Lentz continued fraction for Q.
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    const double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

double chi_square_cdf(double x, int df) {
    if (x <= 0.0) return 0.0;
    return regularized_gamma_p(0.5 * df, 0.5 * x);
}

double chi_square_quantile(double p, int df) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("chi2 quantile: p in (0,1)");
    double lo = 0.0, hi = 10.0 * df + 50.0;
    while (chi_square_cdf(hi, df) < p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (chi_square_cdf(mid, df) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("variance: need >= 2 samples");
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return acc / static_cast<double>(xs.size() - 1);
}

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median: empty");
    const std::size_t mid = xs.size() / 2;
    std::nth_element(xs.begin(), xs.begin() + mid, xs.end());
    double hi = xs[mid];
    if (xs.size() % 2 == 1) return hi;
    std::nth_element(xs.begin(), xs.begin() + mid - 1, xs.end());
    return 0.5 * (hi + xs[mid - 1]);
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("correlation: bad sizes");
    const double ma = mean(a), mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

double mann_kendall_z(const std::vector<double>& series) {
    const std::size_t n = series.size();
    if (n < 10) throw std::invalid_argument("mann_kendall: need >= 10 points");
    long long s = 0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (series[j] > series[i]) ++s;
            else if (series[j] < series[i]) --s;
        }
    const double var = n * (n - 1.0) * (2.0 * n + 5.0) / 18.0;
    if (s > 0) return (s - 1.0) / std::sqrt(var);
    if (s < 0) return (s + 1.0) / std::sqrt(var);
    return 0.0;
}

} // namespace cgpoly
