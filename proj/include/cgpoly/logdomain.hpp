// Log-domain reductions. Partition functions grow like e^{v t} and overflow
// double precision for t of a few dozen, so every quantity is stored as a
// natural log (-inf encodes zero) and combined with max-shifted sums.

#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace cgpoly {

using LogVec = std::vector<double>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(sum_i e^{x_i}) with max shift. Summation runs in ascending index order
// so results are bit-reproducible for a fixed seed.
inline double log_sum_exp(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("log_sum_exp: empty reduction");
    double m = kNegInf;
    for (double x : xs)
        if (x > m) m = x;
    if (m == kNegInf) return kNegInf; // all terms are log(0)
    if (std::isinf(m)) return m;
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

inline double log_sum_exp(const LogVec& xs) {
    return log_sum_exp(std::span<const double>(xs));
}

// Two-element special case, used in inner loops.
inline double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = a > b ? a : b;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

} // namespace cgpoly
