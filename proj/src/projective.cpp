#include "cgpoly/projective.hpp"

#include <cmath>
#include <stdexcept>

namespace cgpoly {

double proj_distance(const SimplexPoint& x, const SimplexPoint& y) {
    if (x.alpha != 1.0 || y.alpha != 1.0)
        throw std::invalid_argument("proj_distance: defined on the 1-simplex");
    if (x.log_coords.size() != y.log_coords.size())
        throw std::invalid_argument("proj_distance: dimension mismatch");
    // log m(x,y) = min_i (log x_i - log y_i) over {y_i > 0}
    double log_mxy = 0.0, log_myx = 0.0;
    bool xy_zero = false, yx_zero = false;
    for (std::size_t i = 0; i < x.log_coords.size(); ++i) {
        const double lx = x.log_coords[i], ly = y.log_coords[i];
        if (ly != kNegInf) {
            if (lx == kNegInf) xy_zero = true;
            else log_mxy = std::min(log_mxy, lx - ly);
        }
        if (lx != kNegInf) {
            if (ly == kNegInf) yx_zero = true;
            else log_myx = std::min(log_myx, ly - lx);
        }
    }
    if (xy_zero || yx_zero) return 1.0;
    // d = (1-s)/(1+s), s = e^{log_mxy + log_myx} <= 1; expm1 keeps tiny
    // distances at full relative precision.
    const double ls = log_mxy + log_myx;
    return -std::expm1(ls) / (1.0 + std::exp(ls));
}

SimplexPoint projective_action(const EnvironmentMatrix& g, const SimplexPoint& x) {
    LogVec img(g.n);
    LogVec col(g.n);
    for (int i = 0; i < g.n; ++i) {
        for (int k = 0; k < g.n; ++k) col[k] = g.log_at(i, k) + x.log_coords[k];
        img[i] = log_sum_exp(col);
    }
    return project_simplex(img, x.alpha);
}

double contraction_coeff(const EnvironmentMatrix& g) {
    g.validate();
    const int n = g.n;
    // Columns of g are the images of the basis vectors.
    std::vector<SimplexPoint> cols;
    cols.reserve(n);
    for (int j = 0; j < n; ++j) {
        LogVec c(n);
        for (int i = 0; i < n; ++i) c[i] = g.log_at(i, j);
        cols.push_back(project_simplex(c, 1.0));
    }
    double c = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            c = std::max(c, proj_distance(cols[a], cols[b]));
    return c;
}

EnvironmentMatrix log_matmul(const EnvironmentMatrix& a, const EnvironmentMatrix& b) {
    if (a.n != b.n) throw std::invalid_argument("log_matmul: dimension mismatch");
    const int n = a.n;
    EnvironmentMatrix c;
    c.n = n;
    c.logw.resize(static_cast<std::size_t>(n) * n);
    LogVec row(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) row[k] = a.log_at(i, k) + b.log_at(k, j);
            c.log_at(i, j) = log_sum_exp(row);
        }
    return c;
}

namespace {

SimplexPoint uniform_point(int n, double alpha) {
    return project_simplex(LogVec(n, 0.0), alpha);
}

// Shared driver: multiplies slices (possibly transposed) in the given time
// order, appending on the inner (right) side, until the product's own
// contraction coefficient certifies the tolerance.
//
// c(Pi(t)) is the d-diameter of Pi(t) applied to the simplex, so it bounds
// d(Pi(t) v, V_inf) for every start. It is monotone in t and always at most
// the running product of per-slice coefficients; for heavy-tailed slices it
// is the only usable one of the two, since per-slice c(xi) rounds to 1
// whenever one column is dominated by a single huge entry.
DirectionLimit run_limit(EnvironmentWindow& env, long long first_time, int dir,
                         bool transpose, double alpha, double tol, int step_cap) {
    if (!(tol > 0.0 && tol < 1.0))
        throw std::invalid_argument("limit_direction: tol must lie in (0,1)");
    const int n = env.n();
    EnvironmentMatrix prod;
    double bound = 1.0;
    int steps = 0;
    long long t = first_time;
    bool have = false;
    while (bound >= tol) {
        if (steps >= step_cap)
            throw std::runtime_error(
                "limit_direction: step cap exceeded; best bound " +
                std::to_string(bound));
        EnvironmentMatrix slice =
            transpose ? env.matrix(t).transpose() : env.matrix(t);
        prod = have ? log_matmul(prod, slice) : std::move(slice);
        have = true;
        bound = contraction_coeff(prod);
        ++steps;
        t += dir;
    }
    DirectionLimit lim;
    lim.point = projective_action(prod, uniform_point(n, 1.0));
    if (alpha != 1.0) lim.point = reproject(lim.point, alpha);
    lim.bound = bound;
    lim.steps = steps;
    return lim;
}

} // namespace

DirectionLimit limit_direction(EnvironmentWindow& env, long long anchor,
                               double alpha, double tol, int step_cap) {
    return run_limit(env, anchor + 1, +1, false, alpha, tol, step_cap);
}

DirectionLimit backward_limit_direction(EnvironmentWindow& env, long long anchor,
                                        double alpha, double tol, int step_cap) {
    return run_limit(env, anchor, -1, true, alpha, tol, step_cap);
}

DirectionLimit limit_direction(const EnvSpec& spec, int n, double alpha,
                               double tol, std::uint64_t key) {
    EnvironmentWindow env(spec, n, key);
    return limit_direction(env, 0, alpha, tol);
}

DirectionLimit backward_limit_direction(const EnvSpec& spec, int n, double alpha,
                                        double tol, std::uint64_t key) {
    EnvironmentWindow env(spec, n, key);
    return backward_limit_direction(env, 0, alpha, tol);
}

ShiftCovarianceReport shift_covariance_check(const EnvSpec& spec, int n,
                                             double alpha, double tol,
                                             std::uint64_t key) {
    EnvironmentWindow env(spec, n, key);
    // V(0) from xi(1), xi(2), ...; V(-1) from xi(0), xi(1), ...
    DirectionLimit v0 = limit_direction(env, 0, alpha, tol);
    DirectionLimit vm1 = limit_direction(env, -1, alpha, tol);
    const EnvironmentMatrix& xi0 = env.matrix(0);

    SimplexPoint lhs1 = projective_action(xi0, reproject(v0.point, 1.0));
    SimplexPoint rhs1 = reproject(vm1.point, 1.0);
    ShiftCovarianceReport rep;
    rep.distance = proj_distance(lhs1, rhs1);
    // d(xi0 . Vhat(0), V(-1)) <= c(xi0) bound0 + bound1 <= bound0 + bound1.
    rep.combined_bound = contraction_coeff(xi0) * v0.bound + vm1.bound;
    rep.pass = rep.distance <= rep.combined_bound * (1.0 + 1e-9) + 1e-12;
    return rep;
}

double ergodic_average(const std::function<double(const SimplexPoint&)>& f,
                       const EnvSpec& spec, int n, double alpha, int t,
                       std::uint64_t key) {
    if (t < 1) throw std::invalid_argument("ergodic_average: t must be >= 1");
    EnvironmentWindow env(spec, n, key);
    SimplexPoint x = uniform_point(n, alpha);
    double acc = 0.0;
    for (int s = 1; s <= t; ++s) {
        x = projective_action(env.matrix(s).transpose(), x);
        acc += f(x);
    }
    return acc / static_cast<double>(t);
}

PfReport pf_comparability_check(std::span<const EnvironmentMatrix> xis,
                                std::uint64_t key, double tol, int iter_cap) {
    const int t = static_cast<int>(xis.size());
    if (t < 2) throw std::invalid_argument("pf_comparability_check: t must be >= 2");
    EnvironmentMatrix pi = xis[0];
    for (int s = 1; s < t; ++s) pi = log_matmul(pi, xis[s]);
    const int n = pi.n;

    // Power iteration in log domain: v <- Psi_1(Pi v), Rayleigh-type ratio.
    SimplexPoint v = uniform_point(n, 1.0);
    double log_lambda = 0.0;
    int it = 0;
    for (;;) {
        LogVec img(n), col(n);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) col[k] = pi.log_at(i, k) + v.log_coords[k];
            img[i] = log_sum_exp(col);
        }
        const double norm = alpha_norm_log(img, 1.0);
        double next = norm; // ||Pi v||_1 / ||v||_1 with ||v||_1 = 1
        SimplexPoint vn;
        vn.alpha = 1.0;
        vn.log_coords.resize(n);
        for (int i = 0; i < n; ++i) vn.log_coords[i] = img[i] - norm;
        ++it;
        const bool done = std::abs(next - log_lambda) < tol && it > 1;
        log_lambda = next;
        v = std::move(vn);
        if (done) break;
        if (it >= iter_cap)
            throw std::runtime_error("pf check: power iteration did not converge");
    }

    PfReport rep;
    rep.log_pf = log_lambda;
    rep.power_iterations = it;

    // ||Pi(t) 1||_1 in log domain.
    LogVec row_sums(n), col(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) col[k] = pi.log_at(i, k);
        row_sums[i] = log_sum_exp(col);
    }
    rep.discrepancy = std::abs(log_lambda - log_sum_exp(row_sums));

    auto log_ratio = [](const EnvironmentMatrix& m) {
        double lo = m.logw[0], hi = m.logw[0];
        for (double w : m.logw) {
            lo = std::min(lo, w);
            hi = std::max(hi, w);
        }
        return hi - lo;
    };
    rep.entry_ratio = log_ratio(pi);
    rep.entry_ratio_bound = log_ratio(xis[0]) + log_ratio(xis[t - 1]);

    // Image ratio bound with a random positive y.
    RngStream rng = derive_substream(key, 0, "pf.y");
    LogVec y(n);
    for (auto& v2 : y) v2 = rng.normal();
    LogVec img(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) col[k] = pi.log_at(i, k) + y[k];
        img[i] = log_sum_exp(col);
    }
    double lo = img[0], hi = img[0];
    for (double w : img) {
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    rep.image_ratio = hi - lo;
    rep.image_ratio_bound = log_ratio(xis[0]);

    rep.ratios_ok = rep.entry_ratio <= rep.entry_ratio_bound + 1e-9 &&
                    rep.image_ratio <= rep.image_ratio_bound + 1e-9 &&
                    rep.image_ratio >= -1e-12;
    return rep;
}

} // namespace cgpoly
