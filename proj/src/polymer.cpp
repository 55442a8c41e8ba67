#include "cgpoly/polymer.hpp"

#include <cmath>
#include <stdexcept>

namespace cgpoly {

std::vector<double> TransitionRow::probs() const {
    std::vector<double> p(log_probs.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(log_probs[i]);
    return p;
}

void TransitionRow::check_normalized(double tol) const {
    double s = 0.0;
    for (double lp : log_probs) s += std::exp(lp);
    if (std::abs(s - 1.0) > tol)
        throw std::runtime_error("transition row not normalized");
}

std::vector<double> CovariantLaw::probs() const {
    std::vector<double> p(log_nu.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(log_nu[i]);
    return p;
}

namespace {

TransitionRow normalized_row(LogVec log_unnorm, int source, long long time) {
    const double norm = log_sum_exp(log_unnorm);
    for (auto& v : log_unnorm) v -= norm;
    TransitionRow row;
    row.source = source;
    row.time = time;
    row.log_probs = std::move(log_unnorm);
    return row;
}

} // namespace

TransitionRow finite_horizon_transition(std::span<const EnvironmentMatrix> xis,
                                        long long t, int horizon, int k) {
    if (xis.empty())
        throw std::invalid_argument("finite_horizon_transition: need slices t+1..T");
    if (static_cast<long long>(xis.size()) != horizon - t)
        throw std::invalid_argument("finite_horizon_transition: slice count != T - t");
    const int n = xis[0].n;
    if (k < 0 || k >= n) throw std::invalid_argument("finite_horizon_transition: bad state");

    // w = xi(t+2)...xi(T) 1, the P2L partition from time t+1 to the horizon.
    LogVec w(n, 0.0);
    LogVec col(n);
    for (std::size_t s = xis.size() - 1; s >= 1; --s) {
        LogVec next(n);
        for (int i = 0; i < n; ++i) {
            for (int m = 0; m < n; ++m) col[m] = xis[s].log_at(i, m) + w[m];
            next[i] = log_sum_exp(col);
        }
        w = std::move(next);
    }
    LogVec row(n);
    for (int l = 0; l < n; ++l) row[l] = xis[0].log_at(k, l) + w[l];
    return normalized_row(std::move(row), k, t);
}

InfiniteTransition infinite_transition(EnvironmentWindow& env, long long t,
                                       int k, double tol) {
    const int n = env.n();
    if (k < 0 || k >= n) throw std::invalid_argument("infinite_transition: bad state");
    DirectionLimit v_next = limit_direction(env, t + 1, 1.0, tol);
    const EnvironmentMatrix& xi = env.matrix(t + 1);

    // Direct form: row proportional to omega_{k,l}(t+1) V(t+1,l).
    LogVec row(n);
    for (int l = 0; l < n; ++l)
        row[l] = xi.log_at(k, l) + v_next.point.log_coords[l];

    InfiniteTransition out;
    out.row = normalized_row(row, k, t);
    out.limit_bound = v_next.bound;

    // Identity form: same numerator over ||xi(t+1) V(t+1)||_1 V(t,k) with
    // V(t) = Psi_1(xi(t+1) V(t+1)); exact for the true limits, so the gap
    // measures truncation-consistency only.
    SimplexPoint v_t = projective_action(xi, v_next.point);
    LogVec colbuf(n);
    for (int i = 0; i < n; ++i) {
        for (int m = 0; m < n; ++m)
            colbuf[m] = xi.log_at(i, m) + v_next.point.log_coords[m];
        row[i] = log_sum_exp(colbuf); // reuse as xi V(t+1)
    }
    const double log_norm1 = log_sum_exp(row);
    double gap = 0.0;
    for (int l = 0; l < n; ++l) {
        const double identity_form = xi.log_at(k, l) +
                                     v_next.point.log_coords[l] - log_norm1 -
                                     v_t.log_coords[k];
        gap = std::max(gap, std::abs(std::exp(identity_form) -
                                     std::exp(out.row.log_probs[l])));
    }
    out.cross_check_gap = gap;
    return out;
}

CovariantLaw covariant_law(EnvironmentWindow& env, long long t, double tol) {
    DirectionLimit fwd = limit_direction(env, t, 1.0, tol / 4.0);
    DirectionLimit bwd = backward_limit_direction(env, t, 1.0, tol / 4.0);
    const int n = env.n();
    LogVec nu(n);
    for (int j = 0; j < n; ++j)
        nu[j] = fwd.point.log_coords[j] + bwd.point.log_coords[j];
    const double norm = log_sum_exp(nu);
    for (auto& v : nu) v -= norm;
    CovariantLaw law;
    law.time = t;
    law.log_nu = std::move(nu);
    // d-bound b gives per-coordinate relative error <= ~2b; the product and
    // renormalization compound it to <= ~4(b_fwd + b_bwd).
    law.bound = 4.0 * (fwd.bound + bwd.bound);
    return law;
}

StationarityReport covariance_check(EnvironmentWindow& env, long long t, double tol) {
    const int n = env.n();
    CovariantLaw nu_t = covariant_law(env, t, tol);
    CovariantLaw nu_t1 = covariant_law(env, t + 1, tol);

    std::vector<double> pushed(n, 0.0);
    double trans_bound = 0.0;
    for (int k = 0; k < n; ++k) {
        InfiniteTransition tr = infinite_transition(env, t, k, tol / 4.0);
        trans_bound = std::max(trans_bound, 4.0 * tr.limit_bound);
        const double nu_k = std::exp(nu_t.log_nu[k]);
        for (int l = 0; l < n; ++l)
            pushed[l] += nu_k * std::exp(tr.row.log_probs[l]);
    }
    StationarityReport rep;
    for (int l = 0; l < n; ++l)
        rep.residual = std::max(rep.residual,
                                std::abs(pushed[l] - std::exp(nu_t1.log_nu[l])));
    rep.combined_bound = nu_t.bound + nu_t1.bound + trans_bound;
    rep.pass = rep.residual <= 10.0 * rep.combined_bound;
    return rep;
}

TransitionRow time_reversed_transition(EnvironmentWindow& env, long long t,
                                       int ell, double tol) {
    const int n = env.n();
    if (ell < 0 || ell >= n)
        throw std::invalid_argument("time_reversed_transition: bad state");
    DirectionLimit bwd = backward_limit_direction(env, t, 1.0, tol);
    const EnvironmentMatrix& xi = env.matrix(t + 1);
    LogVec row(n);
    for (int k = 0; k < n; ++k)
        row[k] = xi.log_at(k, ell) + bwd.point.log_coords[k];
    return normalized_row(std::move(row), ell, t);
}

ReversalReport time_reversal_check(EnvironmentWindow& env, long long t, double tol) {
    const int n = env.n();
    CovariantLaw nu_t = covariant_law(env, t, tol);
    CovariantLaw nu_t1 = covariant_law(env, t + 1, tol);

    ReversalReport rep;
    double trans_bound = 0.0;
    std::vector<TransitionRow> fwd_rows, bwd_rows;
    for (int k = 0; k < n; ++k) {
        InfiniteTransition tr = infinite_transition(env, t, k, tol / 4.0);
        trans_bound = std::max(trans_bound, 4.0 * tr.limit_bound);
        fwd_rows.push_back(std::move(tr.row));
    }
    for (int l = 0; l < n; ++l) {
        TransitionRow r = time_reversed_transition(env, t, l, tol / 4.0);
        bwd_rows.push_back(std::move(r));
    }
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const double lhs =
                std::exp(nu_t.log_nu[k] + fwd_rows[k].log_probs[l]);
            const double rhs =
                std::exp(nu_t1.log_nu[l] + bwd_rows[l].log_probs[k]);
            rep.residual = std::max(rep.residual, std::abs(lhs - rhs));
        }
    rep.combined_bound = nu_t.bound + nu_t1.bound + 2.0 * trans_bound;
    rep.pass = rep.residual <= 10.0 * rep.combined_bound;
    return rep;
}

std::vector<int> sample_polymer_path(
    const std::vector<std::vector<TransitionRow>>& transitions,
    const std::vector<double>& start_probs, RngStream& rng) {
    const int n = static_cast<int>(start_probs.size());
    auto draw_categorical = [&](const std::vector<double>& p) {
        const double u = rng.uniform01();
        double acc = 0.0;
        for (int i = 0; i < static_cast<int>(p.size()); ++i) {
            acc += p[i];
            if (u < acc) return i;
        }
        return static_cast<int>(p.size()) - 1;
    };
    std::vector<int> path;
    path.reserve(transitions.size() + 1);
    path.push_back(draw_categorical(start_probs));
    for (const auto& rows : transitions) {
        if (static_cast<int>(rows.size()) != n)
            throw std::invalid_argument("sample_polymer_path: need a row per state");
        path.push_back(draw_categorical(rows[path.back()].probs()));
    }
    return path;
}

} // namespace cgpoly
