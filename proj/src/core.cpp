#include "cgpoly/core.hpp"

#include <cmath>
#include <stdexcept>

namespace cgpoly {

double alpha_norm_log(const LogVec& v, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha_norm_log: alpha must be > 0");
    if (v.empty()) throw std::invalid_argument("alpha_norm_log: empty vector");
    double m = kNegInf;
    for (double x : v)
        if (alpha * x > m) m = alpha * x;
    if (m == kNegInf) return kNegInf;
    double acc = 0.0;
    for (double x : v) acc += std::exp(alpha * x - m);
    return (m + std::log(acc)) / alpha;
}

double SimplexPoint::coord(int i) const { return std::exp(log_coords[i]); }

void SimplexPoint::check_on_simplex(double tol) const {
    double s = 0.0;
    for (double c : log_coords) s += std::exp(alpha * c);
    if (std::abs(s - 1.0) > tol)
        throw std::runtime_error("simplex point off the alpha-simplex");
}

SimplexPoint project_simplex(const LogVec& v, double alpha) {
    const double norm = alpha_norm_log(v, alpha);
    if (norm == kNegInf)
        throw std::invalid_argument("project_simplex: vector has no finite coordinate");
    SimplexPoint p;
    p.alpha = alpha;
    p.log_coords.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) p.log_coords[i] = v[i] - norm;
    return p;
}

SimplexPoint reproject(const SimplexPoint& x, double alpha) {
    return project_simplex(x.log_coords, alpha);
}

LogVec step_recursion(const LogVec& z, const EnvironmentMatrix& xi) {
    const int n = xi.n;
    if (static_cast<int>(z.size()) != n)
        throw std::invalid_argument("step_recursion: dimension mismatch");
    LogVec out(n);
    LogVec col(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[i] = z[i] + xi.log_at(i, j);
        out[j] = log_sum_exp(col);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Streamed recursion
// ---------------------------------------------------------------------------

PartitionStepper::PartitionStepper(EnvSpec spec, int n, std::uint64_t key,
                                   LogVec z0)
    : spec_(std::move(spec)), n_(n), key_(key), z_(std::move(z0)) {
    spec_.validate();
    if (n_ < 2) throw std::invalid_argument("partition stepper: n must be >= 2");
    if (static_cast<int>(z_.size()) != n_)
        throw std::invalid_argument("partition stepper: z0 size mismatch");
    if (alpha_norm_log(z_, 1.0) == kNegInf)
        throw std::invalid_argument("partition stepper: z0 must be nonzero");
    row_.resize(n_);
    acc_.resize(n_);
    colmax_.resize(n_);
}

void PartitionStepper::step() {
    ++t_;
    double zmax = kNegInf;
    for (double v : z_)
        if (v > zmax) zmax = v;

    // Fast path: shared shift m = max_i z_i, linear-domain column sums
    //   Z'(j) = m + log sum_i exp(z_i - m) * w_ij.
    // Safe while the scaled terms stay below e^650; a heavy-tailed draw that
    // would overflow triggers the exact two-pass column reduction instead
    // (rows are replayable, they come from keyed substreams).
    bool overflow = false;
    for (int j = 0; j < n_; ++j) acc_[j] = 0.0;
    for (int i = 0; i < n_ && !overflow; ++i) {
        env_row(spec_, n_, key_, t_, i, row_);
        const double zi = z_[i] - zmax;
        if (zi == kNegInf) continue;
        for (int j = 0; j < n_; ++j) {
            const double e = zi + row_[j];
            if (e > 650.0) { overflow = true; break; }
            acc_[j] += std::exp(e);
        }
    }
    if (!overflow) {
        for (int j = 0; j < n_; ++j) z_[j] = zmax + std::log(acc_[j]);
        return;
    }

    // Two-pass exact log-sum-exp per column.
    for (int j = 0; j < n_; ++j) colmax_[j] = kNegInf;
    for (int i = 0; i < n_; ++i) {
        env_row(spec_, n_, key_, t_, i, row_);
        if (z_[i] == kNegInf) continue;
        for (int j = 0; j < n_; ++j) {
            const double y = z_[i] + row_[j];
            if (y > colmax_[j]) colmax_[j] = y;
        }
    }
    for (int j = 0; j < n_; ++j) acc_[j] = 0.0;
    for (int i = 0; i < n_; ++i) {
        env_row(spec_, n_, key_, t_, i, row_);
        if (z_[i] == kNegInf) continue;
        for (int j = 0; j < n_; ++j)
            acc_[j] += std::exp(z_[i] + row_[j] - colmax_[j]);
    }
    for (int j = 0; j < n_; ++j) z_[j] = colmax_[j] + std::log(acc_[j]);
}

PartitionTrajectory run_partition(const EnvSpec& spec, int n, int t,
                                  double alpha, std::uint64_t key,
                                  const LogVec* z0) {
    if (t < 1) throw std::invalid_argument("run_partition: t must be >= 1");
    LogVec start = z0 ? *z0 : LogVec(n, 0.0);
    PartitionStepper stepper(spec, n, key, std::move(start));

    PartitionTrajectory traj;
    traj.alpha = alpha;
    traj.z.reserve(t + 1);
    traj.phi.reserve(t + 1);
    traj.z.push_back(stepper.state());
    traj.phi.push_back(alpha_norm_log(stepper.state(), alpha));
    double prev_l1 = alpha_norm_log(stepper.state(), 1.0);
    for (int s = 1; s <= t; ++s) {
        stepper.step();
        traj.z.push_back(stepper.state());
        traj.phi.push_back(alpha_norm_log(stepper.state(), alpha));
        traj.increments.push_back(traj.phi[s] - traj.phi[s - 1]);
        const double l1 = alpha_norm_log(stepper.state(), 1.0);
        traj.increments_l1.push_back(l1 - prev_l1);
        prev_l1 = l1;
    }
    return traj;
}

// ---------------------------------------------------------------------------
// P2P oracles
// ---------------------------------------------------------------------------

double p2p_bruteforce(std::span<const EnvironmentMatrix> xis, int i, int j) {
    const int t = static_cast<int>(xis.size());
    if (t < 1) throw std::invalid_argument("p2p_bruteforce: t must be >= 1");
    const int n = xis[0].n;
    double paths = 1.0;
    for (int s = 1; s < t; ++s) paths *= n;
    if (paths > static_cast<double>(kBruteforcePathGuard))
        throw std::invalid_argument("p2p_bruteforce: oracle too large");

    if (t == 1) return xis[0].log_at(i, j);

    // Odometer over the t-1 intermediate sites.
    std::vector<int> mid(t - 1, 0);
    std::vector<double> logweights;
    logweights.reserve(static_cast<std::size_t>(paths));
    for (;;) {
        double w = xis[0].log_at(i, mid[0]);
        for (int s = 1; s < t - 1; ++s) w += xis[s].log_at(mid[s - 1], mid[s]);
        w += xis[t - 1].log_at(mid[t - 2], j);
        logweights.push_back(w);

        int k = t - 2;
        while (k >= 0 && ++mid[k] == n) mid[k--] = 0;
        if (k < 0) break;
    }
    return log_sum_exp(logweights);
}

double p2p_matrix(std::span<const EnvironmentMatrix> xis, int i, int j) {
    const int t = static_cast<int>(xis.size());
    if (t < 1) throw std::invalid_argument("p2p_matrix: t must be >= 1");
    const int n = xis[0].n;
    // v = row i of xi(1); then v <- v^T xi(s).
    LogVec v(n);
    for (int k = 0; k < n; ++k) v[k] = xis[0].log_at(i, k);
    LogVec col(n);
    for (int s = 1; s < t; ++s) {
        if (xis[s].n != n) throw std::invalid_argument("p2p_matrix: dimension mismatch");
        LogVec next(n);
        for (int m = 0; m < n; ++m) {
            for (int k = 0; k < n; ++k) col[k] = v[k] + xis[s].log_at(k, m);
            next[m] = log_sum_exp(col);
        }
        v = std::move(next);
    }
    return v[j];
}

} // namespace cgpoly
