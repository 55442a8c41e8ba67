// Disorder environments: i.i.d. positive edge weights omega_{i,j}(t), stored
// as logs. A time slice is an N x N matrix; experiments that never need a
// whole slice in memory draw rows or columns through keyed substreams.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cgpoly/logdomain.hpp"
#include "cgpoly/rng.hpp"

namespace cgpoly {

struct EnvSpec {
    enum class Dist { Stable, Pareto, LogNormal, ConstantOnes, Custom };

    Dist dist = Dist::ConstantOnes;
    double alpha = 0.5;  // stable / pareto index
    double mu = 0.0;     // lognormal
    double sigma = 1.0;  // lognormal
    double pareto_log_c = 0.0; // cached -log Gamma(1-alpha), set by pareto()
    std::function<double(RngStream&)> custom_log_draw; // Custom only

    static EnvSpec stable(double alpha);
    static EnvSpec pareto(double alpha);
    static EnvSpec lognormal(double mu, double sigma);
    static EnvSpec constant_ones();
    static EnvSpec custom(std::function<double(RngStream&)> log_draw);

    void validate() const;
    bool is_degenerate() const { return dist == Dist::ConstantOnes; }

    // One log-domain draw.
    double log_draw(RngStream& rng) const;

    std::string name() const;
};

EnvSpec parse_env_spec(const std::string& text);

// One time slice, log-domain, row-major. Only materialized at small N.
struct EnvironmentMatrix {
    int n = 0;
    std::vector<double> logw; // n*n, logw[i*n+j] = log omega_{i,j}

    double log_at(int i, int j) const { return logw[static_cast<std::size_t>(i) * n + j]; }
    double& log_at(int i, int j) { return logw[static_cast<std::size_t>(i) * n + j]; }

    EnvironmentMatrix transpose() const;
    void validate() const; // finite entries, square, n >= 2
};

// n x n i.i.d. slice drawn sequentially (row-major) from `rng`.
EnvironmentMatrix sample_environment(const EnvSpec& spec, int n, RngStream& rng);

// Doubly infinite environment {xi(t)}: slice t is a pure function of
// (key, t), so forward windows, backward windows and shifts all see the
// same matrices. Slices are cached; intended for small N.
class EnvironmentWindow {
  public:
    EnvironmentWindow(EnvSpec spec, int n, std::uint64_t key);

    // Fixed-slice environment: every time returns the same matrix.
    static EnvironmentWindow fixed(EnvironmentMatrix m);

    const EnvironmentMatrix& matrix(long long t);
    const EnvSpec& spec() const { return spec_; }
    int n() const { return n_; }

  private:
    EnvSpec spec_;
    int n_;
    std::uint64_t key_ = 0;
    bool fixed_ = false;
    EnvironmentMatrix fixed_matrix_;
    std::map<long long, EnvironmentMatrix> cache_;
};

// Row i of slice t under the streaming convention (one substream per row).
// Used by the large-N recursion; entries match nothing else by design, they
// are simply i.i.d. draws addressable by (key, t, i).
void env_row(const EnvSpec& spec, int n, std::uint64_t key, long long t, int i,
             std::vector<double>& out_logw);

// Column j of slice t under the independent column convention.
void env_col(const EnvSpec& spec, int n, std::uint64_t key, long long t, int j,
             std::vector<double>& out_logw);

} // namespace cgpoly
