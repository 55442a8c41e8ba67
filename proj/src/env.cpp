#include "cgpoly/env.hpp"

#include <cmath>
#include <stdexcept>

#include "cgpoly/stable.hpp"

namespace cgpoly {

namespace {

// Pareto representative of the alpha-regular tail class:
//   P[omega > x] = min(1, c x^{-alpha}),  c = 1/Gamma(1-alpha),
// matching the stable tail constant exactly. Inverse-CDF sampling.
double pareto_log_draw(double alpha, double log_c, RngStream& rng) {
    return (log_c - std::log(rng.uniform01())) / alpha;
}

} // namespace

EnvSpec EnvSpec::stable(double alpha) {
    EnvSpec s;
    s.dist = Dist::Stable;
    s.alpha = alpha;
    s.validate();
    return s;
}

EnvSpec EnvSpec::pareto(double alpha) {
    EnvSpec s;
    s.dist = Dist::Pareto;
    s.alpha = alpha;
    s.validate();
    s.pareto_log_c = -std::lgamma(1.0 - alpha);
    return s;
}

EnvSpec EnvSpec::lognormal(double mu, double sigma) {
    EnvSpec s;
    s.dist = Dist::LogNormal;
    s.mu = mu;
    s.sigma = sigma;
    s.validate();
    return s;
}

EnvSpec EnvSpec::constant_ones() {
    EnvSpec s;
    s.dist = Dist::ConstantOnes;
    return s;
}

EnvSpec EnvSpec::custom(std::function<double(RngStream&)> log_draw) {
    EnvSpec s;
    s.dist = Dist::Custom;
    s.custom_log_draw = std::move(log_draw);
    s.validate();
    return s;
}

void EnvSpec::validate() const {
    switch (dist) {
        case Dist::Stable:
        case Dist::Pareto:
            if (!(alpha > 0.0 && alpha < 1.0))
                throw std::invalid_argument(
                    "env spec: alpha must lie in (0,1) for " + name());
            break;
        case Dist::LogNormal:
            if (!(sigma > 0.0) || !std::isfinite(mu) || !std::isfinite(sigma))
                throw std::invalid_argument("env spec: lognormal needs finite mu, sigma > 0");
            break;
        case Dist::ConstantOnes:
            break;
        case Dist::Custom:
            if (!custom_log_draw)
                throw std::invalid_argument("env spec: custom draw missing");
            break;
    }
}

double EnvSpec::log_draw(RngStream& rng) const {
    switch (dist) {
        case Dist::Stable: return sample_stable_log(alpha, rng);
        case Dist::Pareto: return pareto_log_draw(alpha, pareto_log_c, rng);
        case Dist::LogNormal: return mu + sigma * rng.normal();
        case Dist::ConstantOnes: return 0.0;
        case Dist::Custom: return custom_log_draw(rng);
    }
    throw std::logic_error("env spec: unknown distribution");
}

std::string EnvSpec::name() const {
    switch (dist) {
        case Dist::Stable: return "stable(" + std::to_string(alpha) + ")";
        case Dist::Pareto: return "pareto(" + std::to_string(alpha) + ")";
        case Dist::LogNormal:
            return "lognormal(" + std::to_string(mu) + "," + std::to_string(sigma) + ")";
        case Dist::ConstantOnes: return "constantOnes";
        case Dist::Custom: return "custom";
    }
    return "?";
}

EnvSpec parse_env_spec(const std::string& text) {
    auto param = [&](std::size_t lp) {
        if (text.back() != ')')
            throw std::invalid_argument("env spec: missing ')' in " + text);
        return text.substr(lp + 1, text.size() - lp - 2);
    };
    if (text == "ones" || text == "constantOnes") return EnvSpec::constant_ones();
    if (text.rfind("stable(", 0) == 0)
        return EnvSpec::stable(std::stod(param(6)));
    if (text.rfind("pareto(", 0) == 0)
        return EnvSpec::pareto(std::stod(param(6)));
    if (text.rfind("lognormal(", 0) == 0) {
        const std::string p = param(9);
        const auto comma = p.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("env spec: lognormal needs mu,sigma");
        return EnvSpec::lognormal(std::stod(p.substr(0, comma)),
                                  std::stod(p.substr(comma + 1)));
    }
    throw std::invalid_argument("env spec: cannot parse '" + text + "'");
}

EnvironmentMatrix EnvironmentMatrix::transpose() const {
    EnvironmentMatrix out;
    out.n = n;
    out.logw.resize(logw.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.log_at(j, i) = log_at(i, j);
    return out;
}

void EnvironmentMatrix::validate() const {
    if (n < 2) throw std::invalid_argument("environment: n must be >= 2");
    if (logw.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("environment: entry count != n*n");
    for (double w : logw)
        if (!std::isfinite(w))
            throw std::invalid_argument("environment: entries must be finite logs");
}

EnvironmentMatrix sample_environment(const EnvSpec& spec, int n, RngStream& rng) {
    spec.validate();
    if (n < 2) throw std::invalid_argument("sample_environment: n must be >= 2");
    EnvironmentMatrix m;
    m.n = n;
    m.logw.resize(static_cast<std::size_t>(n) * n);
    for (auto& w : m.logw) w = spec.log_draw(rng);
    return m;
}

EnvironmentWindow::EnvironmentWindow(EnvSpec spec, int n, std::uint64_t key)
    : spec_(std::move(spec)), n_(n), key_(key) {
    spec_.validate();
    if (n_ < 2) throw std::invalid_argument("environment window: n must be >= 2");
}

EnvironmentWindow EnvironmentWindow::fixed(EnvironmentMatrix m) {
    m.validate();
    EnvironmentWindow w(EnvSpec::constant_ones(), m.n, 0);
    w.fixed_ = true;
    w.fixed_matrix_ = std::move(m);
    return w;
}

const EnvironmentMatrix& EnvironmentWindow::matrix(long long t) {
    if (fixed_) return fixed_matrix_;
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    RngStream rng = derive_substream(key_, {static_cast<std::uint64_t>(t)}, "env.slice");
    return cache_.emplace(t, sample_environment(spec_, n_, rng)).first->second;
}

void env_row(const EnvSpec& spec, int n, std::uint64_t key, long long t, int i,
             std::vector<double>& out_logw) {
    out_logw.resize(n);
    RngStream rng = derive_substream(
        key, {static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i)},
        "env.row");
    for (int j = 0; j < n; ++j) out_logw[j] = spec.log_draw(rng);
}

void env_col(const EnvSpec& spec, int n, std::uint64_t key, long long t, int j,
             std::vector<double>& out_logw) {
    out_logw.resize(n);
    RngStream rng = derive_substream(
        key, {static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(j)},
        "env.col");
    for (int i = 0; i < n; ++i) out_logw[i] = spec.log_draw(rng);
}

} // namespace cgpoly
