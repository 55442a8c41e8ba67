// Command-line front end. One subcommand per experiment; every run needs an
// explicit --seed so results are reproducible by construction. Exit codes:
// 0 all experiment tests passed, 1 an experiment-level test failed,
// 2 usage or validation error.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cgpoly/experiments.hpp"

namespace {

void attach_common_flags(CLI::App* sub, cgpoly::RunConfig& cfg,
                         std::uint64_t& seed_slot, std::string& config_path) {
    sub->add_option("--dist", cfg.dist,
                    "environment: stable(a) | pareto(a) | lognormal(mu,sigma) | ones");
    sub->add_option("--n", cfg.n, "number of sites");
    sub->add_option("--t", cfg.t, "time horizon / steps");
    sub->add_option("--alpha", cfg.alpha, "stable index in (0,1)");
    sub->add_option("--replicas", cfg.replicas, "independent replicas");
    sub->add_option("--seed", seed_slot, "64-bit master seed (required)");
    sub->add_option("--tol", cfg.tol, "certified truncation tolerance");
    sub->add_option("--out", cfg.out_path, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv | json");
    sub->add_option("--config", config_path,
                    "flat key=value config file; flags override");
}

// Flat key=value file (keys match the long flags without dashes). Values
// apply only where the flag was not given on the command line.
void apply_config_file(const std::string& path, CLI::App* sub,
                       cgpoly::RunConfig& cfg, std::uint64_t& seed_slot,
                       bool& seed_set) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key=value");
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    auto flag_given = [&](const char* flag) { return sub->count(flag) > 0; };
    auto take = [&](const char* key, auto setter) {
        auto it = kv.find(key);
        if (it == kv.end()) return;
        setter(it->second);
        kv.erase(it);
    };
    take("dist", [&](const std::string& v) { if (!flag_given("--dist")) cfg.dist = v; });
    take("n", [&](const std::string& v) { if (!flag_given("--n")) cfg.n = std::stoi(v); });
    take("t", [&](const std::string& v) { if (!flag_given("--t")) cfg.t = std::stoi(v); });
    take("alpha", [&](const std::string& v) { if (!flag_given("--alpha")) cfg.alpha = std::stod(v); });
    take("replicas", [&](const std::string& v) { if (!flag_given("--replicas")) cfg.replicas = std::stoi(v); });
    take("seed", [&](const std::string& v) {
        if (!flag_given("--seed")) {
            seed_slot = std::stoull(v);
            seed_set = true;
        }
    });
    take("tol", [&](const std::string& v) { if (!flag_given("--tol")) cfg.tol = std::stod(v); });
    take("out", [&](const std::string& v) { if (!flag_given("--out")) cfg.out_path = v; });
    take("format", [&](const std::string& v) { if (!flag_given("--format")) cfg.format = v; });
    if (!kv.empty())
        throw std::invalid_argument("config: unknown key '" + kv.begin()->first + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"complete-graph polymer laboratory"};
    app.require_subcommand(1);

    cgpoly::RunConfig cfg;
    std::uint64_t seed_slot = 0;
    std::string config_path;
    for (const auto& name : cgpoly::experiment_names()) {
        CLI::App* sub = app.add_subcommand(name);
        attach_common_flags(sub, cfg, seed_slot, config_path);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    cfg.experiment = chosen->get_name();
    bool seed_set = chosen->count("--seed") > 0;
    try {
        if (!config_path.empty())
            apply_config_file(config_path, chosen, cfg, seed_slot, seed_set);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (seed_set) cfg.seed = seed_slot;

    try {
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const cgpoly::ExperimentReport rep = cgpoly::run_experiment(cfg);
        cgpoly::emit_report(rep, cfg.format, cfg.out_path);
        for (const auto& t : rep.tests)
            std::cerr << (t.result.pass ? "[pass] " : "[FAIL] ") << t.name
                      << "  statistic=" << t.result.statistic
                      << " critical=" << t.result.critical_value << "\n";
        return rep.passed() ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
