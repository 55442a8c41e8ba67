// Run configuration and structured experiment reports with CSV / JSON
// emission. Reports are deterministic for a fixed (config, seed) apart from
// the wall-time field.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgpoly/env.hpp"
#include "cgpoly/stats.hpp"

namespace cgpoly {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string experiment;
    std::string dist = "stable(0.5)";
    int n = 100;
    int t = 10;
    double alpha = 0.5;
    int replicas = 200;
    std::optional<std::uint64_t> seed; // mandatory, no wall-clock default
    double tol = 1e-8;
    std::string out_path;
    std::string format = "json"; // csv | json

    void validate() const;
    EnvSpec env() const { return parse_env_spec(dist); }
};

struct Estimate {
    std::string name;
    double value = 0.0;
    double se = 0.0;
    bool has_se = false;
};

struct NamedTest {
    std::string name;
    TestResult result;
};

struct ExperimentReport {
    std::string experiment;
    RunConfig config;
    std::vector<Estimate> estimates;
    std::vector<NamedTest> tests;
    std::vector<std::string> row_columns;   // CSV header
    std::vector<std::vector<double>> rows;  // one row per replica/grid point
    double wall_seconds = 0.0;
    std::string version = kVersion;

    bool passed() const;
    void add_estimate(const std::string& name, double value);
    void add_estimate(const std::string& name, double value, double se);
    void add_test(const std::string& name, const TestResult& r);
};

// UTF-8, LF, '.' decimal separator; column order as in row_columns.
std::string report_to_csv(const ExperimentReport& rep);
std::string report_to_json(const ExperimentReport& rep);
ExperimentReport report_from_json(const std::string& text);

// Writes to path ("-" or empty: stdout).
void emit_report(const ExperimentReport& rep, const std::string& format,
                 const std::string& path);

} // namespace cgpoly
