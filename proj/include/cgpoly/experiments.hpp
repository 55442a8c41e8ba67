// Experiment orchestration: maps a validated RunConfig onto the module
// experiments and collects a structured report.

#pragma once

#include "cgpoly/report.hpp"

namespace cgpoly {

// Dispatches config.experiment; throws std::invalid_argument on unknown
// names or bad parameters. Identical (config, seed) produce identical
// reports apart from wall_seconds.
ExperimentReport run_experiment(const RunConfig& config);

std::vector<std::string> experiment_names();

} // namespace cgpoly
