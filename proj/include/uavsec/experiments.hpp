#pragma once

// Configuration ingestion, experiment orchestration, and CSV persistence.
// dB/dBm inputs are converted to linear/watts here and nowhere else.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavsec/bcd.hpp"

namespace uavsec {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Solve, Trace, TrajectoryExport, SweepTime, SweepPower };

const char* experiment_kind_name(ExperimentKind kind);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::Solve;
    std::vector<SchemeKind> schemes; // never empty after load_config
    std::vector<double> sweep_values; // T seconds or P_ave dBm; empty = kind default
    std::vector<double> splits;       // power-ratio values for the power sweep
    std::filesystem::path output_dir = "out";
};

struct LoadedConfig {
    ScenarioConfig scenario;
    ExperimentSpec experiment;
};

// Parses a JSON document with sections scenario/power/solver/experiment.
// Missing keys take the built-in defaults except scenario.T_s, which is
// required. Unknown keys, malformed values, and infeasible geometry throw
// ConfigError.
LoadedConfig load_config(const std::string& text);

// Runs the experiment and returns the files written. Sweep rows record
// per-point solver errors in an extra column instead of aborting.
std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec,
                                                  const ScenarioConfig& cfg);

// Writes the reference trajectory only, without any optimization.
std::filesystem::path write_baseline_csv(const ScenarioConfig& cfg,
                                         const std::filesystem::path& output_dir);

// Entry point behind the command-line tool. Returns 0 on success, 1 on
// configuration or usage errors, 2 on solver errors.
int cli_main(int argc, const char* const* argv);

} // namespace uavsec
