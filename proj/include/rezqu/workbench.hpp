#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rezqu/device.hpp"

namespace rezqu::workbench {

inline constexpr const char* tool_version = "0.1.0";

enum class OutputFormat { Csv, Json };

// Parsed experiment configuration. Parsing is strict: unknown keys are
// rejected with their full path, every frequency key carries its unit in the
// name.
struct ExperimentConfig {
    DeviceParams device;
    std::string experiment;
    nlohmann::json params; // validated experiment-specific block
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;
    unsigned long long seed = 1;
    int workers = 0; // 0: one per available core
    nlohmann::json canonical;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

const std::vector<std::string>& experiment_names();

// Tabular result plus an ordered metadata preamble.
struct SweepResult {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;
    bool stagnation_warning = false;
};

SweepResult run_experiment(const ExperimentConfig& cfg);

SweepResult run_spectrum(const ExperimentConfig& cfg);
SweepResult run_idling_sweep(const ExperimentConfig& cfg);
SweepResult run_move(const ExperimentConfig& cfg);
SweepResult run_tail_sweep(const ExperimentConfig& cfg);
SweepResult run_lz_estimate(const ExperimentConfig& cfg);
SweepResult run_measurement(const ExperimentConfig& cfg);
SweepResult run_error_budget(const ExperimentConfig& cfg);

// Emission. Under `reproducible` the timestamp metadata line is suppressed
// and outputs are byte-identical for identical config + seed.
std::string to_csv(const SweepResult& result, bool reproducible);
std::string to_json_text(const SweepResult& result, bool reproducible);

std::uint64_t config_hash(const nlohmann::json& canonical);

// Map n jobs over a worker pool; results must be written by index inside fn.
void parallel_for(int n_jobs, int workers, const std::function<void(int)>& fn);

} // namespace rezqu::workbench
