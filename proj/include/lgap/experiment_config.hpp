#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lgap/mode_recognition.hpp"

namespace lgap {

/// Full experiment description: loop configuration, plant, mode schedule,
/// and output naming.
struct ExperimentConfig {
    RecognitionConfig recognition{};
    SarxSystem system = SarxSystem::benchmark();
    ModeSchedule schedule = ModeSchedule{{{0, 2}, {40, 1}}};
    std::string output_prefix = "run";
};

/// The benchmark scenario: plant starts in mode 2, data from mode 1,
/// switch to mode 1 at t = 40.
[[nodiscard]] ExperimentConfig default_experiment_config();

/// Parses and validates a config document. Unknown keys are rejected and all
/// violations are collected into a single ParseError, one line per field.
[[nodiscard]] ExperimentConfig parse_experiment_config(const nlohmann::json& doc);

[[nodiscard]] ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Serializes a config with every default made explicit.
[[nodiscard]] nlohmann::json echo_config(const ExperimentConfig& config);

/// Runs the experiment (and optionally the no-recognition baseline), writing
/// the log CSVs, the summary JSON, and the figure-data CSVs under out_dir.
/// Returns the summary document.
nlohmann::json run_experiment_files(const ExperimentConfig& config, bool baseline,
                                    const std::filesystem::path& out_dir);

}  // namespace lgap
