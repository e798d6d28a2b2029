// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration and its flat "key = value" text form.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "otfs/detector.hpp"
#include "otfs/grid.hpp"

namespace otfs::sim {

enum class ScenarioMode { DistinctRows, Random };
enum class Baseline { None, OfdmPeriodogram };

struct ExperimentConfig {
    FrameGrid grid = FrameGrid::desk();
    int target_count = 4;
    std::vector<double> snr_sweep_db{-10.0, -5.0, 0.0, 5.0, 10.0, 15.0};
    int trials_per_point = 200;
    CfarConfig cfar;
    PilotStrategy pilot = PilotStrategy::FullPilot;
    ScenarioMode scenario_mode = ScenarioMode::DistinctRows;
    std::uint64_t rng_seed = 1;
    Baseline baseline = Baseline::None;
    double max_range_m = 3830.0;
    double max_speed_kmh = 440.0;
    std::vector<double> roc_pfa{1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
    bool compute_crlb = true;
    int workers = 1;
    /// SNR for single-frame commands (detect, estimate, heatmap).
    double snr_db = 20.0;
    /// Fixed scene; when non-empty it replaces random sampling.
    std::vector<Target> targets;

    /// Throws ConfigError on inconsistent values.
    void validate() const;
};

const char* to_string(ScenarioMode m) noexcept;
const char* to_string(Baseline b) noexcept;

/// Applies one key/value pair. Throws ConfigError for unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Parses "key = value" lines; '#' starts a comment. Later keys override earlier ones.
void apply_config_text(ExperimentConfig& cfg, std::istream& in);
void load_config_file(ExperimentConfig& cfg, const std::string& path);

/// Writes every field in a form apply_config_text reads back.
void write_config(const ExperimentConfig& cfg, std::ostream& os);

}  // namespace otfs::sim
