// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo harness: scenario sampling, the per-trial pipeline, target
// matching, metric aggregation, the OFDM periodogram baseline and ROC sweeps.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "otfs/correlator.hpp"
#include "otfs/detector.hpp"
#include "otfs/fractional.hpp"
#include "otfs/sim/config.hpp"

namespace otfs::sim {

/// Seed streams for derive_seed. A trial's scene, frame and unit noise do not
/// depend on the SNR, so a sweep uses common random numbers.
enum class Stream : std::uint64_t { Scene = 1, Frame = 2, Noise = 3, OfdmFrame = 4, OfdmNoise = 5 };

std::uint64_t trial_seed(const ExperimentConfig& cfg, Stream s, int trial) noexcept;

/// Largest delay index and Doppler magnitude allowed by the range/speed caps.
double delay_cap(const ExperimentConfig& cfg) noexcept;
double doppler_cap(const ExperimentConfig& cfg) noexcept;

/// Deterministic in (cfg, trial). snr_db is left at cfg.snr_db.
Scenario sample_scenario(const ExperimentConfig& cfg, int trial);

struct TrialRecord {
    int trial = 0;
    double snr_db = 0.0;
    std::vector<Target> truth;
    DetectionList detections;
    std::vector<FractionalEstimate> estimates;
    std::vector<cplx> gains;
    bool crlb_valid = false;
    double crlb_kappa_sum = 0.0;
    double crlb_iota_sum = 0.0;
    double kappa_norm_sq = 0.0;
    double iota_norm_sq = 0.0;
    bool has_baseline = false;
    DetectionList baseline_detections;
    std::vector<FractionalEstimate> baseline_estimates;
};

/// Frames the scene, applies the channel and noise, correlates, detects and refines.
TrialRecord run_trial(const Scenario& scenario, const ExperimentConfig& cfg, int trial);

/// Correlation map of one trial (used by detect/estimate/heatmap and ROC).
CorrelationMap trial_correlation(const Scenario& scenario, const ExperimentConfig& cfg, int trial);

struct MatchPair {
    int estimate;
    int truth;
    double distance;
};

struct Matching {
    std::vector<MatchPair> pairs;
    std::vector<int> unmatched_estimates;
    std::vector<int> unmatched_truths;
};

/// Torus distance in index units between an estimate and a target.
double dd_distance(double doppler_a, double delay_a, double doppler_b, double delay_b, const FrameGrid& grid);

/// Globally greedy: all (estimate, truth) pairs within the gate sorted by
/// distance (ties by estimate, then truth index), taken while both are free.
Matching match_targets(const std::vector<FractionalEstimate>& estimates, const std::vector<Target>& truth,
                       const FrameGrid& grid, double gate = 1.5);

struct MetricsRow {
    double snr_db = 0.0;
    double detection_rate = 0.0;
    double false_alarm_rate = 0.0;
    double rmse_range_m = 0.0;
    double rmse_velocity_mps = 0.0;
    double nmse_kappa = 0.0;
    double nmse_iota = 0.0;
    double crlb_kappa = 0.0;
    double crlb_iota = 0.0;
};

/// Extra per-SNR figures that do not belong in the fixed metrics table.
struct Diagnostics {
    double snr_db = 0.0;
    long long frames = 0;
    long long truths = 0;
    long long matched = 0;
    long long false_alarms = 0;
    long long clamped = 0;
    long long crlb_frames = 0;
    bool empty_match = false;
    double rmse_index_refined = 0.0;  // sqrt(mean(dk^2 + dl^2))
    double rmse_index_integer = 0.0;
    double rmse_doppler_refined = 0.0;
    double rmse_doppler_integer = 0.0;
    double rmse_delay_refined = 0.0;
    double rmse_delay_integer = 0.0;
    double rmse_range_integer_m = 0.0;
    double rmse_velocity_integer_mps = 0.0;
};

struct SnrSummary {
    MetricsRow metrics;
    Diagnostics diagnostics;
};

/// Aggregates one SNR point. With `baseline` set, scores the baseline
/// estimates instead. Rows with no matched pair carry NaN errors and
/// diagnostics.empty_match = true.
SnrSummary compute_metrics(const std::vector<TrialRecord>& records, const FrameGrid& grid, bool baseline = false);

struct BaselineResult {
    DetectionList detections;
    std::vector<FractionalEstimate> estimates;
    PowerMap periodogram;
};

/// OFDM sensing: TF QPSK frame, integer-rounded targets as phase ramps,
/// |2D transform of Y x conj(X)|^2, then the same CFAR.
BaselineResult ofdm_periodogram_baseline(const Scenario& scenario, const ExperimentConfig& cfg, int trial);

struct RocPoint {
    std::string method;  // "otfs" or "ofdm"
    double snr_db;
    double p_fa;
    double detection_rate;
    double false_alarm_rate;
};

/// Detection and false-alarm rates for every (SNR, p_fa) pair, for OTFS and
/// the OFDM baseline, on shared scenes.
std::vector<RocPoint> run_roc(const ExperimentConfig& cfg);

struct CrlbRow {
    double snr_db;
    double kappa_bound;
    double iota_bound;
    double range_bound_m2;       // mean per-target delay CRLB in m^2
    double velocity_bound_mps2;  // mean per-target Doppler CRLB in (m/s)^2
    long long frames;            // scenes with an invertible Fisher matrix
};

/// Normalized bounds per SNR, pooled over trials_per_point sampled scenes as
/// ratios of sums. Each scene's Fisher matrix is built once and scaled by 1/sigma^2.
std::vector<CrlbRow> run_crlb_sweep(const ExperimentConfig& cfg);
void write_crlb_csv(const std::vector<CrlbRow>& rows, std::ostream& os);

struct TrialFailure {
    double snr_db;
    int trial;
    std::string message;
};

struct ExperimentResult {
    std::vector<SnrSummary> otfs;
    std::vector<SnrSummary> baseline;  // empty unless a baseline is configured
    std::vector<TrialFailure> failures;
};

/// Sweeps SNR with trials spread over cfg.workers threads. The reduction is
/// ordered by trial index, so results do not depend on the worker count.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes metrics.csv, diagnostics.csv, failures.csv, manifest.txt and,
/// with a baseline, baseline_metrics.csv into out_dir.
void write_experiment(const ExperimentResult& res, const ExperimentConfig& cfg, const std::string& out_dir);

/// Creates out_dir and writes manifest.txt: the command, then the full config.
void write_manifest(const ExperimentConfig& cfg, const std::string& out_dir, const std::string& command);

void write_metrics_csv(const std::vector<SnrSummary>& rows, std::ostream& os);
void write_diagnostics_csv(const std::vector<SnrSummary>& rows, std::ostream& os);
void write_roc_csv(const std::vector<RocPoint>& roc, std::ostream& os);

/// Runs `fn(i)` for i in [0, count) on `workers` threads.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

}  // namespace otfs::sim
