// SPDX-License-Identifier: Apache-2.0
// otfs-sense: command-line front end for the delay-Doppler sensing toolkit.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "otfs/csv.hpp"
#include "otfs/sim/harness.hpp"

namespace {

using namespace otfs;
using namespace otfs::sim;

struct Options {
    std::optional<std::uint64_t> seed;
    std::string config;
    std::string out_dir = ".";
    std::optional<int> workers;
    std::vector<std::string> sets;

    // Per-command overrides, applied last.
    std::optional<int> trials;
    std::vector<double> snr_sweep;
    std::optional<double> snr;
    std::optional<std::string> pilot;
    std::optional<std::string> scenario;
    std::vector<double> pfa;
    bool baseline = false;
    int trial = 0;
};

std::string join(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

ExperimentConfig build_config(const Options& o) {
    ExperimentConfig cfg;
    if (!o.config.empty()) load_config_file(cfg, o.config);
    for (const auto& kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error(Errc::ConfigError, "--set expects key=value, got '" + kv + "'");
        apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.seed) cfg.rng_seed = *o.seed;
    if (o.workers) apply_setting(cfg, "workers", std::to_string(*o.workers));
    if (o.trials) apply_setting(cfg, "trials_per_point", std::to_string(*o.trials));
    if (!o.snr_sweep.empty()) apply_setting(cfg, "snr_sweep_db", join(o.snr_sweep));
    if (o.snr) apply_setting(cfg, "snr_db", join({*o.snr}));
    if (o.pilot) apply_setting(cfg, "pilot_strategy", *o.pilot);
    if (o.scenario) apply_setting(cfg, "scenario_mode", *o.scenario);
    if (!o.pfa.empty()) apply_setting(cfg, "roc_pfa", join(o.pfa));
    if (o.baseline) cfg.baseline = Baseline::OfdmPeriodogram;
    cfg.validate();
    return cfg;
}

std::ofstream open_file(const std::string& dir, const std::string& name) {
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(Errc::IoError, "cannot write " + path.string());
    return os;
}

void write_truth(const Scenario& sc, const std::string& dir) {
    auto os = open_file(dir, "targets.csv");
    os << "doppler_index,delay_index,gain_re,gain_im,range_m,velocity_mps\n";
    for (const auto& t : sc.targets) {
        os << fmt9(t.doppler_index) << ',' << fmt9(t.delay_index) << ',' << fmt9(t.gain.real()) << ','
           << fmt9(t.gain.imag()) << ',' << fmt9(t.range_m(sc.grid)) << ',' << fmt9(t.velocity_mps(sc.grid)) << '\n';
    }
}

// Shared setup of the single-frame commands.
std::pair<Scenario, CorrelationMap> single_frame(const ExperimentConfig& cfg, const Options& o, const char* cmd) {
    if (o.trial < 0) throw Error(Errc::InvalidArgument, "--trial must be >= 0");
    write_manifest(cfg, o.out_dir, cmd);
    Scenario sc = sample_scenario(cfg, o.trial);
    write_truth(sc, o.out_dir);
    CorrelationMap v = trial_correlation(sc, cfg, o.trial);
    return {std::move(sc), std::move(v)};
}

int run(const std::string& cmd, const Options& o) {
    const ExperimentConfig cfg = build_config(o);
    if (cmd == "simulate") {
        const ExperimentResult res = run_experiment(cfg);
        write_experiment(res, cfg, o.out_dir);
        write_metrics_csv(res.otfs, std::cout);
        if (!res.failures.empty()) std::cerr << res.failures.size() << " trial(s) failed; see failures.csv\n";
    } else if (cmd == "detect") {
        const auto [sc, v] = single_frame(cfg, o, "detect");
        const DetectionList d = detect_targets(v, cfg.cfar);
        auto os = open_file(o.out_dir, "detections.csv");
        write_detections_csv(d, os);
        write_detections_csv(d, std::cout);
    } else if (cmd == "estimate") {
        const auto [sc, v] = single_frame(cfg, o, "estimate");
        const auto est = refine_detections(v, detect_targets(v, cfg.cfar));
        auto os = open_file(o.out_dir, "estimates.csv");
        write_estimates_csv(est, cfg.grid, os);
        write_estimates_csv(est, cfg.grid, std::cout);
    } else if (cmd == "heatmap") {
        const auto [sc, v] = single_frame(cfg, o, "heatmap");
        auto os = open_file(o.out_dir, "heatmap.csv");
        write_magnitude_csv(v, os);
        std::cout << "wrote " << (std::filesystem::path(o.out_dir) / "heatmap.csv").string() << " ("
                  << cfg.grid.n_doppler() << " Doppler rows x " << cfg.grid.m_delay() << " delay columns)\n";
    } else if (cmd == "crlb") {
        write_manifest(cfg, o.out_dir, "crlb");
        const auto rows = run_crlb_sweep(cfg);
        auto os = open_file(o.out_dir, "crlb.csv");
        write_crlb_csv(rows, os);
        write_crlb_csv(rows, std::cout);
    } else if (cmd == "roc") {
        write_manifest(cfg, o.out_dir, "roc");
        const auto roc = run_roc(cfg);
        auto os = open_file(o.out_dir, "roc.csv");
        write_roc_csv(roc, os);
        write_roc_csv(roc, std::cout);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delay-Doppler radar sensing toolkit"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--seed", o.seed, "Base RNG seed (overrides rng_seed)");
    app.add_option("--config", o.config, "key = value config file")->check(CLI::ExistingFile);
    app.add_option("--out-dir", o.out_dir, "Directory for CSV output")->capture_default_str();
    app.add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--set", o.sets, "Extra key=value setting; repeatable");

    auto* sim = app.add_subcommand("simulate", "SNR sweep; writes metrics.csv and diagnostics");
    auto* det = app.add_subcommand("detect", "One frame; writes detections.csv");
    auto* est = app.add_subcommand("estimate", "One frame; writes estimates.csv");
    auto* crlb = app.add_subcommand("crlb", "Bound sweep; writes crlb.csv");
    auto* roc = app.add_subcommand("roc", "P_fa sweep for OTFS and the OFDM baseline; writes roc.csv");
    auto* heat = app.add_subcommand("heatmap", "One frame; writes |V| as heatmap.csv");

    for (auto* sc : {sim, crlb, roc}) {
        sc->add_option("--trials", o.trials, "Trials per SNR point")->check(CLI::PositiveNumber);
        sc->add_option("--snr", o.snr_sweep, "SNR points in dB")->delimiter(',');
    }
    for (auto* sc : {sim, roc}) sc->add_option("--scenario", o.scenario, "distinct_rows or random");
    sim->add_flag("--baseline", o.baseline, "Also score the OFDM periodogram baseline");
    roc->add_option("--pfa", o.pfa, "False-alarm probabilities")->delimiter(',');
    for (auto* sc : {det, est, heat}) {
        sc->add_option("--snr", o.snr, "SNR in dB (inf for noiseless)");
        sc->add_option("--trial", o.trial, "Trial index selecting scene, frame and noise");
    }
    for (auto* sc : {sim, det, est, crlb, roc, heat}) sc->add_option("--pilot", o.pilot, "full_pilot or one_pilot");

    CLI11_PARSE(app, argc, argv);
    try {
        return run(app.get_subcommands().front()->get_name(), o);
    } catch (const otfs::Error& e) {
        std::cerr << "otfs-sense: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "otfs-sense: " << e.what() << '\n';
        return 1;
    }
}
