// SPDX-License-Identifier: Apache-2.0
#include "otfs/sim/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace otfs::sim {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
    throw Error(Errc::ConfigError, key + " = '" + value + "': " + why);
}

double to_double(const std::string& key, const std::string& text) {
    const std::string v = trim(text);
    if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad(key, text, "not a number");
    return out;
}

long long to_int(const std::string& key, const std::string& text) {
    const std::string v = trim(text);
    long long out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad(key, text, "not an integer");
    return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& text) {
    const std::string v = trim(text);
    std::uint64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad(key, text, "not an unsigned integer");
    return out;
}

bool to_bool(const std::string& key, const std::string& text) {
    const std::string v = trim(text);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad(key, text, "expected true or false");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) out.push_back(to_double(key, item));
    if (out.empty()) bad(key, text, "empty list");
    return out;
}

// "a" sets both axes, "a,b" sets Doppler then delay.
std::pair<int, int> to_pair(const std::string& key, const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() == 1) {
        const int v = static_cast<int>(to_int(key, parts[0]));
        return {v, v};
    }
    if (parts.size() == 2) return {static_cast<int>(to_int(key, parts[0])), static_cast<int>(to_int(key, parts[1]))};
    bad(key, text, "expected one value or doppler,delay");
}

std::vector<Target> to_targets(const std::string& key, const std::string& text) {
    std::vector<Target> out;
    for (const auto& item : split(text, ';')) {
        const auto f = split(item, ':');
        if (f.size() != 2 && f.size() != 4) bad(key, text, "target needs doppler:delay or doppler:delay:re:im");
        Target t;
        t.doppler_index = to_double(key, f[0]);
        t.delay_index = to_double(key, f[1]);
        if (f.size() == 4) t.gain = {to_double(key, f[2]), to_double(key, f[3])};
        out.push_back(t);
    }
    return out;
}

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s;
}

}  // namespace

const char* to_string(ScenarioMode m) noexcept {
    return m == ScenarioMode::Random ? "random" : "distinct_rows";
}

const char* to_string(Baseline b) noexcept {
    return b == Baseline::OfdmPeriodogram ? "ofdm_periodogram" : "none";
}

void ExperimentConfig::validate() const {
    if (target_count < 0) throw Error(Errc::ConfigError, "target_count must be >= 0");
    if (trials_per_point < 1) throw Error(Errc::ConfigError, "trials_per_point must be >= 1");
    if (snr_sweep_db.empty()) throw Error(Errc::ConfigError, "snr_sweep_db must not be empty");
    for (double s : snr_sweep_db) {
        if (!std::isfinite(s) && !(std::isinf(s) && s > 0)) throw Error(Errc::ConfigError, "SNR must be finite or inf");
    }
    if (workers < 1) throw Error(Errc::ConfigError, "workers must be >= 1");
    if (!(max_range_m > 0.0) || !(max_speed_kmh > 0.0)) throw Error(Errc::ConfigError, "range and speed caps must be positive");
    if (targets.empty() && scenario_mode == ScenarioMode::DistinctRows &&
        target_count > std::min(grid.n_doppler(), grid.m_delay())) {
        throw Error(Errc::ConfigError, "distinct_rows needs target_count <= min(N, M)");
    }
    for (double p : roc_pfa) {
        if (!(p > 0.0 && p < 1.0)) throw Error(Errc::ConfigError, "roc_pfa entries must lie in (0, 1)");
    }
    try {
        cfar.validate(grid);
        for (const auto& t : targets) validate_target(t, grid);
    } catch (const Error& e) {
        throw Error(Errc::ConfigError, e.what());
    }
}

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& value) {
    const std::string key = trim(raw_key);
    const FrameGrid& g = cfg.grid;
    const bool default_slot = g.slot_duration() == 1.0 / g.subcarrier_spacing();
    auto regrid = [&](int n, int m, double df, double fc, double slot) {
        try {
            cfg.grid = FrameGrid(n, m, df, fc, slot);
        } catch (const Error& e) {
            bad(key, value, e.what());
        }
    };
    if (key == "n_doppler") {
        regrid(static_cast<int>(to_int(key, value)), g.m_delay(), g.subcarrier_spacing(), g.carrier_freq(), g.slot_duration());
    } else if (key == "m_delay") {
        regrid(g.n_doppler(), static_cast<int>(to_int(key, value)), g.subcarrier_spacing(), g.carrier_freq(), g.slot_duration());
    } else if (key == "subcarrier_spacing") {
        const double df = to_double(key, value);
        regrid(g.n_doppler(), g.m_delay(), df, g.carrier_freq(), default_slot && df > 0 ? 1.0 / df : g.slot_duration());
    } else if (key == "slot_duration") {
        regrid(g.n_doppler(), g.m_delay(), g.subcarrier_spacing(), g.carrier_freq(), to_double(key, value));
    } else if (key == "carrier_freq") {
        regrid(g.n_doppler(), g.m_delay(), g.subcarrier_spacing(), to_double(key, value), g.slot_duration());
    } else if (key == "target_count") {
        cfg.target_count = static_cast<int>(to_int(key, value));
    } else if (key == "snr_sweep_db") {
        cfg.snr_sweep_db = to_list(key, value);
    } else if (key == "trials_per_point") {
        cfg.trials_per_point = static_cast<int>(to_int(key, value));
    } else if (key == "guard_cells") {
        std::tie(cfg.cfar.guard_doppler, cfg.cfar.guard_delay) = to_pair(key, value);
    } else if (key == "training_cells") {
        std::tie(cfg.cfar.training_doppler, cfg.cfar.training_delay) = to_pair(key, value);
    } else if (key == "p_fa") {
        cfg.cfar.p_fa = to_double(key, value);
    } else if (key == "pilot_strategy") {
        const std::string v = trim(value);
        if (v == "full_pilot") cfg.pilot = PilotStrategy::FullPilot;
        else if (v == "one_pilot") cfg.pilot = PilotStrategy::OnePilot;
        else bad(key, value, "expected full_pilot or one_pilot");
    } else if (key == "scenario_mode") {
        const std::string v = trim(value);
        if (v == "distinct_rows") cfg.scenario_mode = ScenarioMode::DistinctRows;
        else if (v == "random") cfg.scenario_mode = ScenarioMode::Random;
        else bad(key, value, "expected distinct_rows or random");
    } else if (key == "rng_seed") {
        cfg.rng_seed = to_u64(key, value);
    } else if (key == "baseline") {
        const std::string v = trim(value);
        if (v == "none") cfg.baseline = Baseline::None;
        else if (v == "ofdm_periodogram") cfg.baseline = Baseline::OfdmPeriodogram;
        else bad(key, value, "expected none or ofdm_periodogram");
    } else if (key == "max_range_m") {
        cfg.max_range_m = to_double(key, value);
    } else if (key == "max_speed_kmh") {
        cfg.max_speed_kmh = to_double(key, value);
    } else if (key == "roc_pfa") {
        cfg.roc_pfa = to_list(key, value);
    } else if (key == "compute_crlb") {
        cfg.compute_crlb = to_bool(key, value);
    } else if (key == "workers") {
        cfg.workers = static_cast<int>(to_int(key, value));
    } else if (key == "snr_db") {
        cfg.snr_db = to_double(key, value);
    } else if (key == "targets") {
        cfg.targets = trim(value).empty() ? std::vector<Target>{} : to_targets(key, value);
    } else {
        throw Error(Errc::ConfigError, "unknown key '" + key + "'");
    }
}

void apply_config_text(ExperimentConfig& cfg, std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(Errc::ConfigError, "line " + std::to_string(lineno) + ": expected key = value");
        }
        apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open config file " + path);
    apply_config_text(cfg, in);
}

void write_config(const ExperimentConfig& cfg, std::ostream& os) {
    const FrameGrid& g = cfg.grid;
    os << "n_doppler = " << g.n_doppler() << '\n'
       << "m_delay = " << g.m_delay() << '\n'
       << "subcarrier_spacing = " << num(g.subcarrier_spacing()) << '\n'
       << "slot_duration = " << num(g.slot_duration()) << '\n'
       << "carrier_freq = " << num(g.carrier_freq()) << '\n'
       << "target_count = " << cfg.target_count << '\n'
       << "snr_sweep_db = " << join(cfg.snr_sweep_db) << '\n'
       << "trials_per_point = " << cfg.trials_per_point << '\n'
       << "guard_cells = " << cfg.cfar.guard_doppler << ',' << cfg.cfar.guard_delay << '\n'
       << "training_cells = " << cfg.cfar.training_doppler << ',' << cfg.cfar.training_delay << '\n'
       << "p_fa = " << num(cfg.cfar.p_fa) << '\n'
       << "pilot_strategy = " << to_string(cfg.pilot) << '\n'
       << "scenario_mode = " << to_string(cfg.scenario_mode) << '\n'
       << "rng_seed = " << cfg.rng_seed << '\n'
       << "baseline = " << to_string(cfg.baseline) << '\n'
       << "max_range_m = " << num(cfg.max_range_m) << '\n'
       << "max_speed_kmh = " << num(cfg.max_speed_kmh) << '\n'
       << "roc_pfa = " << join(cfg.roc_pfa) << '\n'
       << "compute_crlb = " << (cfg.compute_crlb ? "true" : "false") << '\n'
       << "workers = " << cfg.workers << '\n'
       << "snr_db = " << num(cfg.snr_db) << '\n'
       << "targets = ";
    for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
        const Target& t = cfg.targets[i];
        os << (i ? ";" : "") << num(t.doppler_index) << ':' << num(t.delay_index) << ':' << num(t.gain.real()) << ':'
           << num(t.gain.imag());
    }
    os << '\n';
}

}  // namespace otfs::sim
