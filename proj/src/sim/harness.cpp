// SPDX-License-Identifier: Apache-2.0
#include "otfs/sim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "otfs/channel.hpp"
#include "otfs/crlb.hpp"
#include "otfs/csv.hpp"
#include "otfs/fft.hpp"
#include "otfs/rng.hpp"
#include "otfs/simd/kernels.hpp"
#include "otfs/symbols.hpp"

namespace otfs::sim {
namespace {

constexpr int kMaxSceneDraws = 1000;

struct SimulatedFrame {
    DDMatrix x;
    CorrelationMap v;
};

SimulatedFrame simulate(const Scenario& s, const ExperimentConfig& cfg, int trial) {
    DDMatrix x = generate_frame(s.grid, s.pilot, trial_seed(cfg, Stream::Frame, trial));
    const EffectiveChannel chan = build_effective_channel(s.targets, s.grid);
    DDMatrix y = apply_channel(x, chan, s.grid);
    const double var = noise_variance(s.snr_db);
    if (var > 0.0) {
        DDMatrix z = unit_noise(s.grid, trial_seed(cfg, Stream::Noise, trial));
        simd::axpy(cplx(std::sqrt(var)), z.values(), y.values());
    }
    CorrelationMap v = correlate(y, x, s.grid);
    return {std::move(x), std::move(v)};
}

std::vector<FractionalEstimate> integer_estimates(const DetectionList& dets, const FrameGrid& grid) {
    std::vector<FractionalEstimate> out;
    for (const auto& d : dets.detections) {
        FractionalEstimate e;
        e.k_int = d.k;
        e.l_int = d.l;
        e.doppler_index = grid.signed_doppler(d.k);
        e.delay_index = d.l;
        out.push_back(e);
    }
    return out;
}

// Matched-truth and false-alarm counts for one detection set.
struct Tally {
    long long matched = 0;
    long long truths = 0;
    long long false_alarms = 0;
};

Tally tally(const std::vector<FractionalEstimate>& est, const std::vector<Target>& truth, const FrameGrid& grid) {
    const Matching mt = match_targets(est, truth, grid);
    return {static_cast<long long>(mt.pairs.size()), static_cast<long long>(truth.size()),
            static_cast<long long>(mt.unmatched_estimates.size())};
}

double rms(double sum_sq, long long n) {
    return n > 0 ? std::sqrt(sum_sq / static_cast<double>(n)) : std::numeric_limits<double>::quiet_NaN();
}

double ratio(double num, double den) {
    return den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += (c == '\n' || c == '\r') ? ' ' : c;
    }
    return out + '"';
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error(Errc::IoError, "cannot write " + p.string());
    return os;
}

}  // namespace

std::uint64_t trial_seed(const ExperimentConfig& cfg, Stream s, int trial) noexcept {
    return derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(trial));
}

double delay_cap(const ExperimentConfig& cfg) noexcept {
    return std::min(cfg.grid.index_from_range(cfg.max_range_m), static_cast<double>(cfg.grid.m_delay() - 1));
}

double doppler_cap(const ExperimentConfig& cfg) noexcept {
    return std::min(cfg.grid.index_from_velocity(cfg.max_speed_kmh / 3.6), 0.5 * cfg.grid.n_doppler());
}

Scenario sample_scenario(const ExperimentConfig& cfg, int trial) {
    Scenario s;
    s.grid = cfg.grid;
    s.snr_db = cfg.snr_db;
    s.pilot = cfg.pilot;
    s.rng_seed = trial_seed(cfg, Stream::Scene, trial);
    if (!cfg.targets.empty()) {
        s.targets = cfg.targets;
        return s;
    }
    const double l_cap = delay_cap(cfg);
    const double k_cap = doppler_cap(cfg);
    const int n = cfg.grid.n_doppler();
    const int m = cfg.grid.m_delay();
    Rng rng(s.rng_seed);
    for (int draw = 0; draw < kMaxSceneDraws; ++draw) {
        s.targets.clear();
        for (int p = 0; p < cfg.target_count; ++p) {
            Target t;
            t.delay_index = rng.uniform(0.0, l_cap);
            t.doppler_index = rng.uniform(-k_cap, k_cap);
            t.gain = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
            s.targets.push_back(t);
        }
        if (cfg.scenario_mode == ScenarioMode::Random) return s;
        bool distinct = true;
        for (std::size_t a = 0; a < s.targets.size() && distinct; ++a) {
            for (std::size_t b = a + 1; b < s.targets.size() && distinct; ++b) {
                const auto& ta = s.targets[a];
                const auto& tb = s.targets[b];
                if (wrap_index(ta.delay_bin(), m) == wrap_index(tb.delay_bin(), m) ||
                    wrap_index(ta.doppler_bin(), n) == wrap_index(tb.doppler_bin(), n)) {
                    distinct = false;
                }
            }
        }
        if (distinct) return s;
    }
    throw Error(Errc::RetryExhausted, "no scene with distinct delay and Doppler bins after 1000 draws");
}

CorrelationMap trial_correlation(const Scenario& scenario, const ExperimentConfig& cfg, int trial) {
    return simulate(scenario, cfg, trial).v;
}

TrialRecord run_trial(const Scenario& scenario, const ExperimentConfig& cfg, int trial) {
    TrialRecord r;
    r.trial = trial;
    r.snr_db = scenario.snr_db;
    r.truth = scenario.targets;
    const SimulatedFrame f = simulate(scenario, cfg, trial);
    r.detections = detect_targets(f.v, cfg.cfar);
    r.estimates = refine_detections(f.v, r.detections);
    for (const auto& d : r.detections.detections) r.gains.push_back(estimate_gain(f.v, d.k, d.l));

    const double var = noise_variance(scenario.snr_db);
    if (cfg.compute_crlb && var > 0.0 && !r.truth.empty()) {
        const Jacobian jac = mean_frame_jacobian(f.x, r.truth, scenario.grid);
        const std::vector<double> theta = fractional_parameters(r.truth);
        try {
            const CrlbReport rep = crlb_bounds(fisher_matrix(jac, var), theta);
            r.crlb_valid = true;
            r.crlb_kappa_sum = rep.kappa_sum;
            r.crlb_iota_sum = rep.iota_sum;
            r.kappa_norm_sq = rep.kappa_norm_sq;
            r.iota_norm_sq = rep.iota_norm_sq;
        } catch (const Error& e) {
            if (e.code() != Errc::SingularFisher) throw;
        }
    }

    if (cfg.baseline == Baseline::OfdmPeriodogram) {
        BaselineResult b = ofdm_periodogram_baseline(scenario, cfg, trial);
        r.has_baseline = true;
        r.baseline_detections = std::move(b.detections);
        r.baseline_estimates = std::move(b.estimates);
    }
    return r;
}

double dd_distance(double doppler_a, double delay_a, double doppler_b, double delay_b, const FrameGrid& grid) {
    const double dk = wrap_offset(doppler_a - doppler_b, grid.n_doppler());
    const double dl = wrap_offset(delay_a - delay_b, grid.m_delay());
    return std::sqrt(dk * dk + dl * dl);
}

Matching match_targets(const std::vector<FractionalEstimate>& estimates, const std::vector<Target>& truth,
                       const FrameGrid& grid, double gate) {
    std::vector<MatchPair> cand;
    for (int e = 0; e < static_cast<int>(estimates.size()); ++e) {
        for (int t = 0; t < static_cast<int>(truth.size()); ++t) {
            const double d = dd_distance(estimates[e].doppler_index, estimates[e].delay_index, truth[t].doppler_index,
                                         truth[t].delay_index, grid);
            if (d <= gate) cand.push_back({e, t, d});
        }
    }
    std::stable_sort(cand.begin(), cand.end(), [](const MatchPair& a, const MatchPair& b) { return a.distance < b.distance; });
    std::vector<char> est_used(estimates.size(), 0), truth_used(truth.size(), 0);
    Matching out;
    for (const auto& c : cand) {
        if (est_used[c.estimate] || truth_used[c.truth]) continue;
        est_used[c.estimate] = truth_used[c.truth] = 1;
        out.pairs.push_back(c);
    }
    for (int e = 0; e < static_cast<int>(estimates.size()); ++e) {
        if (!est_used[e]) out.unmatched_estimates.push_back(e);
    }
    for (int t = 0; t < static_cast<int>(truth.size()); ++t) {
        if (!truth_used[t]) out.unmatched_truths.push_back(t);
    }
    return out;
}

SnrSummary compute_metrics(const std::vector<TrialRecord>& records, const FrameGrid& grid, bool baseline) {
    if (records.empty()) throw Error(Errc::InvalidArgument, "no trial records to aggregate");
    const int n = grid.n_doppler();
    const int m = grid.m_delay();
    Diagnostics dg;
    dg.snr_db = records.front().snr_db;
    double sk = 0, sl = 0, sk_int = 0, sl_int = 0;   // squared index errors
    double kappa_err = 0, kappa_ref = 0, iota_err = 0, iota_ref = 0;
    double crlb_k = 0, crlb_i = 0, crlb_kn = 0, crlb_in = 0;
    for (const auto& r : records) {
        const auto& est = baseline ? r.baseline_estimates : r.estimates;
        const Matching mt = match_targets(est, r.truth, grid);
        ++dg.frames;
        dg.truths += static_cast<long long>(r.truth.size());
        dg.matched += static_cast<long long>(mt.pairs.size());
        dg.false_alarms += static_cast<long long>(mt.unmatched_estimates.size());
        for (const auto& e : est) dg.clamped += e.clamped;
        for (const auto& p : mt.pairs) {
            const FractionalEstimate& e = est[p.estimate];
            const Target& t = r.truth[p.truth];
            const double dk = wrap_offset(e.doppler_index - t.doppler_index, n);
            const double dl = wrap_offset(e.delay_index - t.delay_index, m);
            const double dk_int = wrap_offset(grid.signed_doppler(e.k_int) - t.doppler_index, n);
            const double dl_int = wrap_offset(e.l_int - t.delay_index, m);
            sk += dk * dk;
            sl += dl * dl;
            sk_int += dk_int * dk_int;
            sl_int += dl_int * dl_int;
            kappa_err += dk * dk;
            iota_err += dl * dl;
            kappa_ref += t.doppler_fraction() * t.doppler_fraction();
            iota_ref += t.delay_fraction() * t.delay_fraction();
        }
        if (!baseline && r.crlb_valid) {
            ++dg.crlb_frames;
            crlb_k += r.crlb_kappa_sum;
            crlb_i += r.crlb_iota_sum;
            crlb_kn += r.kappa_norm_sq;
            crlb_in += r.iota_norm_sq;
        }
    }
    const long long np = dg.matched;
    dg.empty_match = np == 0;
    dg.rmse_doppler_refined = rms(sk, np);
    dg.rmse_delay_refined = rms(sl, np);
    dg.rmse_doppler_integer = rms(sk_int, np);
    dg.rmse_delay_integer = rms(sl_int, np);
    dg.rmse_index_refined = rms(sk + sl, np);
    dg.rmse_index_integer = rms(sk_int + sl_int, np);
    dg.rmse_range_integer_m = dg.rmse_delay_integer * grid.range_resolution();
    dg.rmse_velocity_integer_mps = dg.rmse_doppler_integer * grid.velocity_resolution();

    MetricsRow row;
    row.snr_db = dg.snr_db;
    row.detection_rate = ratio(static_cast<double>(dg.matched), static_cast<double>(dg.truths));
    row.false_alarm_rate = static_cast<double>(dg.false_alarms) / (static_cast<double>(dg.frames) * grid.cells());
    row.rmse_range_m = dg.rmse_delay_refined * grid.range_resolution();
    row.rmse_velocity_mps = dg.rmse_doppler_refined * grid.velocity_resolution();
    row.nmse_kappa = np > 0 ? ratio(kappa_err, kappa_ref) : std::numeric_limits<double>::quiet_NaN();
    row.nmse_iota = np > 0 ? ratio(iota_err, iota_ref) : std::numeric_limits<double>::quiet_NaN();
    row.crlb_kappa = ratio(crlb_k, crlb_kn);
    row.crlb_iota = ratio(crlb_i, crlb_in);
    return {row, dg};
}

BaselineResult ofdm_periodogram_baseline(const Scenario& s, const ExperimentConfig& cfg, int trial) {
    const FrameGrid& g = s.grid;
    const int n_slots = g.n_doppler();
    const int n_sub = g.m_delay();
    for (const auto& t : s.targets) validate_target(t, g);
    // TF-domain QPSK symbols share the DD generator; only the domain tag differs.
    const DDMatrix sym = generate_qpsk_frame(g, trial_seed(cfg, Stream::OfdmFrame, trial));
    DDMatrix d(g);  // Y * conj(X), accumulated target by target
    for (const auto& t : s.targets) {
        const int kr = t.doppler_bin();
        const int lr = t.delay_bin();
        for (int n = 0; n < n_slots; ++n) {
            const double slot_phase = 2.0 * kPi * wrap_index(static_cast<long long>(n) * kr, n_slots) / n_slots;
            for (int m = 0; m < n_sub; ++m) {
                const double sub_phase = -2.0 * kPi * wrap_index(static_cast<long long>(m) * lr, n_sub) / n_sub;
                d(n, m) += t.gain * std::polar(1.0, slot_phase + sub_phase) * std::norm(sym(n, m));
            }
        }
    }
    const double var = noise_variance(s.snr_db);
    if (var > 0.0) {
        const DDMatrix z = unit_noise(g, trial_seed(cfg, Stream::OfdmNoise, trial));
        const double sigma = std::sqrt(var);
        for (std::size_t i = 0; i < d.size(); ++i) d.data()[i] += sigma * z.data()[i] * std::conj(sym.data()[i]);
    }
    // Doppler over slots, delay over subcarriers.
    Fft2d::get(n_slots, n_sub).transform(d.data(), FftSign::Forward, FftSign::Backward);
    CorrelationMap map{std::move(d), g};
    BaselineResult out;
    out.detections = detect_targets(map, cfg.cfar);
    out.estimates = integer_estimates(out.detections, g);
    out.periodogram = map.power();
    return out;
}

std::vector<RocPoint> run_roc(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t ns = cfg.snr_sweep_db.size();
    const std::size_t np = cfg.roc_pfa.size();
    const int trials = cfg.trials_per_point;
    // [trial][snr][pfa][method]
    std::vector<Tally> tallies(static_cast<std::size_t>(trials) * ns * np * 2);
    auto at = [&](int t, std::size_t s, std::size_t p, int method) -> Tally& {
        return tallies[((static_cast<std::size_t>(t) * ns + s) * np + p) * 2 + method];
    };
    parallel_for(trials, cfg.workers, [&](int t) {
        Scenario sc = sample_scenario(cfg, t);
        for (std::size_t s = 0; s < ns; ++s) {
            sc.snr_db = cfg.snr_sweep_db[s];
            const CorrelationMap v = trial_correlation(sc, cfg, t);
            const PowerMap pw = v.power();
            const BaselineResult b = ofdm_periodogram_baseline(sc, cfg, t);
            for (std::size_t p = 0; p < np; ++p) {
                CfarConfig c = cfg.cfar;
                c.p_fa = cfg.roc_pfa[p];
                const DetectionList d_otfs = detect_on_power(pw, c);
                at(t, s, p, 0) = tally(refine_detections(v, d_otfs), sc.targets, sc.grid);
                const DetectionList d_ofdm = detect_on_power(b.periodogram, c);
                at(t, s, p, 1) = tally(integer_estimates(d_ofdm, sc.grid), sc.targets, sc.grid);
            }
        }
    });
    std::vector<RocPoint> out;
    const double cells = static_cast<double>(cfg.grid.cells());
    for (int method = 0; method < 2; ++method) {
        for (std::size_t s = 0; s < ns; ++s) {
            for (std::size_t p = 0; p < np; ++p) {
                Tally sum;
                for (int t = 0; t < trials; ++t) {
                    const Tally& x = at(t, s, p, method);
                    sum.matched += x.matched;
                    sum.truths += x.truths;
                    sum.false_alarms += x.false_alarms;
                }
                out.push_back({method == 0 ? "otfs" : "ofdm", cfg.snr_sweep_db[s], cfg.roc_pfa[p],
                               ratio(static_cast<double>(sum.matched), static_cast<double>(sum.truths)),
                               static_cast<double>(sum.false_alarms) / (cells * trials)});
            }
        }
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t ns = cfg.snr_sweep_db.size();
    const int trials = cfg.trials_per_point;
    std::vector<std::vector<TrialRecord>> records(ns, std::vector<TrialRecord>(static_cast<std::size_t>(trials)));
    std::vector<std::vector<std::string>> errors(ns, std::vector<std::string>(static_cast<std::size_t>(trials)));
    parallel_for(trials, cfg.workers, [&](int t) {
        Scenario sc;
        try {
            sc = sample_scenario(cfg, t);
        } catch (const std::exception& e) {
            for (std::size_t s = 0; s < ns; ++s) errors[s][t] = e.what();
            return;
        }
        for (std::size_t s = 0; s < ns; ++s) {
            sc.snr_db = cfg.snr_sweep_db[s];
            try {
                records[s][t] = run_trial(sc, cfg, t);
            } catch (const std::exception& e) {
                errors[s][t] = e.what();
                if (errors[s][t].empty()) errors[s][t] = "unknown failure";
            }
        }
    });

    ExperimentResult res;
    for (std::size_t s = 0; s < ns; ++s) {
        std::vector<TrialRecord> ok;
        for (int t = 0; t < trials; ++t) {
            if (errors[s][t].empty()) {
                ok.push_back(std::move(records[s][t]));
            } else {
                res.failures.push_back({cfg.snr_sweep_db[s], t, errors[s][t]});
            }
        }
        if (ok.empty()) {
            // Every trial failed: report an all-NaN row rather than dropping the SNR point.
            SnrSummary empty;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            empty.metrics = {cfg.snr_sweep_db[s], nan, nan, nan, nan, nan, nan, nan, nan};
            empty.diagnostics.snr_db = cfg.snr_sweep_db[s];
            empty.diagnostics.empty_match = true;
            res.otfs.push_back(empty);
            if (cfg.baseline != Baseline::None) res.baseline.push_back(empty);
            continue;
        }
        res.otfs.push_back(compute_metrics(ok, cfg.grid, false));
        if (cfg.baseline != Baseline::None) res.baseline.push_back(compute_metrics(ok, cfg.grid, true));
    }
    return res;
}

void write_metrics_csv(const std::vector<SnrSummary>& rows, std::ostream& os) {
    os << "snr_db,detection_rate,false_alarm_rate,rmse_range_m,rmse_velocity_mps,nmse_kappa,nmse_iota,crlb_kappa,"
          "crlb_iota\n";
    for (const auto& s : rows) {
        const MetricsRow& r = s.metrics;
        os << fmt9(r.snr_db) << ',' << fmt9(r.detection_rate) << ',' << fmt9(r.false_alarm_rate) << ','
           << fmt9(r.rmse_range_m) << ',' << fmt9(r.rmse_velocity_mps) << ',' << fmt9(r.nmse_kappa) << ','
           << fmt9(r.nmse_iota) << ',' << fmt9(r.crlb_kappa) << ',' << fmt9(r.crlb_iota) << '\n';
    }
}

void write_diagnostics_csv(const std::vector<SnrSummary>& rows, std::ostream& os) {
    os << "snr_db,frames,truths,matched,false_alarms,clamped,crlb_frames,empty_match,rmse_index_refined,"
          "rmse_index_integer,rmse_doppler_refined,rmse_doppler_integer,rmse_delay_refined,rmse_delay_integer,"
          "rmse_range_integer_m,rmse_velocity_integer_mps\n";
    for (const auto& s : rows) {
        const Diagnostics& d = s.diagnostics;
        os << fmt9(d.snr_db) << ',' << d.frames << ',' << d.truths << ',' << d.matched << ',' << d.false_alarms << ','
           << d.clamped << ',' << d.crlb_frames << ',' << (d.empty_match ? 1 : 0) << ',' << fmt9(d.rmse_index_refined)
           << ',' << fmt9(d.rmse_index_integer) << ',' << fmt9(d.rmse_doppler_refined) << ','
           << fmt9(d.rmse_doppler_integer) << ',' << fmt9(d.rmse_delay_refined) << ',' << fmt9(d.rmse_delay_integer)
           << ',' << fmt9(d.rmse_range_integer_m) << ',' << fmt9(d.rmse_velocity_integer_mps) << '\n';
    }
}

void write_roc_csv(const std::vector<RocPoint>& roc, std::ostream& os) {
    os << "method,snr_db,p_fa,detection_rate,false_alarm_rate\n";
    for (const auto& p : roc) {
        os << p.method << ',' << fmt9(p.snr_db) << ',' << fmt9(p.p_fa) << ',' << fmt9(p.detection_rate) << ','
           << fmt9(p.false_alarm_rate) << '\n';
    }
}

std::vector<CrlbRow> run_crlb_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const int trials = cfg.trials_per_point;
    struct Unit {
        bool ok = false;
        double kappa_sum = 0, iota_sum = 0, kappa_norm = 0, iota_norm = 0;
        int targets = 0;
    };
    std::vector<Unit> units(static_cast<std::size_t>(trials));
    parallel_for(trials, cfg.workers, [&](int t) {
        const Scenario sc = sample_scenario(cfg, t);
        if (sc.targets.empty()) return;
        const DDMatrix x = generate_frame(sc.grid, sc.pilot, trial_seed(cfg, Stream::Frame, t));
        const Jacobian jac = mean_frame_jacobian(x, sc.targets, sc.grid);
        try {
            const CrlbReport rep = crlb_bounds(fisher_matrix(jac, 1.0), fractional_parameters(sc.targets));
            units[t] = {true, rep.kappa_sum, rep.iota_sum, rep.kappa_norm_sq, rep.iota_norm_sq,
                        static_cast<int>(sc.targets.size())};
        } catch (const Error& e) {
            if (e.code() != Errc::SingularFisher) throw;
        }
    });
    Unit sum;
    long long frames = 0;
    for (const auto& u : units) {
        if (!u.ok) continue;
        ++frames;
        sum.kappa_sum += u.kappa_sum;
        sum.iota_sum += u.iota_sum;
        sum.kappa_norm += u.kappa_norm;
        sum.iota_norm += u.iota_norm;
        sum.targets += u.targets;
    }
    const FrameGrid& g = cfg.grid;
    std::vector<CrlbRow> out;
    for (double snr : cfg.snr_sweep_db) {
        const double var = noise_variance(snr);
        const double per_target = static_cast<double>(sum.targets);
        out.push_back({snr, ratio(var * sum.kappa_sum, sum.kappa_norm), ratio(var * sum.iota_sum, sum.iota_norm),
                       ratio(var * sum.iota_sum, per_target) * g.range_resolution() * g.range_resolution(),
                       ratio(var * sum.kappa_sum, per_target) * g.velocity_resolution() * g.velocity_resolution(),
                       frames});
    }
    return out;
}

void write_crlb_csv(const std::vector<CrlbRow>& rows, std::ostream& os) {
    os << "snr_db,kappa_bound,iota_bound,range_bound_m2,velocity_bound_mps2\n";
    for (const auto& r : rows) {
        os << fmt9(r.snr_db) << ',' << fmt9(r.kappa_bound) << ',' << fmt9(r.iota_bound) << ','
           << fmt9(r.range_bound_m2) << ',' << fmt9(r.velocity_bound_mps2) << '\n';
    }
}

void write_manifest(const ExperimentConfig& cfg, const std::string& out_dir, const std::string& command) {
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(Errc::IoError, "cannot create " + out_dir + ": " + ec.message());
    auto os = open_out(dir / "manifest.txt");
    os << "# " << command << " manifest; loadable with --config\n";
    write_config(cfg, os);
}

void write_experiment(const ExperimentResult& res, const ExperimentConfig& cfg, const std::string& out_dir) {
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(Errc::IoError, "cannot create " + out_dir + ": " + ec.message());
    {
        auto os = open_out(dir / "metrics.csv");
        write_metrics_csv(res.otfs, os);
    }
    {
        auto os = open_out(dir / "diagnostics.csv");
        write_diagnostics_csv(res.otfs, os);
    }
    if (!res.baseline.empty()) {
        auto os = open_out(dir / "baseline_metrics.csv");
        write_metrics_csv(res.baseline, os);
    }
    {
        auto os = open_out(dir / "failures.csv");
        os << "snr_db,trial,message\n";
        for (const auto& f : res.failures) os << fmt9(f.snr_db) << ',' << f.trial << ',' << csv_quote(f.message) << '\n';
    }
    write_manifest(cfg, out_dir, "simulate");
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
    const int nthreads = std::max(1, std::min(workers, count));
    if (nthreads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first;
    std::mutex err_mutex;
    auto body = [&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first) first = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

}  // namespace otfs::sim
