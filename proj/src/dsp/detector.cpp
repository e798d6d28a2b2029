// SPDX-License-Identifier: Apache-2.0
#include "otfs/detector.hpp"

#include <algorithm>
#include <string>

#include "otfs/csv.hpp"
#include "otfs/simd/kernels.hpp"

namespace otfs {
namespace {

// Circular (2hk+1) x (2hl+1) box sum, separable: rows first, then columns.
PowerMap box_sum(const PowerMap& p, int hk, int hl) {
    const int n = p.rows();
    const int m = p.cols();
    const std::size_t row = static_cast<std::size_t>(m);
    PowerMap vert(n, m);
    for (int k = 0; k < n; ++k) {
        std::span<double> dst{&vert(k, 0), row};
        for (int d = -hk; d <= hk; ++d) simd::add({&p(wrap_index(k + d, n), 0), row}, dst);
    }
    PowerMap out(n, m);
    std::vector<double> pad(row + 2 * static_cast<std::size_t>(hl));
    for (int k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < pad.size(); ++j) pad[j] = vert(k, wrap_index(static_cast<long long>(j) - hl, m));
        std::span<double> dst{&out(k, 0), row};
        for (int d = 0; d <= 2 * hl; ++d) simd::add({pad.data() + d, row}, dst);
    }
    return out;
}

void check_window(const CfarConfig& c, int rows, int cols) {
    const int guard_doppler = c.guard_doppler, guard_delay = c.guard_delay;
    const int training_doppler = c.training_doppler, training_delay = c.training_delay;
    const double p_fa = c.p_fa;
    if (guard_doppler < 0 || guard_delay < 0 || training_doppler < 1 || training_delay < 1) {
        throw Error(Errc::InvalidArgument, "guard cells must be >= 0 and training cells >= 1");
    }
    if (!(p_fa > 0.0 && p_fa < 1.0)) throw Error(Errc::InvalidProbability, "p_fa must lie in (0, 1)");
    const int wk = 2 * (training_doppler + guard_doppler) + 1;
    const int wl = 2 * (training_delay + guard_delay) + 1;
    if (wk > rows || wl > cols) {
        throw Error(Errc::WindowTooLarge, "CFAR window " + std::to_string(wk) + "x" + std::to_string(wl) +
                                              " exceeds the grid");
    }
}

bool is_local_max(const PowerMap& p, int k, int l, int hk, int hl) {
    const double s = p(k, l);
    const std::size_t self = static_cast<std::size_t>(k) * p.cols() + l;
    for (int dk = -hk; dk <= hk; ++dk) {
        for (int dl = -hl; dl <= hl; ++dl) {
            if (dk == 0 && dl == 0) continue;
            const int kk = wrap_index(k + dk, p.rows());
            const int ll = wrap_index(l + dl, p.cols());
            const double o = p(kk, ll);
            if (o > s) return false;
            if (o == s && static_cast<std::size_t>(kk) * p.cols() + ll < self) return false;
        }
    }
    return true;
}

}  // namespace

int CfarConfig::training_count() const noexcept {
    const int outer = (2 * (training_doppler + guard_doppler) + 1) * (2 * (training_delay + guard_delay) + 1);
    const int inner = (2 * guard_doppler + 1) * (2 * guard_delay + 1);
    return outer - inner;
}

void CfarConfig::validate(const FrameGrid& grid) const { check_window(*this, grid.n_doppler(), grid.m_delay()); }

double cfar_alpha(int n_s, double p_fa) {
    if (!(p_fa > 0.0 && p_fa < 1.0)) throw Error(Errc::InvalidProbability, "p_fa must lie in (0, 1)");
    if (n_s < 1) throw Error(Errc::InvalidArgument, "training cell count must be positive");
    // expm1 keeps precision when p_fa^(-1/n_s) is close to 1.
    return n_s * std::expm1(-std::log(p_fa) / n_s);
}

PowerMap cfar_threshold_map(const PowerMap& power, const CfarConfig& cfg) {
    check_window(cfg, power.rows(), power.cols());
    const PowerMap outer = box_sum(power, cfg.training_doppler + cfg.guard_doppler, cfg.training_delay + cfg.guard_delay);
    const PowerMap inner = box_sum(power, cfg.guard_doppler, cfg.guard_delay);
    const double scale = cfar_alpha(cfg.training_count(), cfg.p_fa) / cfg.training_count();
    PowerMap thr(power.rows(), power.cols());
    for (std::size_t i = 0; i < thr.size(); ++i) {
        thr.data()[i] = scale * std::max(0.0, outer.data()[i] - inner.data()[i]);
    }
    return thr;
}

PowerMap cfar_threshold_map(const CorrelationMap& v, const CfarConfig& cfg) {
    return cfar_threshold_map(v.power(), cfg);
}

std::size_t count_exceedances(const PowerMap& power, const CfarConfig& cfg) {
    const PowerMap thr = cfar_threshold_map(power, cfg);
    std::size_t c = 0;
    for (std::size_t i = 0; i < power.size(); ++i) c += power.data()[i] > thr.data()[i];
    return c;
}

DetectionList detect_on_power(const PowerMap& power, const CfarConfig& cfg) {
    const PowerMap thr = cfar_threshold_map(power, cfg);
    double peak = 0.0;
    for (double p : power.values()) peak = std::max(peak, p);
    const double floor = kRoundoffFloor * peak;
    DetectionList out;
    for (int k = 0; k < power.rows(); ++k) {
        for (int l = 0; l < power.cols(); ++l) {
            if (!(power(k, l) > thr(k, l)) || power(k, l) <= floor) continue;
            if (!is_local_max(power, k, l, cfg.guard_doppler, cfg.guard_delay)) continue;
            out.detections.push_back({k, l, power(k, l), thr(k, l)});
        }
    }
    std::stable_sort(out.detections.begin(), out.detections.end(),
                     [](const Detection& a, const Detection& b) { return a.statistic > b.statistic; });
    return out;
}

DetectionList detect_targets(const CorrelationMap& v, const CfarConfig& cfg) {
    cfg.validate(v.grid);
    return detect_on_power(v.power(), cfg);
}

cplx estimate_gain(const CorrelationMap& v, int k, int l) {
    if (k < 0 || k >= v.v.rows() || l < 0 || l >= v.v.cols()) {
        throw Error(Errc::InvalidArgument, "bin outside the correlation map");
    }
    return v.v(k, l) / static_cast<double>(v.v.size());
}

void write_detections_csv(const DetectionList& dets, std::ostream& os) {
    os << "k_int,l_int,statistic,threshold\n";
    for (const auto& d : dets.detections) {
        os << d.k << ',' << d.l << ',' << fmt9(d.statistic) << ',' << fmt9(d.threshold) << '\n';
    }
}

}  // namespace otfs
