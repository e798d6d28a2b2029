// SPDX-License-Identifier: Apache-2.0
#include "otfs/fractional.hpp"

#include <algorithm>

#include "otfs/csv.hpp"

namespace otfs {
namespace {

// +1 or -1 if b is a ring neighbour of a, else 0. For n = 2 both neighbours coincide; +1 wins.
int ring_step(int a, int b, int n) {
    if (wrap_index(a + 1, n) == b) return +1;
    if (wrap_index(a - 1, n) == b) return -1;
    return 0;
}

void check_bin(const CorrelationMap& v, int k, int l) {
    if (k < 0 || k >= v.v.rows() || l < 0 || l >= v.v.cols()) {
        throw Error(Errc::InvalidArgument, "bin outside the correlation map");
    }
}

}  // namespace

int pick_neighbor(const CorrelationMap& v, int k, int l, Axis axis) {
    check_bin(v, k, l);
    if (axis == Axis::Doppler) {
        const int n = v.v.rows();
        const int up = wrap_index(k + 1, n), down = wrap_index(k - 1, n);
        return std::abs(v.v(down, l)) > std::abs(v.v(up, l)) ? down : up;
    }
    const int m = v.v.cols();
    const int up = wrap_index(l + 1, m), down = wrap_index(l - 1, m);
    return std::abs(v.v(k, down)) > std::abs(v.v(k, up)) ? down : up;
}

double fraction_from_magnitudes(double peak, double neighbor, int step, bool* clamped) {
    const double den = peak + neighbor;
    if (!(den > 0.0)) throw Error(Errc::ZeroDenominator, "peak and neighbour magnitudes are both zero");
    const double raw = step * neighbor / den;
    const double f = std::clamp(raw, -0.5, 0.5);
    if (clamped) *clamped = f != raw;
    return f;
}

double estimate_kappa(const CorrelationMap& v, int k1, int k2, int l) {
    check_bin(v, k1, l);
    check_bin(v, k2, l);
    const int s = ring_step(k1, k2, v.v.rows());
    if (s == 0) throw Error(Errc::InvalidArgument, "Doppler bins are not ring neighbours");
    return fraction_from_magnitudes(std::abs(v.v(k1, l)), std::abs(v.v(k2, l)), s);
}

double estimate_iota(const CorrelationMap& v, int k, int l1, int l2) {
    check_bin(v, k, l1);
    check_bin(v, k, l2);
    const int s = ring_step(l1, l2, v.v.cols());
    if (s == 0) throw Error(Errc::InvalidArgument, "delay bins are not ring neighbours");
    return fraction_from_magnitudes(std::abs(v.v(k, l1)), std::abs(v.v(k, l2)), s);
}

FractionalEstimate refine_at(const CorrelationMap& v, int k, int l) {
    check_bin(v, k, l);
    FractionalEstimate e;
    e.k_int = k;
    e.l_int = l;
    const double peak = std::abs(v.v(k, l));

    const int k2 = pick_neighbor(v, k, l, Axis::Doppler);
    const int l2 = pick_neighbor(v, k, l, Axis::Delay);
    bool ck = false, ci = false;
    try {
        e.kappa = fraction_from_magnitudes(peak, std::abs(v.v(k2, l)), ring_step(k, k2, v.v.rows()), &ck);
    } catch (const Error& err) {
        if (err.code() != Errc::ZeroDenominator) throw;
        e.degenerate = true;
    }
    try {
        e.iota = fraction_from_magnitudes(peak, std::abs(v.v(k, l2)), ring_step(l, l2, v.v.cols()), &ci);
    } catch (const Error& err) {
        if (err.code() != Errc::ZeroDenominator) throw;
        e.degenerate = true;
    }
    e.clamped = ck || ci;
    e.doppler_index = v.grid.signed_doppler(k) + e.kappa;
    e.delay_index = l + e.iota;
    return e;
}

std::vector<FractionalEstimate> refine_detections(const CorrelationMap& v, const DetectionList& dets) {
    std::vector<FractionalEstimate> out;
    out.reserve(dets.count());
    for (const auto& d : dets.detections) out.push_back(refine_at(v, d.k, d.l));
    return out;
}

std::vector<FractionalEstimate> refine_strongest_peaks(const CorrelationMap& v, int p) {
    if (p < 0) throw Error(Errc::InvalidArgument, "peak count must be non-negative");
    const PowerMap pw = v.power();
    struct Peak {
        double power;
        int k, l;
    };
    std::vector<Peak> peaks;
    const int n = pw.rows(), m = pw.cols();
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < m; ++l) {
            const double s = pw(k, l);
            bool is_max = s > 0.0;
            for (int dk = -1; dk <= 1 && is_max; ++dk) {
                for (int dl = -1; dl <= 1 && is_max; ++dl) {
                    if (dk == 0 && dl == 0) continue;
                    const int kk = wrap_index(k + dk, n), ll = wrap_index(l + dl, m);
                    const double o = pw(kk, ll);
                    if (o > s || (o == s && kk * m + ll < k * m + l)) is_max = false;
                }
            }
            if (is_max) peaks.push_back({s, k, l});
        }
    }
    std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.power > b.power; });
    if (peaks.size() > static_cast<std::size_t>(p)) peaks.resize(static_cast<std::size_t>(p));
    std::vector<FractionalEstimate> out;
    for (const auto& pk : peaks) out.push_back(refine_at(v, pk.k, pk.l));
    return out;
}

void write_estimates_csv(const std::vector<FractionalEstimate>& est, const FrameGrid& grid, std::ostream& os) {
    os << "k_int,l_int,kappa,iota,doppler_index,delay_index,range_m,velocity_mps\n";
    for (const auto& e : est) {
        os << e.k_int << ',' << e.l_int << ',' << fmt9(e.kappa) << ',' << fmt9(e.iota) << ','
           << fmt9(e.doppler_index) << ',' << fmt9(e.delay_index) << ',' << fmt9(e.range_m(grid)) << ','
           << fmt9(e.velocity_mps(grid)) << '\n';
    }
}

}  // namespace otfs
