// SPDX-License-Identifier: Apache-2.0
#include "otfs/grid.hpp"

#include <string>

namespace otfs {

FrameGrid::FrameGrid(int n_doppler, int m_delay, double subcarrier_spacing_hz, double carrier_freq_hz)
    : FrameGrid(n_doppler, m_delay, subcarrier_spacing_hz, carrier_freq_hz,
                subcarrier_spacing_hz > 0.0 ? 1.0 / subcarrier_spacing_hz : 0.0) {}

FrameGrid::FrameGrid(int n_doppler, int m_delay, double subcarrier_spacing_hz, double carrier_freq_hz,
                     double slot_duration_s)
    : n_(n_doppler), m_(m_delay), delta_f_(subcarrier_spacing_hz), fc_(carrier_freq_hz), slot_(slot_duration_s) {
    if (n_ < 2 || m_ < 2) throw Error(Errc::InvalidArgument, "grid needs N >= 2 and M >= 2");
    if (!(delta_f_ > 0.0) || !(slot_ > 0.0) || !(fc_ > 0.0) || !std::isfinite(delta_f_) ||
        !std::isfinite(slot_) || !std::isfinite(fc_)) {
        throw Error(Errc::InvalidArgument, "subcarrier spacing, slot duration and carrier must be positive");
    }
}

FrameGrid FrameGrid::desk() { return FrameGrid(32, 32, 39063.0, 24e9); }

FrameGrid FrameGrid::full_scale() { return FrameGrid(64, 128, 39063.0, 24e9); }

void validate_target(const Target& t, const FrameGrid& g) {
    const bool delay_ok = t.delay_index >= 0.0 && t.delay_index < g.m_delay() - 1;
    const double n = g.n_doppler();
    const bool doppler_ok = t.doppler_index >= -0.5 * n && t.doppler_index < n - 0.5;
    const bool gain_ok = std::isfinite(t.gain.real()) && std::isfinite(t.gain.imag());
    if (!delay_ok || !doppler_ok || !gain_ok) {
        throw Error(Errc::TargetOutOfRange,
                    "target (doppler " + std::to_string(t.doppler_index) + ", delay " +
                        std::to_string(t.delay_index) + ") outside the frame");
    }
}

const char* to_string(PilotStrategy p) noexcept {
    return p == PilotStrategy::OnePilot ? "one_pilot" : "full_pilot";
}

}  // namespace otfs
