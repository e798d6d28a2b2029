// SPDX-License-Identifier: Apache-2.0
#include "otfs/modem.hpp"

#include "otfs/fft.hpp"
#include "otfs/simd/kernels.hpp"

namespace otfs {
namespace {

template <class Out, class In>
Out symplectic(const In& in, FftSign s0, FftSign s1) {
    Out out(in.rows(), in.cols());
    std::copy(in.values().begin(), in.values().end(), out.values().begin());
    Fft2d::get(in.rows(), in.cols()).transform(out.data(), s0, s1);
    simd::scale(out.values(), 1.0 / std::sqrt(static_cast<double>(in.size())));
    return out;
}

}  // namespace

TFMatrix isfft(const DDMatrix& x_dd) {
    return symplectic<TFMatrix>(x_dd, FftSign::Backward, FftSign::Forward);
}

DDMatrix sfft(const TFMatrix& y_tf) {
    return symplectic<DDMatrix>(y_tf, FftSign::Forward, FftSign::Backward);
}

DDMatrix tf_channel_crosscheck(const DDMatrix& x_dd, std::span<const Target> targets, const FrameGrid& grid) {
    x_dd.require_grid(grid);
    for (const auto& t : targets) {
        validate_target(t, grid);
        if (!t.on_grid()) throw Error(Errc::FractionalTargetUnsupported, "TF route needs integer indices");
    }
    const int n_slots = grid.n_doppler();
    const int n_sub = grid.m_delay();
    const TFMatrix x_tf = isfft(x_dd);
    TFMatrix y_tf(n_slots, n_sub);
    for (const auto& t : targets) {
        const double k0 = t.doppler_index;
        const double l0 = t.delay_index;
        const cplx coef = t.gain * std::polar(1.0, -2.0 * kPi * grid.delay_doppler_product(k0, l0));
        for (int n = 0; n < n_slots; ++n) {
            // Doppler: per-slot phase ramp.
            const double slot_phase = 2.0 * kPi * wrap_index(static_cast<long long>(n * k0), n_slots) / n_slots;
            for (int m = 0; m < n_sub; ++m) {
                // Delay: per-subcarrier phase ramp.
                const double sub_phase = -2.0 * kPi * wrap_index(static_cast<long long>(m * l0), n_sub) / n_sub;
                y_tf(n, m) += coef * std::polar(1.0, slot_phase + sub_phase) * x_tf(n, m);
            }
        }
    }
    return sfft(y_tf);
}

}  // namespace otfs
