// SPDX-License-Identifier: Apache-2.0
#include "otfs/channel.hpp"

#include <vector>

#include "otfs/fft.hpp"
#include "otfs/rng.hpp"
#include "otfs/sampling.hpp"
#include "otfs/simd/kernels.hpp"

namespace otfs {
namespace {

void accumulate_kernel(const Target& t, const FrameGrid& grid, DDMatrix& out) {
    const int n = grid.n_doppler();
    const int m = grid.m_delay();
    std::vector<cplx> f(static_cast<std::size_t>(m));
    for (int l = 0; l < m; ++l) f[l] = sampling_f(l - t.delay_index, m);
    const double nu_tau = grid.delay_doppler_product(t.doppler_index, t.delay_index);
    const cplx coef = t.gain * std::polar(1.0, -2.0 * kPi * nu_tau);
    for (int k = 0; k < n; ++k) {
        const cplx g = sampling_g(k - t.doppler_index, n);
        if (g == cplx{}) continue;
        simd::axpy(coef * g, f, {&out(k, 0), static_cast<std::size_t>(m)});
    }
}

}  // namespace

DDMatrix target_kernel(const Target& t, const FrameGrid& grid) {
    validate_target(t, grid);
    DDMatrix out(grid);
    accumulate_kernel(t, grid, out);
    return out;
}

EffectiveChannel build_effective_channel(std::span<const Target> targets, const FrameGrid& grid) {
    for (const auto& t : targets) validate_target(t, grid);
    EffectiveChannel chan{DDMatrix(grid), {targets.begin(), targets.end()}};
    for (const auto& t : targets) accumulate_kernel(t, grid, chan.h_omega);
    return chan;
}

DDMatrix apply_channel(const DDMatrix& x, const EffectiveChannel& chan, const FrameGrid& grid) {
    x.require_grid(grid);
    chan.h_omega.require_grid(grid);
    return circular_convolve(x, chan.h_omega);
}

DDMatrix apply_channel_direct(const DDMatrix& x, const EffectiveChannel& chan, const FrameGrid& grid) {
    x.require_grid(grid);
    chan.h_omega.require_grid(grid);
    const int n = grid.n_doppler();
    const int m = grid.m_delay();
    DDMatrix y(grid);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < m; ++l) {
            cplx acc{};
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < m; ++b) acc += x(a, b) * chan.h_omega.at_wrapped(k - a, l - b);
            }
            y(k, l) = acc;
        }
    }
    return y;
}

double noise_variance(double snr_db) {
    if (std::isinf(snr_db) && snr_db > 0) return 0.0;
    if (!std::isfinite(snr_db)) throw Error(Errc::InvalidArgument, "SNR must be finite or +inf");
    return std::pow(10.0, -snr_db / 10.0);
}

DDMatrix unit_noise(const FrameGrid& grid, std::uint64_t seed) {
    DDMatrix z(grid);
    Rng rng(seed);
    for (auto& v : z.values()) v = rng.complex_normal(1.0);
    return z;
}

DDMatrix add_noise(const DDMatrix& y, double snr_db, std::uint64_t seed) {
    const double var = noise_variance(snr_db);
    if (var == 0.0) return y;
    DDMatrix out = y;
    Rng rng(seed);
    const double sigma = std::sqrt(var);
    for (auto& v : out.values()) v += sigma * rng.complex_normal(1.0);
    return out;
}

}  // namespace otfs
