// SPDX-License-Identifier: Apache-2.0
//
// DD-domain effective channel and the circular input-output relation
//   Y[k,l] = sum_{n,m} X[n,m] h_w[k-n, l-m] + Z[k,l].
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "otfs/grid.hpp"

namespace otfs {

struct EffectiveChannel {
    DDMatrix h_omega;
    std::vector<Target> source_targets;
};

/// Contribution of one target: h G(k - k_nu) F(l - l_tau) exp(-j2pi nu tau).
DDMatrix target_kernel(const Target& t, const FrameGrid& grid);

/// Sum of target kernels. Throws TargetOutOfRange.
EffectiveChannel build_effective_channel(std::span<const Target> targets, const FrameGrid& grid);

/// 2D circular convolution of x with the channel, via FFT.
DDMatrix apply_channel(const DDMatrix& x, const EffectiveChannel& chan, const FrameGrid& grid);
/// Same relation as a literal O((MN)^2) double sum.
DDMatrix apply_channel_direct(const DDMatrix& x, const EffectiveChannel& chan, const FrameGrid& grid);

/// Per-entry noise variance for unit-power symbols: 10^(-snr/10). Zero for +inf.
double noise_variance(double snr_db);

/// i.i.d. CN(0, 1) entries drawn row-major from one seed.
DDMatrix unit_noise(const FrameGrid& grid, std::uint64_t seed);

/// y + sqrt(sigma^2) * unit_noise(seed). Returns y unchanged for snr_db = +inf.
DDMatrix add_noise(const DDMatrix& y, double snr_db, std::uint64_t seed);

}  // namespace otfs
