// SPDX-License-Identifier: Apache-2.0
//
// DD-domain pulse compression:
//   V[k,l] = sum_{n,m} conj(Y[n,m]) X[n-k, m-l]   (indices mod N, mod M)
#pragma once

#include <ostream>

#include "otfs/grid.hpp"

namespace otfs {

struct CorrelationMap {
    DDMatrix v;
    FrameGrid grid;

    /// |V|^2 per cell.
    PowerMap power() const;
};

CorrelationMap correlate(const DDMatrix& y, const DDMatrix& x, const FrameGrid& grid);
CorrelationMap correlate_direct(const DDMatrix& y, const DDMatrix& x, const FrameGrid& grid);

struct CorrelationMeanReport {
    int trials = 0;
    DDMatrix mean;      // average of V / MN
    DDMatrix expected;  // conj(h_w)
    double max_abs_deviation = 0.0;
    /// max over cells of |mean - expected| / sqrt(var / trials); var is the
    /// complex sample variance E|V/MN - mean|^2 of that cell.
    double max_z_score = 0.0;
    /// Cell-averaged sample variance of V / MN.
    double mean_total_variance = 0.0;
    /// Cell-averaged sample variance of the noise-only part correlate(Z, X) / MN.
    double mean_noise_variance = 0.0;
    /// sigma^2 / MN.
    double expected_noise_variance = 0.0;
};

/// Monte Carlo over independent QPSK frames for a fixed target set.
/// Requires trials >= 100.
CorrelationMeanReport correlation_mean_check(const Scenario& scenario, int trials);

/// |V| as CSV, one row per Doppler bin, one column per delay bin.
void write_magnitude_csv(const CorrelationMap& map, std::ostream& os);

}  // namespace otfs
