// SPDX-License-Identifier: Apache-2.0
//
// 2D cell-averaging CFAR on the correlation power |V|^2 with circular
// training windows, followed by local-maximum consolidation.
#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "otfs/correlator.hpp"

namespace otfs {

struct CfarConfig {
    int guard_doppler = 2;
    int guard_delay = 2;
    int training_doppler = 4;
    int training_delay = 4;
    double p_fa = 1e-4;

    /// Cells in the training ring: outer box minus guard box.
    int training_count() const noexcept;
    /// Throws InvalidArgument for negative sizes, WindowTooLarge if the outer
    /// box does not fit the grid, InvalidProbability for p_fa outside (0, 1).
    void validate(const FrameGrid& grid) const;

    bool operator==(const CfarConfig&) const = default;
};

/// n_s (p_fa^(-1/n_s) - 1).
double cfar_alpha(int n_s, double p_fa);

/// alpha times the training-ring mean of `power` at every cell.
PowerMap cfar_threshold_map(const PowerMap& power, const CfarConfig& cfg);
PowerMap cfar_threshold_map(const CorrelationMap& v, const CfarConfig& cfg);

struct Detection {
    int k = 0;
    int l = 0;
    double statistic = 0.0;
    double threshold = 0.0;

    bool operator==(const Detection&) const = default;
};

struct DetectionList {
    /// Sorted by statistic, strongest first; ties by linear index.
    std::vector<Detection> detections;

    std::size_t count() const noexcept { return detections.size(); }
    bool empty() const noexcept { return detections.empty(); }
};

/// Cells at or below this fraction of the map's peak power are treated as
/// numerical zeros and never detected (noiseless maps are otherwise all round-off).
inline constexpr double kRoundoffFloor = 1e-20;

/// Cells with statistic > threshold, kept only where the statistic is the
/// maximum of its (2G+1) x (2G+1) guard neighbourhood (lower index wins ties).
DetectionList detect_on_power(const PowerMap& power, const CfarConfig& cfg);
DetectionList detect_targets(const CorrelationMap& v, const CfarConfig& cfg);

/// Raw per-cell exceedances before consolidation (false-alarm calibration).
std::size_t count_exceedances(const PowerMap& power, const CfarConfig& cfg);

/// V[k,l] / MN, which estimates conj(h) up to the kernel phase.
cplx estimate_gain(const CorrelationMap& v, int k, int l);

void write_detections_csv(const DetectionList& dets, std::ostream& os);

}  // namespace otfs
