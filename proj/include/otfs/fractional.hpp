// SPDX-License-Identifier: Apache-2.0
//
// Off-grid refinement from the magnitudes of a peak and its larger neighbour:
//   frac = s |V2| / (|V1| + |V2|),  s = +-1 the ring offset from peak to neighbour.
#pragma once

#include <ostream>
#include <vector>

#include "otfs/correlator.hpp"
#include "otfs/detector.hpp"

namespace otfs {

enum class Axis { Doppler, Delay };

struct FractionalEstimate {
    int k_int = 0;  // storage Doppler bin
    int l_int = 0;
    double kappa = 0.0;
    double iota = 0.0;
    double doppler_index = 0.0;  // signed bin + kappa
    double delay_index = 0.0;    // l_int + iota
    bool clamped = false;        // a raw fraction fell outside [-0.5, 0.5]
    bool degenerate = false;     // both magnitudes were zero on some axis

    double range_m(const FrameGrid& g) const noexcept { return g.range_from_index(delay_index); }
    double velocity_mps(const FrameGrid& g) const noexcept { return g.velocity_from_index(doppler_index); }
};

/// Storage index of the larger of the two ring neighbours; ties go to +1.
int pick_neighbor(const CorrelationMap& v, int k, int l, Axis axis);

/// Fraction from peak/neighbour magnitudes. `step` is +1 or -1. Throws
/// ZeroDenominator when both are zero. Result clamped to [-0.5, 0.5].
double fraction_from_magnitudes(double peak, double neighbor, int step, bool* clamped = nullptr);

/// Throws InvalidArgument unless k2 is a ring neighbour of k1.
double estimate_kappa(const CorrelationMap& v, int k1, int k2, int l);
double estimate_iota(const CorrelationMap& v, int k, int l1, int l2);

FractionalEstimate refine_at(const CorrelationMap& v, int k, int l);
std::vector<FractionalEstimate> refine_detections(const CorrelationMap& v, const DetectionList& dets);
/// Refines the P strongest 3x3 local maxima of |V|.
std::vector<FractionalEstimate> refine_strongest_peaks(const CorrelationMap& v, int p);

void write_estimates_csv(const std::vector<FractionalEstimate>& est, const FrameGrid& grid, std::ostream& os);

}  // namespace otfs
