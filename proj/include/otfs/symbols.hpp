// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "otfs/grid.hpp"

namespace otfs {

/// Every cell drawn uniformly from {(+-1 +- j)/sqrt(2)}.
DDMatrix generate_qpsk_frame(const FrameGrid& grid, std::uint64_t seed);

/// Single pilot at (0, 0) with amplitude sqrt(MN), so the frame energy equals
/// that of a QPSK frame.
DDMatrix generate_one_pilot_frame(const FrameGrid& grid);

DDMatrix generate_frame(const FrameGrid& grid, PilotStrategy pilot, std::uint64_t seed);

}  // namespace otfs
