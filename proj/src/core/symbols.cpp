// SPDX-License-Identifier: Apache-2.0
#include "otfs/symbols.hpp"

#include "otfs/rng.hpp"

namespace otfs {

DDMatrix generate_qpsk_frame(const FrameGrid& grid, std::uint64_t seed) {
    DDMatrix x(grid);
    Rng rng(seed);
    const double a = 1.0 / std::sqrt(2.0);
    std::uint64_t bits = 0;
    int left = 0;
    for (auto& v : x.values()) {
        if (left == 0) {
            bits = rng.bits();
            left = 32;
        }
        v = {(bits & 1u) ? -a : a, (bits & 2u) ? -a : a};
        bits >>= 2;
        --left;
    }
    return x;
}

DDMatrix generate_one_pilot_frame(const FrameGrid& grid) {
    DDMatrix x(grid);
    x(0, 0) = std::sqrt(static_cast<double>(grid.cells()));
    return x;
}

DDMatrix generate_frame(const FrameGrid& grid, PilotStrategy pilot, std::uint64_t seed) {
    return pilot == PilotStrategy::OnePilot ? generate_one_pilot_frame(grid) : generate_qpsk_frame(grid, seed);
}

}  // namespace otfs
