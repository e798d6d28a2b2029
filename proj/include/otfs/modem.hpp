// SPDX-License-Identifier: Apache-2.0
//
// Unitary symplectic transform pair between DD and TF domains:
//   X_tf[n,m] = 1/sqrt(NM) sum_{k,l} X_dd[k,l] exp(j2pi(nk/N - ml/M))
// and its inverse.
#pragma once

#include <span>

#include "otfs/grid.hpp"

namespace otfs {

TFMatrix isfft(const DDMatrix& x_dd);
DDMatrix sfft(const TFMatrix& y_tf);

/// Applies integer-index targets as TF-domain phase ramps and returns to DD.
/// Throws FractionalTargetUnsupported for off-grid targets.
DDMatrix tf_channel_crosscheck(const DDMatrix& x_dd, std::span<const Target> targets, const FrameGrid& grid);

}  // namespace otfs
