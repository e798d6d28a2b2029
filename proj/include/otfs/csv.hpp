// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace otfs {

/// Decimal text with 9 significant digits. NaN and infinities print as nan, inf, -inf.
std::string fmt9(double v);

}  // namespace otfs
