// SPDX-License-Identifier: Apache-2.0
#include "otfs/csv.hpp"

#include <cmath>
#include <cstdio>

namespace otfs {

std::string fmt9(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace otfs
