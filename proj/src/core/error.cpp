// SPDX-License-Identifier: Apache-2.0
#include "otfs/error.hpp"

namespace otfs {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::TargetOutOfRange: return "TargetOutOfRange";
        case Errc::FractionalTargetUnsupported: return "FractionalTargetUnsupported";
        case Errc::InvalidProbability: return "InvalidProbability";
        case Errc::WindowTooLarge: return "WindowTooLarge";
        case Errc::ZeroDenominator: return "ZeroDenominator";
        case Errc::SingularFisher: return "SingularFisher";
        case Errc::ZeroNormalizer: return "ZeroNormalizer";
        case Errc::RetryExhausted: return "RetryExhausted";
        case Errc::EmptyMatchSet: return "EmptyMatchSet";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::ConfigError: return "ConfigError";
        case Errc::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace otfs
