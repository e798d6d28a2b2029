// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace otfs {

enum class Errc {
    DimensionMismatch,
    TargetOutOfRange,
    FractionalTargetUnsupported,
    InvalidProbability,
    WindowTooLarge,
    ZeroDenominator,
    SingularFisher,
    ZeroNormalizer,
    RetryExhausted,
    EmptyMatchSet,
    InvalidArgument,
    ConfigError,
    IoError,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace otfs
