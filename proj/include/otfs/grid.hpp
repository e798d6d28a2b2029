// SPDX-License-Identifier: Apache-2.0
//
// Frame geometry and the matrix/target value types shared by every module.
//
// Storage convention: a delay-Doppler matrix is N x M, row-major, indexed
// [k, l] with k the Doppler bin (0..N-1) and l the delay bin (0..M-1).
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <new>
#include <span>
#include <type_traits>
#include <vector>

#include "otfs/error.hpp"

namespace otfs {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;
/// SNR sentinel meaning "do not add noise".
inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

/// Circular index reduction into [0, n).
constexpr int wrap_index(long long i, int n) noexcept {
    long long r = i % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

/// Reduce a real offset onto the ring of length n, result in [-n/2, n/2).
inline double wrap_offset(double d, int n) noexcept {
    double r = std::fmod(d, static_cast<double>(n));
    if (r < -0.5 * n) r += n;
    if (r >= 0.5 * n) r -= n;
    return r;
}

class FrameGrid {
public:
    /// Slot duration defaults to 1 / subcarrier_spacing.
    FrameGrid(int n_doppler, int m_delay, double subcarrier_spacing_hz, double carrier_freq_hz);
    FrameGrid(int n_doppler, int m_delay, double subcarrier_spacing_hz, double carrier_freq_hz,
              double slot_duration_s);

    /// 32 x 32 frame at 39.063 kHz spacing and 24 GHz carrier.
    static FrameGrid desk();
    /// 64 Doppler x 128 delay bins, same RF parameters as desk().
    static FrameGrid full_scale();

    int n_doppler() const noexcept { return n_; }
    int m_delay() const noexcept { return m_; }
    std::size_t cells() const noexcept { return static_cast<std::size_t>(n_) * m_; }
    double subcarrier_spacing() const noexcept { return delta_f_; }
    double slot_duration() const noexcept { return slot_; }
    double carrier_freq() const noexcept { return fc_; }

    double delay_resolution() const noexcept { return 1.0 / (m_ * delta_f_); }
    double doppler_resolution() const noexcept { return 1.0 / (n_ * slot_); }
    double range_resolution() const noexcept { return 0.5 * kSpeedOfLight * delay_resolution(); }
    double velocity_resolution() const noexcept {
        return 0.5 * kSpeedOfLight * doppler_resolution() / fc_;
    }
    double unambiguous_range() const noexcept { return m_ * range_resolution(); }
    double max_unambiguous_speed() const noexcept { return 0.5 * n_ * velocity_resolution(); }

    /// Product nu * tau for fractional indices (exactly k*l/(MN) when T*df == 1).
    double delay_doppler_product(double doppler_index, double delay_index) const noexcept {
        return doppler_index * delay_index / (static_cast<double>(n_) * m_ * slot_ * delta_f_);
    }

    double range_from_index(double delay_index) const noexcept {
        return delay_index * range_resolution();
    }
    double velocity_from_index(double doppler_index) const noexcept {
        return doppler_index * velocity_resolution();
    }
    double index_from_range(double range_m) const noexcept { return range_m / range_resolution(); }
    double index_from_velocity(double v_mps) const noexcept {
        return v_mps / velocity_resolution();
    }

    /// Storage Doppler bin -> signed bin in [-N/2, N/2).
    int signed_doppler(int k) const noexcept {
        int w = wrap_index(k, n_);
        return w < (n_ + 1) / 2 ? w : w - n_;
    }
    double signed_doppler_index(double k) const noexcept { return wrap_offset(k, n_); }

    bool operator==(const FrameGrid&) const = default;

private:
    int n_;
    int m_;
    double delta_f_;
    double fc_;
    double slot_;
};

template <class T, std::size_t Align = 64>
struct AlignedAllocator {
    using value_type = T;
    AlignedAllocator() noexcept = default;
    template <class U>
    AlignedAllocator(const AlignedAllocator<U, Align>&) noexcept {}
    template <class U>
    struct rebind {
        using other = AlignedAllocator<U, Align>;
    };
    T* allocate(std::size_t n) {
        return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t{Align}));
    }
    void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, std::align_val_t{Align}); }
    template <class U>
    bool operator==(const AlignedAllocator<U, Align>&) const noexcept {
        return true;
    }
};

struct DelayDopplerDomain {};
struct TimeFrequencyDomain {};

/// Dense N x M grid of values, tagged by domain so DD and TF data do not mix.
template <class T, class Domain>
class GridArray {
public:
    using value_type = T;

    GridArray() = default;
    GridArray(int rows, int cols) : rows_(rows), cols_(cols), data_(checked_size(rows, cols)) {}
    explicit GridArray(const FrameGrid& g) : GridArray(g.n_doppler(), g.m_delay()) {}

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    T& operator()(int k, int l) noexcept { return data_[static_cast<std::size_t>(k) * cols_ + l]; }
    const T& operator()(int k, int l) const noexcept {
        return data_[static_cast<std::size_t>(k) * cols_ + l];
    }
    /// Circular access: indices are reduced modulo the grid size.
    const T& at_wrapped(long long k, long long l) const noexcept {
        return (*this)(wrap_index(k, rows_), wrap_index(l, cols_));
    }

    T* data() noexcept { return data_.data(); }
    const T* data() const noexcept { return data_.data(); }
    std::span<T> values() noexcept { return {data_.data(), data_.size()}; }
    std::span<const T> values() const noexcept { return {data_.data(), data_.size()}; }

    bool same_shape(const GridArray& o) const noexcept {
        return rows_ == o.rows_ && cols_ == o.cols_;
    }
    bool matches(const FrameGrid& g) const noexcept {
        return rows_ == g.n_doppler() && cols_ == g.m_delay();
    }

    bool all_finite() const noexcept {
        for (const auto& v : data_) {
            if constexpr (std::is_same_v<T, cplx>) {
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
            } else {
                if (!std::isfinite(v)) return false;
            }
        }
        return true;
    }

    GridArray& operator+=(const GridArray& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    GridArray& operator-=(const GridArray& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    GridArray& operator*=(T s) noexcept {
        for (auto& v : data_) v *= s;
        return *this;
    }
    friend GridArray operator+(GridArray a, const GridArray& b) { return a += b; }
    friend GridArray operator-(GridArray a, const GridArray& b) { return a -= b; }
    friend GridArray operator*(GridArray a, T s) { return a *= s; }
    friend GridArray operator*(T s, GridArray a) { return a *= s; }

    bool operator==(const GridArray& o) const noexcept {
        return same_shape(o) && std::equal(data_.begin(), data_.end(), o.data_.begin());
    }

    void require_same_shape(const GridArray& o) const {
        if (!same_shape(o)) throw Error(Errc::DimensionMismatch, "grid arrays differ in shape");
    }
    void require_grid(const FrameGrid& g) const {
        if (!matches(g)) throw Error(Errc::DimensionMismatch, "array does not match frame grid");
    }

private:
    static std::size_t checked_size(int rows, int cols) {
        if (rows < 1 || cols < 1) throw Error(Errc::InvalidArgument, "grid dimensions must be positive");
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T, AlignedAllocator<T>> data_;
};

using DDMatrix = GridArray<cplx, DelayDopplerDomain>;
using TFMatrix = GridArray<cplx, TimeFrequencyDomain>;
using PowerMap = GridArray<double, DelayDopplerDomain>;

/// Sum of squared magnitudes.
template <class Domain>
double energy(const GridArray<cplx, Domain>& a) noexcept {
    double e = 0.0;
    for (const auto& v : a.values()) e += std::norm(v);
    return e;
}

template <class Domain>
double frobenius(const GridArray<cplx, Domain>& a) noexcept {
    return std::sqrt(energy(a));
}

/// ||a - b||_F / ||b||_F, or the absolute norm when b is zero.
template <class Domain>
double relative_error(const GridArray<cplx, Domain>& a, const GridArray<cplx, Domain>& b) {
    a.require_same_shape(b);
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff += std::norm(a.data()[i] - b.data()[i]);
        ref += std::norm(b.data()[i]);
    }
    return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

template <class Domain>
double max_abs_difference(const GridArray<cplx, Domain>& a, const GridArray<cplx, Domain>& b) {
    a.require_same_shape(b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

/// One point scatterer. Indices are real-valued grid coordinates; the integer
/// part is the nearest bin so fractional parts fall in [-0.5, 0.5).
struct Target {
    cplx gain{1.0, 0.0};
    double delay_index = 0.0;
    double doppler_index = 0.0;

    int delay_bin() const noexcept { return static_cast<int>(std::floor(delay_index + 0.5)); }
    int doppler_bin() const noexcept { return static_cast<int>(std::floor(doppler_index + 0.5)); }
    double delay_fraction() const noexcept { return delay_index - delay_bin(); }
    double doppler_fraction() const noexcept { return doppler_index - doppler_bin(); }
    bool on_grid() const noexcept { return delay_fraction() == 0.0 && doppler_fraction() == 0.0; }

    double range_m(const FrameGrid& g) const noexcept { return g.range_from_index(delay_index); }
    double velocity_mps(const FrameGrid& g) const noexcept {
        return g.velocity_from_index(g.signed_doppler_index(doppler_index));
    }

    bool operator==(const Target&) const = default;
};

/// Throws TargetOutOfRange unless delay in [0, M-1) and Doppler in [-N/2, N - 1/2).
/// Doppler values at or above N/2 are storage-convention aliases of k - N.
void validate_target(const Target& t, const FrameGrid& g);

enum class PilotStrategy { FullPilot, OnePilot };

const char* to_string(PilotStrategy p) noexcept;

struct Scenario {
    FrameGrid grid = FrameGrid::desk();
    std::vector<Target> targets;
    double snr_db = kNoiseless;
    std::uint64_t rng_seed = 0;
    PilotStrategy pilot = PilotStrategy::FullPilot;
};

}  // namespace otfs
