// SPDX-License-Identifier: Apache-2.0
//
// 2D DFTs over row-major N x M complex arrays, backed by FFTW.
// Plans are created once per shape (FFTW_ESTIMATE, so results are
// reproducible run to run) and are safe to execute from several threads.
#pragma once

#include "otfs/grid.hpp"

namespace otfs {

enum class FftSign : int { Forward = -1, Backward = +1 };

class Fft2d {
public:
    /// Shared plan set for an N x M shape.
    static const Fft2d& get(int rows, int cols);

    /// In-place unnormalized transform along both axes with independent signs:
    ///   out[p, q] = sum_{k,l} in[k, l] exp(s0 j2pi pk/N) exp(s1 j2pi ql/M)
    /// s0 acts on the first (row) index, s1 on the second (column) index.
    void transform(cplx* data, FftSign s0, FftSign s1) const;

    void forward(cplx* data) const { transform(data, FftSign::Forward, FftSign::Forward); }
    void backward(cplx* data) const { transform(data, FftSign::Backward, FftSign::Backward); }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    Fft2d(const Fft2d&) = delete;
    Fft2d& operator=(const Fft2d&) = delete;
    ~Fft2d();

private:
    Fft2d(int rows, int cols);

    int rows_;
    int cols_;
    // [sign][axis]: axis 0 runs down columns (length N), axis 1 along rows (length M).
    void* plans_[2][2] = {{nullptr, nullptr}, {nullptr, nullptr}};
    // Whole-array plans for equal signs.
    void* full_[2] = {nullptr, nullptr};
};

/// Spectrum of a DD matrix (unnormalized forward 2D DFT).
DDMatrix fft2(const DDMatrix& a);

/// Circular 2D convolution c[k,l] = sum_{n,m} a[n,m] b[k-n, l-m] via FFT.
DDMatrix circular_convolve(const DDMatrix& a, const DDMatrix& b);

}  // namespace otfs
