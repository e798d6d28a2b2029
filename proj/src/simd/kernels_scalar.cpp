// SPDX-License-Identifier: Apache-2.0
#include "otfs/simd/kernels_raw.hpp"

namespace otfs::simd::scalar {
namespace {

void cmul(const double* a, const double* b, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        const double ar = a[2 * i], ai = a[2 * i + 1];
        const double br = b[2 * i], bi = b[2 * i + 1];
        out[2 * i] = ar * br - ai * bi;
        out[2 * i + 1] = ar * bi + ai * br;
    }
}

void cmul_conj(const double* a, const double* b, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        const double ar = a[2 * i], ai = a[2 * i + 1];
        const double br = b[2 * i], bi = b[2 * i + 1];
        out[2 * i] = ar * br + ai * bi;
        out[2 * i + 1] = ar * bi - ai * br;
    }
}

void norm_sq(const double* a, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        const double re = a[2 * i], im = a[2 * i + 1];
        out[i] = re * re + im * im;
    }
}

void scale(double* a, double s, size_t n) {
    for (size_t i = 0; i < 2 * n; ++i) a[i] *= s;
}

void axpy(double alpha_re, double alpha_im, const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        y[2 * i] += alpha_re * xr - alpha_im * xi;
        y[2 * i + 1] += alpha_re * xi + alpha_im * xr;
    }
}

void add(const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += x[i];
}

void dot_conj(const double* a, const double* b, double* out, size_t n) {
    double re = 0.0, im = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double ar = a[2 * i], ai = a[2 * i + 1];
        const double br = b[2 * i], bi = b[2 * i + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    out[0] = re;
    out[1] = im;
}

}  // namespace

const KernelTable table{"scalar", cmul, cmul_conj, norm_sq, scale, axpy, add, dot_conj};

}  // namespace otfs::simd::scalar
