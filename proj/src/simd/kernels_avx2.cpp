// SPDX-License-Identifier: Apache-2.0
// Built with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "otfs/simd/kernels_raw.hpp"

namespace otfs::simd::avx2 {
namespace {

// Two complex values per 256-bit register.
inline __m256d mul2(__m256d a, __m256d b) {
    const __m256d ar = _mm256_movedup_pd(a);         // ar ar
    const __m256d ai = _mm256_permute_pd(a, 0b1111);  // ai ai
    const __m256d bs = _mm256_permute_pd(b, 0b0101);  // bi br
    // (ar*br - ai*bi, ar*bi + ai*br)
    return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

inline __m256d mul2_conj(__m256d a, __m256d b) {
    const __m256d ar = _mm256_movedup_pd(a);
    const __m256d ai = _mm256_permute_pd(a, 0b1111);
    const __m256d bs = _mm256_permute_pd(b, 0b0101);
    // (ar*br + ai*bi, ar*bi - ai*br)
    return _mm256_fmsubadd_pd(ar, b, _mm256_mul_pd(ai, bs));
}

void cmul(const double* a, const double* b, double* out, size_t n) {
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(out + 2 * i,
                         mul2(_mm256_loadu_pd(a + 2 * i), _mm256_loadu_pd(b + 2 * i)));
    }
    for (; i < n; ++i) {
        const double ar = a[2 * i], ai = a[2 * i + 1];
        const double br = b[2 * i], bi = b[2 * i + 1];
        out[2 * i] = ar * br - ai * bi;
        out[2 * i + 1] = ar * bi + ai * br;
    }
}

void cmul_conj(const double* a, const double* b, double* out, size_t n) {
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(out + 2 * i,
                         mul2_conj(_mm256_loadu_pd(a + 2 * i), _mm256_loadu_pd(b + 2 * i)));
    }
    for (; i < n; ++i) {
        const double ar = a[2 * i], ai = a[2 * i + 1];
        const double br = b[2 * i], bi = b[2 * i + 1];
        out[2 * i] = ar * br + ai * bi;
        out[2 * i + 1] = ar * bi - ai * br;
    }
}

void norm_sq(const double* a, double* out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x0 = _mm256_loadu_pd(a + 2 * i);
        const __m256d x1 = _mm256_loadu_pd(a + 2 * i + 4);
        // hadd interleaves lanes: (p0 p2 p1 p3), so restore order.
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(x0, x0), _mm256_mul_pd(x1, x1));
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0b11011000));
    }
    for (; i < n; ++i) {
        const double re = a[2 * i], im = a[2 * i + 1];
        out[i] = re * re + im * im;
    }
}

void scale(double* a, double s, size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    const size_t len = 2 * n;
    size_t i = 0;
    for (; i + 4 <= len; i += 4) _mm256_storeu_pd(a + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
    for (; i < len; ++i) a[i] *= s;
}

void axpy(double alpha_re, double alpha_im, const double* x, double* y, size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha_re);
    const __m256d ai = _mm256_set1_pd(alpha_im);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(x + 2 * i);
        const __m256d prod =
            _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, _mm256_permute_pd(xv, 0b0101)));
        _mm256_storeu_pd(y + 2 * i, _mm256_add_pd(_mm256_loadu_pd(y + 2 * i), prod));
    }
    for (; i < n; ++i) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        y[2 * i] += alpha_re * xr - alpha_im * xi;
        y[2 * i + 1] += alpha_re * xi + alpha_im * xr;
    }
}

void add(const double* x, double* y, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) y[i] += x[i];
}

void dot_conj(const double* a, const double* b, double* out, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = _mm256_add_pd(acc, mul2_conj(_mm256_loadu_pd(a + 2 * i), _mm256_loadu_pd(b + 2 * i)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double re = lanes[0] + lanes[2];
    double im = lanes[1] + lanes[3];
    for (; i < n; ++i) {
        const double ar = a[2 * i], ai = a[2 * i + 1];
        const double br = b[2 * i], bi = b[2 * i + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    out[0] = re;
    out[1] = im;
}

}  // namespace

const KernelTable table{"avx2", cmul, cmul_conj, norm_sq, scale, axpy, add, dot_conj};

}  // namespace otfs::simd::avx2
