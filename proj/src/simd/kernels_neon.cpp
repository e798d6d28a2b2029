// SPDX-License-Identifier: Apache-2.0
// AArch64 only. One complex double per 128-bit register.
#include <arm_neon.h>

#include "otfs/simd/kernels_raw.hpp"

namespace otfs::simd::neon {
namespace {

inline float64x2_t swap(float64x2_t v) { return vextq_f64(v, v, 1); }

// (ar*br - ai*bi, ar*bi + ai*br)
inline float64x2_t mul1(float64x2_t a, float64x2_t b) {
    const float64x2_t ar = vdupq_laneq_f64(a, 0);
    const float64x2_t ai = vdupq_laneq_f64(a, 1);
    const float64x2_t sign = {-1.0, 1.0};
    return vfmaq_f64(vmulq_f64(ar, b), vmulq_f64(ai, sign), swap(b));
}

// (ar*br + ai*bi, ar*bi - ai*br)
inline float64x2_t mul1_conj(float64x2_t a, float64x2_t b) {
    const float64x2_t ar = vdupq_laneq_f64(a, 0);
    const float64x2_t ai = vdupq_laneq_f64(a, 1);
    const float64x2_t sign = {1.0, -1.0};
    return vfmaq_f64(vmulq_f64(ar, b), vmulq_f64(ai, sign), swap(b));
}

void cmul(const double* a, const double* b, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        vst1q_f64(out + 2 * i, mul1(vld1q_f64(a + 2 * i), vld1q_f64(b + 2 * i)));
    }
}

void cmul_conj(const double* a, const double* b, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        vst1q_f64(out + 2 * i, mul1_conj(vld1q_f64(a + 2 * i), vld1q_f64(b + 2 * i)));
    }
}

void norm_sq(const double* a, double* out, size_t n) {
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t x0 = vld1q_f64(a + 2 * i);
        const float64x2_t x1 = vld1q_f64(a + 2 * i + 2);
        vst1q_f64(out + i, vpaddq_f64(vmulq_f64(x0, x0), vmulq_f64(x1, x1)));
    }
    for (; i < n; ++i) {
        const double re = a[2 * i], im = a[2 * i + 1];
        out[i] = re * re + im * im;
    }
}

void scale(double* a, double s, size_t n) {
    const float64x2_t vs = vdupq_n_f64(s);
    for (size_t i = 0; i < n; ++i) vst1q_f64(a + 2 * i, vmulq_f64(vld1q_f64(a + 2 * i), vs));
}

void axpy(double alpha_re, double alpha_im, const double* x, double* y, size_t n) {
    const float64x2_t alpha = {alpha_re, alpha_im};
    for (size_t i = 0; i < n; ++i) {
        vst1q_f64(y + 2 * i, vaddq_f64(vld1q_f64(y + 2 * i), mul1(alpha, vld1q_f64(x + 2 * i))));
    }
}

void add(const double* x, double* y, size_t n) {
    size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += x[i];
}

void dot_conj(const double* a, const double* b, double* out, size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (size_t i = 0; i < n; ++i) {
        acc = vaddq_f64(acc, mul1_conj(vld1q_f64(a + 2 * i), vld1q_f64(b + 2 * i)));
    }
    vst1q_f64(out, acc);
}

}  // namespace

const KernelTable table{"neon", cmul, cmul_conj, norm_sq, scale, axpy, add, dot_conj};

}  // namespace otfs::simd::neon
