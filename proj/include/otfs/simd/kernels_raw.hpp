// SPDX-License-Identifier: Apache-2.0
//
// Per-ISA element-wise kernels on interleaved complex doubles (re, im, re, im, ...).
// `n` always counts complex elements for the c* kernels and doubles for `add`.
// Every ISA provides the same table; scalar is the reference the others are
// tested against.
#pragma once

#include <stddef.h>

namespace otfs::simd {

struct KernelTable {
    const char* name;
    // out = a * b
    void (*cmul)(const double* a, const double* b, double* out, size_t n);
    // out = conj(a) * b
    void (*cmul_conj)(const double* a, const double* b, double* out, size_t n);
    // out[i] = |a[i]|^2
    void (*norm_sq)(const double* a, double* out, size_t n);
    // a *= s (real scalar)
    void (*scale)(double* a, double s, size_t n);
    // y += alpha * x (alpha complex, given as re/im)
    void (*axpy)(double alpha_re, double alpha_im, const double* x, double* y, size_t n);
    // y += x (real)
    void (*add)(const double* x, double* y, size_t n);
    // sum conj(a) * b, written to out[0] (re), out[1] (im)
    void (*dot_conj)(const double* a, const double* b, double* out, size_t n);
};

namespace scalar {
extern const KernelTable table;
}
#if defined(OTFS_HAVE_AVX2)
namespace avx2 {
extern const KernelTable table;
}
#endif
#if defined(OTFS_HAVE_NEON)
namespace neon {
extern const KernelTable table;
}
#endif

}  // namespace otfs::simd
