// SPDX-License-Identifier: Apache-2.0
#include "otfs/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "otfs/simd/kernels.hpp"

namespace otfs {
namespace {

// The FFTW planner is not re-entrant; execution of an existing plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

int sign_slot(FftSign s) { return s == FftSign::Forward ? 0 : 1; }

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Fft2d::Fft2d(int rows, int cols) : rows_(rows), cols_(cols) {
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::vector<cplx> scratch(static_cast<std::size_t>(rows) * cols);
    fftw_complex* buf = as_fftw(scratch.data());
    for (FftSign s : {FftSign::Forward, FftSign::Backward}) {
        const int dir = static_cast<int>(s);
        const int i = sign_slot(s);
        // Down each column: M transforms of length N, stride M.
        int n0 = rows;
        plans_[i][0] = fftw_plan_many_dft(1, &n0, cols, buf, nullptr, cols, 1, buf, nullptr, cols, 1, dir, flags);
        // Along each row: N transforms of length M, contiguous.
        int n1 = cols;
        plans_[i][1] = fftw_plan_many_dft(1, &n1, rows, buf, nullptr, 1, cols, buf, nullptr, 1, cols, dir, flags);
        full_[i] = fftw_plan_dft_2d(rows, cols, buf, buf, dir, flags);
        if (!plans_[i][0] || !plans_[i][1] || !full_[i]) {
            throw Error(Errc::InvalidArgument, "FFT planning failed");
        }
    }
}

Fft2d::~Fft2d() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    for (int i = 0; i < 2; ++i) {
        for (int a = 0; a < 2; ++a) {
            if (plans_[i][a]) fftw_destroy_plan(static_cast<fftw_plan>(plans_[i][a]));
        }
        if (full_[i]) fftw_destroy_plan(static_cast<fftw_plan>(full_[i]));
    }
}

const Fft2d& Fft2d::get(int rows, int cols) {
    if (rows < 1 || cols < 1) throw Error(Errc::InvalidArgument, "FFT shape must be positive");
    static std::map<std::pair<int, int>, std::unique_ptr<Fft2d>> cache;
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto& slot = cache[{rows, cols}];
    if (!slot) slot.reset(new Fft2d(rows, cols));
    return *slot;
}

void Fft2d::transform(cplx* data, FftSign s0, FftSign s1) const {
    fftw_complex* d = as_fftw(data);
    if (s0 == s1) {
        fftw_execute_dft(static_cast<fftw_plan>(full_[sign_slot(s0)]), d, d);
        return;
    }
    fftw_execute_dft(static_cast<fftw_plan>(plans_[sign_slot(s0)][0]), d, d);
    fftw_execute_dft(static_cast<fftw_plan>(plans_[sign_slot(s1)][1]), d, d);
}

DDMatrix fft2(const DDMatrix& a) {
    DDMatrix out = a;
    Fft2d::get(a.rows(), a.cols()).forward(out.data());
    return out;
}

DDMatrix circular_convolve(const DDMatrix& a, const DDMatrix& b) {
    a.require_same_shape(b);
    const Fft2d& plan = Fft2d::get(a.rows(), a.cols());
    DDMatrix fa = a;
    DDMatrix fb = b;
    plan.forward(fa.data());
    plan.forward(fb.data());
    simd::cmul(fa.values(), fb.values(), fa.values());
    plan.backward(fa.data());
    simd::scale(fa.values(), 1.0 / static_cast<double>(a.size()));
    return fa;
}

}  // namespace otfs
