// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <string_view>

#include "otfs/simd/kernels.hpp"

namespace otfs::simd {
namespace {

Isa detect() noexcept {
    if (const char* env = std::getenv("OTFS_SIMD")) {
        const std::string_view want(env);
        if (want == "scalar") return Isa::Scalar;
        if (want == "avx2" && available(Isa::Avx2)) return Isa::Avx2;
        if (want == "neon" && available(Isa::Neon)) return Isa::Neon;
    }
    if (available(Isa::Avx2)) return Isa::Avx2;
    if (available(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
}

std::atomic<const KernelTable*>& slot() noexcept {
    static std::atomic<const KernelTable*> current{&kernels(detect())};
    return current;
}

std::atomic<Isa>& isa_slot() noexcept {
    static std::atomic<Isa> current{detect()};
    return current;
}

void check_len(std::size_t a, std::size_t b) {
    if (a != b) throw Error(Errc::DimensionMismatch, "kernel operands differ in length");
}

const double* raw(std::span<const cplx> s) noexcept { return reinterpret_cast<const double*>(s.data()); }
double* raw(std::span<cplx> s) noexcept { return reinterpret_cast<double*>(s.data()); }

}  // namespace

const char* to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

bool available(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(OTFS_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::Neon:
#if defined(OTFS_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
        if (available(isa)) out.push_back(isa);
    }
    return out;
}

const KernelTable& kernels(Isa isa) {
    if (!available(isa)) throw Error(Errc::InvalidArgument, std::string("ISA not available: ") + to_string(isa));
    switch (isa) {
#if defined(OTFS_HAVE_AVX2)
        case Isa::Avx2: return avx2::table;
#endif
#if defined(OTFS_HAVE_NEON)
        case Isa::Neon: return neon::table;
#endif
        default: return scalar::table;
    }
}

Isa active_isa() noexcept { return isa_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    const KernelTable& t = kernels(isa);
    slot().store(&t, std::memory_order_relaxed);
    isa_slot().store(isa, std::memory_order_relaxed);
}

const KernelTable& active() noexcept { return *slot().load(std::memory_order_relaxed); }

void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
    check_len(a.size(), b.size());
    check_len(a.size(), out.size());
    active().cmul(raw(a), raw(b), raw(out), a.size());
}

void cmul_conj(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
    check_len(a.size(), b.size());
    check_len(a.size(), out.size());
    active().cmul_conj(raw(a), raw(b), raw(out), a.size());
}

void norm_sq(std::span<const cplx> a, std::span<double> out) {
    check_len(a.size(), out.size());
    active().norm_sq(raw(a), out.data(), a.size());
}

void scale(std::span<cplx> a, double s) { active().scale(raw(a), s, a.size()); }

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    check_len(x.size(), y.size());
    active().axpy(alpha.real(), alpha.imag(), raw(x), raw(y), x.size());
}

void add(std::span<const double> x, std::span<double> y) {
    check_len(x.size(), y.size());
    active().add(x.data(), y.data(), x.size());
}

cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b) {
    check_len(a.size(), b.size());
    double out[2];
    active().dot_conj(raw(a), raw(b), out, a.size());
    return {out[0], out[1]};
}

}  // namespace otfs::simd
