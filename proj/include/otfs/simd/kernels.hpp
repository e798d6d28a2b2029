// SPDX-License-Identifier: Apache-2.0
//
// Runtime-dispatched inner loops. The ISA is chosen once on first use from
// CPU feature bits; OTFS_SIMD=scalar|avx2|neon in the environment overrides it.
#pragma once

#include <span>
#include <vector>

#include "otfs/grid.hpp"
#include "otfs/simd/kernels_raw.hpp"

namespace otfs::simd {

enum class Isa { Scalar, Avx2, Neon };

const char* to_string(Isa isa) noexcept;
bool available(Isa isa) noexcept;
std::vector<Isa> available_isas();
Isa active_isa() noexcept;
/// Switch the process-wide ISA. Throws InvalidArgument if not available.
void set_active_isa(Isa isa);
const KernelTable& kernels(Isa isa);
const KernelTable& active() noexcept;

void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void cmul_conj(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void norm_sq(std::span<const cplx> a, std::span<double> out);
void scale(std::span<cplx> a, double s);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
void add(std::span<const double> x, std::span<double> y);
cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace otfs::simd
