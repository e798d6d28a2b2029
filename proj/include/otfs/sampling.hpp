// SPDX-License-Identifier: Apache-2.0
//
// Dirichlet-kernel sampling functions of the rectangular-window DD channel.
//
//   G(x) = 1/N sum_{k'=0}^{N-1} exp(-j 2 pi x k' / N)
//   F(y) = 1/M sum_{l'=0}^{M-1} exp(+j 2 pi y l' / M)
//   omega(dk, dl) = G(dk) F(dl)
//
// All are evaluated in closed form, exp(-+j pi x (N-1)/N) sin(pi x) / (N sin(pi x / N)),
// and are exactly N- (resp. M-) periodic in their real argument.
#pragma once

#include "otfs/grid.hpp"

namespace otfs {

cplx sampling_g(double x, int n);
cplx sampling_f(double y, int m);
cplx sampling_omega(double dk, double dl, const FrameGrid& grid);

/// dG/dx and dF/dy, used by the CRLB Jacobian.
cplx sampling_g_derivative(double x, int n);
cplx sampling_f_derivative(double y, int m);

}  // namespace otfs
