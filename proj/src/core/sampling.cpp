// SPDX-License-Identifier: Apache-2.0
#include "otfs/sampling.hpp"

namespace otfs {
namespace {

constexpr double kSmall = 1e-3;

// sin(pi x) / (n sin(pi x / n)) for x already reduced to [-n/2, n/2).
double dirichlet(double x, int n) {
    if (x == 0.0) return 1.0;
    if (x == std::floor(x)) return 0.0;
    const double u = kPi * x;
    if (std::abs(u) < kSmall) {
        const double inv2 = 1.0 / (static_cast<double>(n) * n);
        const double c2 = (1.0 - inv2) / 6.0;
        const double c4 = (1.0 - inv2 * inv2) / 120.0 - (1.0 - inv2) * inv2 / 36.0;
        const double u2 = u * u;
        return 1.0 - c2 * u2 + c4 * u2 * u2;
    }
    return std::sin(u) / (n * std::sin(u / n));
}

// d/dx of dirichlet().
double dirichlet_derivative(double x, int n) {
    const double u = kPi * x;
    if (std::abs(u) < kSmall) {
        const double inv2 = 1.0 / (static_cast<double>(n) * n);
        const double c2 = (1.0 - inv2) / 6.0;
        const double c4 = (1.0 - inv2 * inv2) / 120.0 - (1.0 - inv2) * inv2 / 36.0;
        return kPi * (-2.0 * c2 * u + 4.0 * c4 * u * u * u);
    }
    const double sn = std::sin(u / n);
    const double ds_du = std::cos(u) / (n * sn) - std::sin(u) * std::cos(u / n) / (static_cast<double>(n) * n * sn * sn);
    return kPi * ds_du;
}

// Shared body for G (sign = -1) and F (sign = +1).
cplx kernel(double x, int n, double sign) {
    const double r = wrap_offset(x, n);
    const double s = dirichlet(r, n);
    if (s == 0.0) return {0.0, 0.0};
    const double phase = sign * kPi * r * (n - 1) / n;
    return std::polar(s, phase);
}

cplx kernel_derivative(double x, int n, double sign) {
    const double r = wrap_offset(x, n);
    const double s = dirichlet(r, n);
    const double ds = dirichlet_derivative(r, n);
    const double a = sign * kPi * (n - 1) / n;
    return std::polar(1.0, a * r) * cplx(ds, a * s);
}

}  // namespace

cplx sampling_g(double x, int n) { return kernel(x, n, -1.0); }

cplx sampling_f(double y, int m) { return kernel(y, m, +1.0); }

cplx sampling_omega(double dk, double dl, const FrameGrid& grid) {
    return sampling_g(dk, grid.n_doppler()) * sampling_f(dl, grid.m_delay());
}

cplx sampling_g_derivative(double x, int n) { return kernel_derivative(x, n, -1.0); }

cplx sampling_f_derivative(double y, int m) { return kernel_derivative(y, m, +1.0); }

}  // namespace otfs
