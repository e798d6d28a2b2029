// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference evaluations written straight from the defining sums.
// Deliberately slow and free of the closed forms used by the library.
#pragma once

#include <complex>
#include <random>
#include <vector>

#include "otfs/grid.hpp"

namespace oracle {

using otfs::cplx;
using otfs::DDMatrix;
using otfs::FrameGrid;
using otfs::Target;
using otfs::kPi;

inline cplx g_sum(double x, int n) {
    cplx acc{};
    for (int k = 0; k < n; ++k) acc += std::polar(1.0, -2.0 * kPi * x * k / n);
    return acc / static_cast<double>(n);
}

inline cplx f_sum(double y, int m) {
    cplx acc{};
    for (int l = 0; l < m; ++l) acc += std::polar(1.0, 2.0 * kPi * y * l / m);
    return acc / static_cast<double>(m);
}

inline cplx coupling_phase(const Target& t, const FrameGrid& g) {
    const double nu = t.doppler_index / (g.n_doppler() * g.slot_duration());
    const double tau = t.delay_index / (g.m_delay() * g.subcarrier_spacing());
    return std::polar(1.0, -2.0 * kPi * nu * tau);
}

/// h_w[k,l] = sum_i h_i G(k - k_nu) F(l - l_tau) exp(-j2pi nu tau)
inline DDMatrix channel(const std::vector<Target>& targets, const FrameGrid& g) {
    DDMatrix h(g);
    for (const auto& t : targets) {
        const cplx c = t.gain * coupling_phase(t, g);
        for (int k = 0; k < g.n_doppler(); ++k) {
            for (int l = 0; l < g.m_delay(); ++l) {
                h(k, l) += c * g_sum(k - t.doppler_index, g.n_doppler()) * f_sum(l - t.delay_index, g.m_delay());
            }
        }
    }
    return h;
}

/// Y[k,l] = sum_{n,m} X[n,m] H[(k-n) mod N, (l-m) mod M]
inline DDMatrix convolve(const DDMatrix& x, const DDMatrix& h) {
    const int n = x.rows(), m = x.cols();
    DDMatrix y(n, m);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < m; ++l) {
            cplx acc{};
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < m; ++b) acc += x(a, b) * h(((k - a) % n + n) % n, ((l - b) % m + m) % m);
            y(k, l) = acc;
        }
    return y;
}

/// V[k,l] = sum_{n,m} conj(Y[n,m]) X[(n-k) mod N, (m-l) mod M]
inline DDMatrix correlate(const DDMatrix& y, const DDMatrix& x) {
    const int n = x.rows(), m = x.cols();
    DDMatrix v(n, m);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < m; ++l) {
            cplx acc{};
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < m; ++b) acc += std::conj(y(a, b)) * x(((a - k) % n + n) % n, ((b - l) % m + m) % m);
            v(k, l) = acc;
        }
    return v;
}

/// Noiseless received frame written as one triple sum over targets and input cells:
/// U[k,l] = sum_i sum_{n,m} X[n,m] h_i w(k - n - k_nu, l - m - l_tau) exp(-j2pi nu tau)
inline DDMatrix mean_frame(const DDMatrix& x, const std::vector<Target>& targets, const FrameGrid& g) {
    const int n = g.n_doppler(), m = g.m_delay();
    DDMatrix u(g);
    for (const auto& t : targets) {
        const cplx c = t.gain * coupling_phase(t, g);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < m; ++l) {
                cplx acc{};
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < m; ++b) {
                        if (x(a, b) == cplx{}) continue;
                        acc += x(a, b) * g_sum(k - a - t.doppler_index, n) * f_sum(l - b - t.delay_index, m);
                    }
                u(k, l) += c * acc;
            }
    }
    return u;
}

/// X_tf[n,m] = 1/sqrt(NM) sum_{k,l} X[k,l] exp(j2pi(nk/N - ml/M))
inline otfs::TFMatrix isfft(const DDMatrix& x) {
    const int n = x.rows(), m = x.cols();
    otfs::TFMatrix out(n, m);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < m; ++q) {
            cplx acc{};
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < m; ++l)
                    acc += x(k, l) * std::polar(1.0, 2.0 * kPi * (static_cast<double>(p) * k / n - static_cast<double>(q) * l / m));
            out(p, q) = acc / std::sqrt(static_cast<double>(n) * m);
        }
    return out;
}

/// Mean |V|^2 over the training ring of (k, l): outer box minus guard box, circular.
inline double ring_mean(const otfs::PowerMap& p, int k, int l, int gk, int gl, int tk, int tl) {
    double sum = 0.0;
    int count = 0;
    for (int dk = -(gk + tk); dk <= gk + tk; ++dk)
        for (int dl = -(gl + tl); dl <= gl + tl; ++dl) {
            if (std::abs(dk) <= gk && std::abs(dl) <= gl) continue;
            sum += p.at_wrapped(k + dk, l + dl);
            ++count;
        }
    return sum / count;
}

inline DDMatrix random_matrix(int n, int m, std::mt19937_64& gen) {
    std::normal_distribution<double> nd;
    DDMatrix x(n, m);
    for (auto& v : x.values()) v = {nd(gen), nd(gen)};
    return x;
}

inline cplx random_unit(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    return std::polar(1.0, u(gen));
}

}  // namespace oracle
