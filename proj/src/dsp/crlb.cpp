// SPDX-License-Identifier: Apache-2.0
#include "otfs/crlb.hpp"

#include "otfs/channel.hpp"
#include "otfs/fft.hpp"
#include "otfs/sampling.hpp"
#include "otfs/simd/kernels.hpp"

namespace otfs {

DDMatrix noiseless_mean_frame(const DDMatrix& x, std::span<const Target> targets, const FrameGrid& grid) {
    return apply_channel(x, build_effective_channel(targets, grid), grid);
}

Jacobian mean_frame_jacobian(const DDMatrix& x, std::span<const Target> targets, const FrameGrid& grid) {
    x.require_grid(grid);
    for (const auto& t : targets) validate_target(t, grid);
    const int n = grid.n_doppler();
    const int m = grid.m_delay();
    const std::size_t p_count = targets.size();
    // nu*tau = scale * k_nu * l_tau
    const double scale = grid.delay_doppler_product(1.0, 1.0);

    Jacobian jac;
    jac.columns.assign(2 * p_count, DDMatrix(grid));
    std::vector<cplx> g(n), dg(n), f(m), df(m);
    for (std::size_t p = 0; p < p_count; ++p) {
        const Target& t = targets[p];
        for (int k = 0; k < n; ++k) {
            g[k] = sampling_g(k - t.doppler_index, n);
            dg[k] = sampling_g_derivative(k - t.doppler_index, n);
        }
        for (int l = 0; l < m; ++l) {
            f[l] = sampling_f(l - t.delay_index, m);
            df[l] = sampling_f_derivative(l - t.delay_index, m);
        }
        const cplx coef = t.gain * std::polar(1.0, -2.0 * kPi * scale * t.doppler_index * t.delay_index);
        const cplx phase_k(0.0, -2.0 * kPi * scale * t.delay_index);  // d(phase)/d k_nu
        const cplx phase_l(0.0, -2.0 * kPi * scale * t.doppler_index);
        DDMatrix dk(grid), dl(grid);
        for (int k = 0; k < n; ++k) {
            for (int l = 0; l < m; ++l) {
                const cplx gf = g[k] * f[l];
                // The kernel argument is k - k_nu, hence the minus on G' and F'.
                dk(k, l) = coef * (phase_k * gf - dg[k] * f[l]);
                dl(k, l) = coef * (phase_l * gf - g[k] * df[l]);
            }
        }
        jac.columns[p] = circular_convolve(x, dk);
        jac.columns[p_count + p] = circular_convolve(x, dl);
    }
    return jac;
}

Eigen::MatrixXd fisher_matrix(const Jacobian& jac, double sigma2) {
    if (!(sigma2 > 0.0)) throw Error(Errc::InvalidArgument, "noise variance must be positive");
    const auto dim = static_cast<Eigen::Index>(jac.columns.size());
    Eigen::MatrixXd fim(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = i; j < dim; ++j) {
            const double v = 2.0 / sigma2 * simd::dot_conj(jac.columns[i].values(), jac.columns[j].values()).real();
            fim(i, j) = v;
            fim(j, i) = v;
        }
    }
    return fim;
}

std::vector<double> fractional_parameters(std::span<const Target> targets) {
    std::vector<double> theta(2 * targets.size());
    for (std::size_t p = 0; p < targets.size(); ++p) {
        theta[p] = targets[p].doppler_fraction();
        theta[targets.size() + p] = targets[p].delay_fraction();
    }
    return theta;
}

CrlbReport crlb_bounds(const Eigen::MatrixXd& fisher, std::span<const double> true_theta) {
    const Eigen::Index dim = fisher.rows();
    if (fisher.cols() != dim || static_cast<std::size_t>(dim) != true_theta.size() || dim % 2 != 0) {
        throw Error(Errc::DimensionMismatch, "Fisher matrix and parameter vector disagree");
    }
    CrlbReport rep;
    rep.fisher = fisher;
    if (dim == 0) return rep;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(fisher);
    if (eig.info() != Eigen::Success) throw Error(Errc::SingularFisher, "eigen decomposition failed");
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    rep.condition_number = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    if (!(lo > 0.0) || rep.condition_number >= kMaxFisherCondition) {
        throw Error(Errc::SingularFisher, "Fisher matrix is singular or ill-conditioned");
    }
    const Eigen::MatrixXd inv =
        eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();

    const Eigen::Index p = dim / 2;
    rep.per_param_crlb.resize(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) rep.per_param_crlb[i] = inv(i, i);
    for (Eigen::Index i = 0; i < p; ++i) {
        rep.kappa_sum += inv(i, i);
        rep.iota_sum += inv(p + i, p + i);
        rep.kappa_norm_sq += true_theta[i] * true_theta[i];
        rep.iota_norm_sq += true_theta[p + i] * true_theta[p + i];
    }
    rep.kappa_zero_normalizer = rep.kappa_norm_sq == 0.0;
    rep.iota_zero_normalizer = rep.iota_norm_sq == 0.0;
    rep.kappa_bound = rep.kappa_zero_normalizer ? rep.kappa_sum : rep.kappa_sum / rep.kappa_norm_sq;
    rep.iota_bound = rep.iota_zero_normalizer ? rep.iota_sum : rep.iota_sum / rep.iota_norm_sq;
    return rep;
}

}  // namespace otfs
