// SPDX-License-Identifier: Apache-2.0
//
// Fisher information and Cramer-Rao bounds for the fractional offsets
// theta = [kappa_1..kappa_P, iota_1..iota_P] of a known target set, with
// Y = U(theta) + CN(0, sigma^2 I).
#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "otfs/grid.hpp"

namespace otfs {

/// Noiseless received frame U = apply_channel(x, build_effective_channel(targets)).
DDMatrix noiseless_mean_frame(const DDMatrix& x, std::span<const Target> targets, const FrameGrid& grid);

struct Jacobian {
    /// dU/dtheta_p for p = 0..2P-1, each an N x M frame.
    std::vector<DDMatrix> columns;
    int targets() const noexcept { return static_cast<int>(columns.size() / 2); }
};

Jacobian mean_frame_jacobian(const DDMatrix& x, std::span<const Target> targets, const FrameGrid& grid);

/// (2 / sigma^2) Re(J^H J).
Eigen::MatrixXd fisher_matrix(const Jacobian& jac, double sigma2);

/// theta as stored in the targets (fraction parts about the nearest bin).
std::vector<double> fractional_parameters(std::span<const Target> targets);

struct CrlbReport {
    Eigen::MatrixXd fisher;
    std::vector<double> per_param_crlb;
    double kappa_sum = 0.0;  // sum of the kappa CRLBs
    double iota_sum = 0.0;
    double kappa_norm_sq = 0.0;
    double iota_norm_sq = 0.0;
    /// sum / norm^2; equal to the plain sum when the normalizer is zero.
    double kappa_bound = 0.0;
    double iota_bound = 0.0;
    bool kappa_zero_normalizer = false;
    bool iota_zero_normalizer = false;
    double condition_number = 0.0;
};

/// Inverts the Fisher matrix. Throws SingularFisher when it is not positive
/// definite or its condition number reaches 1e12.
CrlbReport crlb_bounds(const Eigen::MatrixXd& fisher, std::span<const double> true_theta);

inline constexpr double kMaxFisherCondition = 1e12;

}  // namespace otfs
