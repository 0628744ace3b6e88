#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "graphframe/pointset.hpp"
#include "graphframe/spectral.hpp"

namespace graphframe {

// Comparison estimators: thresholding or truncation in the Laplacian
// eigenbasis, and two ambient-space Gaussian kernel smoothers.

/// f_hat = sum_i S(<y, Phi_i>, sigma t) Phi_i
Signal le_threshold(const SpectralDecomposition& sd, const Signal& y, double sigma, double t);

/// f_hat = sum_{i <= m} <y, Phi_i> Phi_i
Signal le_truncate(const SpectralDecomposition& sd, const Signal& y, Eigen::Index m);

/// exp(-||x - x'||^2 / (2 h^2)) for all pairs.
Eigen::MatrixXd gaussian_kernel(const PointSet& ps, double bandwidth);

/// Nadaraya-Watson with a Gaussian kernel, self-weight included.
Signal nadaraya_watson(const PointSet& ps, const Signal& y, double bandwidth);

struct KernelRidgeFit {
    Eigen::VectorXd alpha;  ///< (K + ridge n I)^{-1} y
    Signal estimate;        ///< K alpha
    double residual;        ///< ||(K + ridge n I) alpha - y||
};

/// f_hat = K (K + ridge * n * I)^{-1} y via a Cholesky factorization.
/// Throws std::runtime_error when the system is not positive definite.
KernelRidgeFit kernel_ridge_fit(const PointSet& ps, const Signal& y, double bandwidth,
                                double ridge);
Signal kernel_ridge(const PointSet& ps, const Signal& y, double bandwidth, double ridge);

/// `count` log-spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int count);

/// 20 log-spaced bandwidths over [0.1 eps, 10 eps].
std::vector<double> bandwidth_grid(double epsilon);

/// Default ridge grid (size-independent gamma).
std::vector<double> ridge_grid();

}  // namespace graphframe
