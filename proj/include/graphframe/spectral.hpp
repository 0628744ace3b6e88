#pragma once

#include <stdexcept>
#include <string_view>

#include <Eigen/Dense>

#include "graphframe/graph.hpp"

namespace graphframe {

enum class LaplacianKind { unnormalized, normalized };

std::string_view to_string(LaplacianKind kind);  // "u" / "n"
LaplacianKind parse_laplacian_kind(std::string_view name);

struct Laplacian {
    Eigen::MatrixXd matrix;
    LaplacianKind kind;
};

/// L = D - A, or L = I - D^{-1/2} A D^{-1/2}. In the normalized case an
/// isolated vertex gets the unit row/column e_i.
Laplacian laplacian(const WeightedGraph& g, LaplacianKind kind);

/// Ascending eigenvalues and matching orthonormal eigenvectors (columns).
class SpectralDecomposition {
public:
    SpectralDecomposition(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors);

    Eigen::Index n() const noexcept { return eigenvalues_.size(); }
    const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
    const Eigen::MatrixXd& eigenvectors() const noexcept { return eigenvectors_; }
    double lambda_max() const { return eigenvalues_(n() - 1); }

    /// max |Phi^T Phi - I|
    double orthonormality_error() const;
    /// max |Phi diag(lambda) Phi^T - M|
    double reconstruction_error(const Eigen::MatrixXd& m) const;

private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

enum class EigenMethod {
    jacobi,          ///< cyclic Jacobi rotations (this library)
    tridiagonal_qr,  ///< Householder tridiagonalization + implicit QR (Eigen)
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(int sweeps, double residual);
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

struct JacobiOptions {
    double relative_tolerance = 1e-12;  ///< stop when off(A) <= tol * ||A||_F
    int max_sweeps = 30;
};

/// Cyclic Jacobi eigensolver for a dense symmetric matrix. Output is sorted
/// and sign-normalized like decompose().
SpectralDecomposition jacobi_eigen(const Eigen::MatrixXd& m, JacobiOptions opts = {});

/// Eigendecomposition of any symmetric matrix. Eigenvalues are sorted
/// ascending; each eigenvector has its largest-magnitude entry positive (ties:
/// lowest index). No clamping.
SpectralDecomposition decompose_symmetric(const Eigen::MatrixXd& m,
                                          EigenMethod method = EigenMethod::tridiagonal_qr);

/// decompose_symmetric plus clamping of round-off negatives in [-1e-10, 0) to 0.
SpectralDecomposition decompose(const Laplacian& lap,
                                EigenMethod method = EigenMethod::tridiagonal_qr);

inline constexpr double kZeroEigenvalue = 1e-8;

/// Number of eigenvalues below 1e-8, i.e. connected components.
Eigen::Index component_count(const SpectralDecomposition& sd);

}  // namespace graphframe
