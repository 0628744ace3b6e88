#include "graphframe/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace graphframe {

std::string_view to_string(LaplacianKind kind) {
    return kind == LaplacianKind::unnormalized ? "u" : "n";
}

LaplacianKind parse_laplacian_kind(std::string_view name) {
    if (name == "u" || name == "unnormalized") return LaplacianKind::unnormalized;
    if (name == "n" || name == "normalized") return LaplacianKind::normalized;
    throw std::invalid_argument("unknown Laplacian kind '" + std::string(name) +
                                "' (expected u or n)");
}

Laplacian laplacian(const WeightedGraph& g, LaplacianKind kind) {
    const Eigen::Index n = g.n();
    const auto& a = g.adjacency();
    const auto& deg = g.degrees();
    Eigen::MatrixXd l(n, n);
    if (kind == LaplacianKind::unnormalized) {
        l = -a;
        l.diagonal() = deg;
    } else {
        Eigen::VectorXd inv_sqrt(n);
        for (Eigen::Index i = 0; i < n; ++i) inv_sqrt(i) = deg(i) > 0.0 ? 1.0 / std::sqrt(deg(i)) : 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i) l(i, j) = -inv_sqrt(i) * a(i, j) * inv_sqrt(j);
        l.diagonal().setOnes();
    }
    return {std::move(l), kind};
}

SpectralDecomposition::SpectralDecomposition(Eigen::VectorXd eigenvalues,
                                             Eigen::MatrixXd eigenvectors)
    : eigenvalues_(std::move(eigenvalues)), eigenvectors_(std::move(eigenvectors)) {
    if (eigenvalues_.size() < 1 || eigenvectors_.rows() != eigenvalues_.size() ||
        eigenvectors_.cols() != eigenvalues_.size())
        throw std::invalid_argument("SpectralDecomposition: shape mismatch");
}

double SpectralDecomposition::orthonormality_error() const {
    const Eigen::MatrixXd gram = eigenvectors_.transpose() * eigenvectors_;
    return (gram - Eigen::MatrixXd::Identity(n(), n())).cwiseAbs().maxCoeff();
}

double SpectralDecomposition::reconstruction_error(const Eigen::MatrixXd& m) const {
    const Eigen::MatrixXd rec =
        eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.transpose();
    return (rec - m).cwiseAbs().maxCoeff();
}

ConvergenceError::ConvergenceError(int sweeps, double residual)
    : std::runtime_error("eigensolver did not converge after " + std::to_string(sweeps) +
                         " sweeps (off-diagonal norm " + std::to_string(residual) + ")"),
      residual_(residual) {}

namespace {

void check_square(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw std::invalid_argument("eigensolver: expected a nonempty square matrix");
}

// Sort ascending and fix the sign of every eigenvector.
SpectralDecomposition canonicalize(const Eigen::VectorXd& values, const Eigen::MatrixXd& vectors) {
    const Eigen::Index n = values.size();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });
    Eigen::VectorXd sorted(n);
    Eigen::MatrixXd vecs(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        sorted(c) = values(order[c]);
        auto col = vectors.col(order[c]);
        Eigen::Index arg = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::abs(col(i)) > best) {
                best = std::abs(col(i));
                arg = i;
            }
        vecs.col(c) = col(arg) < 0.0 ? Eigen::VectorXd(-col) : Eigen::VectorXd(col);
    }
    return {std::move(sorted), std::move(vecs)};
}

double off_diagonal_norm(const Eigen::MatrixXd& a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

}  // namespace

SpectralDecomposition jacobi_eigen(const Eigen::MatrixXd& m, JacobiOptions opts) {
    check_square(m);
    const Eigen::Index n = m.rows();
    Eigen::MatrixXd a = 0.5 * (m + m.transpose());
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double target = opts.relative_tolerance * a.norm();

    double off = off_diagonal_norm(a);
    int sweep = 0;
    while (off > target) {
        if (sweep == opts.max_sweeps) throw ConvergenceError(sweep, off);
        ++sweep;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Rotation annihilating a(p, q) (Golub & Van Loan, sym.schur2).
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const double app = a(p, p);
                const double aqq = a(q, q);
                double* colp = a.col(p).data();
                double* colq = a.col(q).data();
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = colp[k];
                    const double akq = colq[k];
                    colp[k] = c * akp - s * akq;
                    colq[k] = s * akp + c * akq;
                }
                // Rows follow by symmetry; the 2x2 block is set exactly below.
                for (Eigen::Index k = 0; k < n; ++k) {
                    a(p, k) = colp[k];
                    a(q, k) = colq[k];
                }
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                double* vp = v.col(p).data();
                double* vq = v.col(q).data();
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double x = vp[k];
                    const double y = vq[k];
                    vp[k] = c * x - s * y;
                    vq[k] = s * x + c * y;
                }
            }
        }
        off = off_diagonal_norm(a);
    }
    return canonicalize(a.diagonal(), v);
}

SpectralDecomposition decompose_symmetric(const Eigen::MatrixXd& m, EigenMethod method) {
    check_square(m);
    if (method == EigenMethod::jacobi) return jacobi_eigen(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError(0, std::numeric_limits<double>::quiet_NaN());
    return canonicalize(solver.eigenvalues(), solver.eigenvectors());
}

SpectralDecomposition decompose(const Laplacian& lap, EigenMethod method) {
    auto sd = decompose_symmetric(lap.matrix, method);
    Eigen::VectorXd values = sd.eigenvalues();
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (values(i) < 0.0 && values(i) >= -1e-10) values(i) = 0.0;
    return {std::move(values), sd.eigenvectors()};
}

Eigen::Index component_count(const SpectralDecomposition& sd) {
    return (sd.eigenvalues().array() < kZeroEigenvalue).count();
}

}  // namespace graphframe
