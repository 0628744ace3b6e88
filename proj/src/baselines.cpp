#include "graphframe/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "graphframe/denoise.hpp"
#include "graphframe/graph.hpp"

namespace graphframe {

namespace {

void check_length(Eigen::Index expected, const Signal& y, const char* who) {
    if (y.size() != expected)
        throw std::invalid_argument(std::string(who) + ": signal length " +
                                    std::to_string(y.size()) + " does not match " +
                                    std::to_string(expected) + " points");
}

void check_bandwidth(double h, const char* who) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument(std::string(who) + ": bandwidth must be > 0");
}

}  // namespace

Signal le_threshold(const SpectralDecomposition& sd, const Signal& y, double sigma, double t) {
    check_length(sd.n(), y, "le_threshold");
    if (!(sigma >= 0.0) || !(t >= 0.0))
        throw std::invalid_argument("le_threshold: sigma and t must be >= 0");
    const auto& phi = sd.eigenvectors();
    Eigen::VectorXd c = phi.transpose() * y;
    const double cut = sigma * t;
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = soft_threshold(c(i), cut);
    return phi * c;
}

Signal le_truncate(const SpectralDecomposition& sd, const Signal& y, Eigen::Index m) {
    check_length(sd.n(), y, "le_truncate");
    if (m < 1 || m > sd.n())
        throw std::out_of_range("le_truncate: m = " + std::to_string(m) + " outside 1.." +
                                std::to_string(sd.n()));
    const auto phi = sd.eigenvectors().leftCols(m);
    return phi * (phi.transpose() * y);
}

Eigen::MatrixXd gaussian_kernel(const PointSet& ps, double bandwidth) {
    check_bandwidth(bandwidth, "gaussian_kernel");
    const Eigen::MatrixXd dist = pairwise_distances(ps);
    const double denom = 2.0 * bandwidth * bandwidth;
    return (-dist.array().square() / denom).exp().matrix();
}

Signal nadaraya_watson(const PointSet& ps, const Signal& y, double bandwidth) {
    check_length(ps.n(), y, "nadaraya_watson");
    const Eigen::MatrixXd k = gaussian_kernel(ps, bandwidth);
    return (k * y).cwiseQuotient(k.rowwise().sum());
}

KernelRidgeFit kernel_ridge_fit(const PointSet& ps, const Signal& y, double bandwidth,
                                double ridge) {
    check_length(ps.n(), y, "kernel_ridge");
    if (!(ridge >= 0.0)) throw std::invalid_argument("kernel_ridge: ridge must be >= 0");
    const Eigen::MatrixXd k = gaussian_kernel(ps, bandwidth);
    Eigen::MatrixXd system = k;
    system.diagonal().array() += ridge * static_cast<double>(ps.n());
    Eigen::LLT<Eigen::MatrixXd> llt(system);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("kernel_ridge: kernel system is singular; use a ridge > 0 "
                                 "(duplicate points or too large a bandwidth)");
    KernelRidgeFit fit;
    fit.alpha = llt.solve(y);
    fit.estimate = k * fit.alpha;
    fit.residual = (system * fit.alpha - y).norm();
    return fit;
}

Signal kernel_ridge(const PointSet& ps, const Signal& y, double bandwidth, double ridge) {
    return kernel_ridge_fit(ps, y, bandwidth, ridge).estimate;
}

std::vector<double> log_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi >= lo) || count < 1)
        throw std::invalid_argument("log_grid: need 0 < lo <= hi and count >= 1");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double step = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) out[i] = lo * std::exp(step * i);
    out.back() = hi;
    return out;
}

std::vector<double> bandwidth_grid(double epsilon) {
    return log_grid(0.1 * epsilon, 10.0 * epsilon, 20);
}

std::vector<double> ridge_grid() {
    return log_grid(1e-6, 1.0, 13);
}

}  // namespace graphframe
