#include "graphframe/frame.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace graphframe {

ParsevalFrame::ParsevalFrame(SpectralDecomposition basis, const FilterBank& filters)
    : basis_(std::move(basis)) {
    const Eigen::Index n = basis_.n();
    const auto& lambda = basis_.eigenvalues();
    weights_.resize(filters.num_bands(), n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double ev = std::max(lambda(i), 0.0);
        for (int k = 0; k < filters.num_bands(); ++k)
            weights_(k, i) = std::sqrt(filters.zeta_at_eigenvalue(k, ev));
    }
    // ||Psi_kl||^2 = sum_i zeta_k(rho lambda_i) Phi_i(x_l)^2
    const Eigen::MatrixXd phi_sq = basis_.eigenvectors().array().square().matrix();
    const Eigen::MatrixXd zeta = weights_.array().square().matrix();
    norms_ = (zeta * phi_sq.transpose()).cwiseMax(0.0).cwiseSqrt();
}

std::vector<int> ParsevalFrame::empty_bands() const {
    std::vector<int> out;
    for (int k = 0; k < num_bands(); ++k)
        if (weights_.row(k).isZero(0.0)) out.push_back(k);
    return out;
}

void ParsevalFrame::check_band(int k) const {
    if (k < 0 || k >= num_bands())
        throw std::out_of_range("frame: scale " + std::to_string(k) + " outside 0.." +
                                std::to_string(num_bands() - 1));
}

Eigen::MatrixXd ParsevalFrame::analyze_batch(const Eigen::MatrixXd& signals) const {
    if (signals.rows() != n())
        throw std::invalid_argument("analyze: signal length " + std::to_string(signals.rows()) +
                                    " does not match frame dimension " + std::to_string(n()));
    const auto& phi = basis_.eigenvectors();
    const Eigen::MatrixXd spectral = phi.transpose() * signals;
    Eigen::MatrixXd out(size(), signals.cols());
    Eigen::MatrixXd scaled(n(), signals.cols());
    for (int k = 0; k < num_bands(); ++k) {
        scaled.noalias() = weights_.row(k).transpose().asDiagonal() * spectral;
        out.middleRows(k * n(), n()).noalias() = phi * scaled;
    }
    return out;
}

Eigen::MatrixXd ParsevalFrame::synthesize_batch(const Eigen::MatrixXd& coefficients) const {
    if (coefficients.rows() != size())
        throw std::invalid_argument("synthesize: expected " + std::to_string(size()) +
                                    " coefficients per signal, got " +
                                    std::to_string(coefficients.rows()));
    const auto& phi = basis_.eigenvectors();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n(), coefficients.cols());
    Eigen::MatrixXd spectral(n(), coefficients.cols());
    for (int k = 0; k < num_bands(); ++k) {
        spectral.noalias() = phi.transpose() * coefficients.middleRows(k * n(), n());
        acc.noalias() += weights_.row(k).transpose().asDiagonal() * spectral;
    }
    return phi * acc;
}

CoefficientArray ParsevalFrame::analyze(const Signal& f) const {
    const Eigen::MatrixXd stacked = analyze_batch(f);
    CoefficientArray c;
    c.values.resize(num_bands(), n());
    for (int k = 0; k < num_bands(); ++k)
        c.values.row(k) = stacked.col(0).segment(k * n(), n()).transpose();
    return c;
}

Signal ParsevalFrame::synthesize(const CoefficientArray& c) const {
    if (c.values.rows() != num_bands() || c.values.cols() != n())
        throw std::invalid_argument("synthesize: coefficient array is " +
                                    std::to_string(c.values.rows()) + "x" +
                                    std::to_string(c.values.cols()) + ", frame expects " +
                                    std::to_string(num_bands()) + "x" + std::to_string(n()));
    Eigen::VectorXd stacked(size());
    for (int k = 0; k < num_bands(); ++k) stacked.segment(k * n(), n()) = c.values.row(k).transpose();
    return synthesize_batch(stacked).col(0);
}

Signal ParsevalFrame::element(int k, Eigen::Index l) const {
    check_band(k);
    if (l < 0 || l >= n()) throw std::out_of_range("frame: vertex index out of range");
    const auto& phi = basis_.eigenvectors();
    const Eigen::VectorXd coeff = weights_.row(k).transpose().cwiseProduct(phi.row(l).transpose());
    return phi * coeff;
}

Eigen::MatrixXd ParsevalFrame::materialize() const {
    const auto& phi = basis_.eigenvectors();
    Eigen::MatrixXd out(n(), size());
    for (int k = 0; k < num_bands(); ++k)
        out.middleCols(k * n(), n()).noalias() =
            phi * weights_.row(k).transpose().asDiagonal() * phi.transpose();
    return out;
}

ParsevalFrame build_frame(SpectralDecomposition basis, FilterBankParams params) {
    const FilterBank fb = fit_rescale(params, std::max(basis.lambda_max(), 0.0));
    return ParsevalFrame(std::move(basis), fb);
}

double frame_operator_residual(const ParsevalFrame& fr) {
    const auto& phi = fr.basis().eigenvectors();
    const Eigen::VectorXd total = fr.weights().array().square().colwise().sum().transpose();
    const Eigen::MatrixXd s = phi * total.asDiagonal() * phi.transpose();
    return (s - Eigen::MatrixXd::Identity(fr.n(), fr.n())).cwiseAbs().maxCoeff();
}

GramianCheck gramian_projector_residual(const ParsevalFrame& fr) {
    const double entries = static_cast<double>(fr.size()) * static_cast<double>(fr.size());
    if (entries > kGramianEntryLimit)
        throw std::length_error("gramian: " + std::to_string(fr.size()) + "^2 entries exceed the " +
                                "dense limit; use a smaller graph or fewer scales");
    const Eigen::MatrixXd synth = fr.materialize();
    GramianCheck out;
    out.gramian = synth.transpose() * synth;
    const Eigen::MatrixXd sq = out.gramian * out.gramian;
    out.residual = (sq - out.gramian).cwiseAbs().maxCoeff();
    out.trace = out.gramian.trace();
    return out;
}

LocalizationProfile localization_profile(const ParsevalFrame& fr, const WeightedGraph& g, int k,
                                         Eigen::Index l) {
    if (g.n() != fr.n()) throw std::invalid_argument("localization: graph and frame sizes differ");
    LocalizationProfile out;
    const Signal psi = fr.element(k, l);
    const double norm = fr.norms()(k, l);
    if (norm == 0.0) {
        out.zero_norm = true;
        return out;
    }
    const auto hops = hop_distances(g, l);
    std::size_t reach = 0;
    for (auto h : hops)
        if (h != kUnreachable) reach = std::max(reach, h);
    out.peak.assign(reach + 1, 0.0);
    for (Eigen::Index x = 0; x < fr.n(); ++x)
        if (hops[x] != kUnreachable)
            out.peak[hops[x]] = std::max(out.peak[hops[x]], std::abs(psi(x)) / norm);
    return out;
}

void export_coefficients(const std::filesystem::path& path, const CoefficientArray& c) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "k,l,value\n";
    for (Eigen::Index k = 0; k < c.values.rows(); ++k)
        for (Eigen::Index l = 0; l < c.values.cols(); ++l)
            out << k << ',' << l << ',' << format_double(c.values(k, l)) << '\n';
}

}  // namespace graphframe
