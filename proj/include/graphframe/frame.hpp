#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

#include "graphframe/filterbank.hpp"
#include "graphframe/graph.hpp"
#include "graphframe/pointset.hpp"
#include "graphframe/spectral.hpp"

namespace graphframe {

/// Frame coefficients indexed (k, l): one row per scale, one column per vertex.
struct CoefficientArray {
    Eigen::MatrixXd values;

    Eigen::Index scales() const noexcept { return values.rows(); }
    Eigen::Index n() const noexcept { return values.cols(); }
    double squared_norm() const { return values.squaredNorm(); }
};

/// Parseval frame on a graph,
///
///   Psi_kl = sum_i sqrt(zeta_k(rho lambda_i)) Phi_i(x_l) Phi_i,
///
/// kept in factored form: the eigenbasis Phi plus the (Q+1) x n weight matrix
/// W_ki = sqrt(zeta_k(rho lambda_i)). Analysis and synthesis then cost
/// O((Q+1) n^2) and never form the (Q+1) n frame vectors.
///
/// Batch routines use the stacked layout where coefficient (k, l) sits in row
/// k * n + l and each column is one signal.
class ParsevalFrame {
public:
    ParsevalFrame(SpectralDecomposition basis, const FilterBank& filters);

    Eigen::Index n() const noexcept { return basis_.n(); }
    int num_bands() const noexcept { return static_cast<int>(weights_.rows()); }
    Eigen::Index size() const noexcept { return num_bands() * n(); }

    const SpectralDecomposition& basis() const noexcept { return basis_; }
    const Eigen::MatrixXd& weights() const noexcept { return weights_; }
    /// ||Psi_kl||, (Q+1) x n.
    const Eigen::MatrixXd& norms() const noexcept { return norms_; }

    /// Bands whose frame elements all have zero norm (no eigenvalue in support).
    std::vector<int> empty_bands() const;

    CoefficientArray analyze(const Signal& f) const;
    Signal synthesize(const CoefficientArray& c) const;

    /// (Q+1) n x m coefficients of the m columns of `signals`.
    Eigen::MatrixXd analyze_batch(const Eigen::MatrixXd& signals) const;
    /// n x m signals from stacked (Q+1) n x m coefficients.
    Eigen::MatrixXd synthesize_batch(const Eigen::MatrixXd& coefficients) const;

    /// The frame vector Psi_kl as an explicit n-vector.
    Signal element(int k, Eigen::Index l) const;
    /// n x (Q+1) n matrix whose column k * n + l is Psi_kl (the synthesis matrix T*).
    Eigen::MatrixXd materialize() const;

private:
    void check_band(int k) const;

    SpectralDecomposition basis_;
    Eigen::MatrixXd weights_;
    Eigen::MatrixXd norms_;
};

/// Convenience: fit the filter bank to the basis' lambda_max, then build.
ParsevalFrame build_frame(SpectralDecomposition basis, FilterBankParams params = {});

/// max |S - I| with S = sum_kl Psi_kl Psi_kl^T = Phi diag(sum_k zeta_k) Phi^T.
double frame_operator_residual(const ParsevalFrame& fr);

struct GramianCheck {
    double residual;  ///< max |U^2 - U|
    double trace;     ///< trace(U); n for a Parseval frame
    Eigen::MatrixXd gramian;
};

inline constexpr double kGramianEntryLimit = 4e7;

/// Dense Gramian U = T T*; throws std::length_error above kGramianEntryLimit entries.
GramianCheck gramian_projector_residual(const ParsevalFrame& fr);

struct LocalizationProfile {
    bool zero_norm = false;
    /// peak[r] = max |Psi_kl(x)| / ||Psi_kl|| over vertices x at hop distance r.
    std::vector<double> peak;
};

LocalizationProfile localization_profile(const ParsevalFrame& fr, const WeightedGraph& g, int k,
                                         Eigen::Index l);

/// CSV with header "k,l,value".
void export_coefficients(const std::filesystem::path& path, const CoefficientArray& c);

}  // namespace graphframe
