#pragma once

#include <filesystem>
#include <span>

#include <Eigen/Dense>

namespace graphframe {

/// Smooth descent from 1 to 0 on [0, 1]: h(s) = 1 - s^4 (35 - 84 s + 70 s^2 - 20 s^3).
/// First three derivatives vanish at both ends.
double smoothstep7(double s);

/// Plateau profile for base b: 1 on [0, 1/b], 0 on [1, inf), C^3 in between.
double plateau(double u, double base = 2.0);

struct FilterBankParams {
    double base = 2.0;  ///< b > 1
    int max_scale = 7;  ///< Q; bands zeta_0 .. zeta_Q
};

/// Multiscale bandpass filters
///   zeta_0(x) = g(x),  zeta_k(x) = g(b^-k x) - g(b^-(k-1) x)  (k >= 1)
/// evaluated on eigenvalues rescaled by rho.
class FilterBank {
public:
    FilterBank(FilterBankParams params, double rescale);

    double base() const noexcept { return params_.base; }
    int max_scale() const noexcept { return params_.max_scale; }
    int num_bands() const noexcept { return params_.max_scale + 1; }
    double rescale() const noexcept { return rescale_; }

    double g(double u) const { return plateau(u, params_.base); }
    double zeta(int k, double x) const;
    /// zeta_k(rho * lambda)
    double zeta_at_eigenvalue(int k, double lambda) const;

    /// Upper end b^(Q-1) of the range where the bands sum to one.
    double covered_limit() const;

    /// Rows (x, zeta_0(x), ..., zeta_Q(x)) on `points` equally spaced samples
    /// of [0, x_max], header "x,zeta0,...".
    void export_curves(const std::filesystem::path& path, double x_max, int points) const;

private:
    FilterBankParams params_;
    double rescale_;
};

/// rho = b^(Q-1) / lambda_max so the top eigenvalue lands where zeta_Q = 1;
/// rho = 1 when lambda_max == 0.
FilterBank fit_rescale(FilterBankParams params, double lambda_max);

/// max over x in `grid` of |sum_k zeta_k(x) - 1| (no rescaling applied).
double partition_check(const FilterBank& fb, std::span<const double> grid);

}  // namespace graphframe
