#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include <Eigen/Dense>
#include "json.hpp"

#include "graphframe/frame.hpp"
#include "graphframe/pointset.hpp"

namespace graphframe {

/// sgn(z) (|z| - c)_+
inline double soft_threshold(double z, double c) {
    const double mag = std::abs(z) - c;
    if (mag <= 0.0) return 0.0;
    return z < 0.0 ? -mag : mag;
}

enum class ThresholdRule { universal, manual };

std::string_view to_string(ThresholdRule rule);
ThresholdRule parse_threshold_rule(std::string_view name);

/// Element-adapted thresholds c_kl = sigma * ||Psi_kl|| * t.
struct ThresholdPolicy {
    double sigma = 1.0;
    double t = 0.0;
    ThresholdRule rule = ThresholdRule::manual;

    /// t = sqrt(2 ln n)
    static ThresholdPolicy universal(double sigma, Eigen::Index n);
    static ThresholdPolicy manual(double sigma, double t);
    void validate() const;
};

struct DenoiseReport {
    Signal estimate;
    std::optional<double> mse;            ///< ||f_hat - f||^2 / n, when the truth is known
    std::optional<double> squared_error;  ///< ||f_hat - f||^2
    std::size_t kept = 0;                 ///< coefficients surviving the threshold
    ThresholdPolicy policy;
};

/// f_hat = T* S(T y, c).
DenoiseReport denoise(const ParsevalFrame& fr, const Signal& y, const ThresholdPolicy& pol,
                      const std::optional<Signal>& truth = std::nullopt);

/// `estimate` is replaced by `estimate_path` when given (CSV reference).
nlohmann::json to_json(const DenoiseReport& r,
                       std::optional<std::string> estimate_path = std::nullopt);

/// Soft-threshold stacked coefficients ((Q+1) n x m) with c_kl = sigma ||Psi_kl|| t.
Eigen::MatrixXd threshold_coefficients(const ParsevalFrame& fr, const Eigen::MatrixXd& coeffs,
                                       double sigma, double t);

/// Frame element norms in the stacked (k * n + l) order.
Eigen::VectorXd stacked_norms(const ParsevalFrame& fr);

struct OracleSelection {
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> keep;  ///< (Q+1) x n
    double bound = 0.0;
    std::size_t kept() const { return static_cast<std::size_t>(keep.count()); }
};

/// Keep (k, l) iff <f, Psi_kl>^2 >= sigma^2 ||Psi_kl||^2 and the coefficient is
/// nonzero. Bound = sum min(<f, Psi_kl>^2, sigma^2 ||Psi_kl||^2).
OracleSelection oracle_keep_kill(const ParsevalFrame& fr, const Signal& f, double sigma);

/// OB(f) = sum_kl min(<f, Psi_kl>^2, sigma^2 ||Psi_kl||^2).
double oracle_bound(const ParsevalFrame& fr, const Signal& f, double sigma);

/// MAD estimate of sigma from the normalized coefficients of the finest
/// nonempty band: median(|b_kl| / ||Psi_kl||) / 0.6745.
double estimate_sigma(const ParsevalFrame& fr, const Signal& y);

struct MonteCarloCheck {
    double risk = 0.0;            ///< empirical mean of the loss
    double standard_error = 0.0;
    double bound = 0.0;
    bool pass = false;            ///< risk - 3 SE <= bound
};

/// E (S(X, t) - mu)^2 <= (2 ln(1/delta) + 1)(delta + min(1, mu^2)) for
/// X ~ N(mu, 1), t = sqrt(2 ln(1/delta)).
double threshold_risk_bound(double mu, double delta);
MonteCarloCheck verify_threshold_risk(double mu, double delta, std::size_t trials, std::uint64_t seed);

/// E ||f_hat - f||^2 <= (2 ln n + 1)(sigma^2 + OB(f)) with the universal threshold.
double oracle_inequality_bound(const ParsevalFrame& fr, const Signal& f, double sigma);
MonteCarloCheck verify_oracle_inequality(const ParsevalFrame& fr, const Signal& f, double sigma,
                                 std::size_t trials, std::uint64_t seed);

}  // namespace graphframe
