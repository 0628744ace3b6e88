#include "graphframe/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphframe/rng.hpp"

namespace graphframe {

std::string_view to_string(ThresholdRule rule) {
    return rule == ThresholdRule::universal ? "universal" : "manual";
}

ThresholdRule parse_threshold_rule(std::string_view name) {
    if (name == "universal") return ThresholdRule::universal;
    if (name == "manual") return ThresholdRule::manual;
    throw std::invalid_argument("unknown threshold rule '" + std::string(name) +
                                "' (expected universal or manual)");
}

ThresholdPolicy ThresholdPolicy::universal(double sigma, Eigen::Index n) {
    return {sigma, std::sqrt(2.0 * std::log(static_cast<double>(n))), ThresholdRule::universal};
}

ThresholdPolicy ThresholdPolicy::manual(double sigma, double t) {
    return {sigma, t, ThresholdRule::manual};
}

void ThresholdPolicy::validate() const {
    if (!(sigma >= 0.0)) throw std::invalid_argument("threshold policy: sigma must be >= 0");
    if (!(t >= 0.0)) throw std::invalid_argument("threshold policy: t must be >= 0");
}

Eigen::VectorXd stacked_norms(const ParsevalFrame& fr) {
    Eigen::VectorXd out(fr.size());
    for (int k = 0; k < fr.num_bands(); ++k)
        out.segment(k * fr.n(), fr.n()) = fr.norms().row(k).transpose();
    return out;
}

Eigen::MatrixXd threshold_coefficients(const ParsevalFrame& fr, const Eigen::MatrixXd& coeffs,
                                       double sigma, double t) {
    if (coeffs.rows() != fr.size())
        throw std::invalid_argument("threshold: coefficient count does not match the frame");
    const Eigen::VectorXd c = stacked_norms(fr) * (sigma * t);
    Eigen::MatrixXd out(coeffs.rows(), coeffs.cols());
    for (Eigen::Index j = 0; j < coeffs.cols(); ++j)
        for (Eigen::Index i = 0; i < coeffs.rows(); ++i)
            out(i, j) = soft_threshold(coeffs(i, j), c(i));
    return out;
}

DenoiseReport denoise(const ParsevalFrame& fr, const Signal& y, const ThresholdPolicy& pol,
                      const std::optional<Signal>& truth) {
    pol.validate();
    if (y.size() != fr.n())
        throw std::invalid_argument("denoise: signal length " + std::to_string(y.size()) +
                                    " does not match frame dimension " + std::to_string(fr.n()));
    if (truth && truth->size() != fr.n())
        throw std::invalid_argument("denoise: ground truth length does not match");

    const Eigen::MatrixXd shrunk = threshold_coefficients(fr, fr.analyze_batch(y), pol.sigma, pol.t);
    DenoiseReport r;
    r.policy = pol;
    r.kept = static_cast<std::size_t>((shrunk.array() != 0.0).count());
    r.estimate = fr.synthesize_batch(shrunk).col(0);
    if (truth) {
        r.squared_error = (r.estimate - *truth).squaredNorm();
        r.mse = *r.squared_error / static_cast<double>(fr.n());
    }
    return r;
}

nlohmann::json to_json(const DenoiseReport& r, std::optional<std::string> estimate_path) {
    nlohmann::json j;
    j["n"] = r.estimate.size();
    j["kept"] = r.kept;
    j["policy"] = {{"sigma", r.policy.sigma}, {"t", r.policy.t}, {"rule", to_string(r.policy.rule)}};
    if (r.mse) j["mse"] = *r.mse;
    if (r.squared_error) j["squared_error"] = *r.squared_error;
    if (estimate_path)
        j["estimate_csv"] = *estimate_path;
    else
        j["estimate"] = std::vector<double>(r.estimate.data(), r.estimate.data() + r.estimate.size());
    return j;
}

OracleSelection oracle_keep_kill(const ParsevalFrame& fr, const Signal& f, double sigma) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("oracle: sigma must be >= 0");
    const CoefficientArray a = fr.analyze(f);
    OracleSelection sel;
    sel.keep.resize(fr.num_bands(), fr.n());
    for (Eigen::Index l = 0; l < fr.n(); ++l)
        for (int k = 0; k < fr.num_bands(); ++k) {
            const double a2 = a.values(k, l) * a.values(k, l);
            const double noise = sigma * sigma * fr.norms()(k, l) * fr.norms()(k, l);
            sel.keep(k, l) = a2 != 0.0 && a2 >= noise;
            sel.bound += std::min(a2, noise);
        }
    return sel;
}

double oracle_bound(const ParsevalFrame& fr, const Signal& f, double sigma) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("oracle: sigma must be >= 0");
    const Eigen::ArrayXXd a2 = fr.analyze(f).values.array().square();
    const Eigen::ArrayXXd noise = fr.norms().array().square() * (sigma * sigma);
    return a2.min(noise).sum();
}

double estimate_sigma(const ParsevalFrame& fr, const Signal& y) {
    const CoefficientArray b = fr.analyze(y);
    for (int k = fr.num_bands() - 1; k >= 0; --k) {
        std::vector<double> normalized;
        for (Eigen::Index l = 0; l < fr.n(); ++l)
            if (fr.norms()(k, l) > 1e-12)
                normalized.push_back(std::abs(b.values(k, l)) / fr.norms()(k, l));
        if (normalized.empty()) continue;
        auto mid = normalized.begin() + normalized.size() / 2;
        std::nth_element(normalized.begin(), mid, normalized.end());
        double median = *mid;
        if (normalized.size() % 2 == 0) {
            median = 0.5 * (median + *std::max_element(normalized.begin(), mid));
        }
        return median / 0.6745;
    }
    throw std::runtime_error("estimate_sigma: frame has no nonzero elements");
}

namespace {

MonteCarloCheck summarize(const std::vector<double>& losses, double bound) {
    const double m = static_cast<double>(losses.size());
    double mean = 0.0;
    for (double x : losses) mean += x;
    mean /= m;
    double var = 0.0;
    for (double x : losses) var += (x - mean) * (x - mean);
    var /= (m - 1.0);
    MonteCarloCheck out;
    out.risk = mean;
    out.standard_error = std::sqrt(var / m);
    out.bound = bound;
    out.pass = out.risk - 3.0 * out.standard_error <= bound;
    return out;
}

}  // namespace

double threshold_risk_bound(double mu, double delta) {
    if (!(delta > 0.0 && delta <= 0.5))
        throw std::invalid_argument("threshold risk: delta must lie in (0, 1/2]");
    return (2.0 * std::log(1.0 / delta) + 1.0) * (delta + std::min(1.0, mu * mu));
}

MonteCarloCheck verify_threshold_risk(double mu, double delta, std::size_t trials, std::uint64_t seed) {
    const double bound = threshold_risk_bound(mu, delta);
    if (trials < 10000) throw std::invalid_argument("threshold risk check: need at least 1e4 trials");
    const double t = std::sqrt(2.0 * std::log(1.0 / delta));
    Rng rng(seed);
    std::vector<double> losses(trials);
    for (auto& loss : losses) {
        const double err = soft_threshold(mu + rng.normal(), t) - mu;
        loss = err * err;
    }
    return summarize(losses, bound);
}

double oracle_inequality_bound(const ParsevalFrame& fr, const Signal& f, double sigma) {
    const double logn = std::log(static_cast<double>(fr.n()));
    return (2.0 * logn + 1.0) * (sigma * sigma + oracle_bound(fr, f, sigma));
}

MonteCarloCheck verify_oracle_inequality(const ParsevalFrame& fr, const Signal& f, double sigma,
                                 std::size_t trials, std::uint64_t seed) {
    if (trials < 100) throw std::invalid_argument("oracle inequality check: need at least 100 trials");
    if (f.size() != fr.n()) throw std::invalid_argument("oracle inequality check: length mismatch");
    const auto pol = ThresholdPolicy::universal(sigma, fr.n());
    Eigen::MatrixXd noisy(fr.n(), static_cast<Eigen::Index>(trials));
    for (std::size_t r = 0; r < trials; ++r) noisy.col(r) = add_noise(f, sigma, seed, r + 1);
    const Eigen::MatrixXd est =
        fr.synthesize_batch(threshold_coefficients(fr, fr.analyze_batch(noisy), pol.sigma, pol.t));
    std::vector<double> losses(trials);
    for (std::size_t r = 0; r < trials; ++r) losses[r] = (est.col(r) - f).squaredNorm();
    return summarize(losses, oracle_inequality_bound(fr, f, sigma));
}

}  // namespace graphframe
