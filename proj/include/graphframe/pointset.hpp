#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace graphframe {

/// Values of a function sampled at the n points of a PointSet.
using Signal = Eigen::VectorXd;

/// Raised by the CSV readers; carries the 1-based line number of the bad row.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// n points in R^d, stored one point per row, plus optional latent coordinates
/// for synthetic data (e.g. the (u, v) parameters of the swiss roll).
class PointSet {
public:
    explicit PointSet(Eigen::MatrixXd points,
                      std::optional<Eigen::MatrixXd> latent = std::nullopt);

    Eigen::Index n() const noexcept { return points_.rows(); }
    Eigen::Index d() const noexcept { return points_.cols(); }

    const Eigen::MatrixXd& points() const noexcept { return points_; }
    auto point(Eigen::Index i) const { return points_.row(i); }

    bool has_latent() const noexcept { return latent_.has_value(); }
    const Eigen::MatrixXd& latent() const;

private:
    Eigen::MatrixXd points_;
    std::optional<Eigen::MatrixXd> latent_;
};

struct CsvOptions {
    bool header = false;  ///< skip the first line
};

PointSet load_points(const std::filesystem::path& path, CsvOptions opts = {});
void save_points(const std::filesystem::path& path, const PointSet& ps);

Signal load_signal(const std::filesystem::path& path, CsvOptions opts = {});
void save_signal(const std::filesystem::path& path, const Signal& s);

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

/// Latent (u, v) i.i.d. uniform on the unit square, embedded as
/// (theta cos theta, 21 v, theta sin theta) with theta = (3 pi / 2)(1 + 2u).
PointSet generate_swiss_roll(Eigen::Index n, std::uint64_t seed);

/// Map a latent (u, v) to its swiss-roll embedding.
Eigen::Vector3d swiss_roll_embed(double u, double v);

/// The flat unit square; latent coordinates equal the points.
PointSet generate_uniform_square(Eigen::Index n, std::uint64_t seed);

/// Piecewise constant benchmark target: 5 where v >= u, -3 where v < u.
Signal target_function(const PointSet& ps);

/// y = f + eps with eps i.i.d. N(0, sigma^2).
Signal add_noise(const Signal& f, double sigma, std::uint64_t seed,
                 std::uint64_t stream = 0);

}  // namespace graphframe
