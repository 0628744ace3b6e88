#include "graphframe/pointset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "graphframe/rng.hpp"

namespace graphframe {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

PointSet::PointSet(Eigen::MatrixXd points, std::optional<Eigen::MatrixXd> latent)
    : points_(std::move(points)), latent_(std::move(latent)) {
    if (points_.rows() < 1 || points_.cols() < 1)
        throw std::invalid_argument("PointSet: need at least one point with one coordinate");
    if (!points_.allFinite())
        throw std::invalid_argument("PointSet: non-finite coordinate");
    if (latent_ && latent_->rows() != points_.rows())
        throw std::invalid_argument("PointSet: latent coordinates must have one row per point");
}

const Eigen::MatrixXd& PointSet::latent() const {
    if (!latent_) throw std::logic_error("PointSet: no latent coordinates");
    return *latent_;
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_field(std::string_view field, std::size_t line) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(line, "cannot parse '" + std::string(field) + "' as a number");
    if (!std::isfinite(v)) throw ParseError(line, "non-finite value");
    return v;
}

// Rows of comma-separated numbers; blank lines are skipped.
std::vector<std::vector<double>> read_rows(const std::filesystem::path& path, CsvOptions opts) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string text;
    std::size_t line = 0;
    std::size_t width = 0;
    while (std::getline(in, text)) {
        ++line;
        if (line == 1 && opts.header) continue;
        std::string_view sv = trim(text);
        if (sv.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            auto comma = sv.find(',', start);
            row.push_back(parse_field(sv.substr(start, comma - start), line));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (width == 0) width = row.size();
        if (row.size() != width)
            throw ParseError(line, "expected " + std::to_string(width) + " columns, found " +
                                       std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(path.string() + ": no data rows");
    return rows;
}

}  // namespace

PointSet load_points(const std::filesystem::path& path, CsvOptions opts) {
    auto rows = read_rows(path, opts);
    Eigen::MatrixXd pts(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) pts(i, j) = rows[i][j];
    return PointSet(std::move(pts));
}

void save_points(const std::filesystem::path& path, const PointSet& ps) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (Eigen::Index i = 0; i < ps.n(); ++i) {
        for (Eigen::Index j = 0; j < ps.d(); ++j) {
            if (j) out << ',';
            out << format_double(ps.points()(i, j));
        }
        out << '\n';
    }
}

Signal load_signal(const std::filesystem::path& path, CsvOptions opts) {
    auto rows = read_rows(path, opts);
    if (rows.front().size() != 1)
        throw ParseError(opts.header ? 2 : 1, "signal files hold one value per row");
    Signal s(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) s(i) = rows[i][0];
    return s;
}

void save_signal(const std::filesystem::path& path, const Signal& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (Eigen::Index i = 0; i < s.size(); ++i) out << format_double(s(i)) << '\n';
}

Eigen::Vector3d swiss_roll_embed(double u, double v) {
    const double theta = 1.5 * std::numbers::pi * (1.0 + 2.0 * u);
    return {theta * std::cos(theta), 21.0 * v, theta * std::sin(theta)};
}

PointSet generate_swiss_roll(Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_swiss_roll: n must be >= 1");
    Rng rng(seed);
    Eigen::MatrixXd latent(n, 2);
    Eigen::MatrixXd pts(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        latent(i, 0) = rng.uniform();
        latent(i, 1) = rng.uniform();
        pts.row(i) = swiss_roll_embed(latent(i, 0), latent(i, 1)).transpose();
    }
    return PointSet(std::move(pts), std::move(latent));
}

PointSet generate_uniform_square(Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_uniform_square: n must be >= 1");
    Rng rng(seed);
    Eigen::MatrixXd pts(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        pts(i, 0) = rng.uniform();
        pts(i, 1) = rng.uniform();
    }
    Eigen::MatrixXd latent = pts;
    return PointSet(std::move(pts), std::move(latent));
}

Signal target_function(const PointSet& ps) {
    if (!ps.has_latent())
        throw std::invalid_argument("target_function: point set has no latent coordinates");
    const auto& lat = ps.latent();
    if (lat.cols() < 2) throw std::invalid_argument("target_function: need (u, v) latent pairs");
    Signal f(ps.n());
    for (Eigen::Index i = 0; i < ps.n(); ++i) f(i) = lat(i, 1) >= lat(i, 0) ? 5.0 : -3.0;
    return f;
}

Signal add_noise(const Signal& f, double sigma, std::uint64_t seed, std::uint64_t stream) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("add_noise: sigma must be >= 0");
    if (sigma == 0.0) return f;
    Rng rng(seed, stream);
    Signal y = f;
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) += rng.normal(sigma);
    return y;
}

}  // namespace graphframe
