#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "graphframe/filterbank.hpp"
#include "graphframe/graph.hpp"
#include "graphframe/pointset.hpp"
#include "graphframe/spectral.hpp"

namespace graphframe {

enum class Method {
    frame_threshold,       ///< frth
    eigenmap_threshold,    ///< leth
    eigenmap_truncate,     ///< letr
    nadaraya_watson,       ///< nw
    kernel_ridge,          ///< krr
};

std::string_view to_string(Method m);
Method parse_method(std::string_view name);
bool uses_graph(Method m);

/// Comma-separated list parsing for the CLI ("frth,leth,letr").
std::vector<std::string> split_list(std::string_view text);

/// 0, 0.1, ..., 5.0
std::vector<double> default_threshold_grid();

struct ExperimentSpec {
    Eigen::Index n = 500;
    double sigma = 1.0;
    std::uint64_t seed = 7;
    int trials = 10;
    std::vector<GraphKind> graphs{GraphKind::knn, GraphKind::weighted_knn, GraphKind::epsilon,
                                  GraphKind::weighted_epsilon, GraphKind::complete_gaussian};
    std::vector<LaplacianKind> laplacians{LaplacianKind::unnormalized, LaplacianKind::normalized};
    std::vector<Method> methods{Method::frame_threshold, Method::eigenmap_threshold,
                                Method::eigenmap_truncate};
    FilterBankParams filters{};
    std::vector<double> thresholds = default_threshold_grid();
    EigenMethod eigen = EigenMethod::tridiagonal_qr;
    std::optional<std::filesystem::path> output_dir;

    void validate() const;
};

struct SweepPoint {
    double param;
    double mse_mean;
    double mse_std;
};

struct SweepCurve {
    std::vector<SweepPoint> points;

    /// First grid point attaining the minimum mean MSE.
    std::size_t argmin_index() const;
    const SweepPoint& best() const { return points.at(argmin_index()); }
    /// CSV with header "param,mse_mean,mse_std".
    void write_csv(const std::filesystem::path& path) const;
};

/// One method with its tuning parameter left open: maps a parameter value to
/// the n x trials matrix of estimates, one column per noise realization.
struct Pipeline {
    std::string name;
    std::function<Eigen::MatrixXd(double)> estimate;
};

/// Per-point MSE (mean and sample std over trials) of the pipeline at each grid value.
SweepCurve sweep_curve(const Pipeline& pipeline, std::span<const double> grid, const Signal& truth);

struct CellResult {
    std::string graph;      ///< graph kind, or "ambient" for kernel methods
    std::string laplacian;  ///< u / n, or "none"
    Method method;
    double min_mse = 0.0;
    double argmin = 0.0;
    std::optional<double> universal_mse;  ///< thresholding methods, t = sqrt(2 ln n)
    std::optional<double> ridge;          ///< kernel ridge: ridge of the best curve
    SweepCurve curve;
    std::string curve_file;
    std::optional<std::string> error;
};

struct ResultTable {
    ExperimentSpec spec;
    std::vector<CellResult> cells;

    const CellResult* find(std::string_view graph, std::string_view laplacian, Method m) const;
    nlohmann::json to_json() const;
};

/// Generate the swiss roll, draw `trials` noise realizations shared by every
/// cell, sweep every (graph, Laplacian, method) cell, and write table.json and
/// curves/*.csv when an output directory is set.
ResultTable run_benchmark(const ExperimentSpec& spec);

}  // namespace graphframe
