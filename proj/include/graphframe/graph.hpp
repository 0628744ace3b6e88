#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "graphframe/pointset.hpp"

namespace graphframe {

enum class GraphKind { knn, weighted_knn, epsilon, weighted_epsilon, complete_gaussian };

/// Short names used on the command line and in result tables:
/// knn, wknn, eps, weps, cgk.
std::string_view to_string(GraphKind kind);
GraphKind parse_graph_kind(std::string_view name);

struct GraphConfig {
    GraphKind kind = GraphKind::knn;
    int k = 7;             ///< neighbor count (knn kinds)
    double epsilon = 1.0;  ///< radius, strict: d < epsilon (epsilon kinds)
    double lambda = 1.0;   ///< Gaussian bandwidth (weighted kinds)

    bool uses_k() const noexcept;
    bool uses_epsilon() const noexcept;
    bool uses_lambda() const noexcept;
    void validate() const;
};

/// Undirected graph with a dense symmetric nonnegative adjacency matrix and
/// zero diagonal. Degrees are d_i = sum_j A_ij.
class WeightedGraph {
public:
    explicit WeightedGraph(Eigen::MatrixXd adjacency);

    Eigen::Index n() const noexcept { return adjacency_.rows(); }
    const Eigen::MatrixXd& adjacency() const noexcept { return adjacency_; }
    const Eigen::VectorXd& degrees() const noexcept { return degrees_; }
    std::size_t edge_count() const;

private:
    Eigen::MatrixXd adjacency_;
    Eigen::VectorXd degrees_;
};

/// Full Euclidean distance matrix of a point set.
Eigen::MatrixXd pairwise_distances(const PointSet& ps);

/// Indices of the k nearest other points of each point, ties broken by the
/// smaller index. Row i lists neighbors of point i, nearest first.
std::vector<std::vector<Eigen::Index>> nearest_neighbors(const Eigen::MatrixXd& dist, int k);

WeightedGraph build_graph(const PointSet& ps, const GraphConfig& cfg);

/// k = 7; epsilon = mean distance to the 7th nearest neighbor; lambda chosen so
/// that an edge of length epsilon gets weight exp(-eps^2 / (2 lambda^2)) = 0.5.
GraphConfig default_config(const PointSet& ps, GraphKind kind);

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Breadth-first hop counts from `source`; kUnreachable for other components.
std::vector<std::size_t> hop_distances(const WeightedGraph& g, Eigen::Index source);

/// (i, j, weight) triples with i < j, header "i,j,weight".
void export_edges(const std::filesystem::path& path, const WeightedGraph& g);

}  // namespace graphframe
