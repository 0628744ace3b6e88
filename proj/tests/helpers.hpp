#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <Eigen/Dense>

#include "graphframe/graph.hpp"
#include "graphframe/pointset.hpp"
#include "graphframe/rng.hpp"

namespace testing {

inline graphframe::PointSet random_points(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
    graphframe::Rng rng(seed, 99);
    Eigen::MatrixXd x(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j) x(i, j) = rng.uniform();
    return graphframe::PointSet(x);
}

inline Eigen::VectorXd random_vector(Eigen::Index n, graphframe::Rng& rng) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.normal();
    return v;
}

inline graphframe::PointSet line_points(std::initializer_list<double> xs) {
    Eigen::MatrixXd x(xs.size(), 1);
    Eigen::Index i = 0;
    for (double v : xs) x(i++, 0) = v;
    return graphframe::PointSet(x);
}

/// Undirected unit-weight graph from an edge list.
inline graphframe::WeightedGraph graph_from_edges(Eigen::Index n,
                                                  std::initializer_list<std::pair<int, int>> edges) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (auto [i, j] : edges) a(i, j) = a(j, i) = 1.0;
    return graphframe::WeightedGraph(a);
}

/// Random symmetric graph: each pair joined with probability p, weight in (0, 1].
inline graphframe::WeightedGraph random_graph(Eigen::Index n, double p, std::uint64_t seed,
                                              bool weighted = true) {
    graphframe::Rng rng(seed, 7);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = j + 1; i < n; ++i)
            if (rng.uniform() < p) a(i, j) = a(j, i) = weighted ? 1.0 - rng.uniform() : 1.0;
    return graphframe::WeightedGraph(a);
}

inline std::filesystem::path temp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "graphframe_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace testing
