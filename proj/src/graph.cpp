#include "graphframe/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace graphframe {

std::string_view to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::knn: return "knn";
        case GraphKind::weighted_knn: return "wknn";
        case GraphKind::epsilon: return "eps";
        case GraphKind::weighted_epsilon: return "weps";
        case GraphKind::complete_gaussian: return "cgk";
    }
    return "?";
}

GraphKind parse_graph_kind(std::string_view name) {
    for (auto k : {GraphKind::knn, GraphKind::weighted_knn, GraphKind::epsilon,
                   GraphKind::weighted_epsilon, GraphKind::complete_gaussian})
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown graph kind '" + std::string(name) +
                                "' (expected knn, wknn, eps, weps or cgk)");
}

bool GraphConfig::uses_k() const noexcept {
    return kind == GraphKind::knn || kind == GraphKind::weighted_knn;
}
bool GraphConfig::uses_epsilon() const noexcept {
    return kind == GraphKind::epsilon || kind == GraphKind::weighted_epsilon;
}
bool GraphConfig::uses_lambda() const noexcept {
    return kind == GraphKind::weighted_knn || kind == GraphKind::weighted_epsilon ||
           kind == GraphKind::complete_gaussian;
}

void GraphConfig::validate() const {
    if (uses_k() && k < 1) throw std::invalid_argument("graph config: k must be >= 1");
    if (uses_epsilon() && !(epsilon > 0.0))
        throw std::invalid_argument("graph config: epsilon must be > 0");
    if (uses_lambda() && !(lambda > 0.0))
        throw std::invalid_argument("graph config: lambda must be > 0");
}

WeightedGraph::WeightedGraph(Eigen::MatrixXd adjacency) : adjacency_(std::move(adjacency)) {
    if (adjacency_.rows() != adjacency_.cols())
        throw std::invalid_argument("WeightedGraph: adjacency must be square");
    for (Eigen::Index j = 0; j < n(); ++j) {
        if (adjacency_(j, j) != 0.0)
            throw std::invalid_argument("WeightedGraph: self loops are not allowed");
        for (Eigen::Index i = 0; i < n(); ++i) {
            const double a = adjacency_(i, j);
            if (!(a >= 0.0) || !std::isfinite(a))
                throw std::invalid_argument("WeightedGraph: weights must be finite and >= 0");
            if (a != adjacency_(j, i))
                throw std::invalid_argument("WeightedGraph: adjacency must be symmetric");
        }
    }
    degrees_ = adjacency_.rowwise().sum();
}

std::size_t WeightedGraph::edge_count() const {
    std::size_t m = 0;
    for (Eigen::Index j = 0; j < n(); ++j)
        for (Eigen::Index i = 0; i < j; ++i)
            if (adjacency_(i, j) > 0.0) ++m;
    return m;
}

Eigen::MatrixXd pairwise_distances(const PointSet& ps) {
    const Eigen::Index n = ps.n();
    Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
    const auto& x = ps.points();
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double d = (x.row(i) - x.row(j)).norm();
            dist(i, j) = d;
            dist(j, i) = d;
        }
    return dist;
}

std::vector<std::vector<Eigen::Index>> nearest_neighbors(const Eigen::MatrixXd& dist, int k) {
    const Eigen::Index n = dist.rows();
    if (k < 1) throw std::invalid_argument("nearest_neighbors: k must be >= 1");
    if (k >= n)
        throw std::invalid_argument("nearest_neighbors: k = " + std::to_string(k) +
                                    " needs at least " + std::to_string(k + 1) + " points, have " +
                                    std::to_string(n));
    std::vector<std::vector<Eigen::Index>> out(n);
    std::vector<Eigen::Index> order;
    for (Eigen::Index i = 0; i < n; ++i) {
        order.clear();
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) order.push_back(j);
        auto closer = [&](Eigen::Index a, Eigen::Index b) {
            if (dist(i, a) != dist(i, b)) return dist(i, a) < dist(i, b);
            return a < b;
        };
        std::partial_sort(order.begin(), order.begin() + k, order.end(), closer);
        out[i].assign(order.begin(), order.begin() + k);
    }
    return out;
}

WeightedGraph build_graph(const PointSet& ps, const GraphConfig& cfg) {
    cfg.validate();
    const Eigen::Index n = ps.n();
    const Eigen::MatrixXd dist = pairwise_distances(ps);
    Eigen::MatrixXd mask = Eigen::MatrixXd::Zero(n, n);

    switch (cfg.kind) {
        case GraphKind::knn:
        case GraphKind::weighted_knn: {
            if (n < 2) throw std::invalid_argument("build_graph: kNN graphs need n >= 2");
            const auto nn = nearest_neighbors(dist, cfg.k);
            for (Eigen::Index i = 0; i < n; ++i)
                for (auto j : nn[i]) {
                    mask(i, j) = 1.0;
                    mask(j, i) = 1.0;
                }
            break;
        }
        case GraphKind::epsilon:
        case GraphKind::weighted_epsilon:
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index i = 0; i < n; ++i)
                    if (i != j && dist(i, j) < cfg.epsilon) mask(i, j) = 1.0;
            break;
        case GraphKind::complete_gaussian:
            mask.setOnes();
            mask.diagonal().setZero();
            break;
    }

    if (cfg.uses_lambda()) {
        const double denom = 2.0 * cfg.lambda * cfg.lambda;
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = j + 1; i < n; ++i)
                if (mask(i, j) != 0.0) {
                    const double w = std::exp(-dist(i, j) * dist(i, j) / denom);
                    mask(i, j) = w;
                    mask(j, i) = w;
                }
    }
    return WeightedGraph(std::move(mask));
}

GraphConfig default_config(const PointSet& ps, GraphKind kind) {
    constexpr int k = 7;
    if (ps.n() < k + 1)
        throw std::invalid_argument("default_config: the k = 7 heuristics need at least 8 points");
    const Eigen::MatrixXd dist = pairwise_distances(ps);
    const auto nn = nearest_neighbors(dist, k);
    double total = 0.0;
    for (Eigen::Index i = 0; i < ps.n(); ++i) total += dist(i, nn[i].back());
    GraphConfig cfg;
    cfg.kind = kind;
    cfg.k = k;
    cfg.epsilon = total / static_cast<double>(ps.n());
    cfg.lambda = cfg.epsilon / std::sqrt(2.0 * std::log(2.0));
    return cfg;
}

std::vector<std::size_t> hop_distances(const WeightedGraph& g, Eigen::Index source) {
    if (source < 0 || source >= g.n())
        throw std::out_of_range("hop_distances: source " + std::to_string(source) +
                                " out of range for n = " + std::to_string(g.n()));
    std::vector<std::size_t> hops(g.n(), kUnreachable);
    std::deque<Eigen::Index> queue{source};
    hops[source] = 0;
    const auto& a = g.adjacency();
    while (!queue.empty()) {
        const Eigen::Index v = queue.front();
        queue.pop_front();
        for (Eigen::Index w = 0; w < g.n(); ++w)
            if (a(w, v) > 0.0 && hops[w] == kUnreachable) {
                hops[w] = hops[v] + 1;
                queue.push_back(w);
            }
    }
    return hops;
}

void export_edges(const std::filesystem::path& path, const WeightedGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "i,j,weight\n";
    for (Eigen::Index i = 0; i < g.n(); ++i)
        for (Eigen::Index j = i + 1; j < g.n(); ++j)
            if (g.adjacency()(i, j) > 0.0)
                out << i << ',' << j << ',' << format_double(g.adjacency()(i, j)) << '\n';
}

}  // namespace graphframe
