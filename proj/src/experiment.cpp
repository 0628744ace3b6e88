#include "graphframe/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "graphframe/baselines.hpp"
#include "graphframe/denoise.hpp"
#include "graphframe/frame.hpp"

namespace graphframe {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::frame_threshold: return "frth";
        case Method::eigenmap_threshold: return "leth";
        case Method::eigenmap_truncate: return "letr";
        case Method::nadaraya_watson: return "nw";
        case Method::kernel_ridge: return "krr";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    for (auto m : {Method::frame_threshold, Method::eigenmap_threshold, Method::eigenmap_truncate,
                   Method::nadaraya_watson, Method::kernel_ridge})
        if (to_string(m) == name) return m;
    throw std::invalid_argument("unknown method '" + std::string(name) +
                                "' (expected frth, leth, letr, nw or krr)");
}

bool uses_graph(Method m) {
    return m == Method::frame_threshold || m == Method::eigenmap_threshold ||
           m == Method::eigenmap_truncate;
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        if (!item.empty()) out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<double> default_threshold_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 50; ++i) grid.push_back(i / 10.0);
    return grid;
}

void ExperimentSpec::validate() const {
    if (n < 8) throw std::invalid_argument("experiment: n must be >= 8 for the k = 7 heuristics");
    if (!(sigma >= 0.0)) throw std::invalid_argument("experiment: sigma must be >= 0");
    if (trials < 1) throw std::invalid_argument("experiment: need at least one trial");
    if (methods.empty()) throw std::invalid_argument("experiment: no methods selected");
    if (thresholds.empty()) throw std::invalid_argument("experiment: empty threshold grid");
    for (double t : thresholds)
        if (!(t >= 0.0)) throw std::invalid_argument("experiment: thresholds must be >= 0");
    const bool graph_methods = std::any_of(methods.begin(), methods.end(), uses_graph);
    if (graph_methods && (graphs.empty() || laplacians.empty()))
        throw std::invalid_argument("experiment: graph methods need at least one graph and Laplacian");
}

std::size_t SweepCurve::argmin_index() const {
    if (points.empty()) throw std::logic_error("sweep curve is empty");
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].mse_mean < points[best].mse_mean) best = i;
    return best;
}

void SweepCurve::write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "param,mse_mean,mse_std\n";
    for (const auto& p : points)
        out << format_double(p.param) << ',' << format_double(p.mse_mean) << ','
            << format_double(p.mse_std) << '\n';
}

SweepCurve sweep_curve(const Pipeline& pipeline, std::span<const double> grid, const Signal& truth) {
    SweepCurve curve;
    const double n = static_cast<double>(truth.size());
    for (double param : grid) {
        const Eigen::MatrixXd est = pipeline.estimate(param);
        if (est.rows() != truth.size())
            throw std::runtime_error(pipeline.name + ": estimate has wrong length");
        const Eigen::ArrayXd mse = (est.colwise() - truth).colwise().squaredNorm().transpose().array() / n;
        const double mean = mse.mean();
        const double sd = mse.size() > 1
                              ? std::sqrt((mse - mean).square().sum() / (mse.size() - 1.0))
                              : 0.0;
        curve.points.push_back({param, mean, sd});
    }
    return curve;
}

const CellResult* ResultTable::find(std::string_view graph, std::string_view laplacian,
                                    Method m) const {
    for (const auto& c : cells)
        if (c.graph == graph && c.laplacian == laplacian && c.method == m) return &c;
    return nullptr;
}

nlohmann::json ResultTable::to_json() const {
    nlohmann::json j;
    std::vector<std::string> graph_names, lap_names, method_names;
    for (auto g : spec.graphs) graph_names.emplace_back(to_string(g));
    for (auto l : spec.laplacians) lap_names.emplace_back(to_string(l));
    for (auto m : spec.methods) method_names.emplace_back(to_string(m));
    j["spec"] = {{"n", spec.n},
                 {"sigma", spec.sigma},
                 {"seed", spec.seed},
                 {"trials", spec.trials},
                 {"graphs", graph_names},
                 {"laplacians", lap_names},
                 {"methods", method_names},
                 {"base", spec.filters.base},
                 {"scales", spec.filters.max_scale},
                 {"thresholds", spec.thresholds}};
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : cells) {
        nlohmann::json row;
        row["cell"] = {{"graph", c.graph}, {"laplacian", c.laplacian}, {"method", to_string(c.method)}};
        if (c.error) {
            row["error"] = *c.error;
        } else {
            row["min_mse"] = c.min_mse;
            row["argmin"] = c.argmin;
            row["curve_file"] = c.curve_file;
            if (c.universal_mse) row["universal_mse"] = *c.universal_mse;
            if (c.ridge) row["ridge"] = *c.ridge;
        }
        rows.push_back(std::move(row));
    }
    j["cells"] = std::move(rows);
    return j;
}

namespace {

struct Workspace {
    const ExperimentSpec& spec;
    PointSet points;
    Signal truth;
    Eigen::MatrixXd noisy;  // n x trials, shared by every cell
    double epsilon;         // heuristic radius, also anchors the kernel grids
};

void finish_cell(CellResult& cell, SweepCurve curve) {
    cell.curve = std::move(curve);
    const auto& best = cell.curve.best();
    cell.min_mse = best.mse_mean;
    cell.argmin = best.param;
}

std::vector<double> index_grid(Eigen::Index n) {
    std::vector<double> grid(n);
    for (Eigen::Index m = 1; m <= n; ++m) grid[m - 1] = static_cast<double>(m);
    return grid;
}

void run_graph_cells(const Workspace& ws, GraphKind kind, LaplacianKind lap_kind,
                     std::vector<CellResult>& out) {
    const auto& spec = ws.spec;
    std::vector<CellResult> cells;
    for (auto m : spec.methods)
        if (uses_graph(m)) {
            CellResult c;
            c.graph = to_string(kind);
            c.laplacian = to_string(lap_kind);
            c.method = m;
            cells.push_back(std::move(c));
        }
    if (cells.empty()) return;

    try {
        const GraphConfig cfg = default_config(ws.points, kind);
        const WeightedGraph g = build_graph(ws.points, cfg);
        SpectralDecomposition sd = decompose(laplacian(g, lap_kind), spec.eigen);
        const double t_universal = std::sqrt(2.0 * std::log(static_cast<double>(spec.n)));

        for (auto& cell : cells) {
            try {
                switch (cell.method) {
                    case Method::frame_threshold: {
                        const ParsevalFrame fr = build_frame(sd, spec.filters);
                        const Eigen::MatrixXd coeffs = fr.analyze_batch(ws.noisy);
                        Pipeline p{"frth", [&](double t) {
                                       return fr.synthesize_batch(
                                           threshold_coefficients(fr, coeffs, spec.sigma, t));
                                   }};
                        finish_cell(cell, sweep_curve(p, spec.thresholds, ws.truth));
                        const double tu[] = {t_universal};
                        cell.universal_mse = sweep_curve(p, tu, ws.truth).points[0].mse_mean;
                        break;
                    }
                    case Method::eigenmap_threshold: {
                        const auto& phi = sd.eigenvectors();
                        const Eigen::MatrixXd coeffs = phi.transpose() * ws.noisy;
                        Pipeline p{"leth", [&](double t) {
                                       const double cut = spec.sigma * t;
                                       Eigen::MatrixXd c = coeffs.unaryExpr(
                                           [cut](double z) { return soft_threshold(z, cut); });
                                       return Eigen::MatrixXd(phi * c);
                                   }};
                        finish_cell(cell, sweep_curve(p, spec.thresholds, ws.truth));
                        const double tu[] = {t_universal};
                        cell.universal_mse = sweep_curve(p, tu, ws.truth).points[0].mse_mean;
                        break;
                    }
                    case Method::eigenmap_truncate: {
                        const auto& phi = sd.eigenvectors();
                        const Eigen::MatrixXd coeffs = phi.transpose() * ws.noisy;
                        Pipeline p{"letr", [&](double m) {
                                       const auto keep = static_cast<Eigen::Index>(m);
                                       return Eigen::MatrixXd(phi.leftCols(keep) *
                                                              coeffs.topRows(keep));
                                   }};
                        const auto grid = index_grid(spec.n);
                        finish_cell(cell, sweep_curve(p, grid, ws.truth));
                        break;
                    }
                    default: break;
                }
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
        }
    } catch (const std::exception& e) {
        for (auto& cell : cells) cell.error = e.what();
    }
    for (auto& c : cells) out.push_back(std::move(c));
}

CellResult run_nadaraya_watson(const Workspace& ws) {
    CellResult cell;
    cell.graph = "ambient";
    cell.laplacian = "none";
    cell.method = Method::nadaraya_watson;
    try {
        const Eigen::MatrixXd dist = pairwise_distances(ws.points);
        Pipeline p{"nw", [&](double h) {
                       const Eigen::MatrixXd k =
                           (-dist.array().square() / (2.0 * h * h)).exp().matrix();
                       const Eigen::VectorXd rows = k.rowwise().sum();
                       return Eigen::MatrixXd((k * ws.noisy).array().colwise() / rows.array());
                   }};
        const auto grid = bandwidth_grid(ws.epsilon);
        finish_cell(cell, sweep_curve(p, grid, ws.truth));
    } catch (const std::exception& e) {
        cell.error = e.what();
    }
    return cell;
}

// Kernel ridge over bandwidth x ridge. Each bandwidth's kernel is diagonalized
// once, K = V diag(s) V^T, so every ridge is a spectral filter
// s / (s + gamma n); the reported curve is the bandwidth sweep at the best ridge.
CellResult run_kernel_ridge(const Workspace& ws) {
    CellResult cell;
    cell.graph = "ambient";
    cell.laplacian = "none";
    cell.method = Method::kernel_ridge;
    try {
        const auto bandwidths = bandwidth_grid(ws.epsilon);
        const auto ridges = ridge_grid();
        const double n = static_cast<double>(ws.spec.n);
        std::vector<Eigen::VectorXd> spectra;
        std::vector<Eigen::MatrixXd> projected;  // V^T Y
        std::vector<Eigen::MatrixXd> bases;
        for (double h : bandwidths) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gaussian_kernel(ws.points, h));
            spectra.push_back(es.eigenvalues().cwiseMax(0.0));
            bases.push_back(es.eigenvectors());
            projected.push_back(es.eigenvectors().transpose() * ws.noisy);
        }
        std::optional<SweepCurve> best;
        for (double gamma : ridges) {
            Pipeline p{"krr", [&, gamma](double h) {
                           const auto idx = static_cast<std::size_t>(
                               std::find(bandwidths.begin(), bandwidths.end(), h) -
                               bandwidths.begin());
                           const Eigen::VectorXd& s = spectra[idx];
                           const Eigen::VectorXd filt = s.array() / (s.array() + gamma * n);
                           return Eigen::MatrixXd(bases[idx] * (filt.asDiagonal() * projected[idx]));
                       }};
            SweepCurve curve = sweep_curve(p, bandwidths, ws.truth);
            if (!best || curve.best().mse_mean < best->best().mse_mean) {
                best = std::move(curve);
                cell.ridge = gamma;
            }
        }
        finish_cell(cell, std::move(*best));
    } catch (const std::exception& e) {
        cell.error = e.what();
    }
    return cell;
}

}  // namespace

ResultTable run_benchmark(const ExperimentSpec& spec) {
    spec.validate();
    PointSet points = generate_swiss_roll(spec.n, spec.seed);
    Signal truth = target_function(points);
    Eigen::MatrixXd noisy(spec.n, spec.trials);
    for (int r = 0; r < spec.trials; ++r)
        noisy.col(r) = add_noise(truth, spec.sigma, spec.seed, static_cast<std::uint64_t>(r) + 1);
    const double epsilon = default_config(points, GraphKind::epsilon).epsilon;
    const Workspace ws{spec, std::move(points), std::move(truth), std::move(noisy), epsilon};

    ResultTable table;
    table.spec = spec;
    for (auto g : spec.graphs)
        for (auto l : spec.laplacians) run_graph_cells(ws, g, l, table.cells);
    for (auto m : spec.methods) {
        if (m == Method::nadaraya_watson) table.cells.push_back(run_nadaraya_watson(ws));
        if (m == Method::kernel_ridge) table.cells.push_back(run_kernel_ridge(ws));
    }

    for (auto& c : table.cells)
        if (!c.error)
            c.curve_file = "curves/" + c.graph + "_" + c.laplacian + "_" +
                           std::string(to_string(c.method)) + ".csv";

    if (spec.output_dir) {
        const auto& dir = *spec.output_dir;
        std::filesystem::create_directories(dir / "curves");
        for (const auto& c : table.cells)
            if (!c.error) c.curve.write_csv(dir / c.curve_file);
        std::ofstream out(dir / "table.json");
        if (!out) throw std::runtime_error("cannot write " + (dir / "table.json").string());
        out << table.to_json().dump(2) << '\n';
    }
    return table;
}

}  // namespace graphframe
