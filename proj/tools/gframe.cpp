// gframe: command line front end for graph Parseval-frame denoising.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "graphframe/baselines.hpp"
#include "graphframe/denoise.hpp"
#include "graphframe/experiment.hpp"
#include "graphframe/filterbank.hpp"
#include "graphframe/frame.hpp"
#include "graphframe/graph.hpp"
#include "graphframe/pointset.hpp"
#include "graphframe/spectral.hpp"

namespace gf = graphframe;
namespace fs = std::filesystem;

namespace {

// Graph flags shared by several subcommands. Unset k/epsilon/lambda fall back
// to the k = 7 heuristics computed from the points.
struct GraphFlags {
    std::string kind = "knn";
    std::optional<int> k;
    std::optional<double> epsilon;
    std::optional<double> lambda;
    std::string laplacian = "u";
    std::string solver = "qr";

    void add_to(CLI::App& app, bool with_laplacian) {
        app.add_option("--graph", kind, "Graph kind: knn, wknn, eps, weps, cgk")
            ->capture_default_str();
        app.add_option("--k", k, "Neighbor count (default 7)");
        app.add_option("--epsilon", epsilon,
                       "Radius for eps graphs (default: mean 7th-neighbor distance)");
        app.add_option("--lambda", lambda,
                       "Gaussian bandwidth (default: weight 0.5 at distance epsilon)");
        if (with_laplacian) {
            app.add_option("--laplacian", laplacian, "Laplacian: u (D - A) or n (normalized)")
                ->capture_default_str();
            app.add_option("--solver", solver, "Eigensolver: qr or jacobi")->capture_default_str();
        }
    }

    gf::GraphConfig config(const gf::PointSet& ps) const {
        const auto graph_kind = gf::parse_graph_kind(kind);
        gf::GraphConfig cfg;
        cfg.kind = graph_kind;
        if (ps.n() >= 8) cfg = gf::default_config(ps, graph_kind);
        if (k) cfg.k = *k;
        if (epsilon) cfg.epsilon = *epsilon;
        if (lambda) cfg.lambda = *lambda;
        if (ps.n() < 8 && ((cfg.uses_k() && !k) || (cfg.uses_epsilon() && !epsilon) ||
                           (cfg.uses_lambda() && !lambda)))
            throw std::invalid_argument("fewer than 8 points: pass --k/--epsilon/--lambda explicitly");
        cfg.validate();
        return cfg;
    }

    gf::EigenMethod eigen_method() const {
        if (solver == "qr") return gf::EigenMethod::tridiagonal_qr;
        if (solver == "jacobi") return gf::EigenMethod::jacobi;
        throw std::invalid_argument("unknown solver '" + solver + "' (expected qr or jacobi)");
    }

    gf::SpectralDecomposition spectrum(const gf::WeightedGraph& g) const {
        return gf::decompose(gf::laplacian(g, gf::parse_laplacian_kind(laplacian)), eigen_method());
    }
};

struct FilterFlags {
    gf::FilterBankParams params;
    void add_to(CLI::App& app) {
        app.add_option("--scales", params.max_scale, "Highest scale index Q (bands 0..Q)")
            ->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        app.add_option("--base", params.base, "Dyadic base b > 1")->capture_default_str();
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parseval frames on neighborhood graphs and soft-threshold denoising"};
    app.require_subcommand(1);
    bool header = false;
    app.add_flag("--header", header, "Input CSV files start with a header line");

    // generate
    auto* gen = app.add_subcommand("generate", "Sample the swiss roll, its target and a noisy copy");
    Eigen::Index gen_n = 500;
    std::uint64_t gen_seed = 7;
    double gen_sigma = 1.0;
    std::string gen_points = "points.csv", gen_truth = "truth.csv", gen_noisy = "noisy.csv";
    gen->add_option("--n", gen_n, "Number of points")->capture_default_str();
    gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
    gen->add_option("--sigma", gen_sigma, "Noise standard deviation")->capture_default_str();
    gen->add_option("--points", gen_points, "Output point CSV")->capture_default_str();
    gen->add_option("--truth", gen_truth, "Output noiseless signal CSV")->capture_default_str();
    gen->add_option("--noisy", gen_noisy, "Output noisy signal CSV")->capture_default_str();

    // graph
    auto* graph_cmd = app.add_subcommand("graph", "Build a neighborhood graph and export its edges");
    std::string graph_input, graph_out = "edges.csv";
    GraphFlags graph_flags;
    graph_cmd->add_option("--input", graph_input, "Point CSV")->required()->check(CLI::ExistingFile);
    graph_cmd->add_option("--out", graph_out, "Edge CSV (i,j,weight)")->capture_default_str();
    graph_flags.add_to(*graph_cmd, false);

    // spectrum
    auto* spec_cmd = app.add_subcommand("spectrum", "Laplacian eigenvalues of a neighborhood graph");
    std::string spec_input, spec_out = "eigenvalues.csv";
    GraphFlags spec_flags;
    spec_cmd->add_option("--input", spec_input, "Point CSV")->required()->check(CLI::ExistingFile);
    spec_cmd->add_option("--out", spec_out, "Eigenvalue CSV")->capture_default_str();
    spec_flags.add_to(*spec_cmd, true);

    // frame-check
    auto* check_cmd = app.add_subcommand("frame-check", "Verify the Parseval property of a graph frame");
    std::string check_input;
    std::optional<std::string> check_filters;
    GraphFlags check_flags;
    FilterFlags check_fb;
    check_cmd->add_option("--input", check_input, "Point CSV")->required()->check(CLI::ExistingFile);
    check_cmd->add_option("--filters-out", check_filters, "Write filter curves (x, zeta_0..zeta_Q)");
    check_flags.add_to(*check_cmd, true);
    check_fb.add_to(*check_cmd);

    // denoise
    auto* den_cmd = app.add_subcommand("denoise", "Soft-threshold frame denoising of a signal");
    std::string den_points, den_signal, den_out = "estimate.csv", den_rule = "universal";
    std::optional<std::string> den_truth, den_report, den_coeffs;
    std::optional<double> den_sigma;
    double den_t = 0.0;
    bool den_estimate_sigma = false;
    GraphFlags den_flags;
    FilterFlags den_fb;
    den_cmd->add_option("--points", den_points, "Point CSV")->required()->check(CLI::ExistingFile);
    den_cmd->add_option("--signal", den_signal, "Noisy signal CSV")->required()->check(CLI::ExistingFile);
    den_cmd->add_option("--sigma", den_sigma, "Noise standard deviation");
    den_cmd->add_flag("--estimate-sigma", den_estimate_sigma,
                      "Estimate sigma from the finest band (MAD) instead of --sigma");
    den_cmd->add_option("--rule", den_rule, "Threshold rule: universal or manual")->capture_default_str();
    den_cmd->add_option("--t", den_t, "Threshold multiplier for --rule manual")->capture_default_str();
    den_cmd->add_option("--truth", den_truth, "Ground truth CSV (enables MSE)")->check(CLI::ExistingFile);
    den_cmd->add_option("--out", den_out, "Estimate CSV")->capture_default_str();
    den_cmd->add_option("--report", den_report, "JSON report path");
    den_cmd->add_option("--coefficients", den_coeffs, "Write noisy frame coefficients (k,l,value)");
    den_flags.add_to(*den_cmd, true);
    den_fb.add_to(*den_cmd);

    // benchmark
    auto* bench_cmd = app.add_subcommand("benchmark", "Swiss-roll denoising benchmark");
    gf::ExperimentSpec bench;
    std::string bench_graphs = "knn,wknn,eps,weps,cgk", bench_laps = "u,n", bench_methods = "frth,leth,letr";
    std::string bench_out = "benchmark";
    double t_max = 5.0, t_step = 0.1;
    bench_cmd->add_option("--n", bench.n, "Number of points")->capture_default_str();
    bench_cmd->add_option("--sigma", bench.sigma, "Noise standard deviation")->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "Master seed")->capture_default_str();
    bench_cmd->add_option("--trials", bench.trials, "Noise realizations per cell")->capture_default_str();
    bench_cmd->add_option("--graphs", bench_graphs, "Comma list of graph kinds")->capture_default_str();
    bench_cmd->add_option("--laplacian", bench_laps, "Comma list of Laplacians (u,n)")->capture_default_str();
    bench_cmd->add_option("--methods", bench_methods, "Comma list of frth, leth, letr, nw, krr")
        ->capture_default_str();
    bench_cmd->add_option("--t-max", t_max, "Largest threshold in the sweep")->capture_default_str();
    bench_cmd->add_option("--t-step", t_step, "Threshold step")->capture_default_str()->check(CLI::PositiveNumber);
    bench_cmd->add_option("--scales", bench.filters.max_scale, "Highest scale index Q")->capture_default_str();
    bench_cmd->add_option("--base", bench.filters.base, "Dyadic base b")->capture_default_str();
    bench_cmd->add_option("--out", bench_out, "Output directory")->capture_default_str();

    // localization
    auto* loc_cmd = app.add_subcommand("localization", "Peak |Psi_kl| per hop ring around a vertex");
    std::string loc_input;
    std::optional<std::string> loc_out;
    int loc_scale = 3;
    Eigen::Index loc_center = 0;
    GraphFlags loc_flags;
    FilterFlags loc_fb;
    loc_cmd->add_option("--input", loc_input, "Point CSV")->required()->check(CLI::ExistingFile);
    loc_cmd->add_option("--scale", loc_scale, "Scale index k")->capture_default_str();
    loc_cmd->add_option("--center", loc_center, "Center vertex l (0-based)")->capture_default_str();
    loc_cmd->add_option("--out", loc_out, "Profile CSV (hop,peak); stdout if omitted");
    loc_flags.add_to(*loc_cmd, true);
    loc_fb.add_to(*loc_cmd);

    CLI11_PARSE(app, argc, argv);
    const gf::CsvOptions csv{header};

    try {
        if (*gen) {
            const auto ps = gf::generate_swiss_roll(gen_n, gen_seed);
            const auto f = gf::target_function(ps);
            gf::save_points(gen_points, ps);
            gf::save_signal(gen_truth, f);
            gf::save_signal(gen_noisy, gf::add_noise(f, gen_sigma, gen_seed, 1));
            std::cout << "wrote " << ps.n() << " points to " << gen_points << "\n";
        } else if (*graph_cmd) {
            const auto ps = gf::load_points(graph_input, csv);
            const auto g = gf::build_graph(ps, graph_flags.config(ps));
            gf::export_edges(graph_out, g);
            std::cout << "vertices " << g.n() << "\nedges " << g.edge_count() << "\n";
        } else if (*spec_cmd) {
            const auto ps = gf::load_points(spec_input, csv);
            const auto g = gf::build_graph(ps, spec_flags.config(ps));
            const auto sd = spec_flags.spectrum(g);
            gf::save_signal(spec_out, sd.eigenvalues());
            std::cout << "components " << gf::component_count(sd) << "\nlambda_max "
                      << gf::format_double(sd.lambda_max()) << "\n";
        } else if (*check_cmd) {
            const auto ps = gf::load_points(check_input, csv);
            const auto g = gf::build_graph(ps, check_flags.config(ps));
            const auto fr = gf::build_frame(check_flags.spectrum(g), check_fb.params);
            nlohmann::json j;
            j["n"] = fr.n();
            j["bands"] = fr.num_bands();
            j["frame_operator_residual"] = gf::frame_operator_residual(fr);
            j["sum_squared_norms"] = fr.norms().squaredNorm();
            j["max_norm"] = fr.norms().maxCoeff();
            j["empty_bands"] = fr.empty_bands();
            const double entries = static_cast<double>(fr.size()) * static_cast<double>(fr.size());
            if (entries <= gf::kGramianEntryLimit) {
                const auto gram = gf::gramian_projector_residual(fr);
                j["gramian_residual"] = gram.residual;
                j["gramian_trace"] = gram.trace;
            }
            if (check_filters) {
                const auto fb = gf::fit_rescale(check_fb.params, fr.basis().lambda_max());
                fb.export_curves(*check_filters, fb.covered_limit() * fb.base(), 1001);
            }
            std::cout << j.dump(2) << "\n";
        } else if (*den_cmd) {
            const auto ps = gf::load_points(den_points, csv);
            const auto y = gf::load_signal(den_signal, csv);
            if (y.size() != ps.n())
                throw std::invalid_argument("signal has " + std::to_string(y.size()) +
                                            " values but there are " + std::to_string(ps.n()) +
                                            " points");
            const auto g = gf::build_graph(ps, den_flags.config(ps));
            const auto fr = gf::build_frame(den_flags.spectrum(g), den_fb.params);
            double sigma = 0.0;
            if (den_estimate_sigma)
                sigma = gf::estimate_sigma(fr, y);
            else if (den_sigma)
                sigma = *den_sigma;
            else
                throw std::invalid_argument("pass --sigma or --estimate-sigma");
            const auto rule = gf::parse_threshold_rule(den_rule);
            const auto pol = rule == gf::ThresholdRule::universal
                                 ? gf::ThresholdPolicy::universal(sigma, ps.n())
                                 : gf::ThresholdPolicy::manual(sigma, den_t);
            std::optional<gf::Signal> truth;
            if (den_truth) truth = gf::load_signal(*den_truth, csv);
            const auto report = gf::denoise(fr, y, pol, truth);
            gf::save_signal(den_out, report.estimate);
            if (den_coeffs) gf::export_coefficients(*den_coeffs, fr.analyze(y));
            const auto j = gf::to_json(report, den_out);
            if (den_report) {
                std::ofstream out(*den_report);
                out << j.dump(2) << "\n";
            }
            std::cout << j.dump(2) << "\n";
        } else if (*bench_cmd) {
            bench.graphs.clear();
            for (const auto& s : gf::split_list(bench_graphs)) bench.graphs.push_back(gf::parse_graph_kind(s));
            bench.laplacians.clear();
            for (const auto& s : gf::split_list(bench_laps))
                bench.laplacians.push_back(gf::parse_laplacian_kind(s));
            bench.methods.clear();
            for (const auto& s : gf::split_list(bench_methods)) bench.methods.push_back(gf::parse_method(s));
            bench.thresholds.clear();
            for (int i = 0; i * t_step <= t_max + 1e-12; ++i)
                bench.thresholds.push_back(std::round(i * t_step * 1e9) / 1e9);
            bench.output_dir = fs::path(bench_out);
            const auto table = gf::run_benchmark(bench);
            for (const auto& c : table.cells) {
                std::cout << c.graph << '\t' << c.laplacian << '\t' << gf::to_string(c.method) << '\t';
                if (c.error)
                    std::cout << "error: " << *c.error;
                else
                    std::cout << "min_mse " << c.min_mse << " at " << c.argmin;
                std::cout << '\n';
            }
            std::cout << "wrote " << (fs::path(bench_out) / "table.json").string() << "\n";
        } else if (*loc_cmd) {
            const auto ps = gf::load_points(loc_input, csv);
            const auto g = gf::build_graph(ps, loc_flags.config(ps));
            const auto fr = gf::build_frame(loc_flags.spectrum(g), loc_fb.params);
            const auto prof = gf::localization_profile(fr, g, loc_scale, loc_center);
            if (prof.zero_norm) {
                std::cerr << "warning: frame element (" << loc_scale << ", " << loc_center
                          << ") has zero norm; no profile\n";
                return 0;
            }
            std::ofstream file;
            if (loc_out) file.open(*loc_out);
            std::ostream& out = loc_out ? file : std::cout;
            out << "hop,peak\n";
            for (std::size_t r = 0; r < prof.peak.size(); ++r)
                out << r << ',' << gf::format_double(prof.peak[r]) << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
