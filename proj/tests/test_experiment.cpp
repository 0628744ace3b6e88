#include "doctest.h"

#include <fstream>
#include <sstream>

#include "graphframe/baselines.hpp"
#include "graphframe/experiment.hpp"
#include "helpers.hpp"

using namespace graphframe;

namespace {

ExperimentSpec small_spec() {
    ExperimentSpec s;
    s.n = 80;
    s.trials = 3;
    s.seed = 11;
    s.graphs = {GraphKind::knn, GraphKind::weighted_epsilon};
    s.laplacians = {LaplacianKind::unnormalized, LaplacianKind::normalized};
    return s;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("method names and list parsing") {
    for (auto m : {Method::frame_threshold, Method::eigenmap_threshold, Method::eigenmap_truncate,
                   Method::nadaraya_watson, Method::kernel_ridge})
        CHECK(parse_method(to_string(m)) == m);
    CHECK_THROWS(parse_method("wavelet"));
    CHECK(uses_graph(Method::eigenmap_truncate));
    CHECK_FALSE(uses_graph(Method::kernel_ridge));

    CHECK(split_list("frth,leth,letr") == std::vector<std::string>{"frth", "leth", "letr"});
    CHECK(split_list("a,,b,") == std::vector<std::string>{"a", "b"});
    CHECK(split_list("").empty());

    const auto grid = default_threshold_grid();
    REQUIRE(grid.size() == 51);
    CHECK(grid[0] == 0.0);
    CHECK(grid[50] == 5.0);
}

TEST_CASE("spec validation") {
    auto s = small_spec();
    CHECK_NOTHROW(s.validate());
    s.n = 7;
    CHECK_THROWS(s.validate());
    s = small_spec();
    s.thresholds = {0.0, -1.0};
    CHECK_THROWS(s.validate());
    s = small_spec();
    s.methods.clear();
    CHECK_THROWS(s.validate());
    s = small_spec();
    s.graphs.clear();
    CHECK_THROWS(s.validate());
}

TEST_CASE("sweep curve statistics") {
    const Signal truth = Signal::Zero(4);
    Pipeline p{"const", [](double v) {
                   Eigen::MatrixXd est(4, 2);
                   est.col(0).setConstant(v);
                   est.col(1).setConstant(2.0 * v);
                   return est;
               }};
    const std::vector<double> grid{2.0, 0.0, 1.0, 0.0};
    const auto curve = sweep_curve(p, grid, truth);
    REQUIRE(curve.points.size() == 4);
    // MSEs per trial at v: v^2 and 4 v^2.
    CHECK(curve.points[0].mse_mean == doctest::Approx(10.0));
    CHECK(curve.points[0].mse_std == doctest::Approx(std::sqrt(72.0)));
    CHECK(curve.argmin_index() == 1);

    Pipeline bad{"bad", [](double) { return Eigen::MatrixXd(Eigen::MatrixXd::Zero(3, 1)); }};
    CHECK_THROWS(sweep_curve(bad, grid, truth));
}

TEST_CASE("noiseless benchmark recovers the target at t = 0") {
    auto s = small_spec();
    s.sigma = 0.0;
    s.methods = {Method::frame_threshold};
    const auto table = run_benchmark(s);
    for (const auto& c : table.cells) {
        REQUIRE_FALSE(c.error.has_value());
        CHECK(c.min_mse <= 1e-20);
        CHECK(c.curve.points[0].mse_mean <= 1e-20);
    }
}

TEST_CASE("benchmark cells are consistent") {
    const auto s = small_spec();
    const auto table = run_benchmark(s);
    CHECK(table.cells.size() == 2 * 2 * 3);
    for (auto g : s.graphs)
        for (auto l : s.laplacians) {
            const auto* fr = table.find(to_string(g), to_string(l), Method::frame_threshold);
            const auto* le = table.find(to_string(g), to_string(l), Method::eigenmap_threshold);
            const auto* tr = table.find(to_string(g), to_string(l), Method::eigenmap_truncate);
            REQUIRE(fr);
            REQUIRE(le);
            REQUIRE(tr);
            REQUIRE_FALSE(fr->error.has_value());

            // t = 0 keeps the noisy signal; its MSE is the noise level.
            const double raw = fr->curve.points[0].mse_mean;
            CHECK(raw > 0.6);
            CHECK(raw < 1.4);
            CHECK(le->curve.points[0].mse_mean == doctest::Approx(raw).epsilon(1e-9));
            CHECK(tr->curve.points.back().mse_mean == doctest::Approx(raw).epsilon(1e-9));
            CHECK(tr->curve.points.size() == static_cast<std::size_t>(s.n));

            for (const auto* c : {fr, le, tr}) {
                double lowest = c->curve.points[0].mse_mean;
                for (const auto& p : c->curve.points) lowest = std::min(lowest, p.mse_mean);
                CHECK(c->min_mse == lowest);
                CHECK(c->min_mse <= raw);
            }
            CHECK(fr->universal_mse.has_value());
            CHECK(le->universal_mse.has_value());
            CHECK_FALSE(tr->universal_mse.has_value());
        }
}

TEST_CASE("kernel cells") {
    auto s = small_spec();
    s.methods = {Method::nadaraya_watson, Method::kernel_ridge};
    const auto table = run_benchmark(s);
    REQUIRE(table.cells.size() == 2);
    const auto* nw = table.find("ambient", "none", Method::nadaraya_watson);
    const auto* krr = table.find("ambient", "none", Method::kernel_ridge);
    REQUIRE(nw);
    REQUIRE(krr);
    CHECK(nw->curve.points.size() == 20);
    REQUIRE(krr->ridge.has_value());
    CHECK(krr->min_mse < 1.0);

    // The spectral-filter sweep agrees with a direct solve at the chosen point.
    const auto points = generate_swiss_roll(s.n, s.seed);
    const Signal truth = target_function(points);
    double mse = 0.0;
    for (int r = 0; r < s.trials; ++r) {
        const Signal y = add_noise(truth, s.sigma, s.seed, static_cast<std::uint64_t>(r) + 1);
        mse += (kernel_ridge(points, y, krr->argmin, *krr->ridge) - truth).squaredNorm() / s.n;
    }
    CHECK(mse / s.trials == doctest::Approx(krr->min_mse).epsilon(1e-6));
}

TEST_CASE("benchmark output is deterministic") {
    auto s = small_spec();
    s.laplacians = {LaplacianKind::unnormalized};
    const auto a = testing::temp_file("bench_a");
    const auto b = testing::temp_file("bench_b");
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
    s.output_dir = a;
    run_benchmark(s);
    s.output_dir = b;
    run_benchmark(s);

    const auto json_a = slurp(a / "table.json");
    CHECK_FALSE(json_a.empty());
    CHECK(json_a == slurp(b / "table.json"));
    const auto j = nlohmann::json::parse(json_a);
    REQUIRE(j["cells"].size() == 6);
    for (const auto& cell : j["cells"]) {
        const std::string file = cell["curve_file"];
        CHECK(std::filesystem::exists(a / file));
        CHECK(slurp(a / file) == slurp(b / file));
    }
    CHECK(slurp(a / "curves/knn_u_frth.csv").rfind("param,mse_mean,mse_std\n", 0) == 0);
}
