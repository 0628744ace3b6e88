#include "doctest.h"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "graphframe/filterbank.hpp"

using namespace graphframe;

namespace {

// Derivative of `order` at x from samples x, x + h, ..., x + 7h only (h may be
// negative). The 8-point stencil is exact for polynomials of degree <= 7, so on
// a single polynomial piece the only error is round-off.
template <class F>
double one_sided_derivative(F f, double x, double h, int order) {
    constexpr int points = 8;
    Eigen::MatrixXd vander(points, points);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(points);
    for (int m = 0; m < points; ++m)
        for (int j = 0; j < points; ++j) vander(m, j) = std::pow(static_cast<double>(j), m);
    rhs(order) = std::tgamma(order + 1.0);
    const Eigen::VectorXd w = vander.fullPivLu().solve(rhs);
    double acc = 0.0;
    for (int j = 0; j < points; ++j) acc += w(j) * f(x + j * h);
    return acc / std::pow(h, order);
}

}  // namespace

TEST_CASE("plateau values") {
    CHECK(plateau(0.3) == 1.0);
    CHECK(plateau(0.5) == 1.0);
    CHECK(plateau(1.0) == 0.0);
    CHECK(plateau(1.7) == 0.0);
    // h(1/2) = 1 - (1/16)(35 - 42 + 17.5 - 2.5) = 1/2
    CHECK(plateau(0.75) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(smoothstep7(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(plateau(-0.1), std::domain_error);
}

TEST_CASE("plateau for another base") {
    CHECK(plateau(1.0 / 3.0, 3.0) == 1.0);
    CHECK(plateau(2.0 / 3.0, 3.0) == doctest::Approx(0.5));
    CHECK(plateau(0.999, 3.0) < 1e-9);
}

TEST_CASE("plateau is monotone and bounded") {
    double prev = 1.0;
    for (int i = 0; i <= 20000; ++i) {
        const double g = plateau(i * 1e-4);
        CHECK(g >= 0.0);
        CHECK(g <= 1.0);
        CHECK(g <= prev);
        prev = g;
    }
}

TEST_CASE("plateau is C^3 at both junctions") {
    for (double x : {0.5, 1.0})
        for (int order = 1; order <= 3; ++order) {
            const double right = one_sided_derivative([](double u) { return plateau(u); }, x, 0.05, order);
            const double left = one_sided_derivative([](double u) { return plateau(u); }, x, -0.05, order);
            CHECK(std::abs(right - left) <= 1e-5);
        }
    // The fourth derivative jumps, so the check above is not vacuous.
    const double r4 = one_sided_derivative([](double u) { return plateau(u); }, 0.5, 0.05, 4);
    const double l4 = one_sided_derivative([](double u) { return plateau(u); }, 0.5, -0.05, 4);
    CHECK(std::abs(r4 - l4) > 1.0);
}

TEST_CASE("zeta values at base 2") {
    const FilterBank fb({2.0, 7}, 1.0);
    CHECK(fb.zeta(0, 0.4) == 1.0);
    CHECK(fb.zeta(1, 0.4) == 0.0);
    CHECK(fb.zeta(3, 4.0) == 1.0);
    CHECK_THROWS_AS(fb.zeta(8, 1.0), std::out_of_range);
    CHECK_THROWS_AS(fb.zeta(-1, 1.0), std::out_of_range);
}

TEST_CASE("zeta bounds, support and multiscale identity") {
    const FilterBank fb({2.0, 7}, 1.0);
    for (int i = 0; i <= 40000; ++i) {
        const double x = i * 0.005;  // [0, 200]
        for (int k = 0; k <= 7; ++k) {
            const double z = fb.zeta(k, x);
            CHECK(z >= 0.0);
            CHECK(z <= 1.0);
            if (k == 0 && x > 1.0) CHECK(z == 0.0);
            if (k >= 1 && (x < std::pow(2.0, k - 2) || x > std::pow(2.0, k))) CHECK(z == 0.0);
            if (k >= 1) CHECK(std::abs(z - fb.zeta(1, x * std::pow(2.0, -(k - 1)))) <= 1e-12);
        }
    }
}

TEST_CASE("partition of unity on the covered range") {
    const FilterBank fb({2.0, 7}, 1.0);
    std::vector<double> grid;
    for (int i = 0; i < 10000; ++i) grid.push_back(64.0 * i / 9999.0);
    CHECK(partition_check(fb, grid) <= 1e-12);

    const double zero[] = {0.0};
    CHECK(partition_check(fb, zero) == 0.0);
    for (int k = 1; k <= 7; ++k) CHECK(fb.zeta(k, 0.0) == 0.0);

    // Past b^Q the telescoped sum g(b^-Q x) has dropped to zero.
    const double beyond[] = {128.0};
    CHECK(partition_check(fb, beyond) == 1.0);
}

TEST_CASE("fit_rescale") {
    const auto fb = fit_rescale({2.0, 7}, 4.0);
    CHECK(fb.rescale() == 16.0);
    CHECK(fb.zeta_at_eigenvalue(7, 4.0) == 1.0);
    CHECK(fb.covered_limit() == 64.0);

    const auto flat = fit_rescale({2.0, 7}, 0.0);
    CHECK(flat.rescale() == 1.0);
    CHECK(flat.zeta_at_eigenvalue(0, 0.0) == 1.0);
    for (int k = 1; k <= 7; ++k) CHECK(flat.zeta_at_eigenvalue(k, 0.0) == 0.0);

    // The whole rescaled spectrum is covered.
    const auto fitted = fit_rescale({2.0, 5}, 7.3);
    std::vector<double> rescaled;
    for (int i = 0; i <= 1000; ++i) rescaled.push_back(fitted.rescale() * 7.3 * i / 1000.0);
    CHECK(partition_check(fitted, rescaled) <= 1e-12);

    CHECK_THROWS(fit_rescale({2.0, 7}, -1.0));
    CHECK_THROWS(FilterBank({1.0, 7}, 1.0));
    CHECK_THROWS(FilterBank({2.0, 7}, 0.0));
}

TEST_CASE("bands never go negative under round-off") {
    const FilterBank fb({2.0, 7}, 1.0);
    for (int i = 0; i <= 200000; ++i) {
        const double x = 130.0 * i / 200000.0;
        for (int k = 0; k <= 7; ++k) REQUIRE(fb.zeta(k, x) >= 0.0);
    }
}
