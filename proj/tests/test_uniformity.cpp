#include <catch2/catch_amalgamated.hpp>

#include "oscidecay/uniformity.hpp"

using namespace oscidecay;

namespace {

SampledFunction sample(double a, double b, int nodes,
                       const std::function<std::complex<double>(double)>& f) {
    SampledFunction s;
    s.a = a;
    s.b = b;
    s.values.resize(nodes);
    for (int i = 0; i < nodes; ++i) s.values[i] = f(a + (b - a) * i / (nodes - 1));
    return s;
}

}  // namespace

TEST_CASE("a pure modulated phase on the grid is flagged nonuniform") {
    // f = e^{i q0} with q0 = 8 t on a grid that contains c = 8 exactly
    const double lambda = 16.0;
    auto f = sample(-1, 1, 2048, [](double t) {
        return std::complex<double>(std::cos(8 * t), std::sin(8 * t));
    });
    CoefficientGridSpec grid;
    grid.extent = 48;  // step 48/ something containing 8: points 13 -> step 8
    grid.points = {13};
    auto report = uniformity_scan(f, lambda, 1, 0.1, grid);
    CHECK_FALSE(report.uniform);
    // the best phase is q0 itself and the coefficient is the interval length
    CHECK(report.best_coefficients[0] == Catch::Approx(8.0));
    CHECK(report.max_coefficient == Catch::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("the zero function is vacuously uniform") {
    auto f = sample(-1, 1, 512, [](double) { return std::complex<double>(0, 0); });
    CoefficientGridSpec grid;
    grid.extent = 4;
    grid.points = {9, 9};
    auto report = uniformity_scan(f, 32.0, 2, 0.1, grid);
    CHECK(report.uniform);
    CHECK(report.max_coefficient == 0.0);
}

TEST_CASE("64-step alternating function against quadratic phases") {
    // recorded from a dense reference scan of this exact configuration
    SampledFunction f;
    f.a = -1;
    f.b = 1;
    const int N = 16385;
    f.values.resize(N);
    for (int i = 0; i < N; ++i) {
        const double t = -1.0 + 2.0 * i / (N - 1);
        int step = (int)std::floor((t + 1.0) / 2.0 * 64);
        if (step >= 64) step = 63;
        f.values[i] = (step % 2 == 0) ? 1.0 : -1.0;
    }
    auto grid = default_coefficient_grid(1024.0, 2, 1.0, 65);
    REQUIRE(grid.points[0] == 65);
    auto report = uniformity_scan(f, 1024.0, 2, 0.1, grid);
    CHECK(report.max_coefficient == Catch::Approx(0.288959522166695).epsilon(1e-9));
    CHECK(report.best_coefficients[0] == Catch::Approx(-96.0));
    CHECK(report.best_coefficients[1] == Catch::Approx(0.0).margin(1e-12));
    CHECK(report.uniform);
}

TEST_CASE("the scan lower-bounds any explicit on-grid correlation") {
    auto f = sample(-1, 1, 4096, [](double t) {
        return std::complex<double>(std::cos(3 * t * t), -std::sin(0.5 * t));
    });
    CoefficientGridSpec grid;
    grid.extent = 6;
    grid.points = {7, 7};
    auto report = uniformity_scan(f, 64.0, 2, 0.1, grid);
    // direct coefficient at the on-grid phase q = 2 t + 4 t^2
    const double h = f.spacing();
    std::complex<double> G(0, 0);
    for (int i = 0; i < f.count(); ++i) {
        const double t = f.node(i);
        const double w = (i == 0 || i + 1 == f.count()) ? h / 2 : h;
        const double q = 2 * t + 4 * t * t;
        G += w * f.values[i] * std::complex<double>(std::cos(q), -std::sin(q));
    }
    CHECK(report.max_coefficient >= std::abs(G) - 1e-12);
}

TEST_CASE("under-resolved samplings are rejected") {
    auto f = sample(-1, 1, 32, [](double t) { return std::complex<double>(t, 0); });
    CoefficientGridSpec grid;
    grid.extent = 3000;
    grid.points = {63};
    CHECK_THROWS_AS(uniformity_scan(f, 1024.0, 1, 0.1, grid), std::invalid_argument);
}
