#include <doctest.h>

#include <cmath>

#include "hforge/errors.hpp"
#include "hforge/optimizer.hpp"

using namespace hforge;

TEST_CASE("fit_decay on synthetic data") {
    // exact exponential: slope -2, zero residual
    std::vector<double> Rs = {2, 3, 4, 5};
    std::vector<double> Ws;
    for (double R : Rs) Ws.push_back(std::exp(-2 * R));
    const FitResult fit = fit_decay(Rs, Ws);
    CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(fit.residual == doctest::Approx(0.0).epsilon(1e-12));

    // constant data: slope 0
    const FitResult flat = fit_decay(Rs, {0.7, 0.7, 0.7, 0.7});
    CHECK(flat.slope == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(fit_decay(Rs, {1.0, -1.0, 1.0, 1.0}), NonPositiveEnergy);
    CHECK_THROWS_AS(fit_decay({1, 2}, {1.0, 1.0}), ForgeError);
}

TEST_CASE("fit_decay on the frozen catenoid energies") {
    const FitResult fit =
        fit_decay({2, 3, 4, 5}, {0.127367, 0.0171432, 0.00231838, 0.000313727});
    CHECK(fit.slope > -2.4);
    CHECK(fit.slope < -1.8);
    CHECK(fit.residual < 0.1);
}

TEST_CASE("sweep marks feasibility and evaluates feasible rows") {
    QuadOptions opt;
    opt.tol = 1e-4;
    const SweepTable table = sweep(2, 0, {0.1}, {3, 4}, {0.5}, {0}, opt);
    REQUIRE(table.rows.size() == 2);
    for (const SweepRow& row : table.rows) {
        CHECK(row.feasible);
        CHECK(row.excess > 0);  // strict inequality away from round spheres
    }

    const SweepTable bad = sweep(2, 0, {0.3}, {3}, {0.5}, {0}, opt);
    REQUIRE(bad.rows.size() == 1);
    CHECK(!bad.rows[0].feasible);
}

TEST_CASE("refining delta reduces the minimal excess over the grid") {
    QuadOptions opt;
    opt.tol = 1e-4;
    auto min_excess = [&](double delta) {
        const SweepTable t = sweep(2, 0, {delta}, {4}, {0.3}, {0}, opt);
        double best = 1e300;
        for (const SweepRow& r : t.rows)
            if (r.feasible) best = std::min(best, r.excess);
        return best;
    };
    CHECK(min_excess(0.05) < min_excess(0.1));
    CHECK(min_excess(0.02) < min_excess(0.05));
}

TEST_CASE("minimize_excess reaches a coarse target and re-validates") {
    QuadOptions opt;
    opt.tol = 1e-5;
    const MinimizeResult res = minimize_excess(2, 0, 1.0, 80, opt, 7);
    CHECK(res.success);
    CHECK(res.excess > 0);
    CHECK(res.excess < 1.0);
    CHECK(res.in_unit_ball);
    CHECK(std::fabs(res.area - 8 * M_PI) < 1e-4);
    CHECK(validate(res.spec).empty());
    CHECK(res.evaluations <= 80);
}

TEST_CASE("minimize_excess exhausts its budget on an impossible target") {
    QuadOptions opt;
    opt.tol = 1e-5;
    const MinimizeResult res = minimize_excess(2, 0, 1e-12, 25, opt, 7);
    CHECK(!res.success);
    CHECK(res.excess > 1e-12);  // best-so-far attached
    CHECK(validate(res.spec).empty());
}

TEST_CASE("helfrich divergence demo") {
    QuadOptions opt;
    opt.tol = 1e-4;
    const DivergenceDemo demo =
        helfrich_divergence_demo(HelfrichParams{0.25, 1.0, 0.0}, {1, 2, 4}, opt);
    REQUIRE(demo.rows.size() == 3);
    CHECK(demo.rows[0].energy > demo.rows[1].energy);
    CHECK(demo.rows[1].energy > demo.rows[2].energy);
    CHECK(std::fabs(demo.slope_fit.slope + 4 * M_PI) < 0.2 * 4 * M_PI);
}
