#include <doctest.h>

#include <cmath>

#include "spinrelax/sweep.hpp"

using namespace spinrelax;

TEST_CASE("eps=0 sweep: pure dephasing rates below the boundary") {
    const auto records = sweep_temperature(0.0, 1.0, 0.0, 0.9, 91);
    for (const auto& rec : records) {
        CHECK(rec.report.regime == Regime::ComplexPair);
        CHECK(rec.report.gamma_L.front() == doctest::Approx(rec.gamma).epsilon(1e-12));
        if (rec.theta > 0.0)
            CHECK(*rec.report.gamma_T == doctest::Approx(rec.theta).epsilon(1e-10));
        if (rec.ratio) CHECK(*rec.ratio == doctest::Approx(2.0).epsilon(1e-10));
    }
}

TEST_CASE("delta=0 sweep: conserved mode gives ratio 0") {
    const auto records = sweep_temperature(1.0, 1.0, 0.1, 3.0, 30);
    for (const auto& rec : records) {
        CHECK(rec.report.regime == Regime::ComplexPair);
        CHECK(std::abs(rec.report.gamma_L.front()) <= 1e-12);
        CHECK(*rec.ratio == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("eps=0.2 sweep crosses an all-real window") {
    const auto records = sweep_temperature(0.2, 1.0, 0.05, 3.0, 600);
    bool seen_three_real = false;
    int transitions = 0;
    Regime last = records.front().report.regime;
    for (const auto& rec : records) {
        if (rec.report.regime == Regime::ThreeReal) seen_three_real = true;
        if (rec.report.regime != last && rec.report.regime != Regime::Degenerate
            && last != Regime::Degenerate)
            ++transitions;
        if (rec.report.regime != Regime::Degenerate) last = rec.report.regime;
    }
    CHECK(seen_three_real);
    CHECK(transitions == 2);
    CHECK(records.front().report.regime == Regime::ComplexPair);
    CHECK(records.back().report.regime == Regime::ComplexPair);
}

TEST_CASE("branch labels are stable along the sweep") {
    const auto records = sweep_temperature(0.2, 1.0, 0.05, 3.0, 600);
    // the label attached to each slot never exceeds the small branch budget
    int max_label = -1;
    for (const auto& rec : records)
        for (int b : rec.branch) max_label = std::max(max_label, b);
    CHECK(max_label >= 0);
    CHECK(max_label <= 4);
}

TEST_CASE("bifurcation location at eps=0") {
    for (double eta : {0.5, 1.0}) {
        const auto rep = find_bifurcations(0.0, eta, 0.05, 3.0);
        REQUIRE(rep.critical_thetas.size() == 1);
        CHECK(std::abs(rep.critical_thetas.front() - 1.0 / eta) <= 1e-8);
        CHECK(rep.critical_gammas.front() == doctest::Approx(2.0).epsilon(1e-8));
        REQUIRE(rep.regions.size() == 2);
        CHECK(rep.regions[0].regime == Regime::ComplexPair);
        CHECK(rep.regions[1].regime == Regime::ThreeReal);
        CHECK(rep.regions[0].label == "I");
        CHECK(rep.regions[1].label == "II");
    }
}

TEST_CASE("eps=0.2 has two critical temperatures, larger eps none") {
    const auto rep = find_bifurcations(0.2, 1.0, 0.05, 3.0);
    REQUIRE(rep.critical_thetas.size() == 2);
    CHECK(rep.critical_thetas[0] < rep.critical_thetas[1]);
    REQUIRE(rep.regions.size() == 3);
    CHECK(rep.regions[0].regime == Regime::ComplexPair);
    CHECK(rep.regions[1].regime == Regime::ThreeReal);
    CHECK(rep.regions[2].regime == Regime::ComplexPair);

    for (double eps : {0.4, 0.6}) {
        BifurcationOptions opts;
        opts.jump_grid = 0; // structure only
        const auto none = find_bifurcations(eps, 1.0, 0.05, 50.0, opts);
        CHECK(none.critical_thetas.empty());
        REQUIRE(none.regions.size() == 1);
        CHECK(none.regions[0].regime == Regime::ComplexPair);
    }
}

TEST_CASE("critical gamma values do not depend on eta") {
    BifurcationOptions opts;
    opts.jump_grid = 0;
    const auto a = find_bifurcations(0.2, 0.1, 0.5, 30.0, opts);
    const auto b = find_bifurcations(0.2, 1.0, 0.05, 3.0, opts);
    const auto c = find_bifurcations(0.2, 10.0, 0.005, 0.3, opts);
    REQUIRE(a.critical_gammas.size() == 2);
    REQUIRE(b.critical_gammas.size() == 2);
    REQUIRE(c.critical_gammas.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(a.critical_gammas[i] - b.critical_gammas[i]) <= 1e-7);
        CHECK(std::abs(b.critical_gammas[i] - c.critical_gammas[i]) <= 1e-7);
    }
}

TEST_CASE("endpoint inside the degeneracy band is rejected") {
    // eps=0, eta=1: the discriminant vanishes exactly at theta=1
    CHECK_THROWS_AS(find_bifurcations(0.0, 1.0, 1.0, 3.0), std::invalid_argument);
}

TEST_CASE("boundary eps of the all-real window") {
    const double eps_star = critical_epsilon(0.2, 0.4);
    CHECK(eps_star > 0.2);
    CHECK(eps_star < 0.4);
    // The window peak vanishes cubically at the boundary, so the
    // band-guarded scan resolves the boundary to a few 1e-4.
    CHECK(std::abs(eps_star - 1.0 / 3.0) <= 5e-4);

    BifurcationOptions opts;
    opts.jump_grid = 0;
    const auto below = find_bifurcations(eps_star - 0.01, 1.0, 0.05, 5.0, opts);
    CHECK(below.critical_thetas.size() == 2);
    const auto above = find_bifurcations(eps_star + 0.01, 1.0, 0.05, 5.0, opts);
    CHECK(above.critical_thetas.empty());

    CHECK_THROWS_AS(critical_epsilon(0.4, 0.6), std::invalid_argument);
}

TEST_CASE("hysteresis: upward and downward jumps bracket the window") {
    const auto rep = find_bifurcations(0.2, 1.0, 1e-3, 3.0);
    REQUIRE(rep.critical_thetas.size() == 2);
    const double theta_lo = rep.critical_thetas[0];
    const double theta_hi = rep.critical_thetas[1];

    auto sweep = sweep_temperature(0.2, 1.0, 1e-3, 3.0, 3001);
    const double grid_step = sweep[1].theta - sweep[0].theta;

    const auto up = track_direction_jumps(sweep, TraceDirection::Upward);
    REQUIRE(up.size() == 1);
    CHECK(std::abs(up.front().theta - theta_hi) <= 2.0 * grid_step);

    std::reverse(sweep.begin(), sweep.end());
    const auto down = track_direction_jumps(sweep, TraceDirection::Downward);
    REQUIRE(down.size() == 1);
    CHECK(std::abs(down.front().theta - theta_lo) <= 2.0 * grid_step);

    CHECK(up.front().theta > down.front().theta);
}

TEST_CASE("hysteresis holds wherever the window exists") {
    for (double eps : {0.1, 0.25, 0.3}) {
        auto sweep = sweep_temperature(eps, 1.0, 1e-3, 6.0, 4001);
        const auto up = track_direction_jumps(sweep, TraceDirection::Upward);
        std::reverse(sweep.begin(), sweep.end());
        const auto down = track_direction_jumps(sweep, TraceDirection::Downward);
        REQUIRE(up.size() == 1);
        REQUIRE(down.size() == 1);
        CHECK(up.front().theta > down.front().theta);
    }
}

TEST_CASE("no window, no jumps: the direction rotates continuously") {
    auto sweep = sweep_temperature(0.6, 1.0, 1e-3, 8.0, 2001);
    const auto up = track_direction_jumps(sweep, TraceDirection::Upward);
    CHECK(up.empty());
    std::reverse(sweep.begin(), sweep.end());
    const auto down = track_direction_jumps(sweep, TraceDirection::Downward);
    CHECK(down.empty());
}

TEST_CASE("trace ordering is validated") {
    const auto sweep = sweep_temperature(0.2, 1.0, 0.1, 1.0, 11);
    CHECK_THROWS_AS(track_direction_jumps(sweep, TraceDirection::Downward),
                    std::invalid_argument);
}

TEST_CASE("inequalities hold across a sweep corpus") {
    for (double eps : {0.0, 0.2, 0.5, 1.0}) {
        const auto records = sweep_temperature(eps, 1.0, 0.0, 4.0, 200);
        for (const auto& rec : records) {
            if (rec.report.regime == Regime::ComplexPair) {
                CHECK(2.0 * *rec.report.gamma_T - rec.report.gamma_L.front()
                      >= -1e-12);
            } else {
                const auto& g = rec.report.gamma_L;
                CHECK(g[0] + g[1] - g[2] >= -1e-12);
                CHECK(g[1] + g[2] - g[0] >= -1e-12);
                CHECK(g[2] + g[0] - g[1] >= -1e-12);
            }
        }
    }
}
