#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wsmorse/evolution.hpp"
#include "wsmorse/numerics.hpp"
#include "wsmorse/scenarios.hpp"

using namespace wsmorse;
namespace sc = wsmorse::scenarios;

TEST_CASE("one step reproduces the Taylor prediction for the contracting circle") {
    const double R = 1.0;
    const int ns = 64;
    const double ds = 2.0 * M_PI / ns;
    const double dt = ds / 4.0;
    auto chart = sc::flat_chart(4);
    EvolutionState s0 = sc::static_circle_state(R, ns, dt);
    EvolutionState s1 = step(s0, *chart);
    // spatial part: X + (dt^2/2) d2X/dsigma2 (V spatial = 0 initially)
    for (int j = 0; j < ns; ++j) {
        const int jp = (j + 1) % ns, jm = (j + ns - 1) % ns;
        for (int c = 1; c <= 2; ++c) {
            const double lap = (s0.X(jp, c) - 2.0 * s0.X(j, c) + s0.X(jm, c)) / (ds * ds);
            const double predict = s0.X(j, c) + 0.5 * dt * dt * lap;
            CHECK(s1.X(j, c) == doctest::Approx(predict).epsilon(1e-10));
        }
        CHECK(s1.X(j, 0) == doctest::Approx(dt).epsilon(1e-12));
    }
}

TEST_CASE("breathing ring follows the closed-form collapse") {
    const double R = 1.0;
    const int ns = 2048;
    const double ds = 2.0 * M_PI / ns;
    const double dt = ds / 2.0;
    auto chart = sc::flat_chart(4);
    EvolutionState s = sc::breathing_ring_state(R, ns, dt);
    const double T = R * M_PI / 3.0;
    const long nsteps = std::lround(T / dt);
    for (long k = 0; k < nsteps; ++k) s = step(s, *chart);
    const double t = nsteps * dt;
    double err = 0.0;
    for (int j = 0; j < ns; ++j) {
        const double sg = j * ds;
        err = std::max(err, std::abs(s.X(j, 1) - R * std::cos(t / R) * std::cos(sg)));
        err = std::max(err, std::abs(s.X(j, 2) - R * std::cos(t / R) * std::sin(sg)));
        err = std::max(err, std::abs(s.X(j, 0) - R * t));
    }
    CHECK(err < 1e-6);
}

TEST_CASE("equator tube stays static over a thousand steps") {
    const int ns = 64;
    const double dt = 1e-3;
    auto chart = sc::product_chart(3, 1.0);
    EvolutionState s = sc::equator_state(1.0, ns, dt);
    const Mat X0 = s.X;
    for (int k = 0; k < 1000; ++k) s = step(s, *chart);
    double drift = 0.0;
    for (int j = 0; j < ns; ++j) {
        drift = std::max(drift, std::abs(s.X(j, 1) - X0(j, 1)));
        drift = std::max(drift, std::abs(s.X(j, 2) - X0(j, 2)));
    }
    CHECK(drift < 1e-8);
}

TEST_CASE("CFL and degenerate-tube guards") {
    auto chart = sc::flat_chart(4);
    EvolutionState s = sc::breathing_ring_state(1.0, 32, 1.0); // dt > dsigma
    CHECK_THROWS_WITH_AS(step(s, *chart), doctest::Contains("CFL"), ValidationError);

    // evolve the ring into its collapse: f -> 0 terminates the run
    const int ns = 1024;
    const double dt = 2.0 * M_PI / ns / 2.0;
    EvolutionState ring = sc::breathing_ring_state(1.0, ns, dt);
    CHECK_THROWS_WITH_AS(evolve(ring, chart, 2.0, {}), doctest::Contains("degenerate tube"),
                         NumericalError);
}

TEST_CASE("flat evolution conserves the discrete wave energy") {
    auto chart = sc::flat_chart(4);
    const int ns = 128;
    EvolutionState s = sc::traveling_wave_state(0.3, ns, 1e-3);
    const double e0 = wave_energy(s, *chart);
    double emax_dev = 0.0;
    for (int k = 0; k < 10000; ++k) {
        s = step(s, *chart);
        emax_dev = std::max(emax_dev, std::abs(wave_energy(s, *chart) - e0));
    }
    CHECK(emax_dev / e0 < 1e-6);
}

TEST_CASE("evolved equator grid passes the gauge check") {
    auto chart = sc::product_chart(3, 1.0);
    EvolutionState s = sc::equator_state(1.0, 64, 1e-2);
    EvolutionResult r = evolve(s, chart, 1.0, {});
    CHECK(gauge_residuals(r.grid).max_abs() < 1e-8);
    CHECK(r.stats.back().tau == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("geodesic residual of the evolved ring refines at second order") {
    auto chart = sc::flat_chart(4);
    std::vector<double> hs, errs;
    for (int ns : {64, 128, 256}) {
        const double ds = 2.0 * M_PI / ns;
        const double dt = ds / 2.0;
        EvolutionResult r = evolve(sc::breathing_ring_state(1.0, ns, dt), chart, 1.0, {});
        hs.push_back(ds);
        errs.push_back(geodesic_residual(r.grid, GeodesicForm::gauge_fixed).max_abs());
    }
    const double slope = loglog_slope(hs, errs);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("gauge drift ceiling aborts an out-of-gauge run") {
    auto chart = sc::flat_chart(4);
    EvolutionState s = sc::breathing_ring_state(1.0, 64, 2.0 * M_PI / 64.0 / 2.0);
    // corrupt the velocity so the gauge residual grows quickly
    for (int j = 0; j < 64; ++j) s.V(j, 1) += 0.8;
    EvolveOptions opt;
    opt.gauge_drift_ceiling = 0.05;
    CHECK_THROWS_WITH_AS(evolve(s, chart, 1.0, opt), doctest::Contains("gauge drift"),
                         NumericalError);
}

TEST_CASE("arclength resampling flattens |zeta| for a lopsided circle") {
    auto chart = sc::flat_chart(4);
    const int ns = 256;
    EvolutionState s;
    s.dt = 1e-3;
    s.dsigma = 2.0 * M_PI / ns;
    s.X = Mat::Zero(ns, 4);
    s.V = Mat::Zero(ns, 4);
    for (int j = 0; j < ns; ++j) {
        // non-uniform angle parameterization of the unit circle
        const double u = j * s.dsigma;
        const double ang = u + 0.3 * std::sin(u);
        s.X(j, 1) = std::cos(ang);
        s.X(j, 2) = std::sin(ang);
        s.V(j, 0) = 1.0;
    }
    EvolutionState r = resample_to_arclength(s, *chart);
    auto speed_spread = [&](const EvolutionState& st) {
        double lo = 1e300, hi = 0.0;
        for (int j = 0; j < ns; ++j) {
            const int jp = (j + 1) % ns;
            const double seg = std::hypot(st.X(jp, 1) - st.X(j, 1), st.X(jp, 2) - st.X(j, 2));
            lo = std::min(lo, seg);
            hi = std::max(hi, seg);
        }
        return (hi - lo) / hi;
    };
    CHECK(speed_spread(s) > 0.2);
    CHECK(speed_spread(r) < 1e-3);
}
