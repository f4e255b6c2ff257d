#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wsmorse/scenarios.hpp"
#include "wsmorse/worldsheet.hpp"

using namespace wsmorse;
namespace sc = wsmorse::scenarios;

namespace {

// transverse field pointing along the constant out-of-plane direction of the
// flat chart, with tau profile v(tau); orthogonal to xi and zeta everywhere
// on the ring scenarios
GridField z_polarized(const WorldsheetGrid& grid, const std::function<double(double)>& v) {
    GridField eta(grid.ntau(), grid.nsigma, grid.chart->dim);
    for (int i = 0; i < grid.ntau(); ++i)
        for (int j = 0; j < grid.nsigma; ++j) eta.at(i, j, 3) = v(grid.tau[i]);
    return eta;
}

} // namespace

TEST_CASE("area density of the static cylinder is R") {
    auto grid = sc::static_cylinder(2.0, 1.0, 17, 32);
    Mat f = area_density(grid);
    CHECK((f.array() - 2.0).abs().maxCoeff() < 1e-10);
}

TEST_CASE("area density of an orthonormal-gauge tube is 1") {
    auto grid = sc::straight_tube(1.0, 1.0, 17, 32);
    Mat f = area_density(grid);
    CHECK((f.array() - 1.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("degenerate tube is reported with the offending node") {
    // sigma-independent embedding: zeta = 0, discriminant 0
    auto grid = sc::static_cylinder(1.0, 1.0, 9, 16);
    grid.xi_fn = nullptr;
    grid.zeta_fn = nullptr; // mutated data invalidates the exact tangents
    for (int i = 0; i < grid.ntau(); ++i)
        for (int j = 0; j < grid.nsigma; ++j) {
            grid.X.at(i, j, 1) = 0.0;
            grid.X.at(i, j, 2) = 0.0;
        }
    CHECK_THROWS_WITH_AS(area_density(grid), doctest::Contains("degenerate tube"), NumericalError);
}

TEST_CASE("action of static cylinders") {
    CHECK(action(sc::static_cylinder(1.0, 1.0, 33, 64)) ==
          doctest::Approx(-2.0 * M_PI).epsilon(1e-10));
    CHECK(action(sc::static_cylinder(2.0, 3.0, 33, 64)) ==
          doctest::Approx(-12.0 * M_PI).epsilon(1e-10));
    // constant integrand: doubling nsigma must not move the quadrature
    const double a1 = action(sc::static_cylinder(1.0, 1.0, 33, 64));
    const double a2 = action(sc::static_cylinder(1.0, 1.0, 33, 128));
    CHECK(std::abs(a1 - a2) < 1e-12);
}

TEST_CASE("currents reduce to (-xi, zeta) in exact orthonormal gauge") {
    auto grid = sc::straight_tube(1.0, 1.0, 17, 32);
    CurrentField cur = currents(grid);
    for (int i = 0; i < grid.ntau(); ++i)
        for (int j = 0; j < grid.nsigma; ++j) {
            Vec pt = cur.p_tau.vec(i, j), ps = cur.p_sigma.vec(i, j);
            CHECK(pt(0) == doctest::Approx(-1.0).epsilon(1e-13));
            CHECK(std::abs(pt(1)) < 1e-13);
            CHECK(ps(1) == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(std::abs(ps(0)) < 1e-13);
        }
}

TEST_CASE("currents of the static cylinder: P_tau = -R xi") {
    const double R = 2.0;
    auto grid = sc::static_cylinder(R, 1.0, 9, 48);
    CurrentField cur = currents(grid);
    const Vec pt = cur.p_tau.vec(4, 7);
    CHECK(pt(0) == doctest::Approx(-R).epsilon(1e-12));
    CHECK(std::abs(pt(1)) < 1e-12);
    CHECK(std::abs(pt(2)) < 1e-12);
    // P_sigma = zeta / R here
    const TangentField t = tangents(grid);
    const Vec ps = cur.p_sigma.vec(4, 7);
    CHECK((ps - t.zeta.vec(4, 7) / R).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("constraint contractions vanish for consistent grid/current pairs") {
    auto grid = sc::breathing_ring(1.0, 1.0, 33, 64);
    ConstraintResiduals r = constraint_residuals(grid, currents(grid));
    CHECK(r.max_abs() < 1e-10);

    // negative control: currents taken from a sheared tube are inconsistent
    // with the static cylinder's tangents
    auto stat = sc::static_cylinder(1.0, 1.0, 33, 64);
    auto shear = sc::sheared_cylinder(1.0, 0.2, 1.0, 33, 64);
    ConstraintResiduals bad = constraint_residuals(stat, currents(shear));
    CHECK(bad.max_abs() > 1e-3);
}

TEST_CASE("gauge residuals flag shear and sigma scaling") {
    auto good = sc::static_cylinder(1.0, 1.0, 33, 64);
    CHECK(gauge_residuals(good).max_abs() < 1e-10);

    const double eps = 0.01, R = 1.5;
    auto shear = sc::sheared_cylinder(R, eps, 1.0, 65, 64);
    GaugeResiduals gr = gauge_residuals(shear);
    CHECK(gr.xi_zeta.cwiseAbs().maxCoeff() == doctest::Approx(eps * R * R).epsilon(1e-6));

    auto scaled = sc::straight_tube(2.0, 1.0, 17, 32); // zeta.zeta = 4, xi.xi = -1
    CHECK(gauge_residuals(scaled).trace.cwiseAbs().maxCoeff() ==
          doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("geodesic residual: straight tube vanishes on both paths") {
    auto grid = sc::straight_tube(1.3, 1.0, 17, 32);
    CHECK(geodesic_residual(grid, GeodesicForm::gauge_fixed).max_abs() < 1e-10);
    CHECK(geodesic_residual(grid, GeodesicForm::current).max_abs() < 1e-10);
}

TEST_CASE("geodesic residual: equator tube is a geodesic surface") {
    auto grid = sc::equator_tube(1.0, 1.0, 17, 64);
    CHECK(geodesic_residual(grid).max_abs() < 1e-10);
}

TEST_CASE("geodesic residual: small circle is not a geodesic surface") {
    const double th0 = M_PI / 3.0;
    auto grid = sc::latitude_tube(1.0, th0, 1.0, 17, 64);
    GridField res = geodesic_residual(grid, GeodesicForm::gauge_fixed);
    // only the polar component survives and equals Gamma^theta_phiphi(th0)
    const double expect = -std::sin(th0) * std::cos(th0);
    CHECK(res.at(8, 10, 1) == doctest::Approx(expect).epsilon(1e-10));
    CHECK(std::abs(res.at(8, 10, 0)) < 1e-10);
    CHECK(std::abs(res.at(8, 10, 2)) < 1e-10);
    CHECK(geodesic_residual(grid, GeodesicForm::current).max_abs() ==
          doctest::Approx(std::abs(expect)).epsilon(1e-8));
}

TEST_CASE("deviation operator annihilates tau-linear fields on flat tubes") {
    auto grid = sc::straight_tube(1.0, 1.0, 17, 32);
    GridField eta(grid.ntau(), grid.nsigma, 4);
    for (int i = 0; i < grid.ntau(); ++i)
        for (int j = 0; j < grid.nsigma; ++j) {
            eta.at(i, j, 2) = 0.7 * grid.tau[i];
            eta.at(i, j, 3) = 1.0 - 0.2 * grid.tau[i];
        }
    CHECK(deviation_operator(grid, eta).max_abs() < 1e-10);
}

TEST_CASE("deviation operator is O(1) on a random smooth probe field") {
    auto grid = sc::straight_tube(1.0, 1.0, 33, 32);
    GridField eta(grid.ntau(), grid.nsigma, 4);
    for (int i = 0; i < grid.ntau(); ++i)
        for (int j = 0; j < grid.nsigma; ++j)
            eta.at(i, j, 3) = std::sin(2.0 * M_PI * grid.tau[i]) * std::cos(grid.sigma(j));
    CHECK(deviation_operator(grid, eta).max_abs() > 0.1);
}

TEST_CASE("second variation: zero field and quadratic scaling") {
    auto grid = sc::breathing_ring(1.0, 1.0, 129, 32);
    GridField zero(grid.ntau(), grid.nsigma, 4);
    CHECK(second_variation_fd(grid, zero) == doctest::Approx(0.0));

    GridField eta = z_polarized(grid, [](double t) { return 0.3 * std::sin(M_PI * t); });
    GridField eta2 = z_polarized(grid, [](double t) { return 0.6 * std::sin(M_PI * t); });
    const double q1 = second_variation_fd(grid, eta);
    const double q2 = second_variation_fd(grid, eta2);
    CHECK(q2 == doctest::Approx(4.0 * q1).epsilon(1e-6));
}

TEST_CASE("second variation satisfies the parallelogram identity") {
    auto grid = sc::breathing_ring(1.0, 1.0, 129, 32);
    GridField a = z_polarized(grid, [](double t) { return 0.3 * std::sin(M_PI * t); });
    GridField b = z_polarized(grid, [](double t) { return 0.3 * std::sin(2.0 * M_PI * t); });
    GridField sum = a, dif = a;
    for (std::size_t k = 0; k < a.data.size(); ++k) {
        sum.data[k] = a.data[k] + b.data[k];
        dif.data[k] = a.data[k] - b.data[k];
    }
    const double lhs = second_variation_fd(grid, sum) + second_variation_fd(grid, dif);
    const double rhs = 2.0 * second_variation_fd(grid, a) + 2.0 * second_variation_fd(grid, b);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-5));
}

TEST_CASE("second variation matches the analytic transverse response") {
    // out-of-plane bump on the breathing ring: response is 2 pi Int vdot^2
    const double T = 1.0;
    auto grid = sc::breathing_ring(1.0, T, 1025, 512);
    GridField eta = z_polarized(grid, [T](double t) { return std::sin(M_PI * t / T); });
    const double expect = 2.0 * M_PI * M_PI * M_PI / (2.0 * T);
    CHECK(second_variation_fd(grid, eta) == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("second variation agrees with the deviation-operator quadrature") {
    const double T = 1.0;
    auto grid = sc::breathing_ring(1.0, T, 1025, 512);
    GridField eta = z_polarized(grid, [T](double t) { return std::sin(M_PI * t / T); });
    const GridField lam = deviation_operator(grid, eta);
    const Mat integrand = grid_inner(grid, eta, lam);
    const double via_operator = surface_integral(grid, integrand);
    const double via_fd = second_variation_fd(grid, eta);
    CHECK(via_fd == doctest::Approx(via_operator).epsilon(1e-4));
}

TEST_CASE("first variation vanishes on a geodesic surface and not elsewhere") {
    // rigid in-plane displacement of the breathing ring
    auto ring = sc::breathing_ring(1.0, 1.0, 513, 64);
    GridField eta(ring.ntau(), ring.nsigma, 4);
    for (int i = 0; i < ring.ntau(); ++i) {
        const double v = std::sin(M_PI * ring.tau[i]);
        for (int j = 0; j < ring.nsigma; ++j) eta.at(i, j, 1) = v;
    }
    CHECK(std::abs(first_variation_fd(ring, eta)) < 1e-4);

    // radial bump on the non-geodesic static cylinder: dS/dalpha = -2pi Int v
    auto cyl = sc::static_cylinder(1.0, 1.0, 513, 512);
    GridField radial(cyl.ntau(), cyl.nsigma, 4);
    for (int i = 0; i < cyl.ntau(); ++i) {
        const double v = std::sin(M_PI * cyl.tau[i]);
        for (int j = 0; j < cyl.nsigma; ++j) {
            radial.at(i, j, 1) = v * std::cos(cyl.sigma(j));
            radial.at(i, j, 2) = v * std::sin(cyl.sigma(j));
        }
    }
    const double expect = -2.0 * M_PI * 2.0 / M_PI; // -2pi Int_0^1 sin(pi t) dt
    CHECK(first_variation_fd(cyl, radial) == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("boundary rows of the variation field are enforced") {
    auto grid = sc::breathing_ring(1.0, 1.0, 65, 32);
    GridField eta = z_polarized(grid, [](double) { return 1.0; });
    CHECK_THROWS_AS(second_variation_fd(grid, eta), ValidationError);
}
