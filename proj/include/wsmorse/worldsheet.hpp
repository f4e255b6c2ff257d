#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "wsmorse/manifold.hpp"

namespace wsmorse {

/// Field sampled on the (tau, sigma) grid with ncomp components per node.
struct GridField {
    int ntau = 0, nsigma = 0, ncomp = 0;
    std::vector<double> data;

    GridField() = default;
    GridField(int nt, int ns, int nc)
        : ntau(nt), nsigma(ns), ncomp(nc),
          data(static_cast<std::size_t>(nt) * ns * nc, 0.0) {}

    double& at(int i, int j, int c) { return data[idx(i, j, c)]; }
    double at(int i, int j, int c) const { return data[idx(i, j, c)]; }
    Vec vec(int i, int j) const {
        Vec v(ncomp);
        for (int c = 0; c < ncomp; ++c) v(c) = at(i, j, c);
        return v;
    }
    void set_vec(int i, int j, const Vec& v) {
        for (int c = 0; c < ncomp; ++c) at(i, j, c) = v(c);
    }
    double max_abs() const {
        double m = 0.0;
        for (double x : data) m = std::max(m, std::abs(x));
        return m;
    }

private:
    std::size_t idx(int i, int j, int c) const {
        return (static_cast<std::size_t>(i) * nsigma + j) * ncomp + c;
    }
};

/// Discretized closed-string tube X(tau, sigma). tau is uniform on [0, T];
/// sigma_j = j * 2 pi / nsigma with periodic wrap and no duplicated seam
/// column. Derivatives of periodic (angular) chart coordinates are taken
/// through wrapped adjacent differences so that seams in the stored values
/// do not pollute stencils.
///
/// Tangents default to second-order stencils (central interior, one-sided
/// at the tau ends, wraparound in sigma). Analytically constructed
/// scenarios attach exact tangent functions instead; grids produced by
/// evolution or perturbation always fall back to the stencils.
struct WorldsheetGrid {
    std::vector<double> tau;
    int nsigma = 0;
    GridField X;
    std::shared_ptr<const MetricChart> chart;
    std::function<Vec(double tau, double sigma)> xi_fn;   // optional exact dX/dtau
    std::function<Vec(double tau, double sigma)> zeta_fn; // optional exact dX/dsigma

    int ntau() const { return static_cast<int>(tau.size()); }
    double dtau() const { return tau[1] - tau[0]; }
    double dsigma() const { return 2.0 * M_PI / nsigma; }
    double sigma(int j) const { return j * dsigma(); }
    int wrap(int j) const { return ((j % nsigma) + nsigma) % nsigma; }
};

/// Tangent fields xi = dX/dtau and zeta = dX/dsigma, from the attached
/// exact functions when present, otherwise from the stencils.
struct TangentField {
    GridField xi, zeta;
};
TangentField tangents(const WorldsheetGrid& grid);

/// f(tau,sigma) = sqrt((xi.zeta)^2 - (xi.xi)(zeta.zeta)).
/// Throws NumericalError naming the first node where the discriminant
/// fails to be positive.
Mat area_density(const WorldsheetGrid& grid);

/// S = -(trapezoid in tau) x (periodic rectangle in sigma) of f.
double action(const WorldsheetGrid& grid);

struct CurrentField {
    GridField p_tau, p_sigma;
};

/// World-sheet currents
///   P_tau   = (1/f) [ (xi.zeta) zeta - (zeta.zeta) xi ]
///   P_sigma = (1/f) [ (xi.zeta) xi   - (xi.xi)     zeta ]
CurrentField currents(const WorldsheetGrid& grid);

/// The four constraint contractions P_tau.zeta, P_tau.P_tau + zeta.zeta,
/// P_sigma.xi, P_sigma.P_sigma + xi.xi evaluated nodewise against the
/// grid's own tangents. For currents computed from the same grid these are
/// algebraic identities and vanish to roundoff; feeding currents from a
/// different grid turns them into a consistency probe.
struct ConstraintResiduals {
    Mat ptau_zeta, ptau_norm, psigma_xi, psigma_norm;
    double max_abs() const;
};
ConstraintResiduals constraint_residuals(const WorldsheetGrid& grid, const CurrentField& cur);

/// Orthonormal-gauge residuals xi.zeta and xi.xi + zeta.zeta.
struct GaugeResiduals {
    Mat xi_zeta, trace;
    double max_abs() const;
};
GaugeResiduals gauge_residuals(const WorldsheetGrid& grid);

enum class GeodesicForm {
    automatic,  // gauge_fixed when gauge residuals <= 1e-6, else current form
    gauge_fixed, // -xi.grad xi + zeta.grad zeta
    current      // xi.grad P_tau + zeta.grad P_sigma
};

/// Nodewise residual of the geodesic-surface equation.
GridField geodesic_residual(const WorldsheetGrid& grid, GeodesicForm form = GeodesicForm::automatic);

/// Gauge-fixed deviation operator applied to a field eta on the grid:
///   (L eta)^a = -xi.grad(xi.grad eta^a) + zeta.grad(zeta.grad eta^a)
///             - R_bcd^a (xi^b xi^d - zeta^b zeta^d) eta^c
GridField deviation_operator(const WorldsheetGrid& grid, const GridField& eta);

/// Central-difference quadratic response [S(a) - 2 S(0) + S(-a)] / a^2
/// with X_a = X + a eta in chart components. Serves as the oracle for the
/// index form. eta must vanish on the tau boundary rows.
double second_variation_fd(const WorldsheetGrid& grid, const GridField& eta, double alpha = 1e-3);

/// Central-difference first variation [S(a) - S(-a)] / (2 a).
double first_variation_fd(const WorldsheetGrid& grid, const GridField& eta, double alpha = 1e-3);

/// trapezoid in tau x periodic rectangle in sigma of a nodewise integrand.
double surface_integral(const WorldsheetGrid& grid, const Mat& integrand);

/// Pointwise inner product field of two grid vector fields under the chart
/// metric, g_ab u^a v^b at each node.
Mat grid_inner(const WorldsheetGrid& grid, const GridField& u, const GridField& v);

} // namespace wsmorse
