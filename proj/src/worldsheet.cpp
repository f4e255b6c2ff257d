#include "wsmorse/worldsheet.hpp"

#include <cmath>
#include <sstream>

#include "wsmorse/numerics.hpp"

namespace wsmorse {

namespace {

// wraps a coordinate difference into (-P/2, P/2] for periodic coordinates
double wrap_delta(double d, double period) {
    if (period <= 0.0) return d;
    d = std::fmod(d, period);
    if (d > 0.5 * period) d -= period;
    if (d <= -0.5 * period) d += period;
    return d;
}

void require_shape(const WorldsheetGrid& grid, int min_tau) {
    if (grid.ntau() < min_tau)
        throw ValidationError("worldsheet grid needs at least " + std::to_string(min_tau) +
                              " tau rows for this stencil");
    if (grid.nsigma < 4) throw ValidationError("worldsheet grid needs at least 4 sigma columns");
    if (!grid.chart) throw ValidationError("worldsheet grid has no chart");
}

// derivative of a grid field along tau; coord_wrap applies the chart's
// coordinate periods to adjacent differences (used for X itself)
GridField dtau_field(const WorldsheetGrid& grid, const GridField& F, bool coord_wrap, int deriv) {
    const int nt = grid.ntau(), ns = grid.nsigma, nc = F.ncomp;
    const double h = grid.dtau();
    GridField out(nt, ns, nc);
    std::vector<double> d(nt - 1);
    for (int j = 0; j < ns; ++j) {
        for (int c = 0; c < nc; ++c) {
            const double period = coord_wrap ? grid.chart->period(c) : 0.0;
            for (int i = 0; i + 1 < nt; ++i)
                d[i] = wrap_delta(F.at(i + 1, j, c) - F.at(i, j, c), period);
            if (deriv == 1) {
                for (int i = 1; i + 1 < nt; ++i) out.at(i, j, c) = stencil::d1_central(d, i, h);
                if (nt >= 4) {
                    out.at(0, j, c) = stencil::d1_left_matched(d, h);
                    out.at(nt - 1, j, c) = stencil::d1_right_matched(d, h);
                } else {
                    out.at(0, j, c) = stencil::d1_left(d, h);
                    out.at(nt - 1, j, c) = stencil::d1_right(d, h);
                }
            } else {
                out.at(0, j, c) = stencil::d2_left(d, h);
                for (int i = 1; i + 1 < nt; ++i) out.at(i, j, c) = stencil::d2_central(d, i, h);
                out.at(nt - 1, j, c) = stencil::d2_right(d, h);
            }
        }
    }
    return out;
}

GridField dsigma_field(const WorldsheetGrid& grid, const GridField& F, bool coord_wrap, int deriv) {
    const int nt = grid.ntau(), ns = grid.nsigma, nc = F.ncomp;
    const double h = grid.dsigma();
    GridField out(nt, ns, nc);
    std::vector<double> d(ns); // d[j] = F(j+1) - F(j), cyclic
    for (int i = 0; i < nt; ++i) {
        for (int c = 0; c < nc; ++c) {
            const double period = coord_wrap ? grid.chart->period(c) : 0.0;
            for (int j = 0; j < ns; ++j)
                d[j] = wrap_delta(F.at(i, grid.wrap(j + 1), c) - F.at(i, j, c), period);
            for (int j = 0; j < ns; ++j) {
                const int jm = grid.wrap(j - 1);
                if (deriv == 1)
                    out.at(i, j, c) = (d[jm] + d[j]) / (2.0 * h);
                else
                    out.at(i, j, c) = (d[j] - d[jm]) / (h * h);
            }
        }
    }
    return out;
}

struct NodeGeometry {
    Mat g;
    double xx, zz, xz;
};

NodeGeometry node_geometry(const WorldsheetGrid& grid, const TangentField& t, int i, int j) {
    NodeGeometry ng;
    ng.g = metric_at(*grid.chart, grid.X.vec(i, j));
    const Vec xi = t.xi.vec(i, j), ze = t.zeta.vec(i, j);
    ng.xx = xi.dot(ng.g * xi);
    ng.zz = ze.dot(ng.g * ze);
    ng.xz = xi.dot(ng.g * ze);
    return ng;
}

double discriminant_or_throw(const NodeGeometry& ng, int i, int j) {
    const double disc = ng.xz * ng.xz - ng.xx * ng.zz;
    if (disc <= 0.0) {
        std::ostringstream os;
        os << "degenerate tube: f^2 = " << disc << " <= 0 at node (tau_index=" << i
           << ", sigma_index=" << j << ")";
        throw NumericalError(os.str());
    }
    return disc;
}

// covariant directional derivative of a field along tau or sigma:
// (D F)^a = dF^a + Gamma^a_bc t^b F^c with t the corresponding tangent
GridField covariant_directional(const WorldsheetGrid& grid, const GridField& F,
                                const GridField& tangent, bool along_tau) {
    GridField dF = along_tau ? dtau_field(grid, F, false, 1) : dsigma_field(grid, F, false, 1);
    if (grid.chart->flat) return dF;
    const int nt = grid.ntau(), ns = grid.nsigma, n = F.ncomp;
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) {
            const Christoffel G = christoffel_at(*grid.chart, grid.X.vec(i, j));
            for (int a = 0; a < n; ++a) {
                double v = 0.0;
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c)
                        v += G(a, b, c) * tangent.at(i, j, b) * F.at(i, j, c);
                dF.at(i, j, a) += v;
            }
        }
    return dF;
}

} // namespace

TangentField tangents(const WorldsheetGrid& grid) {
    require_shape(grid, 3);
    TangentField t;
    if (grid.xi_fn) {
        t.xi = GridField(grid.ntau(), grid.nsigma, grid.chart->dim);
        for (int i = 0; i < grid.ntau(); ++i)
            for (int j = 0; j < grid.nsigma; ++j)
                t.xi.set_vec(i, j, grid.xi_fn(grid.tau[i], grid.sigma(j)));
    } else {
        t.xi = dtau_field(grid, grid.X, true, 1);
    }
    if (grid.zeta_fn) {
        t.zeta = GridField(grid.ntau(), grid.nsigma, grid.chart->dim);
        for (int i = 0; i < grid.ntau(); ++i)
            for (int j = 0; j < grid.nsigma; ++j)
                t.zeta.set_vec(i, j, grid.zeta_fn(grid.tau[i], grid.sigma(j)));
    } else {
        t.zeta = dsigma_field(grid, grid.X, true, 1);
    }
    return t;
}

Mat area_density(const WorldsheetGrid& grid) {
    const TangentField t = tangents(grid);
    const int nt = grid.ntau(), ns = grid.nsigma;
    Mat f(nt, ns);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) {
            const NodeGeometry ng = node_geometry(grid, t, i, j);
            f(i, j) = std::sqrt(discriminant_or_throw(ng, i, j));
        }
    return f;
}

double surface_integral(const WorldsheetGrid& grid, const Mat& integrand) {
    const int nt = grid.ntau(), ns = grid.nsigma;
    std::vector<double> rows(nt);
    std::vector<double> buf(ns);
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < ns; ++j) buf[j] = integrand(i, j);
        rows[i] = pairwise_sum(buf);
    }
    return trapezoid(rows, grid.dtau()) * grid.dsigma();
}

double action(const WorldsheetGrid& grid) {
    return -surface_integral(grid, area_density(grid));
}

CurrentField currents(const WorldsheetGrid& grid) {
    const TangentField t = tangents(grid);
    const int nt = grid.ntau(), ns = grid.nsigma, n = grid.chart->dim;
    CurrentField cur;
    cur.p_tau = GridField(nt, ns, n);
    cur.p_sigma = GridField(nt, ns, n);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) {
            const NodeGeometry ng = node_geometry(grid, t, i, j);
            const double f = std::sqrt(discriminant_or_throw(ng, i, j));
            const Vec xi = t.xi.vec(i, j), ze = t.zeta.vec(i, j);
            cur.p_tau.set_vec(i, j, (ng.xz * ze - ng.zz * xi) / f);
            cur.p_sigma.set_vec(i, j, (ng.xz * xi - ng.xx * ze) / f);
        }
    return cur;
}

double ConstraintResiduals::max_abs() const {
    return std::max(std::max(ptau_zeta.cwiseAbs().maxCoeff(), ptau_norm.cwiseAbs().maxCoeff()),
                    std::max(psigma_xi.cwiseAbs().maxCoeff(), psigma_norm.cwiseAbs().maxCoeff()));
}

ConstraintResiduals constraint_residuals(const WorldsheetGrid& grid, const CurrentField& cur) {
    const TangentField t = tangents(grid);
    const int nt = grid.ntau(), ns = grid.nsigma;
    if (cur.p_tau.ntau != nt || cur.p_tau.nsigma != ns)
        throw ValidationError("current field shape does not match grid");
    ConstraintResiduals r{Mat(nt, ns), Mat(nt, ns), Mat(nt, ns), Mat(nt, ns)};
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) {
            const Mat g = metric_at(*grid.chart, grid.X.vec(i, j));
            const Vec xi = t.xi.vec(i, j), ze = t.zeta.vec(i, j);
            const Vec pt = cur.p_tau.vec(i, j), ps = cur.p_sigma.vec(i, j);
            r.ptau_zeta(i, j) = pt.dot(g * ze);
            r.ptau_norm(i, j) = pt.dot(g * pt) + ze.dot(g * ze);
            r.psigma_xi(i, j) = ps.dot(g * xi);
            r.psigma_norm(i, j) = ps.dot(g * ps) + xi.dot(g * xi);
        }
    return r;
}

double GaugeResiduals::max_abs() const {
    return std::max(xi_zeta.cwiseAbs().maxCoeff(), trace.cwiseAbs().maxCoeff());
}

GaugeResiduals gauge_residuals(const WorldsheetGrid& grid) {
    const TangentField t = tangents(grid);
    const int nt = grid.ntau(), ns = grid.nsigma;
    GaugeResiduals r{Mat(nt, ns), Mat(nt, ns)};
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) {
            const NodeGeometry ng = node_geometry(grid, t, i, j);
            r.xi_zeta(i, j) = ng.xz;
            r.trace(i, j) = ng.xx + ng.zz;
        }
    return r;
}

GridField geodesic_residual(const WorldsheetGrid& grid, GeodesicForm form) {
    require_shape(grid, 4);
    if (form == GeodesicForm::automatic) {
        form = gauge_residuals(grid).max_abs() <= 1e-6 ? GeodesicForm::gauge_fixed
                                                       : GeodesicForm::current;
    }
    const int nt = grid.ntau(), ns = grid.nsigma, n = grid.chart->dim;
    GridField res(nt, ns, n);
    if (form == GeodesicForm::gauge_fixed) {
        const TangentField t = tangents(grid);
        const GridField xtt = dtau_field(grid, grid.X, true, 2);
        const GridField xss = dsigma_field(grid, grid.X, true, 2);
        for (int i = 0; i < nt; ++i)
            for (int j = 0; j < ns; ++j) {
                const Vec xi = t.xi.vec(i, j), ze = t.zeta.vec(i, j);
                Vec v = xss.vec(i, j) - xtt.vec(i, j);
                if (!grid.chart->flat) {
                    const Christoffel G = christoffel_at(*grid.chart, grid.X.vec(i, j));
                    for (int b = 0; b < n; ++b) {
                        double acc = 0.0;
                        for (int c = 0; c < n; ++c)
                            for (int d = 0; d < n; ++d)
                                acc += G(b, c, d) * (ze(c) * ze(d) - xi(c) * xi(d));
                        v(b) += acc;
                    }
                }
                res.set_vec(i, j, v);
            }
        return res;
    }
    // full current form: xi.grad P_tau + zeta.grad P_sigma
    const TangentField t = tangents(grid);
    const CurrentField cur = currents(grid);
    const GridField dpt = covariant_directional(grid, cur.p_tau, t.xi, true);
    const GridField dps = covariant_directional(grid, cur.p_sigma, t.zeta, false);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) res.set_vec(i, j, dpt.vec(i, j) + dps.vec(i, j));
    return res;
}

GridField deviation_operator(const WorldsheetGrid& grid, const GridField& eta) {
    require_shape(grid, 4);
    if (eta.ntau != grid.ntau() || eta.nsigma != grid.nsigma || eta.ncomp != grid.chart->dim)
        throw ValidationError("eta field shape does not match grid");
    const TangentField t = tangents(grid);
    const GridField dt1 = covariant_directional(grid, eta, t.xi, true);
    const GridField dt2 = covariant_directional(grid, dt1, t.xi, true);
    const GridField ds1 = covariant_directional(grid, eta, t.zeta, false);
    const GridField ds2 = covariant_directional(grid, ds1, t.zeta, false);
    const int nt = grid.ntau(), ns = grid.nsigma, n = grid.chart->dim;
    GridField out(nt, ns, n);
    const bool curved = !grid.chart->flat;
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) {
            Vec v = ds2.vec(i, j) - dt2.vec(i, j);
            if (curved) {
                const CurvatureSample R = riemann_at(*grid.chart, grid.X.vec(i, j));
                const Vec xi = t.xi.vec(i, j), ze = t.zeta.vec(i, j), e = eta.vec(i, j);
                for (int a = 0; a < n; ++a) {
                    double acc = 0.0;
                    for (int b = 0; b < n; ++b)
                        for (int c = 0; c < n; ++c)
                            for (int d = 0; d < n; ++d)
                                acc += R.riemann(b, c, d, a) * (xi(b) * xi(d) - ze(b) * ze(d)) * e(c);
                    v(a) -= acc;
                }
            }
            out.set_vec(i, j, v);
        }
    return out;
}

namespace {

void require_boundary_zero(const WorldsheetGrid& grid, const GridField& eta) {
    const int nt = grid.ntau();
    for (int j = 0; j < grid.nsigma; ++j)
        for (int c = 0; c < eta.ncomp; ++c)
            if (std::abs(eta.at(0, j, c)) > 1e-14 || std::abs(eta.at(nt - 1, j, c)) > 1e-14)
                throw ValidationError("variation field must vanish on the tau boundary rows");
}

// The variation quotient must compare actions under one consistent
// discretization, so the exact tangents of constructed scenarios are
// dropped here and every evaluation (including a = 0) uses the stencils.
double shifted_action(const WorldsheetGrid& grid, const GridField& eta, double a) {
    WorldsheetGrid shifted = grid;
    shifted.xi_fn = nullptr;
    shifted.zeta_fn = nullptr;
    for (std::size_t k = 0; k < shifted.X.data.size(); ++k)
        shifted.X.data[k] += a * eta.data[k];
    return action(shifted);
}

} // namespace

double second_variation_fd(const WorldsheetGrid& grid, const GridField& eta, double alpha) {
    require_boundary_zero(grid, eta);
    const double sp = shifted_action(grid, eta, alpha);
    const double s0 = shifted_action(grid, eta, 0.0);
    const double sm = shifted_action(grid, eta, -alpha);
    return (sp - 2.0 * s0 + sm) / (alpha * alpha);
}

double first_variation_fd(const WorldsheetGrid& grid, const GridField& eta, double alpha) {
    require_boundary_zero(grid, eta);
    const double sp = shifted_action(grid, eta, alpha);
    const double sm = shifted_action(grid, eta, -alpha);
    return (sp - sm) / (2.0 * alpha);
}

Mat grid_inner(const WorldsheetGrid& grid, const GridField& u, const GridField& v) {
    const int nt = grid.ntau(), ns = grid.nsigma;
    Mat out(nt, ns);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) {
            const Mat g = metric_at(*grid.chart, grid.X.vec(i, j));
            out(i, j) = u.vec(i, j).dot(g * v.vec(i, j));
        }
    return out;
}

} // namespace wsmorse
