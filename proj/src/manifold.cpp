#include "wsmorse/manifold.hpp"

#include <cmath>
#include <sstream>

namespace wsmorse {

namespace {

std::string point_str(const Vec& x) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x(i);
    os << ")";
    return os.str();
}

void check_domain(const MetricChart& chart, const Vec& x, const char* what) {
    if (chart.in_domain && !chart.in_domain(x)) {
        throw NumericalError(std::string(what) + " leaves chart domain at " + point_str(x));
    }
}

/// Shared curvature assembly from Gamma and its partials dG[e] = d_e Gamma.
Riemann assemble_riemann(const Christoffel& G, const std::vector<Christoffel>& dG) {
    const int n = G.dim();
    Riemann R(n);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                for (int d = 0; d < n; ++d) {
                    double val = dG[b](d, a, c) - dG[a](d, b, c);
                    for (int f = 0; f < n; ++f)
                        val += G(f, a, c) * G(d, b, f) - G(f, b, c) * G(d, a, f);
                    R.upper(a, b, c, d) = val;
                }
            }
        }
    }
    return R;
}

std::vector<double> lower_riemann(const Riemann& R, const Mat& g) {
    const int n = R.dim();
    std::vector<double> low(static_cast<std::size_t>(n) * n * n * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    double s = 0.0;
                    for (int e = 0; e < n; ++e) s += R(a, b, c, e) * g(e, d);
                    low[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d] = s;
                }
    return low;
}

// ---------------------------------------------------------------------------
// Built-in constant-curvature charts: diagonal metrics whose components are
// products of squared warp factors, g_ii = c_i * prod_j w(x_j)^2 with w one
// of sin/sinh. Closed-form first and second derivatives of the components
// give analytic Gamma and d Gamma, hence an analytic curvature tensor.
// ---------------------------------------------------------------------------

enum class Warp { sin, sinh };

struct DiagComponent {
    double coeff = 1.0;
    std::vector<std::pair<int, Warp>> factors; // (coordinate, warp type)
};

struct DiagonalWarpedMetric {
    int n = 0;
    std::vector<DiagComponent> comp;

    // g_ii and its log-derivative data at x
    struct Eval {
        std::vector<double> G;                 // component values
        std::vector<std::vector<double>> L;    // L[i][k] = d_k G_i / (2 G_i)
        std::vector<std::vector<double>> S;    // S[i][k] = curvature sign of warp (0 if absent)
    };

    Eval eval(const Vec& x) const {
        Eval e;
        e.G.assign(n, 0.0);
        e.L.assign(n, std::vector<double>(n, 0.0));
        e.S.assign(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            double v = comp[i].coeff;
            for (auto [j, w] : comp[i].factors) {
                const double s = (w == Warp::sin) ? std::sin(x(j)) : std::sinh(x(j));
                const double c = (w == Warp::sin) ? std::cos(x(j)) : std::cosh(x(j));
                v *= s * s;
                e.L[i][j] = c / s; // cot or coth
                e.S[i][j] = (w == Warp::sin) ? -1.0 : 1.0;
            }
            e.G[i] = v;
        }
        return e;
    }

    Mat metric(const Vec& x) const {
        Mat g = Mat::Zero(n, n);
        const Eval e = eval(x);
        for (int i = 0; i < n; ++i) g(i, i) = e.G[i];
        return g;
    }

    // dG[i][k] = d_k G_i ; ddG[i][k][l] = d_k d_l G_i
    void derivatives(const Eval& e, std::vector<std::vector<double>>& dG,
                     std::vector<std::vector<std::vector<double>>>& ddG) const {
        dG.assign(n, std::vector<double>(n, 0.0));
        ddG.assign(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
        for (int i = 0; i < n; ++i) {
            for (auto [k, wk] : comp[i].factors) {
                dG[i][k] = e.G[i] * 2.0 * e.L[i][k];
                for (auto [l, wl] : comp[i].factors) {
                    if (k == l) {
                        // d_k(2 G L) = G (4 L^2 + 2 L') with L' = s - L^2
                        ddG[i][k][k] = e.G[i] * (2.0 * e.L[i][k] * e.L[i][k] + 2.0 * e.S[i][k]);
                    } else {
                        ddG[i][k][l] = e.G[i] * 4.0 * e.L[i][k] * e.L[i][l];
                    }
                }
            }
        }
    }

    Christoffel christoffel(const Vec& x) const {
        const Eval e = eval(x);
        std::vector<std::vector<double>> dG;
        std::vector<std::vector<std::vector<double>>> ddG;
        derivatives(e, dG, ddG);
        Christoffel G(n);
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a)
                for (int c = a; c < n; ++c) {
                    double v = 0.0;
                    if (a == b) v += dG[a][c];
                    if (c == b) v += dG[c][a];
                    if (a == c) v -= dG[a][b];
                    v *= 0.5 / e.G[b];
                    G(b, a, c) = v;
                    G(b, c, a) = v;
                }
        return G;
    }

    Riemann riemann(const Vec& x) const {
        const Eval e = eval(x);
        std::vector<std::vector<double>> dG;
        std::vector<std::vector<std::vector<double>>> ddG;
        derivatives(e, dG, ddG);
        Christoffel G = christoffel(x);
        // d_e Gamma^b_ac = (1/2)[dab d2_ec G_a + dcb d2_ea G_c - dac d2_eb G_a]/G_b
        //               - Gamma^b_ac d_e G_b / G_b
        std::vector<Christoffel> dGam(n, Christoffel(n));
        for (int ed = 0; ed < n; ++ed)
            for (int b = 0; b < n; ++b)
                for (int a = 0; a < n; ++a)
                    for (int c = 0; c < n; ++c) {
                        double v = 0.0;
                        if (a == b) v += ddG[a][ed][c];
                        if (c == b) v += ddG[c][ed][a];
                        if (a == c) v -= ddG[a][ed][b];
                        v *= 0.5 / e.G[b];
                        v -= G(b, a, c) * dG[b][ed] / e.G[b];
                        dGam[ed](b, a, c) = v;
                    }
        return assemble_riemann(G, dGam);
    }
};

std::shared_ptr<const MetricChart> build_diag_chart(DiagonalWarpedMetric dm,
                                                    std::vector<int> signature,
                                                    std::vector<double> periods,
                                                    std::string name, bool is_flat) {
    auto chart = std::make_shared<MetricChart>();
    chart->dim = dm.n;
    chart->signature = std::move(signature);
    chart->coord_period = std::move(periods);
    chart->name = std::move(name);
    chart->flat = is_flat;
    auto dmp = std::make_shared<DiagonalWarpedMetric>(std::move(dm));
    chart->metric_fn = [dmp](const Vec& x) { return dmp->metric(x); };
    if (is_flat) {
        const int n = dmp->n;
        chart->analytic_christoffel = [n](const Vec&) { return Christoffel(n); };
        chart->analytic_riemann = [n](const Vec&) { return Riemann(n); };
    } else {
        chart->analytic_christoffel = [dmp](const Vec& x) { return dmp->christoffel(x); };
        chart->analytic_riemann = [dmp](const Vec& x) { return dmp->riemann(x); };
    }
    return chart;
}

} // namespace

std::shared_ptr<const MetricChart> make_chart(const ConstantCurvatureSpec& spec) {
    const int n = spec.dim;
    if (n < 1) throw ValidationError("chart dimension must be positive");
    std::ostringstream nm;
    switch (spec.kind) {
    case ChartKind::flat: {
        if (spec.K != 0.0) throw ValidationError("flat chart requires K = 0");
        DiagonalWarpedMetric dm;
        dm.n = n;
        dm.comp.resize(n);
        std::vector<int> sig(n, 1);
        sig[0] = -1; // one timelike direction
        for (int i = 0; i < n; ++i) dm.comp[i].coeff = sig[i];
        nm << "flat(n=" << n << ")";
        return build_diag_chart(std::move(dm), std::move(sig), std::vector<double>(n, 0.0),
                                nm.str(), true);
    }
    case ChartKind::round_sphere: {
        if (spec.K <= 0.0) throw ValidationError("round_sphere requires K > 0");
        if (n < 2) throw ValidationError("round_sphere requires dim >= 2");
        const double r2 = 1.0 / spec.K;
        DiagonalWarpedMetric dm;
        dm.n = n;
        dm.comp.resize(n);
        for (int i = 0; i < n; ++i) {
            dm.comp[i].coeff = r2;
            for (int j = 0; j < i; ++j) dm.comp[i].factors.push_back({j, Warp::sin});
        }
        std::vector<double> per(n, 0.0);
        per[n - 1] = 2.0 * M_PI; // azimuthal coordinate
        nm << "round_sphere(n=" << n << ",K=" << spec.K << ")";
        return build_diag_chart(std::move(dm), std::vector<int>(n, 1), std::move(per),
                                nm.str(), false);
    }
    case ChartKind::hyperbolic: {
        if (spec.K >= 0.0) throw ValidationError("hyperbolic requires K < 0");
        if (n < 2) throw ValidationError("hyperbolic requires dim >= 2");
        const double r2 = -1.0 / spec.K;
        DiagonalWarpedMetric dm;
        dm.n = n;
        dm.comp.resize(n);
        for (int i = 0; i < n; ++i) {
            dm.comp[i].coeff = r2;
            for (int j = 0; j < i; ++j)
                dm.comp[i].factors.push_back({j, j == 0 ? Warp::sinh : Warp::sin});
        }
        std::vector<double> per(n, 0.0);
        if (n >= 2) per[n - 1] = 2.0 * M_PI;
        nm << "hyperbolic(n=" << n << ",K=" << spec.K << ")";
        return build_diag_chart(std::move(dm), std::vector<int>(n, 1), std::move(per),
                                nm.str(), false);
    }
    case ChartKind::product_time_sphere: {
        if (spec.K <= 0.0) throw ValidationError("product_time_sphere requires K > 0");
        if (n < 3) throw ValidationError("product_time_sphere requires dim >= 3");
        const double r2 = 1.0 / spec.K;
        DiagonalWarpedMetric dm;
        dm.n = n;
        dm.comp.resize(n);
        dm.comp[0].coeff = -1.0; // static time factor
        for (int i = 1; i < n; ++i) {
            dm.comp[i].coeff = r2;
            for (int j = 1; j < i; ++j) dm.comp[i].factors.push_back({j, Warp::sin});
        }
        std::vector<int> sig(n, 1);
        sig[0] = -1;
        std::vector<double> per(n, 0.0);
        per[n - 1] = 2.0 * M_PI;
        nm << "product_time_sphere(n=" << n << ",K=" << spec.K << ")";
        return build_diag_chart(std::move(dm), std::move(sig), std::move(per), nm.str(), false);
    }
    }
    throw ValidationError("unknown chart kind");
}

Mat metric_at(const MetricChart& chart, const Vec& x) {
    if (x.size() != chart.dim) throw ValidationError("point dimension does not match chart");
    check_domain(chart, x, "metric evaluation");
    Mat g = chart.metric_fn(x);
    if (g.rows() != chart.dim || g.cols() != chart.dim)
        throw ValidationError("metric_fn returned wrong shape");
    const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12)
        throw ValidationError("metric not symmetric at " + point_str(x));
    const double det = g.determinant();
    if (std::abs(det) < 1e-14)
        throw NumericalError("singular metric (|det| < 1e-14) at " + point_str(x));
    return g;
}

Christoffel christoffel_at(const MetricChart& chart, const Vec& x) {
    metric_at(chart, x); // symmetry/singularity validation at the base point
    if (chart.analytic_christoffel) return chart.analytic_christoffel(x);

    const int n = chart.dim;
    const double h = chart.fd_step;
    Mat g = metric_at(chart, x);
    Mat ginv = g.inverse();
    std::vector<Mat> dg(n);
    for (int k = 0; k < n; ++k) {
        Vec xp = x, xm = x;
        xp(k) += h;
        xm(k) -= h;
        check_domain(chart, xp, "finite-difference stencil");
        check_domain(chart, xm, "finite-difference stencil");
        dg[k] = (metric_at(chart, xp) - metric_at(chart, xm)) / (2.0 * h);
    }
    Christoffel G(n);
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a)
            for (int c = a; c < n; ++c) {
                double v = 0.0;
                for (int d = 0; d < n; ++d)
                    v += ginv(b, d) * (dg[a](d, c) + dg[c](a, d) - dg[d](a, c));
                v *= 0.5;
                G(b, a, c) = v;
                G(b, c, a) = v;
            }
    return G;
}

CurvatureSample riemann_at(const MetricChart& chart, const Vec& x) {
    Mat g = metric_at(chart, x);
    if (chart.analytic_riemann) {
        Riemann R = chart.analytic_riemann(x);
        auto low = lower_riemann(R, g);
        return CurvatureSample(x, std::move(R), std::move(low));
    }
    const int n = chart.dim;
    const double h = chart.fd_step;
    Christoffel G = christoffel_at(chart, x);
    std::vector<Christoffel> dGam;
    dGam.reserve(n);
    for (int e = 0; e < n; ++e) {
        Vec xp = x, xm = x;
        xp(e) += h;
        xm(e) -= h;
        Christoffel Gp = christoffel_at(chart, xp);
        Christoffel Gm = christoffel_at(chart, xm);
        Christoffel d(n);
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a)
                for (int c = 0; c < n; ++c) d(b, a, c) = (Gp(b, a, c) - Gm(b, a, c)) / (2.0 * h);
        dGam.push_back(std::move(d));
    }
    Riemann R = assemble_riemann(G, dGam);
    auto low = lower_riemann(R, g);
    return CurvatureSample(x, std::move(R), std::move(low));
}

double sectional_curvature(const MetricChart& chart, const Vec& x, const Vec& u, const Vec& v) {
    const CurvatureSample s = riemann_at(chart, x);
    Mat g = metric_at(chart, x);
    const int n = chart.dim;
    double num = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    num += s.low(a, b, c, d) * u(a) * v(b) * u(c) * v(d);
    const double uu = u.dot(g * u), vv = v.dot(g * v), uv = u.dot(g * v);
    const double den = uu * vv - uv * uv;
    if (std::abs(den) < 1e-14)
        throw NumericalError("degenerate plane in sectional_curvature");
    return num / den;
}

TransportedFrame parallel_transport_frame(const MetricChart& chart, const Worldline& line,
                                          const std::vector<Vec>& frame0,
                                          const std::vector<double>& taus) {
    if (taus.size() < 2) throw ValidationError("parallel transport needs at least two tau samples");
    const double dt = taus[1] - taus[0];
    for (std::size_t k = 1; k + 1 < taus.size(); ++k) {
        if (std::abs((taus[k + 1] - taus[k]) - dt) > 1e-12 * std::max(1.0, std::abs(dt)))
            throw ValidationError("step-size error: tau grid not uniform");
    }

    // frame0 must be orthonormal and orthogonal to the curve tangents
    {
        Mat g0 = metric_at(chart, line.position(taus[0]));
        const Vec xi0 = line.tangent(taus[0]);
        for (std::size_t i = 0; i < frame0.size(); ++i) {
            for (std::size_t j = 0; j < frame0.size(); ++j) {
                const double gram = frame0[i].dot(g0 * frame0[j]);
                const double want = (i == j) ? 1.0 : 0.0;
                if (std::abs(gram - want) > 1e-8)
                    throw ValidationError("initial frame is not orthonormal");
            }
            if (std::abs(frame0[i].dot(g0 * xi0)) > 1e-8)
                throw ValidationError("initial frame is not orthogonal to the tangent");
            if (line.sigma_tangent &&
                std::abs(frame0[i].dot(g0 * line.sigma_tangent(taus[0]))) > 1e-8)
                throw ValidationError("initial frame is not orthogonal to the sigma tangent");
        }
    }

    const int n = chart.dim;
    const int legs = static_cast<int>(frame0.size());
    TransportedFrame out;
    out.taus = taus;
    out.frames.reserve(taus.size());
    out.frames.push_back(frame0);

    if (chart.flat) {
        for (std::size_t k = 1; k < taus.size(); ++k) out.frames.push_back(frame0);
        return out;
    }

    // de^b/dtau = -Gamma^b_cd xi^c e^d, all legs advanced together
    auto rhs = [&](double tau, const std::vector<Vec>& e) {
        const Christoffel G = christoffel_at(chart, line.position(tau));
        const Vec xi = line.tangent(tau);
        std::vector<Vec> de(legs, Vec::Zero(n));
        for (int i = 0; i < legs; ++i)
            for (int b = 0; b < n; ++b) {
                double v = 0.0;
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) v += G(b, c, d) * xi(c) * e[i](d);
                de[i](b) = -v;
            }
        return de;
    };
    auto axpy = [&](const std::vector<Vec>& e, double a, const std::vector<Vec>& k) {
        std::vector<Vec> r(legs);
        for (int i = 0; i < legs; ++i) r[i] = e[i] + a * k[i];
        return r;
    };

    std::vector<Vec> e = frame0;
    for (std::size_t k = 0; k + 1 < taus.size(); ++k) {
        const double t = taus[k];
        auto k1 = rhs(t, e);
        auto k2 = rhs(t + 0.5 * dt, axpy(e, 0.5 * dt, k1));
        auto k3 = rhs(t + 0.5 * dt, axpy(e, 0.5 * dt, k2));
        auto k4 = rhs(t + dt, axpy(e, dt, k3));
        for (int i = 0; i < legs; ++i)
            e[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        out.frames.push_back(e);
    }
    return out;
}

} // namespace wsmorse
