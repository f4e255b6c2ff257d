#include "wsmorse/scenarios.hpp"

#include <cmath>

namespace wsmorse::scenarios {

namespace {

WorldsheetGrid make_grid(std::shared_ptr<const MetricChart> chart, double T, int ntau, int nsigma) {
    if (ntau < 2 || nsigma < 4) throw ValidationError("grid needs ntau >= 2 and nsigma >= 4");
    if (T <= 0.0) throw ValidationError("grid needs T > 0");
    WorldsheetGrid g;
    g.chart = std::move(chart);
    g.nsigma = nsigma;
    g.tau.resize(ntau);
    for (int i = 0; i < ntau; ++i) g.tau[i] = T * i / (ntau - 1);
    g.X = GridField(ntau, nsigma, g.chart->dim);
    return g;
}

} // namespace

std::shared_ptr<const MetricChart> flat_chart(int dim) {
    return make_chart({ChartKind::flat, 0.0, dim});
}

std::shared_ptr<const MetricChart> flat_periodic_chart(int dim, int axis, double g_axis) {
    if (axis <= 0 || axis >= dim) throw ValidationError("periodic axis must be spatial");
    auto chart = std::make_shared<MetricChart>();
    chart->dim = dim;
    chart->signature.assign(dim, 1);
    chart->signature[0] = -1;
    chart->coord_period.assign(dim, 0.0);
    chart->coord_period[axis] = 2.0 * M_PI;
    chart->flat = true;
    chart->name = "flat_periodic";
    Vec diag = Vec::Ones(dim);
    diag(0) = -1.0;
    diag(axis) = g_axis;
    chart->metric_fn = [diag](const Vec&) { return Mat(diag.asDiagonal()); };
    chart->analytic_christoffel = [dim](const Vec&) { return Christoffel(dim); };
    chart->analytic_riemann = [dim](const Vec&) { return Riemann(dim); };
    return chart;
}

std::shared_ptr<const MetricChart> product_chart(int dim, double K) {
    return make_chart({ChartKind::product_time_sphere, K, dim});
}

WorldsheetGrid static_cylinder(double R, double T, int ntau, int nsigma) {
    WorldsheetGrid g = make_grid(flat_chart(4), T, ntau, nsigma);
    for (int i = 0; i < ntau; ++i)
        for (int j = 0; j < nsigma; ++j) {
            const double s = g.sigma(j);
            g.X.at(i, j, 0) = g.tau[i];
            g.X.at(i, j, 1) = R * std::cos(s);
            g.X.at(i, j, 2) = R * std::sin(s);
        }
    g.xi_fn = [](double, double) {
        Vec v = Vec::Zero(4);
        v(0) = 1.0;
        return v;
    };
    g.zeta_fn = [R](double, double s) {
        Vec v = Vec::Zero(4);
        v(1) = -R * std::sin(s);
        v(2) = R * std::cos(s);
        return v;
    };
    return g;
}

WorldsheetGrid breathing_ring(double R, double T, int ntau, int nsigma) {
    WorldsheetGrid g = make_grid(flat_chart(4), T, ntau, nsigma);
    for (int i = 0; i < ntau; ++i) {
        const double rho = R * std::cos(g.tau[i]);
        for (int j = 0; j < nsigma; ++j) {
            const double s = g.sigma(j);
            g.X.at(i, j, 0) = R * g.tau[i];
            g.X.at(i, j, 1) = rho * std::cos(s);
            g.X.at(i, j, 2) = rho * std::sin(s);
        }
    }
    g.xi_fn = [R](double t, double s) {
        Vec v = Vec::Zero(4);
        v(0) = R;
        v(1) = -R * std::sin(t) * std::cos(s);
        v(2) = -R * std::sin(t) * std::sin(s);
        return v;
    };
    g.zeta_fn = [R](double t, double s) {
        Vec v = Vec::Zero(4);
        v(1) = -R * std::cos(t) * std::sin(s);
        v(2) = R * std::cos(t) * std::cos(s);
        return v;
    };
    return g;
}

WorldsheetGrid straight_tube(double R, double T, int ntau, int nsigma) {
    WorldsheetGrid g = make_grid(flat_periodic_chart(4, 1, R * R), T, ntau, nsigma);
    for (int i = 0; i < ntau; ++i)
        for (int j = 0; j < nsigma; ++j) {
            g.X.at(i, j, 0) = g.tau[i];
            g.X.at(i, j, 1) = g.sigma(j);
        }
    g.xi_fn = [](double, double) {
        Vec v = Vec::Zero(4);
        v(0) = 1.0;
        return v;
    };
    g.zeta_fn = [](double, double) {
        Vec v = Vec::Zero(4);
        v(1) = 1.0;
        return v;
    };
    return g;
}

WorldsheetGrid equator_tube(double K, double T, int ntau, int nsigma) {
    const double r = 1.0 / std::sqrt(K);
    WorldsheetGrid g = make_grid(product_chart(3, K), T, ntau, nsigma);
    for (int i = 0; i < ntau; ++i)
        for (int j = 0; j < nsigma; ++j) {
            g.X.at(i, j, 0) = r * g.tau[i];
            g.X.at(i, j, 1) = M_PI / 2.0;
            g.X.at(i, j, 2) = g.sigma(j);
        }
    g.xi_fn = [r](double, double) {
        Vec v = Vec::Zero(3);
        v(0) = r;
        return v;
    };
    g.zeta_fn = [](double, double) {
        Vec v = Vec::Zero(3);
        v(2) = 1.0;
        return v;
    };
    return g;
}

WorldsheetGrid latitude_tube(double K, double theta0, double T, int ntau, int nsigma) {
    const double r = 1.0 / std::sqrt(K);
    const double c = r * std::sin(theta0); // keeps xi.xi + zeta.zeta = 0
    WorldsheetGrid g = make_grid(product_chart(3, K), T, ntau, nsigma);
    for (int i = 0; i < ntau; ++i)
        for (int j = 0; j < nsigma; ++j) {
            g.X.at(i, j, 0) = c * g.tau[i];
            g.X.at(i, j, 1) = theta0;
            g.X.at(i, j, 2) = g.sigma(j);
        }
    g.xi_fn = [c](double, double) {
        Vec v = Vec::Zero(3);
        v(0) = c;
        return v;
    };
    g.zeta_fn = [](double, double) {
        Vec v = Vec::Zero(3);
        v(2) = 1.0;
        return v;
    };
    return g;
}

WorldsheetGrid sheared_cylinder(double R, double eps, double T, int ntau, int nsigma) {
    WorldsheetGrid g = make_grid(flat_chart(4), T, ntau, nsigma);
    for (int i = 0; i < ntau; ++i)
        for (int j = 0; j < nsigma; ++j) {
            const double s = g.sigma(j) + eps * g.tau[i];
            g.X.at(i, j, 0) = g.tau[i];
            g.X.at(i, j, 1) = R * std::cos(s);
            g.X.at(i, j, 2) = R * std::sin(s);
        }
    g.xi_fn = [R, eps](double t, double s0) {
        const double s = s0 + eps * t;
        Vec v = Vec::Zero(4);
        v(0) = 1.0;
        v(1) = -eps * R * std::sin(s);
        v(2) = eps * R * std::cos(s);
        return v;
    };
    g.zeta_fn = [R, eps](double t, double s0) {
        const double s = s0 + eps * t;
        Vec v = Vec::Zero(4);
        v(1) = -R * std::sin(s);
        v(2) = R * std::cos(s);
        return v;
    };
    return g;
}

Worldline equator_center(double K) {
    const double r = 1.0 / std::sqrt(K);
    Worldline line;
    line.position = [r](double tau) {
        Vec x(3);
        x << r * tau, M_PI / 2.0, 0.0;
        return x;
    };
    line.tangent = [r](double) {
        Vec v(3);
        v << r, 0.0, 0.0;
        return v;
    };
    line.sigma_tangent = [](double) {
        Vec v(3);
        v << 0.0, 0.0, 1.0;
        return v;
    };
    return line;
}

std::vector<Vec> equator_frame(double K) {
    const double r = 1.0 / std::sqrt(K);
    Vec e(3);
    e << 0.0, 1.0 / r, 0.0; // unit polar leg
    return {e};
}

EvolutionState breathing_ring_state(double R, int nsigma, double dt) {
    EvolutionState s;
    s.dt = dt;
    s.dsigma = 2.0 * M_PI / nsigma;
    s.X = Mat::Zero(nsigma, 4);
    s.V = Mat::Zero(nsigma, 4);
    for (int j = 0; j < nsigma; ++j) {
        const double sg = j * s.dsigma;
        s.X(j, 1) = R * std::cos(sg);
        s.X(j, 2) = R * std::sin(sg);
        s.V(j, 0) = R;
    }
    return s;
}

EvolutionState static_circle_state(double R, int nsigma, double dt) {
    EvolutionState s = breathing_ring_state(R, nsigma, dt);
    for (int j = 0; j < nsigma; ++j) s.V(j, 0) = 1.0;
    return s;
}

EvolutionState equator_state(double K, int nsigma, double dt) {
    const double r = 1.0 / std::sqrt(K);
    EvolutionState s;
    s.dt = dt;
    s.dsigma = 2.0 * M_PI / nsigma;
    s.X = Mat::Zero(nsigma, 3);
    s.V = Mat::Zero(nsigma, 3);
    for (int j = 0; j < nsigma; ++j) {
        s.X(j, 1) = M_PI / 2.0;
        s.X(j, 2) = j * s.dsigma;
        s.V(j, 0) = r;
    }
    return s;
}

EvolutionState traveling_wave_state(double amplitude, int nsigma, double dt) {
    EvolutionState s;
    s.dt = dt;
    s.dsigma = 2.0 * M_PI / nsigma;
    s.X = Mat::Zero(nsigma, 4);
    s.V = Mat::Zero(nsigma, 4);
    for (int j = 0; j < nsigma; ++j) {
        const double sg = j * s.dsigma;
        s.X(j, 1) = amplitude * std::cos(sg);
        s.X(j, 2) = amplitude * std::sin(sg);
        s.V(j, 0) = 1.0;
        s.V(j, 1) = amplitude * std::sin(sg);
        s.V(j, 2) = -amplitude * std::cos(sg);
    }
    return s;
}

} // namespace wsmorse::scenarios
