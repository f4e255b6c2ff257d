#include "wsmorse/evolution.hpp"

#include <cmath>
#include <sstream>

namespace wsmorse {

namespace {

double wrap_delta(double d, double period) {
    if (period <= 0.0) return d;
    d = std::fmod(d, period);
    if (d > 0.5 * period) d -= period;
    if (d <= -0.5 * period) d += period;
    return d;
}

// wrapped adjacent sigma differences of one slice: d(j) = X(j+1) - X(j)
Mat adjacent_diffs(const Mat& X, const MetricChart& chart) {
    const int ns = static_cast<int>(X.rows()), n = static_cast<int>(X.cols());
    Mat d(ns, n);
    for (int j = 0; j < ns; ++j) {
        const int jp = (j + 1) % ns;
        for (int c = 0; c < n; ++c) d(j, c) = wrap_delta(X(jp, c) - X(j, c), chart.period(c));
    }
    return d;
}

Mat sigma_derivative(const Mat& d, double ds) {
    const int ns = static_cast<int>(d.rows());
    Mat z(ns, d.cols());
    for (int j = 0; j < ns; ++j) {
        const int jm = (j + ns - 1) % ns;
        z.row(j) = (d.row(jm) + d.row(j)) / (2.0 * ds);
    }
    return z;
}

Mat sigma_laplacian(const Mat& d, double ds) {
    const int ns = static_cast<int>(d.rows());
    Mat l(ns, d.cols());
    for (int j = 0; j < ns; ++j) {
        const int jm = (j + ns - 1) % ns;
        l.row(j) = (d.row(j) - d.row(jm)) / (ds * ds);
    }
    return l;
}

Mat acceleration(const Mat& X, const Mat& V, double ds, const MetricChart& chart) {
    const Mat d = adjacent_diffs(X, chart);
    Mat a = sigma_laplacian(d, ds);
    if (chart.flat) return a;
    const Mat zeta = sigma_derivative(d, ds);
    const int ns = static_cast<int>(X.rows()), n = static_cast<int>(X.cols());
    for (int j = 0; j < ns; ++j) {
        const Christoffel G = christoffel_at(chart, X.row(j).transpose());
        for (int b = 0; b < n; ++b) {
            double acc = 0.0;
            for (int c = 0; c < n; ++c)
                for (int dd = 0; dd < n; ++dd)
                    acc += G(b, c, dd) * (zeta(j, c) * zeta(j, dd) - V(j, c) * V(j, dd));
            a(j, b) += acc;
        }
    }
    return a;
}

void require_timelike(const EvolutionState& s, const MetricChart& chart) {
    const Mat zeta = sigma_derivative(adjacent_diffs(s.X, chart), s.dsigma);
    for (int j = 0; j < s.nsigma(); ++j) {
        const Mat g = metric_at(chart, s.X.row(j).transpose());
        const Vec xi = s.V.row(j).transpose();
        const Vec ze = zeta.row(j).transpose();
        const double xx = xi.dot(g * xi), zz = ze.dot(g * ze), xz = xi.dot(g * ze);
        const double disc = xz * xz - xx * zz;
        // absolute floor: an O(1) string with f^2 this small is collapsing
        if (disc <= 1e-10) {
            std::ostringstream os;
            os << "degenerate tube: f^2 = " << disc << " <= 0 at sigma_index=" << j
               << ", tau=" << s.tau;
            throw NumericalError(os.str());
        }
    }
}

struct GaugePair {
    double xi_zeta, trace;
};

GaugePair gauge_norms(const EvolutionState& s, const MetricChart& chart) {
    const Mat zeta = sigma_derivative(adjacent_diffs(s.X, chart), s.dsigma);
    GaugePair g{0.0, 0.0};
    for (int j = 0; j < s.nsigma(); ++j) {
        const Mat m = metric_at(chart, s.X.row(j).transpose());
        const Vec xi = s.V.row(j).transpose();
        const Vec ze = zeta.row(j).transpose();
        g.xi_zeta = std::max(g.xi_zeta, std::abs(xi.dot(m * ze)));
        g.trace = std::max(g.trace, std::abs(xi.dot(m * xi) + ze.dot(m * ze)));
    }
    return g;
}

} // namespace

double wave_energy(const EvolutionState& s, const MetricChart& chart) {
    const Mat zeta = sigma_derivative(adjacent_diffs(s.X, chart), s.dsigma);
    double e = 0.0;
    for (int j = 0; j < s.nsigma(); ++j)
        e += s.V.row(j).squaredNorm() + zeta.row(j).squaredNorm();
    return e * s.dsigma;
}

EvolutionState step(const EvolutionState& s, const MetricChart& chart) {
    if (s.dt <= 0.0 || s.dsigma <= 0.0) throw ValidationError("step sizes must be positive");
    if (s.dt > s.dsigma)
        throw ValidationError("CFL violation: dt must not exceed dsigma (unit wave speed)");
    require_timelike(s, chart);

    EvolutionState out = s;
    const Mat a0 = acceleration(s.X, s.V, s.dsigma, chart);
    const Mat vh = s.V + 0.5 * s.dt * a0;
    out.X = s.X + s.dt * vh;
    const Mat a1 = acceleration(out.X, vh, s.dsigma, chart);
    out.V = vh + 0.5 * s.dt * a1;
    out.tau = s.tau + s.dt;
    return out;
}

EvolutionResult evolve(EvolutionState initial, std::shared_ptr<const MetricChart> chart, double T,
                       const EvolveOptions& opt) {
    if (!chart) throw ValidationError("evolve needs a chart");
    if (T <= 0.0) throw ValidationError("evolve needs T > 0");
    if (opt.output_every < 1) throw ValidationError("output_every must be >= 1");
    const long nsteps = std::lround(T / initial.dt);
    if (nsteps < 1) throw ValidationError("T shorter than one time step");

    const int ns = initial.nsigma(), n = initial.dim();
    std::vector<Mat> slices;
    std::vector<double> slice_taus;
    std::vector<StepStats> stats;
    stats.reserve(static_cast<std::size_t>(nsteps) + 1);

    EvolutionState prev = initial, cur = initial;
    const GaugePair g0 = gauge_norms(initial, *chart);

    auto record = [&](const EvolutionState& st, double geo) {
        StepStats r;
        r.tau = st.tau;
        const GaugePair g = gauge_norms(st, *chart);
        r.gauge_xi_zeta = g.xi_zeta;
        r.gauge_trace = g.trace;
        r.geodesic_res = geo;
        r.energy = wave_energy(st, *chart);
        stats.push_back(r);
        const double drift =
            std::max(g.xi_zeta - g0.xi_zeta, g.trace - g0.trace);
        if (drift > opt.gauge_drift_ceiling)
            throw NumericalError("gauge drift ceiling exceeded at tau = " + std::to_string(st.tau));
    };

    record(initial, 0.0);
    slices.push_back(initial.X);
    slice_taus.push_back(initial.tau);

    for (long k = 0; k < nsteps; ++k) {
        EvolutionState next = step(cur, *chart);
        // residual of the second-order form on the rolling 3-slice window
        double geo = 0.0;
        if (k >= 1) {
            const Mat xtt = (next.X - 2.0 * cur.X + prev.X) / (cur.dt * cur.dt);
            const Mat vcen = (next.X - prev.X) / (2.0 * cur.dt);
            const Mat rhs = acceleration(cur.X, vcen, cur.dsigma, *chart);
            geo = (xtt - rhs).cwiseAbs().maxCoeff();
        }
        record(next, geo);
        if ((k + 1) % opt.output_every == 0) {
            slices.push_back(next.X);
            slice_taus.push_back(next.tau);
        }
        prev = cur;
        cur = next;
    }

    WorldsheetGrid grid;
    grid.chart = chart;
    grid.nsigma = ns;
    grid.tau = slice_taus;
    grid.X = GridField(static_cast<int>(slices.size()), ns, n);
    for (std::size_t i = 0; i < slices.size(); ++i)
        for (int j = 0; j < ns; ++j)
            for (int c = 0; c < n; ++c) grid.X.at(static_cast<int>(i), j, c) = slices[i](j, c);
    return {std::move(grid), std::move(stats)};
}

EvolutionState resample_to_arclength(const EvolutionState& s, const MetricChart& chart) {
    const int ns = s.nsigma(), n = s.dim();
    const Mat d = adjacent_diffs(s.X, chart);
    std::vector<double> cum(ns + 1, 0.0);
    for (int j = 0; j < ns; ++j) {
        const Mat g = metric_at(chart, s.X.row(j).transpose());
        const Vec dj = d.row(j).transpose();
        const double seg = dj.dot(g * dj);
        if (seg <= 0.0) throw NumericalError("arclength resampling needs a spacelike string");
        cum[j + 1] = cum[j] + std::sqrt(seg);
    }
    const double total = cum[ns];
    EvolutionState out = s;
    for (int j = 0; j < ns; ++j) {
        const double target = total * j / ns;
        // locate segment containing the target arc length
        int seg = 0;
        while (seg + 1 < ns && cum[seg + 1] < target) ++seg;
        const double w = (target - cum[seg]) / (cum[seg + 1] - cum[seg]);
        for (int c = 0; c < n; ++c) {
            out.X(j, c) = s.X(seg, c) + w * d(seg, c);
            const int sp = (seg + 1) % ns;
            out.V(j, c) = (1.0 - w) * s.V(seg, c) + w * s.V(sp, c);
        }
    }
    return out;
}

} // namespace wsmorse
