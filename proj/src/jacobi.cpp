#include "wsmorse/jacobi.hpp"

#include <algorithm>
#include <cmath>

#include "wsmorse/numerics.hpp"

namespace wsmorse {

TidalMatrix tidal_constant(const Mat& M0) {
    if (M0.rows() != M0.cols() || M0.rows() < 1)
        throw ValidationError("tidal matrix must be square and nonempty");
    TidalMatrix t;
    t.m = static_cast<int>(M0.rows());
    t.source = TidalSource::explicit_constant;
    Mat copy = M0;
    t.M = [copy](double) { return copy; };
    return t;
}

TidalMatrix tidal_scalar(double lambda, int m) {
    return tidal_constant(lambda * Mat::Identity(m, m));
}

TidalMatrix tidal_from_chart(const MetricChart& chart, const Worldline& line,
                             const TransportedFrame& frame) {
    const int n = chart.dim;
    const int m = frame.legs();
    if (m < 1) throw ValidationError("tidal contraction needs at least one frame leg");
    if (!line.sigma_tangent)
        throw ValidationError("tidal contraction needs the sigma tangent of the center curve");

    std::vector<Mat> samples;
    samples.reserve(frame.taus.size());
    for (std::size_t k = 0; k < frame.taus.size(); ++k) {
        const double tau = frame.taus[k];
        const Vec x = line.position(tau);
        const Vec xi = line.tangent(tau);
        const Vec ze = line.sigma_tangent(tau);
        const Mat g = metric_at(chart, x);
        const auto& e = frame.frames[k];

        // dual co-frame through the Gram inverse
        Mat gram(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) gram(i, j) = e[i].dot(g * e[j]);
        if (std::abs(gram.determinant()) < 1e-8)
            throw NumericalError("frame degeneracy: |det Gram| < 1e-8 in tidal contraction");
        const Mat gram_inv = gram.inverse();

        const CurvatureSample R = riemann_at(chart, x);
        // cont^a_c = R_bcd^a (xi^b xi^d - zeta^b zeta^d)
        Mat cont = Mat::Zero(n, n);
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c) {
                double acc = 0.0;
                for (int b = 0; b < n; ++b)
                    for (int d = 0; d < n; ++d)
                        acc += R.riemann(b, c, d, a) * (xi(b) * xi(d) - ze(b) * ze(d));
                cont(a, c) = acc;
            }
        Mat Mk(m, m);
        for (int i = 0; i < m; ++i) {
            Vec ei_low = g * e[i];
            for (int j = 0; j < m; ++j) {
                double acc = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int c = 0; c < n; ++c) acc += ei_low(a) * cont(a, c) * e[j](c);
                Mk(i, j) = acc;
            }
        }
        Mk = (gram_inv * Mk).eval(); // raise the frame index
        if ((Mk - Mk.transpose()).cwiseAbs().maxCoeff() > 1e-8)
            throw NumericalError("tidal matrix from chart is not symmetric within 1e-8");
        samples.push_back(Mk);
    }

    TidalMatrix t;
    t.m = m;
    t.source = TidalSource::from_chart;
    std::vector<double> taus = frame.taus;
    t.M = [samples, taus](double tau) {
        if (tau <= taus.front()) return samples.front();
        if (tau >= taus.back()) return samples.back();
        const double dt = taus[1] - taus[0];
        const std::size_t k =
            std::min(static_cast<std::size_t>((tau - taus.front()) / dt),
                     samples.size() - 2);
        const double w = (tau - taus[k]) / dt;
        return ((1.0 - w) * samples[k] + w * samples[k + 1]).eval();
    };
    return t;
}

Mat JacobiMatrixTrajectory::interpolate_A(double tau) const {
    if (tau <= taus.front()) return A.front();
    if (tau >= taus.back()) return A.back();
    const double h = dt();
    const std::size_t k =
        std::min(static_cast<std::size_t>((tau - taus.front()) / h), A.size() - 2);
    const double s = tau - taus[k];
    Mat out(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            out(i, j) = hermite_value(A[k](i, j), Adot[k](i, j), A[k + 1](i, j),
                                      Adot[k + 1](i, j), h, s);
    return out;
}

double JacobiMatrixTrajectory::det_interpolated(double tau) const {
    return interpolate_A(tau).determinant();
}

double JacobiMatrixTrajectory::scale() const {
    double s = 0.0;
    for (const Mat& a : A) s = std::max(s, a.norm());
    return s;
}

JacobiMatrixTrajectory integrate_jacobi(const TidalMatrix& M, double T, double dt) {
    if (T <= 0.0 || dt <= 0.0) throw ValidationError("integrate_jacobi needs T > 0 and dt > 0");
    const long nsteps = std::max(1L, std::lround(T / dt));
    const double h = T / static_cast<double>(nsteps); // land exactly on T
    const int m = M.m;

    JacobiMatrixTrajectory traj;
    traj.m = m;
    traj.taus.reserve(nsteps + 1);
    traj.A.reserve(nsteps + 1);
    traj.Adot.reserve(nsteps + 1);

    Mat A = Mat::Zero(m, m);
    Mat B = Mat::Identity(m, m); // dA/dtau

    auto push = [&](double tau, const Mat& a, const Mat& b) {
        traj.taus.push_back(tau);
        traj.A.push_back(a);
        traj.Adot.push_back(b);
        traj.detA.push_back(a.determinant());
        traj.wronskian_norm.push_back((b.transpose() * a - a.transpose() * b).norm());
        if (a.cwiseAbs().maxCoeff() > 1e12)
            throw NumericalError("Jacobi matrix overflow: |A| exceeded 1e12 at tau = " +
                                 std::to_string(tau) + " (exponential regime)");
    };
    push(0.0, A, B);

    for (long k = 0; k < nsteps; ++k) {
        const double t = k * h;
        const Mat M1 = M.at(t);
        const Mat M2 = M.at(t + 0.5 * h);
        const Mat M4 = M.at(t + h);

        const Mat ka1 = B, kb1 = -M1 * A;
        const Mat ka2 = B + 0.5 * h * kb1, kb2 = -M2 * (A + 0.5 * h * ka1);
        const Mat ka3 = B + 0.5 * h * kb2, kb3 = -M2 * (A + 0.5 * h * ka2);
        const Mat ka4 = B + h * kb3, kb4 = -M4 * (A + h * ka3);

        A += (h / 6.0) * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
        B += (h / 6.0) * (kb1 + 2.0 * kb2 + 2.0 * kb3 + kb4);
        push((k + 1) * h, A, B);
    }
    return traj;
}

std::vector<Vec> reconstruct_eta(const JacobiMatrixTrajectory& traj, const Vec& eta_dot0) {
    if (eta_dot0.size() != traj.m)
        throw ValidationError("eta_dot0 length must equal the transverse dimension");
    std::vector<Vec> eta;
    eta.reserve(traj.A.size());
    for (const Mat& a : traj.A) eta.push_back(a * eta_dot0);
    return eta;
}

double wronskian_check(const JacobiMatrixTrajectory& traj) {
    double w = 0.0;
    for (double v : traj.wronskian_norm) w = std::max(w, v);
    return w;
}

namespace {

int multiplicity_at(const JacobiMatrixTrajectory& traj, double tau_star, double scale) {
    const Mat a = traj.interpolate_A(tau_star);
    Eigen::JacobiSVD<Mat> svd(a);
    const double cutoff = 1e-8 * std::max(scale, 1e-300);
    int mult = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) < cutoff) ++mult;
    return std::max(mult, 1);
}

} // namespace

std::vector<ConjugateString> find_conjugate_strings(const JacobiMatrixTrajectory& traj,
                                                    std::vector<std::string>* warnings) {
    const std::size_t n = traj.taus.size();
    const double h = traj.dt();
    const double scale = traj.scale();
    const double det_scale = [&] {
        double s = 0.0;
        for (double d : traj.detA) s = std::max(s, std::abs(d));
        return std::max(s, 1.0);
    }();

    std::vector<ConjugateString> out;
    auto det = [&](double tau) { return traj.det_interpolated(tau); };

    // sign-change brackets, scanned away from the structural zero at tau=0
    std::vector<bool> bracketed(n, false);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double d0 = traj.detA[k], d1 = traj.detA[k + 1];
        if (d0 == 0.0) {
            ConjugateString cs;
            cs.tau_star = traj.taus[k];
            cs.bracket = {traj.taus[k - 1], traj.taus[k + 1]};
            cs.multiplicity = multiplicity_at(traj, cs.tau_star, scale);
            out.push_back(cs);
            bracketed[k] = true;
            continue;
        }
        if ((d0 < 0.0) != (d1 < 0.0)) {
            ConjugateString cs;
            cs.bracket = {traj.taus[k], traj.taus[k + 1]};
            cs.tau_star = bisect_root(det, traj.taus[k], traj.taus[k + 1], d0, d1, 1e-12);
            cs.multiplicity = multiplicity_at(traj, cs.tau_star, scale);
            out.push_back(cs);
            bracketed[k] = bracketed[k + 1] = true;
        }
    }

    // tangential candidates: interior |det| minima that dip near zero
    const double trigger = 1e-4 * det_scale;
    for (std::size_t k = 2; k + 1 < n; ++k) {
        if (bracketed[k] || bracketed[k - 1] || bracketed[k + 1]) continue;
        const double dm = std::abs(traj.detA[k - 1]);
        const double d0 = std::abs(traj.detA[k]);
        const double dp = std::abs(traj.detA[k + 1]);
        if (d0 <= dm && d0 <= dp && d0 < trigger) {
            const double tau_star =
                golden_min([&](double t) { return std::abs(det(t)); }, traj.taus[k - 1],
                           traj.taus[k + 1], 1e-12);
            const double dip = std::abs(det(tau_star));
            if (dip <= 1e-12 * det_scale) {
                ConjugateString cs;
                cs.tau_star = tau_star;
                cs.bracket = {traj.taus[k - 1], traj.taus[k + 1]};
                cs.tangential = true;
                cs.multiplicity = multiplicity_at(traj, tau_star, scale);
                out.push_back(cs);
            }
        }
    }

    std::sort(out.begin(), out.end(),
              [](const ConjugateString& a, const ConjugateString& b) {
                  return a.tau_star < b.tau_star;
              });
    // merge duplicates from adjacent detections
    std::vector<ConjugateString> merged;
    for (const auto& cs : out) {
        if (!merged.empty() && std::abs(cs.tau_star - merged.back().tau_star) < 0.5 * h)
            continue;
        merged.push_back(cs);
    }
    if (warnings) {
        for (std::size_t i = 1; i < merged.size(); ++i)
            if (merged[i].tau_star - merged[i - 1].tau_star < 2.0 * h)
                warnings->push_back("sampling too coarse: conjugate strings at tau = " +
                                    std::to_string(merged[i - 1].tau_star) + " and " +
                                    std::to_string(merged[i].tau_star) +
                                    " are closer than two samples");
    }
    return merged;
}

} // namespace wsmorse
