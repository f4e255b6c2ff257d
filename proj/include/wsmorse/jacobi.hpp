#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wsmorse/manifold.hpp"

namespace wsmorse {

enum class TidalSource { from_chart, explicit_constant };

/// Coefficient matrix of the transverse deviation equation
///   d2 eta^i / dtau^2 + M^i_j(tau) eta^j = 0
/// in a transported orthonormal frame. When contracted from a chart,
///   M^i_j = e^i_a R_bcd^a (xi^b xi^d - zeta^b zeta^d) e_j^c,
/// the difference of the tau-tau and sigma-sigma tidal contractions.
struct TidalMatrix {
    int m = 0; // transverse dimension
    TidalSource source = TidalSource::explicit_constant;
    std::function<Mat(double)> M;

    Mat at(double tau) const { return M(tau); }
};

/// Explicit constant matrix (oracle mode). Symmetry is deliberately not
/// enforced here; a nonsymmetric M is the negative control for the
/// Wronskian identity.
TidalMatrix tidal_constant(const Mat& M0);

/// lambda * identity shortcut.
TidalMatrix tidal_scalar(double lambda, int m);

/// Contraction of the chart curvature along a center worldline with a
/// transported frame. The frame Gram matrix must be nondegenerate
/// (|det| >= 1e-8); the result is checked for symmetry (1e-8) at the
/// frame samples and interpolated linearly between them.
TidalMatrix tidal_from_chart(const MetricChart& chart, const Worldline& line,
                             const TransportedFrame& frame);

/// Solution samples of the matrix initial value problem
///   d2A/dtau2 + M(tau) A = 0,  A(0) = 0,  dA/dtau(0) = I,
/// with the determinant trace and the Wronskian defect
/// ||Adot^T A - A^T Adot||_F recorded per sample.
struct JacobiMatrixTrajectory {
    int m = 0;
    std::vector<double> taus;
    std::vector<Mat> A;
    std::vector<Mat> Adot;
    std::vector<double> detA;
    std::vector<double> wronskian_norm;

    double T() const { return taus.back(); }
    double dt() const { return taus[1] - taus[0]; }
    /// cubic Hermite interpolation of A between samples
    Mat interpolate_A(double tau) const;
    double det_interpolated(double tau) const;
    /// largest Frobenius norm along the trajectory (scale for cutoffs)
    double scale() const;
};

/// Fixed-step RK4 integration of the A equation. Throws NumericalError if
/// any entry exceeds 1e12 in magnitude (runaway exponential regime).
JacobiMatrixTrajectory integrate_jacobi(const TidalMatrix& M, double T, double dt);

/// eta^i(tau) = A^i_j(tau) eta_dot0^j; eta(0) = 0 by construction.
std::vector<Vec> reconstruct_eta(const JacobiMatrixTrajectory& traj, const Vec& eta_dot0);

/// A string locus where det A vanishes.
struct ConjugateString {
    double tau_star = 0.0;
    int multiplicity = 0;
    std::pair<double, double> bracket{0.0, 0.0};
    bool tangential = false; // located through a |det| dip, no sign change
};

/// All roots of det A on (0, T]. Sign changes are refined by bisection and
/// tangential roots by golden-section minimization of |det A| on the cubic
/// Hermite interpolant; a tangential candidate is accepted only if the
/// refined |det A| falls below 1e-12 (relative to the trajectory scale).
/// Multiplicity counts singular values of A(tau*) below 1e-8 times the
/// trajectory scale. Appends a note to `warnings` when two roots fall
/// within two samples of each other (sampling too coarse).
std::vector<ConjugateString> find_conjugate_strings(const JacobiMatrixTrajectory& traj,
                                                    std::vector<std::string>* warnings = nullptr);

/// max over tau of the Wronskian defect; vanishes for symmetric M.
double wronskian_check(const JacobiMatrixTrajectory& traj);

} // namespace wsmorse
