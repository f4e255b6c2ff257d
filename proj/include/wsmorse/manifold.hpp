#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wsmorse/errors.hpp"

namespace wsmorse {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Connection coefficients Gamma^b_{ac}, symmetric in the two lower slots.
class Christoffel {
public:
    explicit Christoffel(int n) : n_(n), v_(static_cast<std::size_t>(n) * n * n, 0.0) {}
    double& operator()(int up, int lo1, int lo2) { return v_[idx(up, lo1, lo2)]; }
    double operator()(int up, int lo1, int lo2) const { return v_[idx(up, lo1, lo2)]; }
    int dim() const { return n_; }

private:
    std::size_t idx(int up, int lo1, int lo2) const {
        return (static_cast<std::size_t>(up) * n_ + lo1) * n_ + lo2;
    }
    int n_;
    std::vector<double> v_;
};

/// Curvature tensor R_abc^d in the convention fixed by
/// (D_a D_b - D_b D_a) w_c = R_abc^d w_d:
///
///   R_abc^d = d_b Gamma^d_ac - d_a Gamma^d_bc
///           + Gamma^f_ac Gamma^d_bf - Gamma^f_bc Gamma^d_af
///
/// The first three slots are covariant, the last contravariant. With this
/// choice the lowered tensor on a constant-curvature space equals
/// +K (g_ac g_bd - g_ad g_bc); see docs/conventions.md. Antisymmetry in
/// (a,b) is enforced structurally: only a<b is stored.
class Riemann {
public:
    explicit Riemann(int n) : n_(n), v_(storage_size(n), 0.0) {}
    int dim() const { return n_; }

    double operator()(int a, int b, int c, int d) const {
        if (a == b) return 0.0;
        return a < b ? v_[idx(a, b, c, d)] : -v_[idx(b, a, c, d)];
    }
    /// Writable entry for a < b; the (b,a) entry is implied.
    double& upper(int a, int b, int c, int d) { return v_[idx(a, b, c, d)]; }

private:
    static std::size_t storage_size(int n) {
        return static_cast<std::size_t>(n) * n * n * n;
    }
    std::size_t idx(int a, int b, int c, int d) const {
        return ((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d;
    }
    int n_;
    std::vector<double> v_;
};

/// Riemann sample at a point: mixed R_abc^d plus the fully lowered form
/// R_abcd = R_abc^e g_ed.
struct CurvatureSample {
    Vec point;
    Riemann riemann;
    std::vector<double> lowered; // dense n^4, index ((a n + b) n + c) n + d

    CurvatureSample(Vec p, Riemann r, std::vector<double> low)
        : point(std::move(p)), riemann(std::move(r)), lowered(std::move(low)) {}
    double low(int a, int b, int c, int d) const {
        const int n = riemann.dim();
        return lowered[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d];
    }
};

/// A single pseudo-Riemannian coordinate patch. Components of the metric
/// are supplied as a function of the coordinate point; the connection and
/// curvature fall back to central finite differences with step fd_step
/// when no analytic expressions are attached.
struct MetricChart {
    int dim = 0;
    std::vector<int> signature;                          // entries +1 / -1
    std::function<Mat(const Vec&)> metric_fn;
    std::function<Christoffel(const Vec&)> analytic_christoffel; // optional
    std::function<Riemann(const Vec&)> analytic_riemann;         // optional
    std::function<bool(const Vec&)> in_domain;                   // optional
    std::vector<double> coord_period; // per-coordinate period, 0 = aperiodic
    double fd_step = 1e-4;
    bool flat = false; // connection vanishes identically
    std::string name;

    bool lorentzian() const {
        for (int s : signature)
            if (s < 0) return true;
        return false;
    }
    double period(int c) const {
        return coord_period.empty() ? 0.0 : coord_period[static_cast<std::size_t>(c)];
    }
};

enum class ChartKind { flat, round_sphere, hyperbolic, product_time_sphere };

/// Request for a constant-curvature chart. K is the sectional curvature of
/// the curved factor (the whole space for sphere/hyperbolic kinds).
struct ConstantCurvatureSpec {
    ChartKind kind = ChartKind::flat;
    double K = 0.0;
    int dim = 4;
};

/// Builds the chart with analytic connection and curvature attached.
/// Validates the K sign against the kind.
std::shared_ptr<const MetricChart> make_chart(const ConstantCurvatureSpec& spec);

/// Metric components at x. Checks symmetry (1e-12) and invertibility
/// (|det| >= 1e-14); throws NumericalError otherwise.
Mat metric_at(const MetricChart& chart, const Vec& x);

/// Gamma^b_{ac} at x: analytic when attached, otherwise central differences
/// of the metric, Gamma^b_ac = (1/2) g^bd (d_a g_dc + d_c g_ad - d_d g_ac).
Christoffel christoffel_at(const MetricChart& chart, const Vec& x);

/// Curvature sample at x (see Riemann for the index convention).
CurvatureSample riemann_at(const MetricChart& chart, const Vec& x);

/// Sectional curvature of the plane spanned by u, v at x.
double sectional_curvature(const MetricChart& chart, const Vec& x, const Vec& u, const Vec& v);

/// Curve with tangent data. sigma_tangent is optional and only used to
/// validate frame orthogonality for worldsheet center curves.
struct Worldline {
    std::function<Vec(double)> position;
    std::function<Vec(double)> tangent;
    std::function<Vec(double)> sigma_tangent; // optional
};

/// Frame legs e_i(tau) carried along a worldline.
struct TransportedFrame {
    std::vector<double> taus;
    std::vector<std::vector<Vec>> frames; // frames[k][i] = e_i at taus[k]
    int legs() const { return frames.empty() ? 0 : static_cast<int>(frames[0].size()); }
};

/// Parallel transport of frame0 along the worldline:
/// de_i^b/dtau + Gamma^b_cd xi^c e_i^d = 0, integrated with fixed-step RK4
/// on the supplied uniform tau grid. frame0 must be orthonormal and
/// orthogonal to the tangent (and sigma_tangent when present) at taus[0].
TransportedFrame parallel_transport_frame(const MetricChart& chart, const Worldline& line,
                                          const std::vector<Vec>& frame0,
                                          const std::vector<double>& taus);

} // namespace wsmorse
