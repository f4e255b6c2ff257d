#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wsmorse {

/// Pairwise (cascade) summation. All quadratures in the library reduce
/// through this so that results do not depend on evaluation order.
double pairwise_sum(std::span<const double> v);

/// Composite trapezoid rule on a uniform grid.
double trapezoid(std::span<const double> f, double dx);

/// Rectangle rule for a periodic integrand sampled on [0, P) without the
/// duplicated seam point.
double periodic_rectangle(std::span<const double> f, double dx);

/// Value of the cubic Hermite interpolant on [0, h] given endpoint values
/// and derivatives; s is the evaluation offset from the left endpoint.
double hermite_value(double f0, double d0, double f1, double d1, double h, double s);

/// Bisection for a sign change of f on [a, b]; requires f(a)*f(b) < 0.
/// Refines until the bracket is below tol.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double fa, double fb, double tol);

/// Golden-section minimizer of f on [a, b], refined until the interval is
/// below tol. Returns the abscissa of the minimum.
double golden_min(const std::function<double(double)>& f, double a, double b, double tol);

/// Least-squares slope of log(y) against log(x). Used by the convergence
/// order checks.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// One-dimensional derivative stencils on uniform grids, expressed through
/// adjacent differences d[i] = f[i+1] - f[i] so that callers can pre-wrap
/// the differences of periodic (angular) components.
namespace stencil {

// second-order first derivative at interior node i (1 <= i <= n-2)
inline double d1_central(std::span<const double> d, int i, double h) {
    return (d[i - 1] + d[i]) / (2.0 * h);
}
// second-order one-sided first derivative at the left end
inline double d1_left(std::span<const double> d, double h) {
    return (3.0 * d[0] - d[1]) / (2.0 * h);
}
// second-order one-sided first derivative at the right end (n nodes, n-1 diffs)
inline double d1_right(std::span<const double> d, double h) {
    const std::size_t m = d.size();
    return (3.0 * d[m - 1] - d[m - 2]) / (2.0 * h);
}
// one-sided end stencils whose leading truncation term equals the central
// one (+h^2 f'''/6). With a smooth error functional across all nodes,
// nesting two first-derivative passes stays second order at the ends.
inline double d1_left_matched(std::span<const double> d, double h) {
    return (4.0 * d[0] - 3.0 * d[1] + d[2]) / (2.0 * h);
}
inline double d1_right_matched(std::span<const double> d, double h) {
    const std::size_t m = d.size();
    return (4.0 * d[m - 1] - 3.0 * d[m - 2] + d[m - 3]) / (2.0 * h);
}
// second derivative, interior
inline double d2_central(std::span<const double> d, int i, double h) {
    return (d[i] - d[i - 1]) / (h * h);
}
// second-order one-sided second derivative at the left end
// (2f0 - 5f1 + 4f2 - f3)/h^2 rewritten in adjacent differences
inline double d2_left(std::span<const double> d, double h) {
    return (-2.0 * d[0] + 3.0 * d[1] - d[2]) / (h * h);
}
// second-order one-sided second derivative at the right end
inline double d2_right(std::span<const double> d, double h) {
    const std::size_t m = d.size();
    return (2.0 * d[m - 1] - 3.0 * d[m - 2] + d[m - 3]) / (h * h);
}

} // namespace stencil

} // namespace wsmorse
