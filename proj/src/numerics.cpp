#include "wsmorse/numerics.hpp"

#include <cmath>
#include <cstdlib>

#include <Eigen/Dense>

namespace wsmorse {

double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double trapezoid(std::span<const double> f, double dx) {
    if (f.size() < 2) return 0.0;
    return dx * (pairwise_sum(f) - 0.5 * (f.front() + f.back()));
}

double periodic_rectangle(std::span<const double> f, double dx) {
    return dx * pairwise_sum(f);
}

double hermite_value(double f0, double d0, double f1, double d1, double h, double s) {
    const double t = s / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * f0 + (t3 - 2.0 * t2 + t) * h * d0 +
           (-2.0 * t3 + 3.0 * t2) * f1 + (t3 - t2) * h * d1;
}

double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double fa, double fb, double tol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break; // bracket at floating-point resolution
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) != (fm < 0.0)) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
    const double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            if (x1 >= x2) break;
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            if (x2 <= x1) break;
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
        A(i, 0) = std::log(x[i]);
        A(i, 1) = 1.0;
        rhs(i) = std::log(y[i]);
    }
    Eigen::Vector2d coef = A.colPivHouseholderQr().solve(rhs);
    return coef(0);
}

} // namespace wsmorse
