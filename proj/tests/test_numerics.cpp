#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wsmorse/numerics.hpp"

using namespace wsmorse;

TEST_CASE("pairwise sum matches naive sum on benign data") {
    std::vector<double> v(1000);
    double naive = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = std::sin(0.1 * static_cast<double>(i));
        naive += v[i];
    }
    CHECK(pairwise_sum(v) == doctest::Approx(naive).epsilon(1e-13));
}

TEST_CASE("trapezoid integrates a parabola at second order") {
    auto integral = [](int n) {
        std::vector<double> f(n);
        const double dx = 1.0 / (n - 1);
        for (int i = 0; i < n; ++i) {
            const double x = i * dx;
            f[i] = x * x;
        }
        return trapezoid(f, dx);
    };
    const double e1 = std::abs(integral(101) - 1.0 / 3.0);
    const double e2 = std::abs(integral(201) - 1.0 / 3.0);
    CHECK(e2 < e1 / 3.5);
}

TEST_CASE("periodic rectangle rule is exact for a full cosine period") {
    const int n = 64;
    std::vector<double> f(n);
    const double dx = 2.0 * M_PI / n;
    for (int i = 0; i < n; ++i) f[i] = std::cos(i * dx) + 2.0;
    CHECK(periodic_rectangle(f, dx) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
}

TEST_CASE("hermite interpolation reproduces cubics exactly") {
    auto f = [](double x) { return 1.0 + x - 2.0 * x * x + 0.5 * x * x * x; };
    auto fp = [](double x) { return 1.0 - 4.0 * x + 1.5 * x * x; };
    const double a = 0.3, h = 0.2;
    for (double s : {0.0, 0.05, 0.1, 0.17, 0.2}) {
        CHECK(hermite_value(f(a), fp(a), f(a + h), fp(a + h), h, s) ==
              doctest::Approx(f(a + s)).epsilon(1e-14));
    }
}

TEST_CASE("bisection and golden section locate features of sin") {
    auto f = [](double x) { return std::sin(x); };
    const double root = bisect_root(f, 3.0, 3.3, f(3.0), f(3.3), 1e-13);
    CHECK(root == doctest::Approx(M_PI).epsilon(1e-12));
    auto g = [](double x) { return std::abs(std::sin(x)); };
    const double mn = golden_min(g, 2.9, 3.4, 1e-12);
    CHECK(mn == doctest::Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("loglog slope recovers a power law") {
    std::vector<double> h{1e-1, 1e-2, 1e-3};
    std::vector<double> e;
    for (double hi : h) e.push_back(3.0 * hi * hi);
    CHECK(loglog_slope(h, e) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("difference stencils hit quadratic exactness") {
    // f(x) = 2 + x + 3 x^2 sampled on h = 0.1
    const double h = 0.1;
    std::vector<double> f, d;
    for (int i = 0; i < 6; ++i) {
        const double x = i * h;
        f.push_back(2.0 + x + 3.0 * x * x);
    }
    for (int i = 0; i + 1 < 6; ++i) d.push_back(f[i + 1] - f[i]);
    CHECK(stencil::d1_left(d, h) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(stencil::d1_central(d, 2, h) == doctest::Approx(1.0 + 6.0 * 2 * h).epsilon(1e-12));
    CHECK(stencil::d1_right(d, h) == doctest::Approx(1.0 + 6.0 * 5 * h).epsilon(1e-12));
    CHECK(stencil::d2_left(d, h) == doctest::Approx(6.0).epsilon(1e-11));
    CHECK(stencil::d2_central(d, 2, h) == doctest::Approx(6.0).epsilon(1e-11));
    CHECK(stencil::d2_right(d, h) == doctest::Approx(6.0).epsilon(1e-11));
}
