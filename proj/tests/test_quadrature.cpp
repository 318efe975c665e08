#include <doctest.h>

#include <cmath>
#include <complex>

#include "rydkerr/errors.hpp"
#include "rydkerr/interpolate.hpp"
#include "rydkerr/quadrature.hpp"

using namespace rydkerr;

TEST_CASE("gauss-kronrod reproduces the saturated-kernel unit integral") {
    // integral of (1 + x^6)^{-1} over the line = 2 pi / 3
    QuadOptions opts{1e-14, 1e-12, 8000};
    auto f = [](double x) { return 1.0 / (1.0 + std::pow(x, 6)); };
    double v = integrate_or_throw(f, -300.0, 300.0, opts);
    v += 2.0 / (5.0 * std::pow(300.0, 5));  // analytic tail of the cut window
    CHECK(std::abs(v - 2.0 * M_PI / 3.0) < 1e-8);
}

TEST_CASE("polynomials up to degree 13 are integrated exactly") {
    auto f = [](double x) { return ((x - 2) * x + 1) * std::pow(x, 11); };
    const double exact = 16384.0 / 14.0 - 16384.0 / 13.0 + 4096.0 / 12.0;
    // one panel suffices; no subdivision should be needed
    auto r = integrate(f, 0.0, 2.0, {1e-12, 1e-12, 10});
    CHECK(r.converged);
    CHECK(r.intervals == 1);
    CHECK(std::abs(r.value - exact) < 1e-10 * exact);
}

TEST_CASE("breakpoints handle discontinuous integrands") {
    auto f = [](double x) { return x < 1.0 ? 1.0 : 0.0; };
    const double bp[] = {1.0};
    auto r = integrate(f, 0.0, 3.0, {1e-12, 1e-12, 100}, bp);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("complex integrand") {
    auto f = [](double x) { return std::exp(std::complex<double>(0.0, x)); };
    auto v = integrate_complex_or_throw(f, 0.0, M_PI, {1e-13, 1e-12, 100});
    CHECK(std::abs(v - std::complex<double>(0.0, 2.0)) < 1e-12);
}

TEST_CASE("non-convergence reports the worst subinterval") {
    // integrable singularity, starved interval budget
    auto f = [](double x) { return 1.0 / std::sqrt(std::abs(x) + 1e-300); };
    auto r = integrate(f, 0.0, 1.0, {1e-15, 1e-15, 8});
    CHECK_FALSE(r.converged);
    CHECK(r.worst_err > 0.0);
    CHECK(r.worst_a >= 0.0);
    CHECK(r.worst_b <= 1.0);
    CHECK_THROWS_AS((void)integrate_or_throw(f, 0.0, 1.0, {1e-15, 1e-15, 8}),
                    NumericalError);
}

TEST_CASE("solve_monotone finds interior roots") {
    const double root =
        solve_monotone([](double x) { return std::tanh(x) - 0.5; }, -5.0, 5.0);
    CHECK(std::abs(root - std::atanh(0.5)) < 1e-10);
}

TEST_CASE("pchip interpolates monotone data without overshoot") {
    std::vector<double> x{0, 1, 2, 3, 4, 5};
    std::vector<double> y{0, 0, 0.5, 1, 1, 1};
    Pchip p(x, y);
    for (double t = 0.0; t <= 5.0; t += 0.01) {
        CHECK(p(t) >= -1e-14);
        CHECK(p(t) <= 1.0 + 1e-14);
    }
    CHECK(p(2.0) == doctest::Approx(0.5));
}

TEST_CASE("pchip exact integral matches quadrature of the interpolant") {
    std::vector<double> x, y;
    for (int i = 0; i <= 20; ++i) {
        x.push_back(i * 0.3);
        y.push_back(std::exp(-x.back()));
    }
    Pchip p(x, y);
    const double direct = p.integral(0.3, 5.7);
    const double quad = integrate_or_throw([&](double t) { return p(t); }, 0.3, 5.7,
                                           {1e-13, 1e-12, 4000});
    CHECK(direct == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("cubic spline converges at fourth order on smooth data") {
    auto build = [](int n) {
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = -3.0 + 6.0 * i / (n - 1.0);
            y[i] = std::sin(x[i]);
        }
        return CubicSpline(x, y);
    };
    auto err = [&](int n) {
        auto s = build(n);
        double e = 0;
        for (double t = -2.0; t <= 2.0; t += 0.001)
            e = std::max(e, std::abs(s(t) - std::sin(t)));
        return e;
    };
    const double e1 = err(41), e2 = err(81);
    CHECK(e1 / e2 > 10.0);  // ~16 for h -> h/2
    CHECK(e2 < 1e-6);
}

TEST_CASE("cubic spline integral is exact for its own segments") {
    std::vector<double> x{0, 0.7, 1.9, 3.0, 4.2};
    std::vector<double> y{1.0, 0.3, -0.2, 0.8, 0.1};
    CubicSpline s(x, y);
    const double direct = s.integral(0.0, 4.2);
    const double quad = integrate_or_throw([&](double t) { return s(t); }, 0.0, 4.2,
                                           {1e-13, 1e-12, 4000});
    CHECK(direct == doctest::Approx(quad).epsilon(1e-11));
}
