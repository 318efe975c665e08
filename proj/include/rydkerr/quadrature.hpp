#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace rydkerr {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_intervals = 4000;
};

/// Result of an adaptive integration together with its diagnostics.
/// `worst_a`/`worst_b` identify the subinterval with the largest error
/// estimate; they are reported when the integration fails to converge.
struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
    double worst_a = 0.0;
    double worst_b = 0.0;
    double worst_err = 0.0;
};

struct ComplexQuadResult {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
    double worst_a = 0.0;
    double worst_b = 0.0;
    double worst_err = 0.0;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
/// `breakpoints` lists interior points where the integrand is not smooth;
/// the initial subdivision is split there.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts = {},
                     std::span<const double> breakpoints = {});

ComplexQuadResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                    double a, double b, const QuadOptions& opts = {},
                                    std::span<const double> breakpoints = {});

/// As above, but throws NumericalError with the worst subinterval when the
/// requested tolerance is not reached.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const QuadOptions& opts = {},
                          std::span<const double> breakpoints = {},
                          const char* what = "integrand");

std::complex<double> integrate_complex_or_throw(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadOptions& opts = {}, std::span<const double> breakpoints = {},
    const char* what = "integrand");

/// Root of a strictly monotone continuous f on [lo, hi] with f(lo), f(hi) of
/// opposite sign. Bisection with a secant acceleration step.
double solve_monotone(const std::function<double(double)>& f, double lo, double hi,
                      double x_tol = 1e-13);

}  // namespace rydkerr
