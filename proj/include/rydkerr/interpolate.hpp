#pragma once

#include <span>
#include <vector>

namespace rydkerr {

/// Natural cubic spline (C2, fourth-order for smooth data). Used where
/// accuracy matters more than shape preservation.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    /// Exact integral of the spline over [a, b], clamped to the knot range.
    double integral(double a, double b) const;

    std::span<const double> knots() const { return x_; }
    std::span<const double> values() const { return y_; }
    bool empty() const { return x_.empty(); }

  private:
    std::vector<double> x_, y_, m_;  // m_ = second derivatives at knots
    size_t locate(double x) const;
    double segment_integral(size_t i, double a, double b) const;
};

/// Monotonicity-preserving piecewise cubic Hermite interpolant
/// (Fritsch-Carlson slopes). Strictly increasing x grid required.
class Pchip {
  public:
    Pchip() = default;
    Pchip(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;

    /// Exact integral of the interpolant over [a, b] (piecewise cubic).
    double integral(double a, double b) const;

    std::span<const double> knots() const { return x_; }
    std::span<const double> values() const { return y_; }
    bool empty() const { return x_.empty(); }
    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

  private:
    std::vector<double> x_, y_, d_;  // knots, values, end-point slopes
    size_t locate(double x) const;
    double segment_integral(size_t i, double a, double b) const;
};

}  // namespace rydkerr
