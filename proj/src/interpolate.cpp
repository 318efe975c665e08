#include "rydkerr/interpolate.hpp"

#include <algorithm>
#include <cmath>

#include "rydkerr/errors.hpp"

namespace rydkerr {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw ValidationError("CubicSpline: need >= 2 samples with matching sizes");
    for (size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i + 1] > x_[i]))
            throw ValidationError("CubicSpline: x grid must be strictly increasing");

    m_.assign(n, 0.0);
    if (n == 2) return;
    // tridiagonal system for the interior second derivatives, natural ends
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    for (size_t i = 2; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double w = h0 / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (size_t i = n - 2; i >= 1; --i) {
        m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
        if (i == 1) break;
    }
}

size_t CubicSpline::locate(double x) const {
    if (x <= x_.front()) return 0;
    if (x >= x_[x_.size() - 2]) return x_.size() - 2;
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    return static_cast<size_t>(it - x_.begin()) - 1;
}

double CubicSpline::operator()(double x) const {
    const size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::segment_integral(size_t i, double a, double b) const {
    const double h = x_[i + 1] - x_[i];
    auto prim = [&](double x) {
        const double u = (x_[i + 1] - x) / h;
        const double v = (x - x_[i]) / h;
        // antiderivative of the cubic form above
        return h * (-0.5 * u * u * y_[i] + 0.5 * v * v * y_[i + 1] +
                    h * h / 6.0 *
                        ((-0.25 * u * u * u * u + 0.5 * u * u) * m_[i] +
                         (0.25 * v * v * v * v - 0.5 * v * v) * m_[i + 1]));
    };
    return prim(b) - prim(a);
}

double CubicSpline::integral(double a, double b) const {
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    a = std::clamp(a, x_.front(), x_.back());
    b = std::clamp(b, x_.front(), x_.back());
    if (a == b) return 0.0;
    const size_t ia = locate(a);
    const size_t ib = locate(b);
    if (ia == ib) return sign * segment_integral(ia, a, b);
    double sum = segment_integral(ia, a, x_[ia + 1]);
    for (size_t i = ia + 1; i < ib; ++i) sum += segment_integral(i, x_[i], x_[i + 1]);
    sum += segment_integral(ib, x_[ib], b);
    return sign * sum;
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw ValidationError("Pchip: need >= 2 samples with matching sizes");
    for (size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i + 1] > x_[i]))
            throw ValidationError("Pchip: x grid must be strictly increasing");

    std::vector<double> h(n - 1), delta(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }

    d_.assign(n, 0.0);
    if (n == 2) {
        d_[0] = d_[1] = delta[0];
    } else {
        for (size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] == 0.0 || delta[i] == 0.0 ||
                (delta[i - 1] > 0) != (delta[i] > 0)) {
                d_[i] = 0.0;
            } else {
                // weighted harmonic mean of neighbouring secants
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        // one-sided three-point end slopes, clipped for shape preservation
        auto end_slope = [](double h0, double h1, double d0, double d1) {
            double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if (d * d0 <= 0.0)
                d = 0.0;
            else if (d0 * d1 < 0.0 && std::abs(d) > 3.0 * std::abs(d0))
                d = 3.0 * d0;
            return d;
        };
        d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
}

size_t Pchip::locate(double x) const {
    if (x <= x_.front()) return 0;
    if (x >= x_[x_.size() - 2]) return x_.size() - 2;
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    return static_cast<size_t>(it - x_.begin()) - 1;
}

double Pchip::operator()(double x) const {
    const size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double Pchip::derivative(double x) const {
    const size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double dh00 = (6 * t2 - 6 * t) / h;
    const double dh10 = 3 * t2 - 4 * t + 1;
    const double dh01 = (-6 * t2 + 6 * t) / h;
    const double dh11 = 3 * t2 - 2 * t;
    return dh00 * y_[i] + dh10 * d_[i] + dh01 * y_[i + 1] + dh11 * d_[i + 1];
}

double Pchip::segment_integral(size_t i, double a, double b) const {
    // antiderivative of the Hermite basis on segment i, evaluated at local t
    const double h = x_[i + 1] - x_[i];
    auto prim = [&](double t) {
        const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
        const double H00 = 0.5 * t4 - t3 + t;
        const double H10 = 0.25 * t4 - (2.0 / 3.0) * t3 + 0.5 * t2;
        const double H01 = -0.5 * t4 + t3;
        const double H11 = 0.25 * t4 - t3 / 3.0;
        return h * (H00 * y_[i] + H10 * h * d_[i] + H01 * y_[i + 1] + H11 * h * d_[i + 1]);
    };
    const double ta = (a - x_[i]) / h;
    const double tb = (b - x_[i]) / h;
    return prim(tb) - prim(ta);
}

double Pchip::integral(double a, double b) const {
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    a = std::clamp(a, x_.front(), x_.back());
    b = std::clamp(b, x_.front(), x_.back());
    if (a == b) return 0.0;
    const size_t ia = locate(a);
    const size_t ib = locate(b);
    if (ia == ib) return sign * segment_integral(ia, a, b);
    double sum = segment_integral(ia, a, x_[ia + 1]);
    for (size_t i = ia + 1; i < ib; ++i) sum += segment_integral(i, x_[i], x_[i + 1]);
    sum += segment_integral(ib, x_[ib], b);
    return sign * sum;
}

}  // namespace rydkerr
