#include "rydkerr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "rydkerr/errors.hpp"

namespace rydkerr {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename T>
struct Panel {
    double a, b;
    T value;
    double err;
};

template <typename T>
Panel<T> gk15(const std::function<T(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);

    T fv[15];
    fv[7] = f(mid);
    for (int i = 0; i < 7; ++i) {
        const double dx = hl * kXgk[i];
        fv[i] = f(mid - dx);
        fv[14 - i] = f(mid + dx);
    }

    T resg = kWg[3] * fv[7];
    T resk = kWgk[7] * fv[7];
    double resabs = kWgk[7] * std::abs(fv[7]);
    for (int i = 0; i < 7; ++i) {
        const T pair = fv[i] + fv[14 - i];
        resk += kWgk[i] * pair;
        resabs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
        if (i % 2 == 1) resg += kWg[i / 2] * pair;
    }
    const T reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));

    resasc *= std::abs(hl);
    resabs *= std::abs(hl);
    double err = std::abs(resk - resg) * std::abs(hl) * 200.0;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    err = std::max(err, eps50);

    return {a, b, resk * hl, err};
}

template <typename T>
struct PanelWorse {
    bool operator()(const Panel<T>& x, const Panel<T>& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.a > y.a;  // deterministic tie-break
    }
};

template <typename T, typename R>
R adaptive(const std::function<T(double)>& f, double a, double b,
           const QuadOptions& opts, std::span<const double> breakpoints) {
    R out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Panel<T>, std::vector<Panel<T>>, PanelWorse<T>> heap;
    T total{};
    double total_err = 0.0;
    int n_panels = 0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        auto p = gk15(f, edges[i], edges[i + 1]);
        total += p.value;
        total_err += p.err;
        heap.push(p);
        ++n_panels;
    }

    auto tol = [&](double mag) { return std::max(opts.abs_tol, opts.rel_tol * mag); };

    while (total_err > tol(std::abs(total)) && n_panels < opts.max_intervals) {
        Panel<T> worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval can no longer be split in floating point
            heap.push(worst);
            break;
        }
        auto left = gk15(f, worst.a, mid);
        auto right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++n_panels;
    }

    // final deterministic re-accumulation ordered by position
    std::vector<Panel<T>> panels;
    panels.reserve(n_panels);
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
    T value{};
    double err = 0.0;
    double worst_err = -1.0;
    double worst_a = a, worst_b = b;
    for (const auto& p : panels) {
        value += p.value;
        err += p.err;
        if (p.err > worst_err) {
            worst_err = p.err;
            worst_a = p.a;
            worst_b = p.b;
        }
    }

    out.value = sign * value;
    out.error = err;
    out.intervals = n_panels;
    out.converged = err <= tol(std::abs(value));
    out.worst_a = worst_a;
    out.worst_b = worst_b;
    out.worst_err = worst_err;
    return out;
}

template <typename R>
[[noreturn]] void throw_nonconverged(const R& r, const char* what) {
    std::ostringstream os;
    os << "adaptive quadrature did not converge for " << what << ": error estimate "
       << r.error << " after " << r.intervals << " intervals; worst subinterval ["
       << r.worst_a << ", " << r.worst_b << "] with error " << r.worst_err;
    throw NumericalError(os.str());
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts, std::span<const double> breakpoints) {
    return adaptive<double, QuadResult>(f, a, b, opts, breakpoints);
}

ComplexQuadResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                    double a, double b, const QuadOptions& opts,
                                    std::span<const double> breakpoints) {
    return adaptive<std::complex<double>, ComplexQuadResult>(f, a, b, opts, breakpoints);
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const QuadOptions& opts, std::span<const double> breakpoints,
                          const char* what) {
    auto r = integrate(f, a, b, opts, breakpoints);
    if (!r.converged) throw_nonconverged(r, what);
    return r.value;
}

std::complex<double> integrate_complex_or_throw(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadOptions& opts, std::span<const double> breakpoints, const char* what) {
    auto r = integrate_complex(f, a, b, opts, breakpoints);
    if (!r.converged) throw_nonconverged(r, what);
    return r.value;
}

double solve_monotone(const std::function<double(double)>& f, double lo, double hi,
                      double x_tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw NumericalError("solve_monotone: no sign change on bracket");
    for (int it = 0; it < 200 && hi - lo > x_tol * (1.0 + std::abs(lo) + std::abs(hi));
         ++it) {
        double mid;
        if (it % 2 == 0 && fhi != flo) {
            mid = lo - flo * (hi - lo) / (fhi - flo);  // secant
            if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
        } else {
            mid = 0.5 * (lo + hi);
        }
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (fhi > 0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace rydkerr
