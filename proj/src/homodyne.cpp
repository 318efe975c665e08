#include "rydkerr/homodyne.hpp"

#include <algorithm>
#include <cmath>

#include "rydkerr/errors.hpp"
#include "rydkerr/parallel.hpp"

namespace rydkerr {

ProbeMode ProbeMode::gaussian(double center, double width, double support_sigmas) {
    if (!(width > 0)) throw ValidationError("probe.width: must be > 0");
    ProbeMode p;
    p.center_ = center;
    p.l_probe_ = width;
    p.lo_ = center - support_sigmas * width;
    p.hi_ = center + support_sigmas * width;
    const double norm = std::pow(2.0 * M_PI * width * width, -0.25);
    p.f_ = [center, width, norm](double x) {
        const double d = (x - center) / (2.0 * width);
        return cdouble(norm * std::exp(-d * d), 0.0);
    };
    return p;
}

ProbeMode ProbeMode::from_function(std::function<cdouble(double)> f, double lo, double hi,
                                   double l_probe, double center) {
    if (!(hi > lo)) throw ValidationError("probe window: hi must be > lo");
    ProbeMode p;
    p.f_ = std::move(f);
    p.lo_ = lo;
    p.hi_ = hi;
    p.l_probe_ = l_probe;
    p.center_ = center;
    return p;
}

cdouble ProbeMode::u(double x) const {
    if (x < lo_ || x > hi_) return {0.0, 0.0};
    return f_(x);
}

void ProbeMode::check_normalization(const QuadOptions& quad) const {
    const double n2 = integrate_or_throw([&](double x) { return std::norm(u(x)); }, lo_,
                                         hi_, quad, {}, "probe norm");
    if (std::abs(n2 - 1.0) > 1e-9)
        throw ValidationError("probe mode is not unit-normalized: |u|^2 integrates to " +
                              std::to_string(n2));
}

cdouble ModeMoments::g(int n, int m) const {
    if (n < 0 || m < 0 || n > n_max_ || m > n_max_)
        throw ValidationError("ModeMoments::g: order out of range");
    return gnm_[static_cast<size_t>(n) * (n_max_ + 1) + m];
}

namespace {

// nested adaptive quadrature of G_{n,m} against the probe mode
cdouble exact_moment_impl(const CoherentInput& input, const PhaseKernel& kernel,
                          const ProbeMode& probe, int n, int m,
                          const QuadOptions& quad) {
    std::vector<double> taus(n + m, 0.0);
    // accuracy ladder: order 1 backs a 1e-8 consistency check, higher orders
    // back 1e-2-grade validation, so the nesting loosens with the dimension
    QuadOptions outer = quad;
    QuadOptions inner = quad;
    if (n + m == 1) {
        outer.rel_tol = std::max(quad.rel_tol, 1e-10);
        outer.abs_tol = std::max(quad.abs_tol, 1e-13);
    } else if (n + m == 2) {
        outer.rel_tol = std::max(quad.rel_tol, 3e-6);
        outer.abs_tol = std::max(quad.abs_tol, 1e-10);
        inner = {std::max(quad.abs_tol, 1e-10), std::max(quad.rel_tol, 1e-8), 20000};
    } else {
        outer.rel_tol = std::max(quad.rel_tol, 1e-4);
        outer.abs_tol = std::max(quad.abs_tol, 1e-8);
        inner = {std::max(quad.abs_tol, 1e-9), std::max(quad.rel_tol, 1e-7), 20000};
    }

    std::function<cdouble(int)> level = [&](int dim) -> cdouble {
        if (dim == n + m) {
            CorrelatorRequest req{n, m, taus};
            cdouble g = correlator(input, kernel, req, inner).value;
            for (int i = 0; i < n; ++i) g *= std::conj(probe.u(taus[i]));
            for (int j = n; j < n + m; ++j) g *= probe.u(taus[j]);
            return g;
        }
        auto f = [&](double t) {
            taus[dim] = t;
            return level(dim + 1);
        };
        return integrate_complex_or_throw(f, probe.support_lo(), probe.support_hi(),
                                          outer, {}, "mode moment");
    };
    return level(0);
}

}  // namespace

cdouble mode_moment_exact(const CoherentInput& input, const PhaseKernel& kernel,
                          const ProbeMode& probe, int n, int m,
                          const QuadOptions& quad) {
    if (n < 0 || m < 0) throw ValidationError("mode_moment_exact: orders must be >= 0");
    if (n + m > 4)
        throw ValidationError("mode_moment_exact: n + m <= 4 (cost control)");
    if (n + m == 0) return {1.0, 0.0};
    return exact_moment_impl(input, kernel, probe, n, m, quad);
}

ModeMoments mode_moments(const CoherentInput& input, const PhaseKernel& kernel,
                         const ProbeMode& probe, int n_max, MomentMethod method,
                         const QuadOptions& quad) {
    if (n_max < 0) throw ValidationError("mode_moments: n_max must be >= 0");
    probe.check_normalization();

    ModeMoments mm;
    mm.n_max_ = n_max;
    mm.method_ = method;
    mm.gnm_.assign(static_cast<size_t>(n_max + 1) * (n_max + 1), cdouble(0, 0));
    auto set = [&](int n, int m, cdouble v) {
        mm.gnm_[static_cast<size_t>(n) * (n_max + 1) + m] = v;
    };

    if (method == MomentMethod::ExactQuadrature) {
        if (2 * n_max > 4)
            throw ValidationError(
                "mode_moments: exact-quadrature requires n + m <= 4, so n_max <= 2; "
                "use mode_moment_exact for individual entries");
        for (int n = 0; n <= n_max; ++n)
            for (int m = n; m <= n_max; ++m) {
                const cdouble v = n + m == 0
                                      ? cdouble(1, 0)
                                      : exact_moment_impl(input, kernel, probe, n, m, quad);
                set(n, m, v);
                set(m, n, std::conj(v));
            }
        mm.tail_estimate_ = 0.0;
        return mm;
    }

    // narrow-probe factorization: freeze the kernel across the probe support
    if (!(probe.l_probe() <= kernel.xi_out() / 10.0))
        throw ValidationError("mode_moments: narrow-probe needs l_probe <= xi_out / 10");
    if (!(probe.l_probe() <= input.l_coh() / 10.0))
        throw ValidationError("mode_moments: narrow-probe needs l_probe <= l_coh / 10");

    const double tau0 = probe.center();
    const cdouble c = integrate_complex_or_throw(
        [&](double x) { return probe.u(x) * input.envelope(x); }, probe.support_lo(),
        probe.support_hi(), quad, {}, "probe overlap");

    // F_Delta = integral |E(w)|^2 [exp(i Delta phi(w - tau0)) - 1] dw
    std::vector<double> bps(input.breakpoints().begin(), input.breakpoints().end());
    bps.insert(bps.end(), {tau0 - kernel.extent(), tau0, tau0 + kernel.extent()});
    std::vector<cdouble> fdelta(n_max + 1);
    for (int d = 0; d <= n_max; ++d) {
        auto f = [&](double w) -> cdouble {
            const double rho = input.density(w);
            if (rho == 0.0) return {0, 0};
            const double chi = d * kernel.phi(w - tau0);
            const double s = std::sin(0.5 * chi);
            return rho * cdouble(-2.0 * s * s, std::sin(chi));
        };
        fdelta[d] = integrate_complex_or_throw(f, input.support_lo(), input.support_hi(),
                                               quad, bps, "fluctuation overlap");
    }

    const double phi0 = kernel.phi0();
    for (int n = 0; n <= n_max; ++n)
        for (int m = n; m <= n_max; ++m) {
            const int d = m - n;  // F_{n-m} = conj(F_{m-n})
            const double kerr = 0.5 * phi0 * (n * (n - 1) - m * (m - 1));
            cdouble v = std::pow(std::conj(c), n) * std::pow(c, m) *
                        std::exp(cdouble(0.0, kerr)) * std::exp(std::conj(fdelta[d]));
            set(n, m, v);
            set(m, n, std::conj(v));
        }

    // rough bound on the freezing error: kernel curvature across the probe
    // plus the sixth-power pair-separation correction
    const double rho0 = input.density(tau0);
    const double lr = probe.l_probe() / kernel.xi_out();
    const double curvature = 2.0 * n_max * rho0 * kernel.xi_out() * std::abs(phi0) *
                             6.0 * lr * lr;
    const double pair6 = n_max * (n_max - 1) * std::abs(phi0) * std::pow(2.0 * lr, 6);
    mm.tail_estimate_ = curvature + pair6;
    return mm;
}

namespace {
constexpr int kMaxDerivativeOrder = 64;

double lfact(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(2 * kMaxDerivativeOrder + 2);
        for (size_t i = 0; i < t.size(); ++i) t[i] = std::lgamma(i + 1.0);
        return t;
    }();
    return table[n];
}
}  // namespace

cdouble gauss_derivative(int n, int m, cdouble alpha) {
    if (n < 0 || m < 0) throw ValidationError("gauss_derivative: orders must be >= 0");
    if (n > kMaxDerivativeOrder || m > kMaxDerivativeOrder)
        throw ValidationError("gauss_derivative: order above the supported cap");
    const double r = std::abs(alpha);
    const double theta = r > 0 ? std::arg(alpha) : 0.0;
    const double lnr = r > 0 ? std::log(r) : 0.0;

    // D = e^{-2 r^2} e^{i (n-m) theta} (-1)^{n+m}
    //     sum_k (-1)^k C(n,k) m!/(m-k)! 2^{n+m-k} r^{n+m-2k}
    const int kmax = std::min(n, m);
    double lk[kMaxDerivativeOrder + 1];
    double lmax = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= kmax; ++k) {
        const int pw = n + m - 2 * k;
        if (r == 0.0 && pw != 0) {
            lk[k] = -std::numeric_limits<double>::infinity();
            continue;
        }
        lk[k] = lfact(n) - lfact(k) - lfact(n - k) + lfact(m) - lfact(m - k) +
                (n + m - k) * M_LN2 + pw * lnr;
        lmax = std::max(lmax, lk[k]);
    }
    if (!std::isfinite(lmax)) return {0.0, 0.0};
    double s = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        if (!std::isfinite(lk[k])) continue;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        s += sign * std::exp(lk[k] - lmax);
    }
    const double parity = ((n + m) % 2 == 0) ? 1.0 : -1.0;
    const double mag = parity * s * std::exp(lmax - 2.0 * r * r);
    return mag * std::exp(cdouble(0.0, (n - m) * theta));
}

double WignerGrid::cell_area() const {
    const double dq = q_axis.size() > 1 ? q_axis[1] - q_axis[0] : 1.0;
    const double dp = p_axis.size() > 1 ? p_axis[1] - p_axis[0] : 1.0;
    return dq * dp;
}

double WignerGrid::integral() const {
    // trapezoid weights on the rectangular grid
    double sum = 0.0;
    const size_t nq = q_axis.size(), np = p_axis.size();
    for (size_t i = 0; i < nq; ++i) {
        const double wq = (i == 0 || i + 1 == nq) ? 0.5 : 1.0;
        for (size_t j = 0; j < np; ++j) {
            const double wp = (j == 0 || j + 1 == np) ? 0.5 : 1.0;
            sum += wq * wp * at(i, j);
        }
    }
    return sum * cell_area();
}

WignerGrid wigner(const ModeMoments& moments, const WignerGridSpec& spec) {
    if (spec.nq < 2 || spec.np < 2)
        throw ValidationError("wigner: grid needs at least 2 points per axis");

    WignerGrid grid;
    double q0 = spec.q_min, q1 = spec.q_max, p0 = spec.p_min, p1 = spec.p_max;
    if (spec.auto_extent) {
        if (moments.n_max() < 1)
            throw ValidationError("wigner: auto extent needs moments up to order 1");
        const cdouble mean = moments.g(0, 1);
        const double var =
            std::max(0.25, std::real(moments.g(1, 1)) - std::norm(mean) + 0.25);
        const double hw = 4.5 * std::sqrt(var);
        q0 = mean.real() - hw;
        q1 = mean.real() + hw;
        p0 = mean.imag() - hw;
        p1 = mean.imag() + hw;
    }
    grid.q_axis.resize(spec.nq);
    grid.p_axis.resize(spec.np);
    for (int i = 0; i < spec.nq; ++i)
        grid.q_axis[i] = q0 + (q1 - q0) * i / (spec.nq - 1.0);
    for (int j = 0; j < spec.np; ++j)
        grid.p_axis[j] = p0 + (p1 - p0) * j / (spec.np - 1.0);

    const double r_max = std::max({std::hypot(q0, p0), std::hypot(q0, p1),
                                   std::hypot(q1, p0), std::hypot(q1, p1)});

    // truncation: include shells s = n + m while the largest term bound,
    // |g_nm| / (n! m!) max_r |D_nm|, stays above the target residual
    auto shell_bound = [&](int s) {
        double bound = 0.0;
        for (int n = std::max(0, s - moments.n_max()); n <= std::min(s, moments.n_max());
             ++n) {
            const int m = s - n;
            double dmax = 0.0;
            for (int i = 0; i <= 48; ++i) {
                const double r = r_max * i / 48.0;
                dmax = std::max(dmax, std::abs(gauss_derivative(n, m, cdouble(r, 0))));
            }
            const double lfac = std::lgamma(n + 1.0) + std::lgamma(m + 1.0);
            bound = std::max(bound, std::abs(moments.g(n, m)) * dmax * std::exp(-lfac));
        }
        return bound * 2.0 / M_PI;
    };

    // decide the shell count against the suffix maxima of the shell bounds,
    // so an accidentally small intermediate shell does not truncate the sum
    const int s_hard = std::min(spec.n_cap, 2 * moments.n_max());
    std::vector<double> bounds(s_hard + 1);
    for (int s = 0; s <= s_hard; ++s) bounds[s] = shell_bound(s);
    std::vector<double> suffix(s_hard + 2, 0.0);
    for (int s = s_hard; s >= 0; --s) suffix[s] = std::max(bounds[s], suffix[s + 1]);

    int s_used = s_hard;
    double first_dropped = bounds[s_hard];
    bool bound_met = false;
    double scale = 2.0 / M_PI;  // |W| of the vacuum term at the origin
    for (int s = 0; s <= s_hard; ++s) {
        scale = std::max(scale, bounds[s]);
        if (suffix[s + 1] < spec.target_residual * scale) {
            s_used = s;
            first_dropped = suffix[s + 1];
            bound_met = true;
            break;
        }
    }

    grid.truncation_order = s_used;
    grid.values.assign(static_cast<size_t>(spec.nq) * spec.np, 0.0);
    std::vector<double> imag_res(static_cast<size_t>(spec.nq), 0.0);

    parallel_for(static_cast<size_t>(spec.nq), [&](size_t iq) {
        double im_max = 0.0;
        for (int jp = 0; jp < spec.np; ++jp) {
            const cdouble alpha(grid.q_axis[iq], grid.p_axis[jp]);
            cdouble w(0.0, 0.0);
            for (int s = 0; s <= s_used; ++s) {
                for (int n = std::max(0, s - moments.n_max());
                     n <= std::min(s, moments.n_max()); ++n) {
                    const int m = s - n;
                    const double parity = (s % 2 == 0) ? 1.0 : -1.0;
                    const double lfac = std::lgamma(n + 1.0) + std::lgamma(m + 1.0);
                    w += parity * std::exp(-lfac) * moments.g(n, m) *
                         gauss_derivative(n, m, alpha);
                }
            }
            w *= 2.0 / M_PI;
            grid.values[iq * spec.np + jp] = w.real();
            im_max = std::max(im_max, std::abs(w.imag()));
        }
        imag_res[iq] = im_max;
    });

    grid.max_imag_residual = *std::max_element(imag_res.begin(), imag_res.end());
    double w_max = 0.0;
    for (double v : grid.values) w_max = std::max(w_max, std::abs(v));
    grid.series_residual = w_max > 0 ? first_dropped / w_max : first_dropped;
    grid.converged = bound_met || grid.series_residual <= spec.target_residual * 10.0;
    return grid;
}

double purity(const WignerGrid& grid) {
    double sum = 0.0;
    const size_t nq = grid.q_axis.size(), np = grid.p_axis.size();
    for (size_t i = 0; i < nq; ++i) {
        const double wq = (i == 0 || i + 1 == nq) ? 0.5 : 1.0;
        for (size_t j = 0; j < np; ++j) {
            const double wp = (j == 0 || j + 1 == np) ? 0.5 : 1.0;
            const double v = grid.at(i, j);
            sum += wq * wp * v * v;
        }
    }
    return M_PI * sum * grid.cell_area();
}

QuadratureCovariance covariance(const WignerGrid& grid) {
    double w = 0, mq = 0, mp = 0;
    const size_t nq = grid.q_axis.size(), np = grid.p_axis.size();
    for (size_t i = 0; i < nq; ++i)
        for (size_t j = 0; j < np; ++j) {
            const double v = grid.at(i, j);
            w += v;
            mq += v * grid.q_axis[i];
            mp += v * grid.p_axis[j];
        }
    mq /= w;
    mp /= w;
    double vq = 0, vp = 0, cqp = 0;
    for (size_t i = 0; i < nq; ++i)
        for (size_t j = 0; j < np; ++j) {
            const double v = grid.at(i, j);
            const double dq = grid.q_axis[i] - mq;
            const double dp = grid.p_axis[j] - mp;
            vq += v * dq * dq;
            vp += v * dp * dp;
            cqp += v * dq * dp;
        }
    vq /= w;
    vp /= w;
    cqp /= w;

    QuadratureCovariance out{mq, mp, vq, vp, cqp, 0, 0, 0};
    const double tr = vq + vp;
    const double disc = std::sqrt(std::max(0.0, (vq - vp) * (vq - vp) + 4 * cqp * cqp));
    out.lambda_max = 0.5 * (tr + disc);
    out.lambda_min = 0.5 * (tr - disc);
    out.axis_ratio = out.lambda_max > 0 ? out.lambda_min / out.lambda_max : 1.0;
    return out;
}

}  // namespace rydkerr
