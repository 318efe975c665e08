#include "rydkerr/phase.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rydkerr/errors.hpp"
#include "rydkerr/parallel.hpp"

namespace rydkerr {

namespace {

double pair_overlap_integral(const CoordinateMap& map, const TwoBodyPotential& pot,
                             double c, double s, const QuadOptions& quad) {
    // integral over w of n(w+s) n(w) V(zeta(w+s) - zeta(w)) / c, s >= 0
    const double lo = map.z_min();
    const double hi = map.z_max() - s;
    if (hi <= lo) return 0.0;
    auto f = [&](double w) {
        const double x2 = map.inverse(w);
        const double n2 = map.rydberg_fraction(x2);
        if (n2 == 0.0) return 0.0;
        const double x1 = map.inverse(w + s);
        const double n1 = map.rydberg_fraction(x1);
        if (n1 == 0.0) return 0.0;
        return n1 * n2 * pot(x1 - x2);
    };
    return integrate_or_throw(f, lo, hi, quad, {}, "phase kernel") / c;
}

}  // namespace

double PhaseKernel::phi(double u) const {
    const double s = std::abs(u);
    // the pair overlap is empty beyond the transformed medium length, so the
    // phase vanishes identically there for any density profile
    if (table_.empty() || s >= l_z_ || s >= u_max_) return 0.0;
    return table_(s);
}

double PhaseKernel::phi_quad(double u) const {
    return pair_overlap_integral(map_, pot_, c_, std::abs(u), quad_);
}

double PhaseKernel::phi_slab(double u) const {
    if (!slab_) throw ValidationError("phi_slab: kernel was not built from a slab medium");
    const double r = slab_beta2_ * std::abs(u) / slab_xi_;
    const double r3 = r * r * r;
    const double tri = std::max(0.0, 1.0 - slab_beta2_ * std::abs(u) / slab_length_);
    return slab_phi0_ / (1.0 + r3 * r3) * tri;
}

PhaseKernel build_phase_kernel(const PolaritonParams& params, const MediumProfile& medium,
                               const TwoBodyPotential& pot, const CoordinateMap& map,
                               const PhaseKernelOptions& opts) {
    params.validate();
    const DerivedQuantities d = derive(params, medium);

    PhaseKernel k;
    k.map_ = map;
    k.pot_ = pot;
    k.c_ = params.c;
    k.quad_ = opts.quad;
    k.xi_out_ = d.xi_out;
    k.l_z_ = map.transformed_length();
    k.u_max_ = k.l_z_ + opts.extent_pad_xiout * d.xi_out;

    if (medium.is_slab()) {
        k.slab_ = true;
        const double om2 = params.omega * params.omega;
        const double g2 = d.g * d.g;
        k.slab_beta2_ = om2 / (om2 + g2);
        k.slab_xi_ = d.xi;
        k.slab_length_ = d.support_length;
        k.slab_phi0_ = g2 * g2 * pot(0.0) * d.support_length / ((g2 + om2) * om2 * params.c);
    }

    auto quad_at = [&](double s) {
        return pair_overlap_integral(map, pot, params.c, s, opts.quad);
    };

    k.phi0_ = quad_at(0.0);
    const double scale = std::max(std::abs(k.phi0_), 1e-300);
    const double tol_abs = opts.table_tol_rel * scale;

    // initial grid: dense over the kernel shoulder, coarser out to the
    // support edge, with an explicit knot at the overlap kink L_z
    std::set<double> grid;
    const double shoulder = std::min(4.0 * d.xi_out, k.u_max_);
    for (int i = 0; i <= 64; ++i) grid.insert(shoulder * i / 64.0);
    for (int i = 0; i <= 64; ++i)
        grid.insert(shoulder + (k.u_max_ - shoulder) * i / 64.0);
    if (k.l_z_ > 0.0 && k.l_z_ < k.u_max_) grid.insert(k.l_z_);

    std::vector<double> xs(grid.begin(), grid.end());
    std::vector<double> ys(xs.size());
    parallel_for(xs.size(), [&](size_t i) { ys[i] = quad_at(xs[i]); });

    double residual = 0.0;
    for (int round = 0; round < opts.max_rounds; ++round) {
        CubicSpline interp(xs, ys);
        std::vector<double> mids(xs.size() - 1);
        std::vector<double> vals(mids.size()), errs(mids.size());
        for (size_t i = 0; i + 1 < xs.size(); ++i) mids[i] = 0.5 * (xs[i] + xs[i + 1]);
        parallel_for(mids.size(), [&](size_t i) {
            vals[i] = quad_at(mids[i]);
            errs[i] = std::abs(vals[i] - interp(mids[i]));
        });
        residual = 0.0;
        std::vector<double> nx, ny;
        for (size_t i = 0; i < mids.size(); ++i) {
            residual = std::max(residual, errs[i]);
            if (errs[i] > tol_abs && xs.size() + nx.size() <
                                         static_cast<size_t>(opts.max_points)) {
                nx.push_back(mids[i]);
                ny.push_back(vals[i]);
            }
        }
        if (nx.empty()) break;
        xs.insert(xs.end(), nx.begin(), nx.end());
        ys.insert(ys.end(), ny.begin(), ny.end());
        std::vector<size_t> order(xs.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return xs[a] < xs[b]; });
        std::vector<double> sx(xs.size()), sy(ys.size());
        for (size_t i = 0; i < order.size(); ++i) {
            sx[i] = xs[order[i]];
            sy[i] = ys[order[i]];
        }
        xs = std::move(sx);
        ys = std::move(sy);
    }

    k.table_ = CubicSpline(std::move(xs), std::move(ys));
    k.interp_err_ = residual;
    return k;
}

double phase_kernel_quad(const PolaritonParams& params, const TwoBodyPotential& pot,
                         const CoordinateMap& map, double u, const QuadOptions& quad) {
    return pair_overlap_integral(map, pot, params.c, std::abs(u), quad);
}

PeakPhase peak_phase(const PolaritonParams& params, const MediumProfile& medium) {
    params.validate();
    if (!medium.is_slab())
        throw ValidationError(
            "peak_phase: closed form is only valid for homogeneous slab media");
    const DerivedQuantities d = derive(params, medium);
    const double om2 = params.omega * params.omega;
    const double g2 = d.g * d.g;
    const double v0 = -2.0 * om2 / params.delta;
    const double length = d.support_length;

    PeakPhase p{};
    p.form_kinetic = g2 * g2 * v0 * length / ((g2 + om2) * om2 * params.c);
    p.form_optical_depth = -(g2 / (g2 + om2)) * d.kappa * params.gamma / params.delta;
    const double diff = std::abs(p.form_kinetic - p.form_optical_depth);
    const double mag = std::max(std::abs(p.form_kinetic), std::abs(p.form_optical_depth));
    if (mag > 0 && diff > 1e-12 * mag)
        throw NumericalError("peak_phase: the two closed forms disagree beyond 1e-12");
    p.value = p.form_kinetic;
    return p;
}

KerrSummary kerr_summary(const PhaseKernel& kernel, double xi_out) {
    if (!(xi_out > 0)) throw ValidationError("kerr_summary: xi_out must be > 0");
    KerrSummary s{};

    // sigma: exact integral of the tabulated interpolant (even in u)
    CubicSpline table(
        std::vector<double>(kernel.table_u().begin(), kernel.table_u().end()),
        std::vector<double>(kernel.table_phi().begin(), kernel.table_phi().end()));
    s.sigma = 2.0 * table.integral(0.0, kernel.extent());

    const QuadOptions q{1e-14, 1e-10, 4000};
    auto phi = [&](double u) { return kernel.phi(u); };
    s.Phi = 2.0 *
            integrate_or_throw([&](double u) { return std::sin(phi(u)); }, 0.0,
                               kernel.extent(), q, {}, "Kerr phase strength") /
            xi_out;
    s.eta = 2.0 *
            integrate_or_throw(
                [&](double u) {
                    const double h = std::sin(0.5 * phi(u));
                    return 2.0 * h * h;
                },
                0.0, kernel.extent(), q, {}, "coherence suppression") /
            xi_out;

    s.sigma_long_slab = (2.0 * M_PI / 3.0) * kernel.phi0() * xi_out;
    s.long_slab_deviation =
        s.sigma_long_slab != 0.0 ? std::abs(s.sigma / s.sigma_long_slab - 1.0) : 0.0;
    s.correction_estimate = kernel.transformed_length() > 0.0
                                ? xi_out / (std::sqrt(3.0) * kernel.transformed_length())
                                : 0.0;
    return s;
}

double ThreeBodyKernel::phi3(double u, double v) const {
    if (zero_ || axis_.size() < 2) return 0.0;
    const size_t n = axis_.size();
    const double lo = axis_.front(), hi = axis_.back();
    if (u < lo || u > hi || v < lo || v > hi) return 0.0;
    const double h = (hi - lo) / static_cast<double>(n - 1);
    auto cell = [&](double t) {
        size_t i = static_cast<size_t>((t - lo) / h);
        return std::min(i, n - 2);
    };
    const size_t i = cell(u), j = cell(v);
    const double tu = (u - axis_[i]) / h, tv = (v - axis_[j]) / h;
    const double f00 = values_[i * n + j], f01 = values_[i * n + j + 1];
    const double f10 = values_[(i + 1) * n + j], f11 = values_[(i + 1) * n + j + 1];
    return (1 - tu) * ((1 - tv) * f00 + tv * f01) + tu * ((1 - tv) * f10 + tv * f11);
}

double ThreeBodyKernel::phi3_particles(double t1, double t2, double t3) const {
    if (zero_) return 0.0;
    if (t1 > t2) std::swap(t1, t2);
    if (t2 > t3) std::swap(t2, t3);
    if (t1 > t2) std::swap(t1, t2);
    return phi3(t1 - t2, t2 - t3);
}

double ThreeBodyKernel::phi3_quad(double u, double v) const {
    if (zero_) return 0.0;
    const double lo = std::max({map_.z_min(), map_.z_min() - u, map_.z_min() - v});
    const double hi = std::min({map_.z_max(), map_.z_max() - u, map_.z_max() - v});
    if (hi <= lo) return 0.0;
    auto f = [&](double w) {
        const double x0 = map_.inverse(w);
        const double n0 = map_.rydberg_fraction(x0);
        if (n0 == 0.0) return 0.0;
        const double x1 = map_.inverse(w + u);
        const double n1 = map_.rydberg_fraction(x1);
        if (n1 == 0.0) return 0.0;
        const double x2 = map_.inverse(w + v);
        const double n2 = map_.rydberg_fraction(x2);
        if (n2 == 0.0) return 0.0;
        const double args[3] = {x1, x2, x0};
        return n0 * n1 * n2 * u3_(args);
    };
    return integrate_or_throw(f, lo, hi, quad_, {}, "three-body kernel") / c_;
}

ThreeBodyKernel build_phi3(const PolaritonParams& params, const MediumProfile& medium,
                           const NBodyPotential& u3, const CoordinateMap& map,
                           int grid_n, const QuadOptions& quad) {
    params.validate();
    if (u3.arity != 3) throw ValidationError("build_phi3: potential arity must be 3");
    if (grid_n < 2) throw ValidationError("build_phi3: grid_n must be >= 2");

    ThreeBodyKernel k;
    k.map_ = map;
    k.u3_ = u3;
    k.c_ = params.c;
    k.quad_ = quad;
    k.zero_ = false;
    k.extent_ = map.transformed_length() * 1.02 + 1e-12;
    (void)medium;

    const size_t n = static_cast<size_t>(grid_n);
    k.axis_.resize(n);
    for (size_t i = 0; i < n; ++i)
        k.axis_[i] = -k.extent_ + 2.0 * k.extent_ * static_cast<double>(i) /
                                      static_cast<double>(n - 1);
    k.values_.assign(n * n, 0.0);
    parallel_for(n * n, [&](size_t idx) {
        const size_t i = idx / n, j = idx % n;
        if (j < i) return;  // fill the symmetric half afterwards
        k.values_[idx] = k.phi3_quad(k.axis_[i], k.axis_[j]);
    });
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < i; ++j) k.values_[i * n + j] = k.values_[j * n + i];
    return k;
}

}  // namespace rydkerr
