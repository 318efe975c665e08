#include "rydkerr/medium.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "rydkerr/csv.hpp"
#include "rydkerr/errors.hpp"

namespace rydkerr {

MediumProfile MediumProfile::slab(double mean_density, double length) {
    if (!(length > 0)) throw ValidationError("medium.length: must be > 0");
    if (!(mean_density >= 0)) throw ValidationError("medium.mean_density: must be >= 0");
    MediumProfile m;
    m.kind_ = Kind::Slab;
    m.x_min_ = -0.5 * length;
    m.x_max_ = 0.5 * length;
    m.slab_density_ = mean_density;
    m.peak_ = mean_density;
    return m;
}

MediumProfile MediumProfile::gaussian(double peak, double width, double cutoff_sigmas) {
    if (!(width > 0)) throw ValidationError("medium.width: must be > 0");
    if (!(peak >= 0)) throw ValidationError("medium.peak: must be >= 0");
    if (!(cutoff_sigmas > 0)) throw ValidationError("medium.cutoff_sigmas: must be > 0");
    MediumProfile m;
    m.kind_ = Kind::Gaussian;
    m.gauss_peak_ = peak;
    m.gauss_width_ = width;
    m.peak_ = peak;
    m.x_min_ = -cutoff_sigmas * width;
    m.x_max_ = cutoff_sigmas * width;
    return m;
}

MediumProfile MediumProfile::tabulated(std::vector<double> x, std::vector<double> n) {
    if (x.size() < 2 || x.size() != n.size())
        throw ValidationError("medium.tabulated: need >= 2 (x, n_a) samples");
    for (size_t i = 0; i < n.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(n[i]))
            throw ValidationError("medium.tabulated: samples must be finite");
        if (n[i] < 0) throw ValidationError("medium.tabulated: n_a must be >= 0");
        if (i > 0 && !(x[i] > x[i - 1]))
            throw ValidationError("medium.tabulated: x grid must be strictly increasing");
    }
    MediumProfile m;
    m.kind_ = Kind::Tabulated;
    m.x_min_ = x.front();
    m.x_max_ = x.back();
    m.peak_ = 0.0;
    for (double v : n) m.peak_ = std::max(m.peak_, v);
    m.table_ = Pchip(std::move(x), std::move(n));
    return m;
}

MediumProfile MediumProfile::tabulated_from_csv(const std::string& path) {
    auto cols = csv::read_columns(path, 2);
    return tabulated(std::move(cols[0]), std::move(cols[1]));
}

double MediumProfile::density(double x) const {
    if (x < x_min_ || x > x_max_) return 0.0;
    switch (kind_) {
        case Kind::Slab:
            return slab_density_;
        case Kind::Gaussian:
            return gauss_peak_ * std::exp(-0.5 * x * x / (gauss_width_ * gauss_width_));
        case Kind::Tabulated:
            return std::max(0.0, table_(x));
    }
    return 0.0;
}

double MediumProfile::cumulative(double x) const {
    const double xe = std::min(std::max(x, x_min_), x_max_);
    switch (kind_) {
        case Kind::Slab:
            return slab_density_ * (xe - x_min_);
        case Kind::Gaussian: {
            const double s = gauss_width_ * std::sqrt(2.0);
            return gauss_peak_ * gauss_width_ * std::sqrt(2.0 * M_PI) * 0.5 *
                   (std::erf(xe / s) - std::erf(x_min_ / s));
        }
        case Kind::Tabulated:
            return table_.integral(x_min_, xe);
    }
    return 0.0;
}

CoordinateMap::CoordinateMap(const PolaritonParams& params, const MediumProfile& medium)
    : medium_(medium), k_(params.g0 * params.g0 / (params.omega * params.omega)) {
    params.validate();
    x_min_ = medium.x_min();
    x_max_ = medium.x_max();
    n0_ = medium.cumulative(0.0);
    z_min_ = forward(x_min_);
    z_max_ = forward(x_max_);
}

double CoordinateMap::forward(double x) const {
    return x + k_ * (medium_.cumulative(x) - n0_);
}

double CoordinateMap::inverse(double z) const {
    if (z <= z_min_) return x_min_ + (z - z_min_);
    if (z >= z_max_) return x_max_ + (z - z_max_);
    if (medium_.is_slab()) {
        const double slope = 1.0 + k_ * medium_.slab_density();
        return x_min_ + (z - z_min_) / slope;
    }
    return solve_monotone([&](double x) { return forward(x) - z; }, x_min_, x_max_);
}

double CoordinateMap::beta_sq(double x) const {
    return 1.0 / (1.0 + k_ * medium_.density(x));
}

double CoordinateMap::rydberg_fraction(double x) const {
    const double kn = k_ * medium_.density(x);
    return kn / (1.0 + kn);
}

DerivedQuantities derive(const PolaritonParams& params, const MediumProfile& medium) {
    params.validate();
    DerivedQuantities q{};
    q.n_ref = medium.peak_density();
    q.column_density = medium.column_density();
    q.support_length = medium.x_max() - medium.x_min();

    const double om2 = params.omega * params.omega;
    q.g = params.g0 * std::sqrt(q.n_ref);
    const double g2 = q.g * q.g;
    q.xi = std::pow(std::abs(params.c6 * params.delta) / (2.0 * om2), 1.0 / 6.0);
    q.xi_out = q.xi * (g2 + om2) / om2;
    q.v_g = params.c * om2 / (om2 + g2);
    q.kappa = 2.0 * params.g0 * params.g0 * q.column_density / (params.gamma * params.c);
    q.delta_t = (params.g0 * params.g0 / om2) * q.column_density / params.c;
    q.mass = g2 > 0 ? std::pow(g2 + om2, 3) /
                          (2.0 * params.c * params.c * g2 * params.delta * om2)
                    : std::numeric_limits<double>::infinity();
    return q;
}

CoordinateMap build_map(const PolaritonParams& params, const MediumProfile& medium) {
    return CoordinateMap(params, medium);
}

}  // namespace rydkerr
