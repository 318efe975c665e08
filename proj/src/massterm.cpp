#include "rydkerr/massterm.hpp"

#include <cmath>

#include "rydkerr/errors.hpp"
#include "rydkerr/phase.hpp"

namespace rydkerr {

using cdouble = std::complex<double>;

cdouble mass_phase_closed(const PolaritonParams& params, const MediumProfile& medium) {
    const double phi0 = peak_phase(params, medium).value;  // slab-only, validates
    const DerivedQuantities d = derive(params, medium);
    const double g2 = d.g * d.g;
    const double om2 = params.omega * params.omega;
    const double lxi = d.support_length / d.xi;
    const double factor = 3.0 * lxi * lxi * g2 * g2 * g2 / std::pow(g2 + om2, 3);
    return factor * cdouble(phi0, 1.0);
}

cdouble mass_phase_quadrature(const PolaritonParams& params, const MediumProfile& medium,
                              double r, const QuadOptions& quad) {
    const double phi0 = peak_phase(params, medium).value;
    const DerivedQuantities d = derive(params, medium);
    if (!(d.g > 0))
        throw ValidationError("mass_phase_quadrature: needs a coupled medium (g > 0)");
    const double length = d.support_length;

    const double xi = d.xi;
    const double t = r / xi;
    const double t4 = t * t * t * t, t5 = t4 * t, t6 = t5 * t, t10 = t5 * t5;
    const double den = 1.0 + t6;
    const double fp = -6.0 * t5 / (xi * den * den);
    const double fpp = (-30.0 * t4 + 72.0 * t10 / den) / (xi * xi * den * den);

    // integral over R of -i a f'' - a^2 f'^2, a = phi0 R / L, done in closed
    // polynomial form by the quadrature machinery
    auto integrand = [&](double bigr) {
        const double a = phi0 * bigr / length;
        return cdouble(-a * a * fp * fp, -a * fpp);
    };
    const cdouble ir = integrate_complex_or_throw(integrand, 0.0, length, quad, {},
                                                  "mass-term R integral");
    return -(1.0 / d.v_g) * (1.0 / d.mass) * ir;
}

MassCorrection mass_correction(const PolaritonParams& params, const MediumProfile& medium,
                               double threshold) {
    MassCorrection out{};
    out.theta_m = mass_phase_closed(params, medium);
    out.abs_theta = std::abs(out.theta_m);
    const double phi0 = peak_phase(params, medium).value;
    out.ratio = phi0 != 0.0 ? out.abs_theta / std::abs(phi0)
                            : std::numeric_limits<double>::infinity();
    out.threshold = threshold;
    out.valid = out.abs_theta < threshold && out.ratio < threshold;
    return out;
}

cdouble mass_phase_reduced(double phi0, double l_over_xi, double g_over_omega) {
    const double g2 = g_over_omega * g_over_omega;
    const double factor =
        3.0 * l_over_xi * l_over_xi * g2 * g2 * g2 / std::pow(g2 + 1.0, 3);
    return factor * cdouble(phi0, 1.0);
}

std::vector<MassScanPoint> mass_validity_scan(double phi0,
                                              const std::vector<double>& g_over_omega,
                                              const std::vector<double>& l_over_xi,
                                              double threshold) {
    std::vector<MassScanPoint> out;
    out.reserve(g_over_omega.size() * l_over_xi.size());
    for (double go : g_over_omega)
        for (double lx : l_over_xi) {
            const double abs_theta = std::abs(mass_phase_reduced(phi0, lx, go));
            const double ratio = phi0 != 0.0
                                     ? abs_theta / std::abs(phi0)
                                     : std::numeric_limits<double>::infinity();
            out.push_back({go, lx, abs_theta, ratio,
                           abs_theta < threshold && ratio < threshold});
        }
    return out;
}

}  // namespace rydkerr
