#pragma once

#include <complex>
#include <vector>

#include "rydkerr/medium.hpp"

namespace rydkerr {

/// Perturbative dispersion-curvature phase at reference separation r = xi,
/// and the predicate for dropping the curvature term. The closed form and
/// the direct quadrature agree up to a global sign (the re-derivation yields
/// the negative of the printed closed form; both validity conditions use the
/// magnitude, so the predicate is unaffected).
struct MassCorrection {
    std::complex<double> theta_m;  ///< closed-form value at r = xi
    double abs_theta;              ///< |theta_m|
    double ratio;                  ///< |theta_m / phi(0)|
    bool valid;                    ///< both magnitudes below the threshold
    double threshold;
};

/// Closed form 3 (phi(0) + i) (L/xi)^2 g^6 / (g^2 + omega^2)^3 for a slab.
std::complex<double> mass_phase_closed(const PolaritonParams& params,
                                       const MediumProfile& medium);

/// Direct quadrature of the perturbative phase at separation r:
/// -(1/v_g) integral_0^L dR (1/m) [d_r^2 e^{-i a f(r)}] / e^{-i a f(r)},
/// a = phi(0) R / L, f = (1 + (r/xi)^6)^{-1}; the r-derivatives are applied
/// analytically (-i a f'' - a^2 f'^2) before the R integration. One factor
/// of hbar cancels against the stationary equation, leaving hbar/m (= 1/m
/// here); this reproduces the dimensionless closed form.
std::complex<double> mass_phase_quadrature(const PolaritonParams& params,
                                           const MediumProfile& medium, double r,
                                           const QuadOptions& quad = {1e-14, 1e-10,
                                                                      2000});

MassCorrection mass_correction(const PolaritonParams& params, const MediumProfile& medium,
                               double threshold = 0.1);

/// Formula-level evaluation on the reduced coordinates (g/omega, L/xi) at a
/// fixed peak phase; this is what the validity-region scan emits.
std::complex<double> mass_phase_reduced(double phi0, double l_over_xi,
                                        double g_over_omega);

struct MassScanPoint {
    double g_over_omega;
    double l_over_xi;
    double abs_theta;
    double ratio;
    bool valid;
};

std::vector<MassScanPoint> mass_validity_scan(double phi0,
                                              const std::vector<double>& g_over_omega,
                                              const std::vector<double>& l_over_xi,
                                              double threshold = 0.1);

}  // namespace rydkerr
