#pragma once

namespace rydkerr {

/// Single-polariton parameter set. hbar = 1 by convention throughout the
/// library; the vacuum light speed c stays an explicit parameter because the
/// delay and group-velocity formulas use it. Any self-consistent unit system
/// is accepted.
struct PolaritonParams {
    double omega;  ///< control-field Rabi frequency (> 0)
    double delta;  ///< detuning from the intermediate level, signed
    double gamma;  ///< intermediate-level decay rate (> 0)
    double g0;     ///< single-emitter coupling, frequency * length^(1/2)
    double c6;     ///< van der Waals coefficient, frequency * length^6, signed
    double c;      ///< vacuum light speed (> 0)

    /// Throws ValidationError unless the set lies in the dispersive,
    /// attractive-branch regime: |delta| > omega, |delta| > gamma,
    /// c6 * delta < 0, and omega, gamma, c > 0.
    void validate() const;
};

/// Quantities derived from a parameter set and a medium.
struct DerivedQuantities {
    double g;        ///< collective coupling g0 * sqrt(n_ref)
    double xi;       ///< blockade radius (|c6 delta| / (2 omega^2))^(1/6)
    double xi_out;   ///< output correlation width xi (g^2+omega^2)/omega^2
    double v_g;      ///< group velocity at the density reference point
    double kappa;    ///< optical depth 2 g0^2 N_col / (gamma c)
    double delta_t;  ///< medium delay (g0^2/omega^2) N_col / c
    double mass;     ///< dispersion-curvature mass (g^2+omega^2)^3/(2 c^2 g^2 delta omega^2)

    // implementation extras, useful for diagnostics
    double n_ref;           ///< reference (peak) atomic density
    double column_density;  ///< integral of n_a over the support
    double support_length;  ///< lab-frame extent of the medium
};

}  // namespace rydkerr
