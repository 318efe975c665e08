#pragma once

#include <span>
#include <vector>

#include "rydkerr/interaction.hpp"
#include "rydkerr/interpolate.hpp"
#include "rydkerr/medium.hpp"
#include "rydkerr/quadrature.hpp"

namespace rydkerr {

/// Pair-correlation phase phi(u) as a function of the separation u in the
/// transformed (delay) coordinate. For detection points past the medium this
/// separation equals the lab-frame separation (outside-medium isometry), so
/// the same kernel applies to the outgoing wave functions measured in the
/// lab. phi is even in u for any medium because the pair potential is even.
class PhaseKernel {
  public:
    /// Interpolated value; exactly zero beyond the tabulated extent.
    double phi(double u) const;
    /// Fresh adaptive quadrature of the defining integral (oracle-grade).
    double phi_quad(double u) const;

    double phi0() const { return phi0_; }
    double xi_out() const { return xi_out_; }
    double extent() const { return u_max_; }
    double interp_error() const { return interp_err_; }

    bool has_slab_closed_form() const { return slab_; }
    /// Exact closed form for homogeneous slabs:
    /// phi(0) [1 + (beta^2 u / xi)^6]^{-1} max(0, 1 - beta^2 |u| / L).
    double phi_slab(double u) const;

    std::span<const double> table_u() const { return table_.knots(); }
    std::span<const double> table_phi() const { return table_.values(); }

    /// Transformed medium length (support of the pair overlap).
    double transformed_length() const { return l_z_; }

  private:
    friend PhaseKernel build_phase_kernel(const PolaritonParams&, const MediumProfile&,
                                          const TwoBodyPotential&, const CoordinateMap&,
                                          const struct PhaseKernelOptions&);
    CubicSpline table_;  // on s = |u| in [0, u_max]
    double phi0_ = 0.0, xi_out_ = 0.0, u_max_ = 0.0, interp_err_ = 0.0, l_z_ = 0.0;
    CoordinateMap map_{PolaritonParams{1, 10, 0.1, 0, -1, 1}, MediumProfile::slab(0, 1)};
    TwoBodyPotential pot_{0.0, 1.0};
    double c_ = 1.0;
    QuadOptions quad_;
    bool slab_ = false;
    double slab_beta2_ = 1.0, slab_xi_ = 1.0, slab_length_ = 0.0, slab_phi0_ = 0.0;
};

struct PhaseKernelOptions {
    double table_tol_rel = 1e-7;  ///< target interpolation residual, relative to phi(0)
    QuadOptions quad{1e-30, 1e-9, 4000};
    int max_points = 8192;
    int max_rounds = 18;
    double extent_pad_xiout = 10.0;  ///< tabulated extent beyond the overlap support
};

PhaseKernel build_phase_kernel(const PolaritonParams& params, const MediumProfile& medium,
                               const TwoBodyPotential& pot, const CoordinateMap& map,
                               const PhaseKernelOptions& opts = {});

/// One adaptive quadrature of the defining pair-overlap integral at
/// separation u, without tabulating a kernel.
double phase_kernel_quad(const PolaritonParams& params, const TwoBodyPotential& pot,
                         const CoordinateMap& map, double u,
                         const QuadOptions& quad = {1e-30, 1e-9, 4000});

/// Both printed forms of the slab peak phase; they are algebraically
/// identical once the optical depth is fixed to 2 g^2 L / (gamma c).
struct PeakPhase {
    double value;
    double form_kinetic;        ///< g^4 V(0) L / ((g^2+omega^2) omega^2 c)
    double form_optical_depth;  ///< -(g^2/(g^2+omega^2)) kappa gamma / delta
};

PeakPhase peak_phase(const PolaritonParams& params, const MediumProfile& medium);

/// Kerr-limit summary of a kernel. sigma keeps the sign of phi; eta >= 0 is
/// the coherence-suppression rate and Phi the nonlinear phase strength, from
/// i Phi + eta = -integral (exp(-i phi(u)) - 1) du / xi_out.
struct KerrSummary {
    double sigma;            ///< integral of phi(u) du
    double Phi;
    double eta;
    double sigma_long_slab;  ///< (2 pi / 3) phi(0) xi_out
    double long_slab_deviation;    ///< |sigma / sigma_long_slab - 1| (0 if undefined)
    double correction_estimate;    ///< finite-length estimate xi_out/(sqrt(3) L_z)
};

KerrSummary kerr_summary(const PhaseKernel& kernel, double xi_out);

/// Three-body correlation phase phi3(u, v); symmetric in (u, v) for a
/// permutation-symmetric kernel and identically zero for a zero kernel.
class ThreeBodyKernel {
  public:
    double phi3(double u, double v) const;       ///< bilinear table lookup
    double phi3_quad(double u, double v) const;  ///< fresh quadrature
    /// Phase of a particle triple at positions (t1, t2, t3). The positions
    /// are sorted first: the exact kernel is permutation-invariant, and the
    /// canonical order makes the interpolated value invariant as well.
    double phi3_particles(double t1, double t2, double t3) const;
    bool is_zero() const { return zero_; }
    double extent() const { return extent_; }

    std::span<const double> axis() const { return axis_; }
    double table_at(size_t i, size_t j) const { return values_[i * axis_.size() + j]; }

  private:
    friend ThreeBodyKernel build_phi3(const PolaritonParams&, const MediumProfile&,
                                      const NBodyPotential&, const CoordinateMap&, int,
                                      const QuadOptions&);
    std::vector<double> axis_, values_;
    double extent_ = 0.0;
    bool zero_ = true;
    CoordinateMap map_{PolaritonParams{1, 10, 0.1, 0, -1, 1}, MediumProfile::slab(0, 1)};
    NBodyPotential u3_;
    double c_ = 1.0;
    QuadOptions quad_;
};

ThreeBodyKernel build_phi3(const PolaritonParams& params, const MediumProfile& medium,
                           const NBodyPotential& u3, const CoordinateMap& map,
                           int grid_n = 65, const QuadOptions& quad = {1e-12, 1e-8, 20000});

}  // namespace rydkerr
