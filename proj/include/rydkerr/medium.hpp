#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rydkerr/interpolate.hpp"
#include "rydkerr/params.hpp"
#include "rydkerr/quadrature.hpp"

namespace rydkerr {

/// Atomic density profile n_a(x) >= 0 with compact support [x_min, x_max];
/// the density is identically zero outside the support.
class MediumProfile {
  public:
    enum class Kind { Slab, Gaussian, Tabulated };

    /// Homogeneous slab of mean density on [-length/2, length/2].
    static MediumProfile slab(double mean_density, double length);

    /// Truncated Gaussian peak * exp(-x^2 / (2 width^2)), cut at
    /// +- cutoff_sigmas * width (density is exactly zero beyond the cut).
    static MediumProfile gaussian(double peak, double width, double cutoff_sigmas = 8.0);

    /// Monotone-cubic interpolation of (x, n_a) samples on a strictly
    /// increasing grid; support is [x.front(), x.back()].
    static MediumProfile tabulated(std::vector<double> x, std::vector<double> n);

    /// Reads a two-column CSV (x, n_a) and builds a tabulated profile.
    static MediumProfile tabulated_from_csv(const std::string& path);

    double density(double x) const;
    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    Kind kind() const { return kind_; }
    bool is_slab() const { return kind_ == Kind::Slab; }
    double slab_density() const { return slab_density_; }
    double peak_density() const { return peak_; }

    /// Integral of n_a from x_min to min(max(x, x_min), x_max).
    double cumulative(double x) const;
    double column_density() const { return cumulative(x_max_); }

  private:
    MediumProfile() = default;
    Kind kind_ = Kind::Slab;
    double x_min_ = 0.0, x_max_ = 0.0;
    double slab_density_ = 0.0;
    double gauss_peak_ = 0.0, gauss_width_ = 1.0;
    double peak_ = 0.0;
    Pchip table_;       // tabulated density
    Pchip cumulative_;  // cumulative column density on the support
    void build_cumulative();
};

/// Transform between lab position x and the delay coordinate
/// z = integral_0^x dy / beta(y)^2. The transform is strictly increasing,
/// reduces to the identity in vacuum, and differences taken fully outside the
/// medium on one side equal lab-frame differences.
class CoordinateMap {
  public:
    CoordinateMap(const PolaritonParams& params, const MediumProfile& medium);

    double forward(double x) const;  ///< z = zeta^{-1}(x)
    double inverse(double z) const;  ///< x = zeta(z)

    double beta_sq(double x) const;           ///< photonic fraction in [0, 1]
    double rydberg_fraction(double x) const;  ///< 1 - beta_sq(x)

    /// Rydberg fraction expressed in the transformed coordinate.
    double rydberg_fraction_z(double z) const { return rydberg_fraction(inverse(z)); }

    double z_min() const { return z_min_; }  ///< transformed support edge
    double z_max() const { return z_max_; }
    double transformed_length() const { return z_max_ - z_min_; }

  private:
    MediumProfile medium_;  // kept by value; the map owns its inputs
    double k_;              // g0^2 / omega^2
    double x_min_, x_max_, z_min_, z_max_, n0_;
};

/// Populates all derived single-polariton quantities. For non-slab media the
/// collective-coupling reference density is the peak density; the optical
/// depth uses the column density (it reduces to 2 g^2 L / (gamma c) for a
/// slab, the unique choice making the two peak-phase expressions identical).
DerivedQuantities derive(const PolaritonParams& params, const MediumProfile& medium);

CoordinateMap build_map(const PolaritonParams& params, const MediumProfile& medium);

}  // namespace rydkerr
