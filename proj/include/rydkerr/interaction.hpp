#pragma once

#include <functional>
#include <span>

#include "rydkerr/params.hpp"

namespace rydkerr {

/// Saturated finite-range pair potential
/// V(x) = depth / (1 + (x/xi)^6), even in x with an x^-6 tail.
/// depth = -2 omega^2 / delta (hbar = 1), so the sign follows the detuning.
struct TwoBodyPotential {
    double depth;  ///< V(0), signed
    double xi;     ///< saturation (blockade) radius

    static TwoBodyPotential from_params(const PolaritonParams& params);
    double operator()(double x) const;
};

double evaluate_v(const TwoBodyPotential& pot, double x);

/// User-pluggable n-body interaction kernel with a declared range used to
/// bound quadrature domains. The kernel must be symmetric under argument
/// permutation; `is_symmetric_on_samples` spot-checks that.
struct NBodyPotential {
    int arity = 3;
    std::function<double(std::span<const double>)> kernel;
    double range_halfwidth = 0.0;  ///< |U_n| negligible once any pair exceeds this

    double operator()(std::span<const double> x) const { return kernel(x); }
};

/// Reference three-body model for tests: U3 = amplitude when all pairwise
/// separations are within box_halfwidth, zero otherwise.
NBodyPotential make_constant_u3(double amplitude, double box_halfwidth);

bool is_symmetric_on_samples(const NBodyPotential& pot, unsigned seed = 1234,
                             int trials = 64, double scale = 1.0, double tol = 1e-12);

}  // namespace rydkerr
