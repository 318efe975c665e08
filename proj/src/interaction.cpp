#include "rydkerr/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "rydkerr/errors.hpp"

namespace rydkerr {

TwoBodyPotential TwoBodyPotential::from_params(const PolaritonParams& params) {
    params.validate();
    const double om2 = params.omega * params.omega;
    const double xi = std::pow(std::abs(params.c6 * params.delta) / (2.0 * om2), 1.0 / 6.0);
    return {-2.0 * om2 / params.delta, xi};
}

double TwoBodyPotential::operator()(double x) const {
    const double r = x / xi;
    const double r2 = r * r;
    return depth / (1.0 + r2 * r2 * r2);
}

double evaluate_v(const TwoBodyPotential& pot, double x) { return pot(x); }

NBodyPotential make_constant_u3(double amplitude, double box_halfwidth) {
    if (!(box_halfwidth > 0))
        throw ValidationError("make_constant_u3: box_halfwidth must be > 0");
    NBodyPotential pot;
    pot.arity = 3;
    pot.range_halfwidth = box_halfwidth;
    pot.kernel = [amplitude, box_halfwidth](std::span<const double> x) {
        for (size_t i = 0; i < x.size(); ++i)
            for (size_t j = i + 1; j < x.size(); ++j)
                if (std::abs(x[i] - x[j]) > box_halfwidth) return 0.0;
        return amplitude;
    };
    return pot;
}

bool is_symmetric_on_samples(const NBodyPotential& pot, unsigned seed, int trials,
                             double scale, double tol) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> x(pot.arity), perm(pot.arity);
    for (int t = 0; t < trials; ++t) {
        for (auto& v : x) v = u(rng);
        perm = x;
        std::shuffle(perm.begin(), perm.end(), rng);
        const double a = pot(x);
        const double b = pot(perm);
        if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) return false;
    }
    return true;
}

}  // namespace rydkerr
