#include <doctest.h>

#include <cmath>
#include <random>

#include "rydkerr/errors.hpp"
#include "rydkerr/phase.hpp"

using namespace rydkerr;

namespace {

PolaritonParams canonical() { return {1.0, 100.0, 0.1, 1.0, -0.02, 1.0}; }

struct Built {
    PolaritonParams p;
    MediumProfile med;
    DerivedQuantities d;
    CoordinateMap map;
    PhaseKernel k;
};

Built slab_kernel(double length, PolaritonParams p = canonical()) {
    auto med = MediumProfile::slab(1.0, length);
    auto map = build_map(p, med);
    auto pot = TwoBodyPotential::from_params(p);
    return {p, med, derive(p, med), map, build_phase_kernel(p, med, pot, map)};
}

}  // namespace

TEST_CASE("peak phase: both closed forms and the quadrature agree") {
    auto b = slab_kernel(50.0);
    auto pk = peak_phase(b.p, b.med);
    // g=1, omega=1, L=50, delta=100 -> phi(0) = -0.5
    CHECK(pk.value == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(pk.form_kinetic == doctest::Approx(pk.form_optical_depth).epsilon(1e-13));
    CHECK(std::abs(b.k.phi_quad(0.0) - pk.value) <= 1e-9 * std::abs(pk.value));
    CHECK(b.k.phi0() == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("peak phase sign and limits") {
    auto p = canonical();
    p.delta = -100.0;
    p.c6 = 0.02;  // keep c6 * delta < 0
    auto med = MediumProfile::slab(1.0, 50.0);
    CHECK(peak_phase(p, med).value == doctest::Approx(0.5).epsilon(1e-13));

    auto q = canonical();
    q.g0 = 0.0;
    CHECK(peak_phase(q, med).value == 0.0);

    CHECK_THROWS_AS((void)peak_phase(canonical(), MediumProfile::gaussian(1.0, 2.0)),
                    ValidationError);
}

TEST_CASE("zero density gives an identically zero kernel") {
    auto p = canonical();
    auto med = MediumProfile::slab(0.0, 50.0);
    auto map = build_map(p, med);
    auto pot = TwoBodyPotential::from_params(p);
    auto k = build_phase_kernel(p, med, pot, map);
    CHECK(k.phi0() == 0.0);
    for (double u : {-20.0, -1.0, 0.0, 3.3, 40.0}) CHECK(k.phi(u) == 0.0);
}

TEST_CASE("slab kernel quadrature matches the exact closed form") {
    auto b = slab_kernel(50.0);
    // derived slab identity: phi(u) = phi0 [1+(beta^2 u/xi)^6]^{-1} (1 - beta^2|u|/L)
    for (double u = 0.0; u <= 3.0 * b.d.xi_out; u += 0.17) {
        const double closed = b.k.phi_slab(u);
        const double quad = b.k.phi_quad(u);
        CHECK(std::abs(quad - closed) <= 1e-6 * std::abs(closed));
    }
    // tabulated-and-interpolated path stays within its declared residual
    for (double u = 0.0; u <= 3.0 * b.d.xi_out; u += 0.0931)
        CHECK(std::abs(b.k.phi(u) - b.k.phi_slab(u)) <=
              5.0 * std::max(b.k.interp_error(), 1e-9));
}

TEST_CASE("ratio at beta^2 u = xi: one half times the overlap factor") {
    auto b = slab_kernel(50.0);
    // beta^2 = 1/2, xi = 1 -> u = 2; expected 0.5 * (1 - 1/50) = 0.49 exactly
    const double ratio = b.k.phi_quad(2.0) / b.k.phi0();
    CHECK(ratio == doctest::Approx(0.49).epsilon(1e-9));
}

TEST_CASE("kernel is even with its maximum at zero and compact support") {
    auto b = slab_kernel(20.0);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, b.k.extent());
    for (int t = 0; t < 100; ++t) {
        const double s = u(rng);
        CHECK(b.k.phi(s) == b.k.phi(-s));  // even by construction
        CHECK(std::abs(b.k.phi(s)) <= std::abs(b.k.phi0()) * (1.0 + 1e-9));
    }
    CHECK(b.k.phi(b.k.transformed_length() * 1.001) == 0.0);
    CHECK(b.k.phi(b.k.extent() + 1.0) == 0.0);
}

TEST_CASE("gaussian-medium kernel agrees with direct quadrature samples") {
    auto p = canonical();
    auto med = MediumProfile::gaussian(1.0, 5.0);
    auto map = build_map(p, med);
    auto pot = TwoBodyPotential::from_params(p);
    auto k = build_phase_kernel(p, med, pot, map);
    CHECK(std::abs(k.phi0()) > 0.0);
    for (double u : {0.0, 0.8, 2.0, 5.0, 11.0}) {
        CHECK(std::abs(k.phi(u) - k.phi_quad(u)) <=
              10.0 * std::max(k.interp_error(), 1e-10));
    }
}

TEST_CASE("kerr summary: sigma, Phi, eta on the canonical slab") {
    auto b = slab_kernel(50.0);
    auto ks = kerr_summary(b.k, b.d.xi_out);

    // frozen oracle (high-precision evaluation of the exact slab integral):
    // sigma = phi0 xi_out [I0 - I1/Lambda] at Lambda = 50 = -2.0702111111900726
    CHECK(ks.sigma == doctest::Approx(-2.0702111111900726).epsilon(2e-6));
    CHECK(ks.sigma_long_slab ==
          doctest::Approx(2.0 * M_PI / 3.0 * -0.5 * 2.0).epsilon(1e-12));
    CHECK(ks.long_slab_deviation == doctest::Approx(0.0115470).epsilon(2e-3));
    CHECK(ks.correction_estimate == doctest::Approx(0.0115470).epsilon(1e-6));
    CHECK(ks.eta >= 0.0);
}

TEST_CASE("weak kernels: Phi -> sigma/xi_out and eta/Phi -> 0") {
    auto p = canonical();
    p.delta = 50000.0;  // phi0 = -0.001
    p.c6 = -2.0 / p.delta;
    auto b = slab_kernel(50.0, p);
    CHECK(b.k.phi0() == doctest::Approx(-1e-3).epsilon(1e-10));
    auto ks = kerr_summary(b.k, b.d.xi_out);
    CHECK(ks.Phi == doctest::Approx(ks.sigma / b.d.xi_out).epsilon(1e-5));
    CHECK(std::abs(ks.eta / ks.Phi) < 1e-3);
    CHECK(ks.eta >= 0.0);
}

TEST_CASE("eta and Phi scalings and oscillation over the interaction strength") {
    // universal long-slab kernels at varying peak phase via detuning
    auto scan = [&](double phi0_target) {
        auto p = canonical();
        p.delta = -50.0 / phi0_target;  // phi0 = -2 g^4 L / (delta (g^2+om^2) c)
        p.c6 = 2.0 / std::abs(p.delta);
        auto b = slab_kernel(50.0, p);
        return kerr_summary(b.k, b.d.xi_out);
    };

    // quadratic / linear small-phase scalings
    const auto lo = scan(1e-3), hi = scan(1e-2);
    CHECK(std::abs(std::log(hi.Phi / lo.Phi) / std::log(10.0) - 1.0) < 0.02);
    CHECK(std::abs(std::log(hi.eta / lo.eta) / std::log(10.0) - 2.0) < 0.02);

    // Phi is non-monotone over phi0 in (0, 3 pi]
    double prev = 0.0;
    int direction_changes = 0;
    int last_sign = 0;
    for (int i = 1; i <= 24; ++i) {
        const double ks_phi = scan(3.0 * M_PI * i / 24.0).Phi;
        if (i > 1) {
            const int sign = ks_phi > prev ? 1 : -1;
            if (last_sign != 0 && sign != last_sign) ++direction_changes;
            last_sign = sign;
        }
        prev = ks_phi;
    }
    CHECK(direction_changes >= 1);
}

TEST_CASE("universality: long slabs collapse, short slabs deviate") {
    auto univ = [](double x) { return 1.0 / (1.0 + std::pow(x, 6)); };
    auto max_dev = [&](double length) {
        auto b = slab_kernel(length);
        double dev = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double x = -3.0 + 6.0 * i / 200.0;
            const double ratio = b.k.phi(x * b.d.xi_out) / b.k.phi0();
            dev = std::max(dev, std::abs(ratio - univ(x)));
        }
        return dev;
    };
    CHECK(max_dev(50.0) < 0.02);   // collapses (exact value ~1.3e-2)
    CHECK(max_dev(100.0) < 0.01);  // within 1% for L/xi = 100
    CHECK(max_dev(2.0) > 0.05);    // short cloud, visibly non-universal
}

TEST_CASE("three-body kernel: zero potential, slab value, symmetry") {
    auto b = slab_kernel(50.0);

    auto u3_zero = make_constant_u3(0.0, 1e6);
    auto k3_zero = build_phi3(b.p, b.med, u3_zero, b.map, 17);
    CHECK(k3_zero.phi3_quad(0.0, 0.0) == 0.0);
    CHECK(k3_zero.phi3(3.0, -2.0) == 0.0);

    // constant box wider than the slab: phi3(0,0) = nbar^3 A L_z
    const double amplitude = 0.3;
    auto u3 = make_constant_u3(amplitude, 1e6);
    auto k3 = build_phi3(b.p, b.med, u3, b.map, 33);
    const double nbar = 0.5;   // g^2 / (g^2 + omega^2)
    const double lz = 100.0;   // L (g^2 + omega^2) / omega^2
    const double expected = nbar * nbar * nbar * amplitude * lz;
    CHECK(k3.phi3_quad(0.0, 0.0) == doctest::Approx(expected).epsilon(1e-9));

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uu(-80.0, 80.0);
    for (int t = 0; t < 50; ++t) {
        const double u = uu(rng), v = uu(rng);
        CHECK(k3.phi3_quad(u, v) == doctest::Approx(k3.phi3_quad(v, u)).epsilon(1e-12));
        CHECK(k3.phi3(u, v) == doctest::Approx(k3.phi3(v, u)).epsilon(1e-12));
    }

    CHECK_THROWS_AS((void)build_phi3(b.p, b.med, NBodyPotential{2, {}, 1.0}, b.map, 9),
                    ValidationError);
}
