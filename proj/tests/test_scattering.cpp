#include <doctest.h>

#include <cmath>
#include <random>

#include "rydkerr/errors.hpp"
#include "rydkerr/scattering.hpp"

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

PhaseKernel zero_kernel() {
    auto p = canonical();
    auto med = MediumProfile::slab(0.0, 50.0);
    auto map = build_map(p, med);
    return build_phase_kernel(p, med, TwoBodyPotential::from_params(p), map);
}

FewPhotonState gaussian_pair() {
    FewPhotonState s;
    s.n_photons = 2;
    s.amplitude = [](std::span<const double> t) {
        return cdouble(std::exp(-0.5 * (t[0] * t[0] + t[1] * t[1])), 0.0);
    };
    return s;
}

}  // namespace

TEST_CASE("two-photon map: zero kernel is the identity, phases only otherwise") {
    auto in = gaussian_pair();
    auto zk = zero_kernel();
    auto out0 = two_photon_out(in, zk);
    auto b = slab_kernel(50.0);
    auto out = two_photon_out(in, b.k);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int t = 0; t < 50; ++t) {
        const double pts[2] = {u(rng), u(rng)};
        CHECK(out0(pts) == in(pts));
        // pure phase: moduli preserved pointwise
        CHECK(std::abs(out(pts)) == doctest::Approx(std::abs(in(pts))).epsilon(1e-14));
        const cdouble ratio = out(pts) / in(pts);
        CHECK(std::arg(ratio) ==
              doctest::Approx(-b.k.phi(pts[0] - pts[1])).epsilon(1e-12));
    }
    // coincident points carry phase -phi(0) = +0.5 for the canonical slab
    const double same[2] = {0.3, 0.3};
    CHECK(std::arg(out(same) / in(same)) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("n-photon map: single photon is untouched, symmetry commutes") {
    auto b = slab_kernel(20.0);
    FewPhotonState one;
    one.n_photons = 1;
    one.amplitude = [](std::span<const double> t) {
        return cdouble(std::exp(-t[0] * t[0]), 0.0);
    };
    auto out1 = n_photon_out(one, b.k);
    const double pt[1] = {0.7};
    CHECK(out1(pt) == one(pt));

    FewPhotonState three;
    three.n_photons = 3;
    three.amplitude = [](std::span<const double> t) {
        double s = 0;
        for (double x : t) s += x * x;
        return cdouble(std::exp(-0.5 * s), 0.1 * std::cos(t[0] + t[1] + t[2]));
    };
    auto out3 = n_photon_out(three, b.k);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int t = 0; t < 30; ++t) {
        double a = u(rng), bb = u(rng), c = u(rng);
        const double p1[3] = {a, bb, c};
        const double p2[3] = {c, a, bb};  // permuted arguments
        CHECK(std::abs(out3(p1) - out3(p2)) <= 1e-12 * std::abs(out3(p1)));
    }

    CHECK_THROWS_AS((void)two_photon_out(three, b.k), ValidationError);
}

TEST_CASE("n-photon norm is preserved exactly on a sampled grid") {
    auto b = slab_kernel(10.0);
    auto in = gaussian_pair();
    auto out = two_photon_out(in, b.k);
    double norm_in = 0, norm_out = 0;
    for (double x = -5.0; x <= 5.0; x += 0.25)
        for (double y = -5.0; y <= 5.0; y += 0.25) {
            const double pts[2] = {x, y};
            norm_in += std::norm(in(pts));
            norm_out += std::norm(out(pts));
        }
    CHECK(norm_out == doctest::Approx(norm_in).epsilon(1e-14));
}

TEST_CASE("three-body phase at coincident points") {
    auto b = slab_kernel(50.0);
    const double amplitude = 0.002;  // keep arg() in the principal branch
    auto u3 = make_constant_u3(amplitude, 1e6);
    auto k3 = build_phi3(b.p, b.med, u3, b.map, 65);
    auto zk = zero_kernel();

    FewPhotonState three;
    three.n_photons = 3;
    three.amplitude = [](std::span<const double>) { return cdouble(1.0, 0.0); };
    auto out = n_photon_out(three, zk, &k3);
    const double pts[3] = {0.0, 0.0, 0.0};
    // phi3(0,0) = nbar^3 A L_z = (1/8) A 100 = 12.5 A
    CHECK(std::arg(out(pts)) == doctest::Approx(-12.5 * amplitude).epsilon(1e-7));

    FewPhotonState two = gaussian_pair();
    CHECK_THROWS_AS((void)n_photon_out(two, zk, &k3), ValidationError);
}

TEST_CASE("coherent output: zero kernel passthrough and suppression bound") {
    auto zk = zero_kernel();
    auto input = CoherentInput::gaussian(0.4, 0.0, 3.0);
    CHECK(coherent_out(input, zk, 0.7) == input.envelope(0.7));

    auto b = slab_kernel(50.0);
    for (double tau : {-3.0, 0.0, 1.4, 9.0}) {
        const cdouble eo = coherent_out(input, b.k, tau);
        CHECK(std::abs(eo) <= std::abs(input.envelope(tau)) * (1.0 + 1e-12));
    }
}

TEST_CASE("flat envelope deep inside: exponent equals -rho xi_out (eta + i Phi)") {
    auto b = slab_kernel(50.0);
    const auto ks = kerr_summary(b.k, b.d.xi_out);
    const double rho = 0.5;
    // window much wider than the kernel, tau at the center
    auto input = CoherentInput::flat(rho, -40.0 * b.d.xi_out, 40.0 * b.d.xi_out);
    const cdouble expo = coherent_exponent(input, b.k, 0.0);
    const cdouble expected = -rho * b.d.xi_out * cdouble(ks.eta, ks.Phi);
    CHECK(std::abs(expo - expected) <= 1e-6 * std::abs(expected));
}

TEST_CASE("weak nonlinearity reduces to the classical Kerr phase") {
    auto p = canonical();
    p.delta = 5000.0;  // phi0 = -0.01
    p.c6 = -2.0 / p.delta;
    auto b = slab_kernel(50.0, p);
    const auto ks = kerr_summary(b.k, b.d.xi_out);

    auto input = CoherentInput::gaussian(0.5, 0.0, 100.0 * b.d.xi_out, 6.0);
    for (double tau : {0.0, 30.0, -55.0}) {
        const cdouble eo = coherent_out(input, b.k, tau);
        const cdouble kerr = input.envelope(tau) *
                             std::exp(cdouble(0.0, -ks.sigma * input.density(tau)));
        CHECK(std::abs(eo / kerr - 1.0) < 5e-4);  // O(phi0^2) corrections
    }
}

TEST_CASE("correlator: G_{0,1} coincides with the mean field") {
    auto b = slab_kernel(50.0);
    auto input = CoherentInput::gaussian(cdouble(0.3, 0.1), 0.5, 4.0);
    for (double tau : {-2.0, 0.5, 3.0}) {
        const auto g01 = correlator(input, b.k, {0, 1, {tau}});
        const cdouble eo = coherent_out(input, b.k, tau);
        CHECK(std::abs(g01.value - eo) <= 1e-12 * std::abs(eo));
    }
}

TEST_CASE("correlator: cluster factorization at large separation") {
    auto b = slab_kernel(20.0);
    auto input = CoherentInput::gaussian(0.35, 0.0, 60.0);
    const double t1 = -50.0, t2 = 95.0;  // separation beyond the kernel extent
    const auto g02 = correlator(input, b.k, {0, 2, {t1, t2}});
    const auto a = correlator(input, b.k, {0, 1, {t1}});
    const auto bb = correlator(input, b.k, {0, 1, {t2}});
    CHECK(std::abs(g02.value - a.value * bb.value) <= 1e-9 * std::abs(g02.value));
}

TEST_CASE("intensity invariance: G_{1,1}(tau, tau) = |E(tau)|^2 exactly") {
    auto p = canonical();
    p.delta = 8.0;  // strong interaction, phi0 = -6.25
    p.c6 = -2.0 / 8.0;
    auto b = slab_kernel(50.0, p);
    auto input = CoherentInput::gaussian(0.6, -1.0, 7.0);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int t = 0; t < 50; ++t) {
        const double tau = u(rng);
        const auto g11 = correlator(input, b.k, {1, 1, {tau, tau}});
        const double expect = input.density(tau);
        if (expect == 0.0)
            CHECK(std::abs(g11.value) == 0.0);
        else
            CHECK(std::abs(g11.value - expect) <= 1e-10 * expect);
    }
}

TEST_CASE("hermiticity under group swap") {
    auto b = slab_kernel(30.0);
    auto input = CoherentInput::gaussian(cdouble(0.3, 0.2), 0.0, 5.0);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-8.0, 8.0);
    for (int t = 0; t < 20; ++t) {
        const double a = u(rng), bb = u(rng), c = u(rng);
        const auto g12 = correlator(input, b.k, {1, 2, {a, bb, c}});
        const auto g21 = correlator(input, b.k, {2, 1, {bb, c, a}});
        CHECK(std::abs(g21.value - std::conj(g12.value)) <=
              1e-10 * std::abs(g12.value));
    }
}

TEST_CASE("degenerate coincident points need no regularization") {
    auto b = slab_kernel(50.0);
    auto input = CoherentInput::gaussian(0.4, 0.0, 5.0);
    const auto g = correlator(input, b.k, {0, 2, {1.1, 1.1}});
    CHECK(std::isfinite(g.value.real()));
    CHECK(std::isfinite(g.value.imag()));
    CHECK(std::abs(g.value) > 0.0);
    CHECK(std::abs(g.value) <= input.density(1.1) * (1.0 + 1e-12));
}

TEST_CASE("batch evaluation matches pointwise calls") {
    auto b = slab_kernel(20.0);
    auto input = CoherentInput::gaussian(0.3, 0.0, 5.0);
    std::vector<CorrelatorRequest> reqs = {
        {0, 1, {0.4}}, {0, 2, {-1.0, 2.0}}, {1, 1, {0.2, 0.9}}, {2, 2, {0, 1, 2, 3}}};
    auto batch = correlator_batch(input, b.k, reqs);
    REQUIRE(batch.size() == reqs.size());
    for (size_t i = 0; i < reqs.size(); ++i) {
        const auto single = correlator(input, b.k, reqs[i]);
        CHECK(batch[i].value == single.value);  // identical code path and order
    }
}

TEST_CASE("request validation") {
    auto b = slab_kernel(20.0);
    auto input = CoherentInput::gaussian(0.3, 0.0, 5.0);
    CHECK_THROWS_AS((void)correlator(input, b.k, {0, 0, {}}), ValidationError);
    CHECK_THROWS_AS((void)correlator(input, b.k, {1, 1, {0.0}}), ValidationError);
    CHECK_THROWS_AS(CoherentInput::flat(-1.0, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(CoherentInput::gaussian(1.0, 0.0, -2.0), ValidationError);
}
