#include <doctest.h>

#include <cmath>
#include <random>

#include "rydkerr/errors.hpp"
#include "rydkerr/homodyne.hpp"

using namespace rydkerr;

namespace {

struct Built {
    PolaritonParams p;
    MediumProfile med;
    DerivedQuantities d;
    CoordinateMap map;
    PhaseKernel k;
};

Built make_kernel(PolaritonParams p, MediumProfile med) {
    auto map = build_map(p, med);
    auto pot = TwoBodyPotential::from_params(p);
    return {p, med, derive(p, med), map, build_phase_kernel(p, med, pot, map)};
}

/// Zero kernel with a configurable xi_out (vacuum medium, detuning-tuned
/// blockade radius), so narrow-probe preconditions can be exercised.
Built zero_kernel(double xi) {
    PolaritonParams p{1.0, 100.0, 0.1, 1.0, -2.0 * std::pow(xi, 6) / 100.0, 1.0};
    return make_kernel(p, MediumProfile::slab(0.0, 10.0));
}

/// circular-stencil finite differences for the mixed Taylor coefficient of
/// G(z, w) = exp(-2 z w); exact for polynomial degree < N per variable
cdouble fd_gauss_derivative(int n, int m, cdouble alpha) {
    const int N = 32;
    const double r = 0.6;
    const cdouble z0 = std::conj(alpha);
    const cdouble w0 = alpha;
    cdouble sum(0.0, 0.0);
    for (int k = 0; k < N; ++k) {
        const double tk = 2.0 * M_PI * k / N;
        const cdouble zk = z0 + r * std::exp(cdouble(0.0, tk));
        for (int l = 0; l < N; ++l) {
            const double tl = 2.0 * M_PI * l / N;
            const cdouble wl = w0 + r * std::exp(cdouble(0.0, tl));
            sum += std::exp(-2.0 * zk * wl) *
                   std::exp(cdouble(0.0, -(n * tk + m * tl)));
        }
    }
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (int i = 2; i <= m; ++i) fact *= i;
    return sum * fact / (static_cast<double>(N) * N * std::pow(r, n + m));
}

}  // namespace

TEST_CASE("gaussian derivative closed form vs finite differences, n, m <= 5") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= 5; ++m)
            for (int t = 0; t < 3; ++t) {
                const cdouble alpha(u(rng), u(rng));
                const cdouble closed = gauss_derivative(n, m, alpha);
                const cdouble fd = fd_gauss_derivative(n, m, alpha);
                CHECK(std::abs(closed - fd) <= 1e-6 * std::max(1e-12, std::abs(fd)));
            }
    // spot values
    CHECK(gauss_derivative(0, 0, {0.3, -0.2}).real() ==
          doctest::Approx(std::exp(-2.0 * 0.13)).epsilon(1e-14));
    CHECK(gauss_derivative(1, 1, cdouble(0, 0)).real() == doctest::Approx(-2.0));
}

TEST_CASE("probe modes are validated") {
    auto probe = ProbeMode::gaussian(0.0, 0.5);
    CHECK_NOTHROW(probe.check_normalization());
    auto bad = ProbeMode::from_function(
        [](double x) { return cdouble(std::exp(-x * x), 0.0); }, -6.0, 6.0, 1.0, 0.0);
    CHECK_THROWS_AS(bad.check_normalization(), ValidationError);
}

TEST_CASE("zero interaction: narrow-probe moments are coherent-state moments") {
    auto b = zero_kernel(20.0);  // xi_out = 20
    auto input = CoherentInput::gaussian(cdouble(0.11, 0.04), 0.0, 30.0);
    auto probe = ProbeMode::gaussian(0.0, 1.0);
    auto mm = mode_moments(input, b.k, probe, 6, MomentMethod::NarrowProbe);

    const cdouble c = integrate_complex_or_throw(
        [&](double x) { return probe.u(x) * input.envelope(x); }, probe.support_lo(),
        probe.support_hi(), {1e-13, 1e-11, 4000});
    CHECK(mm.g(0, 0) == cdouble(1.0, 0.0));
    for (int n = 0; n <= 6; ++n)
        for (int m = 0; m <= 6; ++m) {
            const cdouble expect = std::pow(std::conj(c), n) * std::pow(c, m);
            CHECK(std::abs(mm.g(n, m) - expect) <= 1e-10 * std::abs(expect));
            CHECK(std::abs(mm.g(m, n) - std::conj(mm.g(n, m))) == 0.0);
        }
}

TEST_CASE("order-1 moment equals the probe overlap of the outgoing field") {
    auto p = PolaritonParams{1.0, 200.0, 0.1, 1.0, -0.01, 1.0};
    auto b = make_kernel(p, MediumProfile::slab(1.0, 50.0));  // xi_out = 2
    auto input = CoherentInput::gaussian(0.4, 0.0, 3.0);
    auto probe = ProbeMode::gaussian(0.0, 0.1);  // xi_out / 20
    auto mm = mode_moments(input, b.k, probe, 3, MomentMethod::NarrowProbe);

    const cdouble direct = integrate_complex_or_throw(
        [&](double t) { return probe.u(t) * coherent_out(input, b.k, t); },
        probe.support_lo(), probe.support_hi(), {1e-13, 1e-11, 4000});
    CHECK(std::abs(mm.g(0, 1) - direct) <= 5e-3 * std::abs(direct));

    const cdouble exact = mode_moment_exact(input, b.k, probe, 0, 1);
    CHECK(std::abs(exact - direct) <= 1e-8 * std::abs(direct));
}

TEST_CASE("exact and narrow-probe moments agree for n + m <= 3") {
    auto p = PolaritonParams{1.0, 200.0, 0.1, 1.0, -0.01, 1.0};  // phi0 = -0.25
    auto b = make_kernel(p, MediumProfile::slab(1.0, 50.0));
    auto input = CoherentInput::gaussian(0.4, 0.0, 3.0);
    // compact probe support keeps the nested validation quadrature cheap;
    // the clipped weight is ~1e-5 relative, far below the 1e-2 comparison
    auto probe = ProbeMode::gaussian(0.0, b.d.xi_out / 20.0, 6.5);

    auto narrow = mode_moments(input, b.k, probe, 3, MomentMethod::NarrowProbe);
    for (auto [n, m] :
         std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 1}, {1, 2}, {0, 3}}) {
        const cdouble exact = mode_moment_exact(input, b.k, probe, n, m);
        CHECK(std::abs(exact - narrow.g(n, m)) <= 1e-2 * std::abs(exact));
    }
}

TEST_CASE("exact method preconditions") {
    auto b = zero_kernel(20.0);
    auto input = CoherentInput::gaussian(0.1, 0.0, 30.0);
    auto probe = ProbeMode::gaussian(0.0, 1.0);
    CHECK_THROWS_AS((void)mode_moment_exact(input, b.k, probe, 3, 2), ValidationError);
    CHECK_THROWS_AS(
        (void)mode_moments(input, b.k, probe, 4, MomentMethod::ExactQuadrature),
        ValidationError);
    // narrow-probe width gates
    auto wide = ProbeMode::gaussian(0.0, 3.0);  // > xi_out / 10
    CHECK_THROWS_AS((void)mode_moments(input, b.k, wide, 3, MomentMethod::NarrowProbe),
                    ValidationError);
}

TEST_CASE("wigner of a coherent state is the displaced gaussian") {
    auto b = zero_kernel(20.0);
    auto input = CoherentInput::gaussian(0.2, 0.0, 30.0);
    auto probe = ProbeMode::gaussian(0.0, 1.0);
    // rescale so the probe amplitude is exactly 0.5
    const cdouble c0 = integrate_complex_or_throw(
        [&](double x) { return probe.u(x) * input.envelope(x); }, probe.support_lo(),
        probe.support_hi(), {1e-13, 1e-11, 4000});
    auto scaled = input.scaled(0.5 / c0.real());
    auto mm = mode_moments(scaled, b.k, probe, 12, MomentMethod::NarrowProbe);

    WignerGridSpec spec;
    spec.nq = spec.np = 81;
    auto grid = wigner(mm, spec);
    CHECK(grid.converged);
    CHECK(grid.max_imag_residual < 1e-8);

    double max_err = 0.0;
    for (size_t i = 0; i < grid.q_axis.size(); ++i)
        for (size_t j = 0; j < grid.p_axis.size(); ++j) {
            const double q = grid.q_axis[i], pp = grid.p_axis[j];
            const double ref =
                2.0 / M_PI * std::exp(-2.0 * ((q - 0.5) * (q - 0.5) + pp * pp));
            max_err = std::max(max_err, std::abs(grid.at(i, j) - ref));
        }
    CHECK(max_err < 1e-6);
    CHECK(grid.integral() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(purity(grid) == doctest::Approx(1.0).epsilon(1e-3));

    const auto cov = covariance(grid);
    CHECK(cov.mean_q == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(std::abs(cov.mean_p) < 1e-6);
    CHECK(cov.var_q == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(cov.var_p == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("vacuum moments give the vacuum gaussian with unit norm") {
    auto b = zero_kernel(20.0);
    auto vac = CoherentInput::gaussian(0.0, 0.0, 30.0);
    auto probe = ProbeMode::gaussian(0.0, 1.0);
    auto mm = mode_moments(vac, b.k, probe, 8, MomentMethod::NarrowProbe);
    for (int n = 0; n <= 8; ++n)
        for (int m = 0; m <= 8; ++m)
            CHECK(std::abs(mm.g(n, m) - (n == 0 && m == 0 ? 1.0 : 0.0)) < 1e-14);

    WignerGridSpec spec;
    spec.nq = spec.np = 61;
    auto grid = wigner(mm, spec);
    for (size_t i = 0; i < grid.q_axis.size(); ++i)
        for (size_t j = 0; j < grid.p_axis.size(); ++j) {
            const double r2 = grid.q_axis[i] * grid.q_axis[i] +
                              grid.p_axis[j] * grid.p_axis[j];
            CHECK(std::abs(grid.at(i, j) - 2.0 / M_PI * std::exp(-2.0 * r2)) < 1e-12);
        }
    CHECK(grid.integral() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(purity(grid) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("interaction mixes the reconstructed state") {
    // slab tuned to phi0 = -pi via the detuning; narrow probe, long envelope
    PolaritonParams p{1.0, 500.0 / M_PI, 0.1, 1.0, -1.0, 1.0};
    p.c6 = -2.0 * std::pow(10.0, 6) / std::abs(p.delta);  // xi = 10
    auto b = make_kernel(p, MediumProfile::slab(1.0, 500.0));
    CHECK(b.d.xi == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(b.k.phi0() == doctest::Approx(-M_PI).epsilon(1e-9));

    auto probe = ProbeMode::gaussian(0.0, 1.0);
    auto input0 = CoherentInput::gaussian(0.45, 0.0, 100.0);
    const cdouble c0 = integrate_complex_or_throw(
        [&](double x) { return probe.u(x) * input0.envelope(x); }, probe.support_lo(),
        probe.support_hi(), {1e-13, 1e-11, 4000});
    auto input = input0.scaled(1.0 / std::abs(c0));  // unit probe photon number

    auto mm = mode_moments(input, b.k, probe, 26, MomentMethod::NarrowProbe);
    WignerGridSpec spec;
    spec.nq = spec.np = 81;
    auto grid = wigner(mm, spec);
    CHECK(grid.max_imag_residual < 1e-8);
    CHECK(grid.integral() == doctest::Approx(1.0).epsilon(1e-3));
    const double pur = purity(grid);
    CHECK(pur < 0.9);  // strongly mixed
    CHECK(pur > 0.0);
    CHECK(grid.converged);

    // any physical state obeys W >= -2/pi
    double w_min = 0.0;
    for (double v : grid.values) w_min = std::min(w_min, v);
    CHECK(w_min >= -2.0 / M_PI - 1e-9);
}

TEST_CASE("moment matrix is hermitian by construction") {
    auto p = PolaritonParams{1.0, 200.0, 0.1, 1.0, -0.01, 1.0};
    auto b = make_kernel(p, MediumProfile::slab(1.0, 50.0));
    auto input = CoherentInput::gaussian(cdouble(0.3, 0.2), 0.5, 4.0);
    auto probe = ProbeMode::gaussian(0.0, 0.15);
    auto mm = mode_moments(input, b.k, probe, 5, MomentMethod::NarrowProbe);
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= 5; ++m)
            CHECK(mm.g(m, n) == std::conj(mm.g(n, m)));
}
