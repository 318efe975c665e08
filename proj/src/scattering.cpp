#include "rydkerr/scattering.hpp"

#include <cmath>

#include "rydkerr/errors.hpp"
#include "rydkerr/parallel.hpp"

namespace rydkerr {

CoherentInput CoherentInput::gaussian(cdouble amplitude, double center, double width,
                                      double support_sigmas) {
    if (!(width > 0)) throw ValidationError("input.width: must be > 0");
    if (!(support_sigmas > 0)) throw ValidationError("input.support_sigmas: must be > 0");
    CoherentInput in;
    in.lo_ = center - support_sigmas * width;
    in.hi_ = center + support_sigmas * width;
    in.l_coh_ = width;
    in.f_ = [amplitude, center, width](double tau) {
        const double d = (tau - center) / (2.0 * width);
        return amplitude * std::exp(-d * d);
    };
    return in;
}

CoherentInput CoherentInput::flat(double density, double x0, double x1) {
    if (!(density >= 0)) throw ValidationError("input.density: must be >= 0");
    if (!(x1 > x0)) throw ValidationError("input window: x1 must be > x0");
    CoherentInput in;
    in.lo_ = x0;
    in.hi_ = x1;
    in.l_coh_ = x1 - x0;
    const double a = std::sqrt(density);
    in.f_ = [a](double) { return cdouble(a, 0.0); };
    in.breakpoints_ = {x0, x1};
    return in;
}

CoherentInput CoherentInput::from_function(std::function<cdouble(double)> f, double lo,
                                           double hi, double l_coh) {
    if (!(hi > lo)) throw ValidationError("input window: hi must be > lo");
    CoherentInput in;
    in.f_ = std::move(f);
    in.lo_ = lo;
    in.hi_ = hi;
    in.l_coh_ = l_coh;
    return in;
}

cdouble CoherentInput::envelope(double tau) const {
    if (tau < lo_ || tau > hi_) return {0.0, 0.0};
    return f_(tau);
}

double CoherentInput::density(double tau) const { return std::norm(envelope(tau)); }

double CoherentInput::mean_photon_number(const QuadOptions& quad) const {
    return integrate_or_throw([&](double u) { return density(u); }, lo_, hi_, quad,
                              breakpoints_, "photon number");
}

CoherentInput CoherentInput::scaled(double factor) const {
    CoherentInput out = *this;
    auto base = f_;
    out.f_ = [base, factor](double tau) { return factor * base(tau); };
    return out;
}

FewPhotonState two_photon_out(const FewPhotonState& state_in, const PhaseKernel& kernel) {
    if (state_in.n_photons != 2)
        throw ValidationError("two_photon_out: state must hold exactly 2 photons");
    return n_photon_out(state_in, kernel, nullptr);
}

FewPhotonState n_photon_out(const FewPhotonState& state_in, const PhaseKernel& kernel,
                            const ThreeBodyKernel* kernel3) {
    if (state_in.n_photons < 1)
        throw ValidationError("n_photon_out: need at least one photon");
    if (kernel3 && state_in.n_photons < 3)
        throw ValidationError("n_photon_out: three-body kernel requires N >= 3");

    FewPhotonState out;
    out.n_photons = state_in.n_photons;
    auto base = state_in.amplitude;
    // copy the kernels: the returned state owns everything it needs
    PhaseKernel k = kernel;
    ThreeBodyKernel k3;
    const bool has3 = kernel3 != nullptr;
    if (has3) k3 = *kernel3;
    out.amplitude = [base, k, k3, has3](std::span<const double> taus) {
        double phase = 0.0;
        const size_t n = taus.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) phase += k.phi(taus[i] - taus[j]);
        if (has3)
            for (size_t i = 0; i < n; ++i)
                for (size_t j = i + 1; j < n; ++j)
                    for (size_t l = j + 1; l < n; ++l)
                        phase += k3.phi3_particles(taus[i], taus[j], taus[l]);
        return base(taus) * std::exp(cdouble(0.0, -phase));
    };
    return out;
}

namespace {

/// integral of |E(u)|^2 [exp(i chi(u)) - 1] du with
/// chi(u) = sum_{i<=n} phi(u - tau_i) - sum_{j>n} phi(u - tau_j).
/// The real part uses 1 - cos = 2 sin^2 to stay cancellation-free.
ComplexQuadResult fluctuation_exponent(const CoherentInput& input,
                                       const PhaseKernel& kernel,
                                       std::span<const double> plus,
                                       std::span<const double> minus,
                                       const QuadOptions& quad) {
    auto f = [&](double u) -> cdouble {
        const double rho = input.density(u);
        if (rho == 0.0) return {0.0, 0.0};
        double chi = 0.0;
        for (double t : plus) chi += kernel.phi(u - t);
        for (double t : minus) chi -= kernel.phi(u - t);
        const double s = std::sin(0.5 * chi);
        return rho * cdouble(-2.0 * s * s, std::sin(chi));
    };
    // pin panels to each point's kernel window so narrow islands inside a
    // wide envelope cannot be skipped by the initial sampling
    std::vector<double> bps(input.breakpoints().begin(), input.breakpoints().end());
    const double ext = kernel.extent();
    auto add_window = [&](double t) {
        bps.push_back(t - ext);
        bps.push_back(t);
        bps.push_back(t + ext);
    };
    for (double t : plus) add_window(t);
    for (double t : minus) add_window(t);
    return integrate_complex(f, input.support_lo(), input.support_hi(), quad, bps);
}

double kernel_tail_estimate(const CoherentInput& input, const PhaseKernel& kernel) {
    // phases beyond the tabulated extent are treated as zero; bound the
    // neglected exponent weight through the u^-6 tail of the kernel
    const double ext = kernel.extent();
    if (ext <= 0.0) return 0.0;
    const double ratio = kernel.xi_out() / ext;
    const double p6 = std::pow(ratio, 6);
    return std::abs(kernel.phi0()) * p6 * input.mean_photon_number();
}

}  // namespace

cdouble coherent_exponent(const CoherentInput& input, const PhaseKernel& kernel,
                          double tau, const QuadOptions& quad) {
    const double minus[1] = {tau};
    auto r = fluctuation_exponent(input, kernel, {}, minus, quad);
    if (!r.converged)
        throw NumericalError("coherent_out: exponent quadrature did not converge");
    return r.value;
}

cdouble coherent_out(const CoherentInput& input, const PhaseKernel& kernel, double tau,
                     const QuadOptions& quad) {
    const cdouble e = input.envelope(tau);
    if (e == cdouble(0.0, 0.0)) return e;
    return e * std::exp(coherent_exponent(input, kernel, tau, quad));
}

CorrelatorResult correlator(const CoherentInput& input, const PhaseKernel& kernel,
                            const CorrelatorRequest& req, const QuadOptions& quad) {
    if (req.n < 0 || req.m < 0 || req.n + req.m < 1)
        throw ValidationError("correlator: need n, m >= 0 and n + m >= 1");
    if (req.points.size() != static_cast<size_t>(req.n + req.m))
        throw ValidationError("correlator: points must hold n + m entries");

    const std::span<const double> plus(req.points.data(), req.n);
    const std::span<const double> minus(req.points.data() + req.n, req.m);

    cdouble pref(1.0, 0.0);
    for (double t : plus) pref *= std::conj(input.envelope(t));
    for (double t : minus) pref *= input.envelope(t);
    if (pref == cdouble(0.0, 0.0)) return {pref, 0.0, 0.0};

    double pair_phase = 0.0;
    for (int k = 0; k < req.n; ++k)
        for (int l = 0; l < k; ++l) pair_phase += kernel.phi(plus[k] - plus[l]);
    for (int k = 0; k < req.m; ++k)
        for (int l = 0; l < k; ++l) pair_phase -= kernel.phi(minus[k] - minus[l]);

    auto fluct = fluctuation_exponent(input, kernel, plus, minus, quad);
    if (!fluct.converged)
        throw NumericalError("correlator: fluctuation quadrature did not converge");

    CorrelatorResult out;
    out.value = pref * std::exp(cdouble(0.0, pair_phase)) * std::exp(fluct.value);
    out.quad_error = std::abs(out.value) * fluct.error;
    out.tail_estimate = std::abs(out.value) * kernel_tail_estimate(input, kernel);
    return out;
}

std::vector<CorrelatorResult> correlator_batch(const CoherentInput& input,
                                               const PhaseKernel& kernel,
                                               std::span<const CorrelatorRequest> reqs,
                                               const QuadOptions& quad) {
    std::vector<CorrelatorResult> out(reqs.size());
    parallel_for(reqs.size(), [&](size_t i) {
        out[i] = correlator(input, kernel, reqs[i], quad);
    });
    return out;
}

}  // namespace rydkerr
