#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "rydkerr/phase.hpp"

namespace rydkerr {

using cdouble = std::complex<double>;

/// Incoming coherent-state envelope E(tau) in reduced coordinates
/// tau = x - c (t - delta_t); |E|^2 is a photon density per length. The
/// envelope is exactly zero outside its declared window so every consumer
/// (closed forms, moments, the brute-force oracle) sees the same function.
class CoherentInput {
  public:
    /// E(tau) = amplitude * exp(-(tau-center)^2 / (4 width^2)); |E|^2 has
    /// standard deviation `width`. Truncated at +- support_sigmas * width.
    static CoherentInput gaussian(cdouble amplitude, double center, double width,
                                  double support_sigmas = 10.0);

    /// |E|^2 = density on [x0, x1], zero elsewhere.
    static CoherentInput flat(double density, double x0, double x1);

    static CoherentInput from_function(std::function<cdouble(double)> f, double lo,
                                       double hi, double l_coh);

    cdouble envelope(double tau) const;
    double density(double tau) const;  ///< |E(tau)|^2
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    double l_coh() const { return l_coh_; }
    std::span<const double> breakpoints() const { return breakpoints_; }

    /// Mean total photon number, integral of |E|^2.
    double mean_photon_number(const QuadOptions& quad = {}) const;

    CoherentInput scaled(double factor) const;

  private:
    CoherentInput() = default;
    std::function<cdouble(double)> f_;
    double lo_ = 0.0, hi_ = 0.0, l_coh_ = 1.0;
    std::vector<double> breakpoints_;
};

/// Symmetric N-photon wave function in reduced coordinates, callable on a
/// point tuple. The propagation maps below multiply it by pure phase factors,
/// so norms are preserved exactly and moduli pointwise.
struct FewPhotonState {
    int n_photons = 0;
    std::function<cdouble(std::span<const double>)> amplitude;

    cdouble operator()(std::span<const double> taus) const { return amplitude(taus); }
};

/// Two-photon output: multiply by exp(-i phi(tau1 - tau2)). The medium delay
/// is absorbed by the reduced-coordinate convention.
FewPhotonState two_photon_out(const FewPhotonState& state_in, const PhaseKernel& kernel);

/// N-photon output: pairwise phases, plus triple-wise phases when a
/// three-body kernel is supplied (N >= 3 required in that case).
FewPhotonState n_photon_out(const FewPhotonState& state_in, const PhaseKernel& kernel,
                            const ThreeBodyKernel* kernel3 = nullptr);

/// Outgoing mean field at tau:
/// E_out(tau) = E(tau) exp( integral |E(u)|^2 [exp(-i phi(u - tau)) - 1] du ).
/// The exponent's real part is <= 0, so |E_out| <= |E| everywhere.
cdouble coherent_out(const CoherentInput& input, const PhaseKernel& kernel, double tau,
                     const QuadOptions& quad = {1e-12, 1e-10, 20000});

/// The exponent of coherent_out (useful for diagnostics and tests).
cdouble coherent_exponent(const CoherentInput& input, const PhaseKernel& kernel,
                          double tau, const QuadOptions& quad = {1e-12, 1e-10, 20000});

struct CorrelatorRequest {
    int n = 0, m = 0;
    std::vector<double> points;  ///< tau_1 ... tau_{n+m}
};

struct CorrelatorResult {
    cdouble value{0.0, 0.0};
    double quad_error = 0.0;     ///< propagated quadrature error estimate
    double tail_estimate = 0.0;  ///< kernel-extent truncation bound
};

/// Normally ordered correlator G_{n,m}(tau_1 .. tau_{n+m}) of the outgoing
/// field for a coherent input, evaluated in closed form with one adaptive
/// 1-D quadrature. Coincident points are legal: phi(0) is finite, so nothing
/// needs regularization.
CorrelatorResult correlator(const CoherentInput& input, const PhaseKernel& kernel,
                            const CorrelatorRequest& req,
                            const QuadOptions& quad = {1e-12, 1e-10, 20000});

/// Batch evaluation; results are indexed like the requests regardless of the
/// worker schedule.
std::vector<CorrelatorResult> correlator_batch(const CoherentInput& input,
                                               const PhaseKernel& kernel,
                                               std::span<const CorrelatorRequest> reqs,
                                               const QuadOptions& quad = {1e-12, 1e-10,
                                                                          20000});

}  // namespace rydkerr
