#pragma once

#include <complex>
#include <vector>

#include "rydkerr/scattering.hpp"

namespace rydkerr {

/// Localized square-normalized probe mode u(x) defining the measured
/// single-mode quadratures q = (a + a^dag)/2, p = (a - a^dag)/(2i) with
/// a_u = integral u(x) psi(x) dx (the mode function enters unconjugated;
/// default modes are real, where the distinction vanishes).
class ProbeMode {
  public:
    static ProbeMode gaussian(double center, double width, double support_sigmas = 10.0);
    static ProbeMode from_function(std::function<cdouble(double)> f, double lo, double hi,
                                   double l_probe, double center);

    cdouble u(double x) const;
    double l_probe() const { return l_probe_; }
    double center() const { return center_; }
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }

    /// Throws unless the mode is unit-normalized within 1e-9.
    void check_normalization(const QuadOptions& quad = {1e-13, 1e-11, 4000}) const;

  private:
    ProbeMode() = default;
    std::function<cdouble(double)> f_;
    double lo_ = 0, hi_ = 0, l_probe_ = 1, center_ = 0;
};

enum class MomentMethod { ExactQuadrature, NarrowProbe };

/// Matrix of probe-mode moments g(n, m) = < (a_u^dag)^n a_u^m > of the
/// outgoing state, Hermitian by construction (g(m, n) = conj(g(n, m))),
/// g(0,0) = 1.
class ModeMoments {
  public:
    int n_max() const { return n_max_; }
    MomentMethod method() const { return method_; }
    cdouble g(int n, int m) const;
    double tail_estimate() const { return tail_estimate_; }

  private:
    friend ModeMoments mode_moments(const CoherentInput&, const PhaseKernel&,
                                    const ProbeMode&, int, MomentMethod,
                                    const QuadOptions&);
    int n_max_ = 0;
    MomentMethod method_ = MomentMethod::NarrowProbe;
    std::vector<cdouble> gnm_;  // row-major (n_max+1)^2
    double tail_estimate_ = 0.0;
};

/// Moment matrix up to n_max.
///   ExactQuadrature: nested adaptive quadrature of the closed-form
///     correlators against the probe mode; restricted to n + m <= 4, so
///     n_max <= 2 here (use mode_moment_exact for individual higher entries).
///   NarrowProbe: factorized evaluation valid for probes much narrower than
///     both the kernel width and the envelope: requires
///     l_probe <= xi_out / 10 and l_probe <= l_coh / 10.
ModeMoments mode_moments(const CoherentInput& input, const PhaseKernel& kernel,
                         const ProbeMode& probe, int n_max, MomentMethod method,
                         const QuadOptions& quad = {1e-12, 1e-8, 4000});

/// Single moment by nested adaptive quadrature (n + m <= 4).
cdouble mode_moment_exact(const CoherentInput& input, const PhaseKernel& kernel,
                          const ProbeMode& probe, int n, int m,
                          const QuadOptions& quad = {1e-12, 1e-8, 4000});

/// d^n/d(alpha*)^n d^m/d(alpha)^m exp(-2 |alpha|^2), closed form
/// (sum over k of binomial x falling-factorial terms, log-domain magnitudes).
cdouble gauss_derivative(int n, int m, cdouble alpha);

struct WignerGridSpec {
    int nq = 101, np = 101;
    bool auto_extent = true;  ///< derive the box from g(0,1), g(1,1)
    double q_min = -3, q_max = 3, p_min = -3, p_max = 3;
    double target_residual = 1e-6;  ///< largest-dropped-term bound, relative
    int n_cap = 40;                 ///< hard truncation cap
};

/// Sampled Wigner function over a rectangular region, with the series
/// truncation diagnostics. values are row-major over (iq, ip).
struct WignerGrid {
    std::vector<double> q_axis, p_axis;
    std::vector<double> values;
    int truncation_order = 0;       ///< highest shell n + m included
    double series_residual = 0.0;   ///< bound on the first dropped shell
    double max_imag_residual = 0.0; ///< |Im| left after Hermitian pairing
    bool converged = false;

    double at(size_t iq, size_t ip) const { return values[iq * p_axis.size() + ip]; }
    double cell_area() const;
    double integral() const;  ///< grid quadrature of W
};

WignerGrid wigner(const ModeMoments& moments, const WignerGridSpec& spec = {});

/// Trace purity of the reconstructed state: pi * integral of W^2 in the
/// alpha = q + i p convention; 1 for pure states, < 1 for mixed ones.
double purity(const WignerGrid& grid);

struct QuadratureCovariance {
    double mean_q, mean_p;
    double var_q, var_p, cov_qp;
    double lambda_min, lambda_max;  ///< principal variances
    double axis_ratio;              ///< lambda_min / lambda_max
};

QuadratureCovariance covariance(const WignerGrid& grid);

}  // namespace rydkerr
