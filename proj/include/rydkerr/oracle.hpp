#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "rydkerr/phase.hpp"
#include "rydkerr/scattering.hpp"

namespace rydkerr {

/// Equally spaced reduced-coordinate cells for the brute-force simulator.
struct OracleGrid {
    double lo = 0.0, hi = 0.0;
    int m = 0;  ///< number of cells

    double h() const { return (hi - lo) / m; }
    double node(int i) const { return lo + (i + 0.5) * h(); }
    /// Index of the nearest cell midpoint; throws if tau is not a node.
    int node_index(double tau) const;
    /// Nearest node index, clamped to the grid (for snapping requests).
    int nearest_node_index(double tau) const;
};

/// Grid covering the envelope support expanded by pad (typically 5 xi_out).
OracleGrid make_oracle_grid(const CoherentInput& input, double pad, int m);

/// Truncated-Fock snapshot of a discretized coherent state, optionally with
/// the pairwise (and triple-wise) phase map applied. States are immutable;
/// apply_phase_map returns a new snapshot.
///
/// Amplitudes live over symmetrized occupation configurations. They are
/// stored implicitly in product form and can be materialized into dense
/// per-sector vectors for small problems; the correlator path enumerates
/// configurations explicitly either way.
class GridState {
  public:
    const OracleGrid& grid() const { return grid_; }
    int n_trunc() const { return n_trunc_; }
    double nbar() const { return nbar_; }
    /// Dropped Poisson tail weight e^{-nbar} sum_{N > N_trunc} nbar^N / N!.
    double tail_weight() const;
    /// Norm of the truncated state (deficit equals the tail weight).
    double norm() const;
    bool phase_applied() const { return phase_applied_; }

    std::span<const cdouble> alphas() const { return alpha_; }

    /// Dense per-sector amplitude vectors (index = multiset rank). Throws
    /// ValidationError when the total size would exceed `max_amplitudes`.
    void materialize(size_t max_amplitudes = 20'000'000);
    bool materialized() const { return !sectors_.empty(); }
    std::span<const cdouble> sector(int n_photons) const;
    /// Amplitude of the configuration given as a sorted cell list.
    cdouble amplitude(std::span<const int> cells) const;

    /// Total interaction phase of a configuration (pair + triple sums),
    /// evaluated explicitly from the kernels.
    double config_phase(std::span<const int> cells) const;

  private:
    friend GridState prepare_coherent(const CoherentInput&, const OracleGrid&, int,
                                      double);
    friend GridState apply_phase_map(const GridState&, const PhaseKernel&,
                                     const ThreeBodyKernel*);
    friend cdouble measure_correlator(const GridState&, int, int,
                                      std::span<const double>);
    OracleGrid grid_;
    int n_trunc_ = 0;
    double nbar_ = 0.0;
    std::vector<cdouble> alpha_;  // cell amplitudes E(tau_i) sqrt(h)
    bool phase_applied_ = false;
    std::optional<PhaseKernel> kernel_;
    std::optional<ThreeBodyKernel> kernel3_;
    std::vector<std::vector<cdouble>> sectors_;  // dense form when materialized
};

/// Discretizes a coherent input: cell i carries alpha_i = E(tau_i) sqrt(h),
/// truncated at n_trunc total photons. Requires the dropped Poisson tail to
/// stay below tail_tol.
GridState prepare_coherent(const CoherentInput& input, const OracleGrid& grid,
                           int n_trunc, double tail_tol = 1e-6);

/// Multiplies every configuration by its pairwise (and triple) phase; the
/// norm is unchanged exactly since the map is a pure phase.
GridState apply_phase_map(const GridState& state, const PhaseKernel& kernel,
                          const ThreeBodyKernel* kernel3 = nullptr);

/// Normally ordered expectation < prod psi^dag(tau_i) prod psi(tau_j) > on
/// the discretized state, with n creation and m annihilation points (all on
/// grid nodes). Evaluated by explicit sums over the surviving
/// configurations; no closed-form resummation is used.
cdouble measure_correlator(const GridState& state, int n, int m,
                           std::span<const double> points);

/// Multiset ranking helpers shared by the dense representation and tests.
size_t multiset_rank(std::span<const int> sorted_cells);
void multiset_unrank(size_t rank, int n_photons, int m_cells, std::vector<int>& out);
size_t multiset_count(int m_cells, int n_photons);

}  // namespace rydkerr
