#include "rydkerr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rydkerr/errors.hpp"
#include "rydkerr/parallel.hpp"

namespace rydkerr {

namespace {

// exact binomial in size_t; callers keep arguments small enough (dense
// representations are size-capped before ranking)
size_t binom(size_t n, size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    size_t r = 1;
    for (size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // exact: prefix products are binomials
    }
    return r;
}

double poisson_tail(double nbar, int n_trunc) {
    // e^{-nbar} sum_{N > n_trunc} nbar^N / N!
    double term = std::exp(-nbar);
    double cdf = 0.0;
    for (int k = 0; k <= n_trunc; ++k) {
        cdf += term;
        term *= nbar / (k + 1);
    }
    return std::max(0.0, 1.0 - cdf);
}

}  // namespace

int OracleGrid::node_index(double tau) const {
    const double pos = (tau - lo) / h() - 0.5;
    const int i = static_cast<int>(std::lround(pos));
    if (i < 0 || i >= m || std::abs(node(i) - tau) > 1e-9 * h()) {
        std::ostringstream os;
        os << "measure_correlator: point " << tau << " is not a grid node";
        throw ValidationError(os.str());
    }
    return i;
}

int OracleGrid::nearest_node_index(double tau) const {
    const int i = static_cast<int>(std::lround((tau - lo) / h() - 0.5));
    return std::clamp(i, 0, m - 1);
}

OracleGrid make_oracle_grid(const CoherentInput& input, double pad, int m) {
    if (m < 2) throw ValidationError("oracle grid: need at least 2 cells");
    return {input.support_lo() - pad, input.support_hi() + pad, m};
}

size_t multiset_count(int m_cells, int n_photons) {
    return binom(static_cast<size_t>(m_cells + n_photons - 1),
                 static_cast<size_t>(n_photons));
}

size_t multiset_rank(std::span<const int> sorted_cells) {
    // combinatorial number system on d_i = c_i + i (strictly increasing)
    size_t r = 0;
    for (size_t i = 0; i < sorted_cells.size(); ++i)
        r += binom(static_cast<size_t>(sorted_cells[i]) + i, i + 1);
    return r;
}

void multiset_unrank(size_t rank, int n_photons, int m_cells, std::vector<int>& out) {
    out.assign(n_photons, 0);
    for (int i = n_photons - 1; i >= 0; --i) {
        // largest d with C(d, i+1) <= rank
        size_t d = static_cast<size_t>(i);
        size_t c = 0;  // C(d, i+1) at current d
        for (size_t dd = d + 1; dd < static_cast<size_t>(m_cells + n_photons); ++dd) {
            const size_t cc = binom(dd, static_cast<size_t>(i) + 1);
            if (cc <= rank) {
                d = dd;
                c = cc;
            } else {
                break;
            }
        }
        rank -= c;
        out[static_cast<size_t>(i)] = static_cast<int>(d) - i;
    }
}

double GridState::tail_weight() const { return poisson_tail(nbar_, n_trunc_); }

double GridState::norm() const {
    double term = std::exp(-nbar_);
    double s = 0.0;
    for (int k = 0; k <= n_trunc_; ++k) {
        s += term;
        term *= nbar_ / (k + 1);
    }
    return std::sqrt(s);
}

double GridState::config_phase(std::span<const int> cells) const {
    if (!phase_applied_) return 0.0;
    double phase = 0.0;
    const size_t k = cells.size();
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
            phase += kernel_->phi(grid_.node(cells[i]) - grid_.node(cells[j]));
    if (kernel3_ && !kernel3_->is_zero()) {
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j)
                for (size_t l = j + 1; l < k; ++l)
                    phase += kernel3_->phi3_particles(grid_.node(cells[i]),
                                                      grid_.node(cells[j]),
                                                      grid_.node(cells[l]));
    }
    return phase;
}

cdouble GridState::amplitude(std::span<const int> cells) const {
    if (static_cast<int>(cells.size()) > n_trunc_) return {0.0, 0.0};
    if (materialized()) {
        const auto& sec = sectors_[cells.size()];
        return sec[multiset_rank(cells)];
    }
    cdouble amp = std::exp(-0.5 * nbar_);
    int run = 0;
    for (size_t i = 0; i < cells.size(); ++i) {
        run = (i > 0 && cells[i] == cells[i - 1]) ? run + 1 : 0;
        amp *= alpha_[cells[i]] / std::sqrt(static_cast<double>(run + 1));
    }
    return amp * std::exp(cdouble(0.0, -config_phase(cells)));
}

std::span<const cdouble> GridState::sector(int n_photons) const {
    if (!materialized()) throw ValidationError("GridState: not materialized");
    return sectors_[n_photons];
}

void GridState::materialize(size_t max_amplitudes) {
    if (materialized()) return;
    const int m = grid_.m;
    size_t total = 0;
    for (int k = 0; k <= n_trunc_; ++k) total += multiset_count(m, k);
    if (total > max_amplitudes) {
        std::ostringstream os;
        os << "GridState::materialize: " << total
           << " amplitudes exceed the cap; use the implicit representation";
        throw ValidationError(os.str());
    }
    sectors_.assign(n_trunc_ + 1, {});
    for (int k = 0; k <= n_trunc_; ++k)
        sectors_[k].assign(multiset_count(m, k), cdouble(0.0, 0.0));

    std::vector<int> cells;
    cells.reserve(n_trunc_);
    // enumerate all sorted tuples, computing each amplitude literally
    auto rec = [&](auto&& self, int min_cell, cdouble amp, int run) -> void {
        const int k = static_cast<int>(cells.size());
        sectors_[k][multiset_rank(cells)] =
            amp * std::exp(cdouble(0.0, -config_phase(cells)));
        if (k == n_trunc_) return;
        for (int c = min_cell; c < m; ++c) {
            const int next_run = (!cells.empty() && cells.back() == c) ? run + 1 : 0;
            cells.push_back(c);
            self(self, c, amp * alpha_[c] / std::sqrt(double(next_run + 1)), next_run);
            cells.pop_back();
        }
    };
    rec(rec, 0, std::exp(cdouble(-0.5 * nbar_, 0.0)), 0);
}

GridState prepare_coherent(const CoherentInput& input, const OracleGrid& grid,
                           int n_trunc, double tail_tol) {
    if (n_trunc < 0) throw ValidationError("prepare_coherent: n_trunc must be >= 0");
    GridState st;
    st.grid_ = grid;
    st.n_trunc_ = n_trunc;
    st.alpha_.resize(grid.m);
    const double sqrt_h = std::sqrt(grid.h());
    double nbar = 0.0;
    for (int i = 0; i < grid.m; ++i) {
        st.alpha_[i] = input.envelope(grid.node(i)) * sqrt_h;
        nbar += std::norm(st.alpha_[i]);
    }
    st.nbar_ = nbar;
    const double tail = st.tail_weight();
    if (tail > tail_tol) {
        std::ostringstream os;
        os << "prepare_coherent: dropped Poisson tail " << tail << " exceeds "
           << tail_tol << " at n_trunc = " << n_trunc << " (nbar = " << nbar << ")";
        throw ValidationError(os.str());
    }
    return st;
}

GridState apply_phase_map(const GridState& state, const PhaseKernel& kernel,
                          const ThreeBodyKernel* kernel3) {
    if (state.phase_applied_)
        throw ValidationError("apply_phase_map: phase map already applied");
    GridState out = state;
    out.sectors_.clear();
    out.phase_applied_ = true;
    out.kernel_ = kernel;
    if (kernel3) out.kernel3_ = *kernel3;
    if (state.materialized()) out.materialize();
    return out;
}

namespace {

struct LazySum {
    const GridState* st;
    const OracleGrid* grid;
    int k_max;
    std::vector<cdouble> x;        // |alpha_c|^2 e^{i d_c}
    bool with_triples = false;
    const ThreeBodyKernel* k3 = nullptr;
    std::vector<double> bra_tau, ket_tau;

    // incremental three-body phase acquired when cell c joins a path:
    // pairs within bra/ket and path-particle cross terms
    double triple_delta(const std::vector<int>& path, int c) const {
        const double tc = grid->node(c);
        double d = 0.0;
        for (size_t a = 0; a < bra_tau.size(); ++a)
            for (size_t b = a + 1; b < bra_tau.size(); ++b)
                d += k3->phi3_particles(bra_tau[a], bra_tau[b], tc);
        for (size_t a = 0; a < ket_tau.size(); ++a)
            for (size_t b = a + 1; b < ket_tau.size(); ++b)
                d -= k3->phi3_particles(ket_tau[a], ket_tau[b], tc);
        for (int p : path) {
            const double tp = grid->node(p);
            for (double ta : bra_tau) d += k3->phi3_particles(ta, tp, tc);
            for (double tb : ket_tau) d -= k3->phi3_particles(tb, tp, tc);
        }
        return d;
    }

    // explicit sum over occupation configurations (sorted tuples), the
    // surviving weight after applying the annihilation chains
    cdouble run() const {
        const int m = grid->m;
        if (k_max < 0) return {0.0, 0.0};
        cdouble total(1.0, 0.0);  // empty configuration
        if (k_max == 0) return total;

        std::vector<cdouble> per_root(m, cdouble(0.0, 0.0));
        std::vector<int> path;  // only used by the triple-phase variant

        if (!with_triples) {
            parallel_for(static_cast<size_t>(m), [&](size_t root) {
                cdouble acc(0.0, 0.0);
                auto rec = [&](auto&& self, int cell, int run, cdouble w,
                               int left) -> void {
                    acc += w;
                    if (left == 0) return;
                    self(self, cell, run + 1, w * x[cell] / double(run + 1), left - 1);
                    for (int c2 = cell + 1; c2 < m; ++c2)
                        self(self, c2, 1, w * x[c2], left - 1);
                };
                rec(rec, static_cast<int>(root), 1, x[root], k_max - 1);
                per_root[root] = acc;
            });
        } else {
            for (int root = 0; root < m; ++root) {
                cdouble acc(0.0, 0.0);
                std::vector<int> p;
                auto rec = [&](auto&& self, int cell, int run, cdouble w,
                               int left) -> void {
                    acc += w;
                    if (left == 0) return;
                    {
                        const double d3 = triple_delta(p, cell);
                        p.push_back(cell);
                        self(self, cell, run + 1,
                             w * x[cell] * std::exp(cdouble(0.0, d3)) / double(run + 1),
                             left - 1);
                        p.pop_back();
                    }
                    for (int c2 = cell + 1; c2 < m; ++c2) {
                        const double d3 = triple_delta(p, c2);
                        p.push_back(c2);
                        self(self, c2, 1, w * x[c2] * std::exp(cdouble(0.0, d3)),
                             left - 1);
                        p.pop_back();
                    }
                };
                const double d3 = triple_delta(p, root);
                p.push_back(root);
                rec(rec, root, 1, x[root] * std::exp(cdouble(0.0, d3)), k_max - 1);
                p.pop_back();
                per_root[root] = acc;
            }
        }
        for (int c = 0; c < m; ++c) total += per_root[c];
        return total;
    }
};

// dense literal path: apply annihilation chains to both sides, then take the
// sector-by-sector inner product
std::vector<std::vector<cdouble>> annihilate_chain(const GridState& st,
                                                   std::span<const int> cells) {
    const int m = st.grid().m;
    const int n0 = st.n_trunc();
    if (static_cast<int>(cells.size()) > n0) return {};  // annihilates to zero
    std::vector<std::vector<cdouble>> cur;
    cur.reserve(n0 + 1);
    for (int k = 0; k <= n0; ++k) {
        auto s = st.sector(k);
        cur.emplace_back(s.begin(), s.end());
    }
    std::vector<int> cfg;
    for (int step = 0; step < static_cast<int>(cells.size()); ++step) {
        const int cell = cells[step];
        const int top = n0 - step;
        std::vector<std::vector<cdouble>> next(top);
        for (int k = 0; k < top; ++k) {
            next[k].assign(multiset_count(m, k), cdouble(0.0, 0.0));
            for (size_t r = 0; r < next[k].size(); ++r) {
                multiset_unrank(r, k, m, cfg);
                // a_cell |cfg + cell> contributes sqrt(mult+1) * amp
                std::vector<int> up(cfg);
                up.insert(std::upper_bound(up.begin(), up.end(), cell), cell);
                const int mult =
                    static_cast<int>(std::count(up.begin(), up.end(), cell));
                next[k][r] = std::sqrt(static_cast<double>(mult)) *
                             cur[k + 1][multiset_rank(up)];
            }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

cdouble measure_correlator(const GridState& state, int n, int m,
                           std::span<const double> points) {
    if (n < 0 || m < 0 || n + m < 1)
        throw ValidationError("measure_correlator: need n, m >= 0, n + m >= 1");
    if (points.size() != static_cast<size_t>(n + m))
        throw ValidationError("measure_correlator: points must hold n + m entries");
    std::vector<int> bra, ket;
    for (int i = 0; i < n; ++i) bra.push_back(state.grid().node_index(points[i]));
    for (int j = n; j < n + m; ++j) ket.push_back(state.grid().node_index(points[j]));
    const double h = state.grid().h();
    const double field_norm = std::pow(h, -0.5 * (n + m));

    if (state.materialized()) {
        auto av = annihilate_chain(state, bra);
        auto bv = annihilate_chain(state, ket);
        const int kmax = static_cast<int>(std::min(av.size(), bv.size())) - 1;
        cdouble total(0.0, 0.0);
        for (int k = 0; k <= kmax; ++k)
            for (size_t r = 0; r < av[k].size(); ++r)
                total += std::conj(av[k][r]) * bv[k][r];
        return total * field_norm;
    }

    // implicit path: prefactor from the removed particles, then an explicit
    // sum over the remaining configurations
    const bool phased = state.phase_applied();
    const auto& kernel = state.kernel_;
    const bool triples = phased && state.kernel3_ && !state.kernel3_->is_zero();

    cdouble pref = std::exp(cdouble(-state.nbar(), 0.0));
    for (int c : bra) pref *= std::conj(state.alphas()[c]);
    for (int c : ket) pref *= state.alphas()[c];
    if (pref == cdouble(0.0, 0.0)) return pref;

    auto node = [&](int c) { return state.grid().node(c); };
    double pair_phase = 0.0;
    if (phased) {
        for (size_t i = 0; i < bra.size(); ++i)
            for (size_t j = i + 1; j < bra.size(); ++j)
                pair_phase += kernel->phi(node(bra[i]) - node(bra[j]));
        for (size_t i = 0; i < ket.size(); ++i)
            for (size_t j = i + 1; j < ket.size(); ++j)
                pair_phase -= kernel->phi(node(ket[i]) - node(ket[j]));
        if (triples) {
            auto t3 = [&](const std::vector<int>& cs) {
                double p = 0.0;
                for (size_t i = 0; i < cs.size(); ++i)
                    for (size_t j = i + 1; j < cs.size(); ++j)
                        for (size_t l = j + 1; l < cs.size(); ++l)
                            p += state.kernel3_->phi3_particles(
                                node(cs[i]), node(cs[j]), node(cs[l]));
                return p;
            };
            pair_phase += t3(bra) - t3(ket);
        }
    }

    LazySum sum;
    sum.st = &state;
    sum.grid = &state.grid();
    sum.k_max = state.n_trunc() - static_cast<int>(std::max(bra.size(), ket.size()));
    sum.with_triples = triples;
    sum.k3 = triples ? &*state.kernel3_ : nullptr;
    for (int c : bra) sum.bra_tau.push_back(node(c));
    for (int c : ket) sum.ket_tau.push_back(node(c));
    sum.x.resize(state.grid().m);
    for (int c = 0; c < state.grid().m; ++c) {
        double d = 0.0;
        if (phased) {
            for (int a : bra) d += kernel->phi(node(a) - node(c));
            for (int b : ket) d -= kernel->phi(node(b) - node(c));
        }
        sum.x[c] = std::norm(state.alphas()[c]) * std::exp(cdouble(0.0, d));
    }

    return pref * std::exp(cdouble(0.0, pair_phase)) * sum.run() * field_norm;
}

}  // namespace rydkerr
