#include "rydkerr/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rydkerr/csv.hpp"
#include "rydkerr/errors.hpp"
#include "rydkerr/parallel.hpp"

namespace rydkerr {

namespace {

using nlohmann::json;

const char* kFig2Left = R"(name = "fig2-left"
outputs = ["kernel"]

[params]
omega = 1.0
delta = 100.0
gamma = 0.1
g0 = 1.0
c6 = -0.02
c = 1.0

[medium]
type = "slab"
density = 1.0
length = 50.0

[kernel]
l_over_xi = [2, 10, 50]
samples = 481
)";

const char* kFig2Right = R"(name = "fig2-right"
outputs = ["kerr-scan"]

[params]
omega = 1.0
delta = 100.0
gamma = 0.1
g0 = 1.0
c6 = -0.02
c = 1.0

[medium]
type = "slab"
density = 1.0
length = 50.0

[kerr_scan]
log_min = 1e-3
log_max = 1e-2
log_count = 13
lin_min = 0.05
lin_max = 9.42477796076938
lin_count = 60
)";

const char* kFig3 = R"(name = "fig3"
outputs = ["wigner"]

[params]
omega = 1.0
delta = -200.0
gamma = 0.1
g0 = 1.0
c6 = 10000.0
c = 1.0

[medium]
type = "slab"
density = 1.0
length = 500.0

[input]
type = "gaussian"
amplitude = 1.0
center = 0.0
width = 100.0

[probe]
center = 0.0
width = 1.0
photon_target = 1.0

[wigner]
phi0 = [0.04908738521234052, 3.141592653589793]
n_max = 26
grid = 101
)";

const char* kVerify = R"(name = "verify"
outputs = ["verify"]

[params]
omega = 1.0
delta = -250.0
gamma = 0.1
g0 = 1.0
c6 = 128.0
c = 1.0

[medium]
type = "slab"
density = 1.0
length = 40.0

[input]
type = "gaussian"
amplitude = 0.21
center = 0.0
width = 2.0
support_sigmas = 4.5

[verify]
m_cells = [32, 64, 128]
n_trunc = 6
tolerance = 1e-3
)";

std::filesystem::path prepare_dir(const std::string& out_dir) {
    std::filesystem::path p(out_dir);
    std::filesystem::create_directories(p);
    return p;
}

void write_header(csv::Writer& w, const Scenario& sc, const std::string& product) {
    w.comment("rydkerr " + product);
    w.comment("scenario: " + sc.name);
    w.comment("resolved configuration:");
    std::istringstream dump(sc.config.dump());
    std::string line;
    while (std::getline(dump, line)) w.comment("  " + line);
    std::ostringstream tol;
    tol << "tolerances: kernel.table_tol_rel=" << sc.kernel_opts.table_tol_rel
        << " quad.abs_tol=" << sc.quad.abs_tol << " quad.rel_tol=" << sc.quad.rel_tol;
    w.comment(tol.str());
}

std::string trim_num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

MediumProfile medium_from_config(const Config& cfg) {
    const std::string type = cfg.get_string("medium.type", "slab");
    if (type == "slab")
        return MediumProfile::slab(cfg.get_double("medium.density"),
                                   cfg.get_double("medium.length"));
    if (type == "gaussian")
        return MediumProfile::gaussian(cfg.get_double("medium.density"),
                                       cfg.get_double("medium.width"),
                                       cfg.get_double("medium.cutoff_sigmas", 8.0));
    if (type == "tabulated")
        return MediumProfile::tabulated_from_csv(cfg.get_string("medium.csv"));
    throw ValidationError("medium.type: unknown type '" + type +
                          "' (slab | gaussian | tabulated)");
}

CoherentInput input_from_config(const Config& cfg) {
    const std::string type = cfg.get_string("input.type", "gaussian");
    if (type == "gaussian") {
        const double amp = cfg.get_double("input.amplitude");
        const double amp_im = cfg.get_double("input.amplitude_imag", 0.0);
        return CoherentInput::gaussian(cdouble(amp, amp_im),
                                       cfg.get_double("input.center", 0.0),
                                       cfg.get_double("input.width"),
                                       cfg.get_double("input.support_sigmas", 10.0));
    }
    if (type == "flat")
        return CoherentInput::flat(cfg.get_double("input.density"),
                                   cfg.get_double("input.x0"),
                                   cfg.get_double("input.x1"));
    throw ValidationError("input.type: unknown type '" + type + "' (gaussian | flat)");
}

struct KernelBundle {
    PolaritonParams params;
    MediumProfile medium;
    DerivedQuantities derived;
    CoordinateMap map;
    PhaseKernel kernel;
};

KernelBundle make_kernel(const Scenario& sc, const PolaritonParams& params,
                         const MediumProfile& medium) {
    CoordinateMap map = build_map(params, medium);
    const auto pot = TwoBodyPotential::from_params(params);
    PhaseKernel kernel = build_phase_kernel(params, medium, pot, map, sc.kernel_opts);
    return {params, medium, derive(params, medium), map, kernel};
}

/// Rescales the envelope so the probe-mode photon number |int u E|^2 hits
/// the configured target (used by the reconstruction scenarios).
CoherentInput apply_photon_target(const Scenario& sc, const CoherentInput& input) {
    if (!sc.probe || !sc.config.has("probe.photon_target")) return input;
    const double target = sc.config.get_double("probe.photon_target");
    const cdouble c = integrate_complex_or_throw(
        [&](double x) { return sc.probe->u(x) * input.envelope(x); },
        sc.probe->support_lo(), sc.probe->support_hi(), {1e-13, 1e-10, 4000}, {},
        "probe overlap");
    if (std::abs(c) == 0.0)
        throw ValidationError("probe.photon_target: probe and input do not overlap");
    return input.scaled(std::sqrt(target) / std::abs(c));
}

}  // namespace

std::string builtin_scenario_text(const std::string& name) {
    if (name == "fig2-left") return kFig2Left;
    if (name == "fig2-right") return kFig2Right;
    if (name == "fig3") return kFig3;
    if (name == "verify") return kVerify;
    return "";
}

std::vector<std::string> builtin_scenario_names() {
    return {"fig2-left", "fig2-right", "fig3", "verify"};
}

Scenario build_scenario(const Config& cfg) {
    Scenario sc;
    sc.config = cfg;
    sc.name = cfg.get_string("name", "scenario");
    sc.params.omega = cfg.get_double("params.omega");
    sc.params.delta = cfg.get_double("params.delta");
    sc.params.gamma = cfg.get_double("params.gamma");
    sc.params.g0 = cfg.get_double("params.g0");
    sc.params.c6 = cfg.get_double("params.c6");
    sc.params.c = cfg.get_double("params.c", 1.0);
    sc.params.validate();
    sc.medium = medium_from_config(cfg);
    if (cfg.has("input.type") || cfg.has("input.amplitude") || cfg.has("input.density"))
        sc.input = input_from_config(cfg);
    if (cfg.has("probe.width"))
        sc.probe = ProbeMode::gaussian(cfg.get_double("probe.center", 0.0),
                                       cfg.get_double("probe.width"),
                                       cfg.get_double("probe.support_sigmas", 10.0));
    if (cfg.has("outputs")) sc.outputs = cfg.get_strings("outputs");

    sc.kernel_opts.table_tol_rel = cfg.get_double("kernel.table_tol_rel", 1e-7);
    sc.kernel_opts.extent_pad_xiout = cfg.get_double("kernel.extent_pad_xiout", 10.0);
    sc.quad.abs_tol = cfg.get_double("quadrature.abs_tol", 1e-13);
    sc.quad.rel_tol = cfg.get_double("quadrature.rel_tol", 1e-10);
    sc.quad.max_intervals = cfg.get_int("quadrature.max_intervals", 4000);
    return sc;
}

PolaritonParams retune_for_peak_phase(const PolaritonParams& base,
                                      const MediumProfile& medium, double phi0_target) {
    if (!medium.is_slab())
        throw ValidationError("retune_for_peak_phase: needs a slab medium");
    if (phi0_target == 0.0)
        throw ValidationError("retune_for_peak_phase: phi0 target must be nonzero");
    const DerivedQuantities d = derive(base, medium);
    const double om2 = base.omega * base.omega;
    const double g2 = d.g * d.g;
    PolaritonParams out = base;
    out.delta = -2.0 * g2 * g2 * d.support_length /
                (phi0_target * (g2 + om2) * base.c);
    const double xi6 = std::pow(d.xi, 6);
    out.c6 = (out.delta > 0 ? -1.0 : 1.0) * 2.0 * om2 * xi6 / std::abs(out.delta);
    out.validate();
    return out;
}

RunResult run_kernel(const Scenario& sc, const std::string& out_dir) {
    auto dir = prepare_dir(out_dir);
    RunResult res;
    const int samples = sc.config.get_int("kernel.samples", 481);

    std::vector<std::pair<std::string, KernelBundle>> bundles;
    if (sc.config.has("kernel.l_over_xi")) {
        if (!sc.medium.is_slab())
            throw ValidationError("kernel.l_over_xi sweep requires a slab medium");
        const DerivedQuantities base = derive(sc.params, sc.medium);
        for (double lx : sc.config.get_doubles("kernel.l_over_xi")) {
            auto med = MediumProfile::slab(sc.medium.slab_density(), lx * base.xi);
            bundles.emplace_back("kernel_L" + trim_num(lx),
                                 make_kernel(sc, sc.params, med));
        }
    } else {
        bundles.emplace_back("kernel", make_kernel(sc, sc.params, sc.medium));
    }

    for (auto& [stem, b] : bundles) {
        const auto path = (dir / (stem + ".csv")).string();
        csv::Writer w(path);
        write_header(w, sc, "phase kernel table (u, phi)");
        w.comment("phi0 = " + csv::format_double(b.kernel.phi0()));
        w.comment("xi_out = " + csv::format_double(b.kernel.xi_out()));
        w.comment("interp_residual = " + csv::format_double(b.kernel.interp_error()));
        w.columns({"u", "phi", "phi_over_phi0", "universal_ref"});
        const double span = 3.0 * b.kernel.xi_out();
        for (int i = 0; i < samples; ++i) {
            const double u = -span + 2.0 * span * i / (samples - 1.0);
            const double phi = b.kernel.phi(u);
            const double x = u / b.kernel.xi_out();
            const double x6 = std::pow(x, 6);
            w.row({u, phi, b.kernel.phi0() != 0 ? phi / b.kernel.phi0() : 0.0,
                   1.0 / (1.0 + x6)});
        }
        res.files.push_back(path);
    }

    if (bundles.size() == 1 && sc.config.has("phi3.amplitude")) {
        // optional three-body kernel export
        const auto& b = bundles.front().second;
        auto u3 = make_constant_u3(sc.config.get_double("phi3.amplitude"),
                                   sc.config.get_double("phi3.box_halfwidth"));
        auto k3 = build_phi3(sc.params, sc.medium, u3, b.map,
                             sc.config.get_int("phi3.grid", 65));
        const auto path = (dir / "kernel_phi3.csv").string();
        csv::Writer w(path);
        write_header(w, sc, "three-body kernel table (u, v, phi3)");
        w.columns({"u", "v", "phi3"});
        for (size_t i = 0; i < k3.axis().size(); ++i)
            for (size_t j = 0; j < k3.axis().size(); ++j)
                w.row({k3.axis()[i], k3.axis()[j], k3.table_at(i, j)});
        res.files.push_back(path);
    }
    return res;
}

RunResult run_kerr_scan(const Scenario& sc, const std::string& out_dir) {
    auto dir = prepare_dir(out_dir);
    if (!sc.medium.is_slab())
        throw ValidationError("kerr-scan requires a slab medium");

    std::vector<double> phi0s;
    if (sc.config.has("kerr_scan.phi0")) {
        phi0s = sc.config.get_doubles("kerr_scan.phi0");
    } else {
        const double lmin = sc.config.get_double("kerr_scan.log_min", 1e-3);
        const double lmax = sc.config.get_double("kerr_scan.log_max", 1e-2);
        const int lcount = sc.config.get_int("kerr_scan.log_count", 13);
        for (int i = 0; i < lcount; ++i)
            phi0s.push_back(lmin *
                            std::pow(lmax / lmin, i / std::max(1.0, lcount - 1.0)));
        const double amin = sc.config.get_double("kerr_scan.lin_min", 0.05);
        const double amax = sc.config.get_double("kerr_scan.lin_max", 3.0 * M_PI);
        const int acount = sc.config.get_int("kerr_scan.lin_count", 60);
        for (int i = 0; i < acount; ++i)
            phi0s.push_back(amin + (amax - amin) * i / std::max(1.0, acount - 1.0));
    }

    const auto path = (dir / "kerr_scan.csv").string();
    csv::Writer w(path);
    write_header(w, sc, "Kerr scan (phi0, Phi, eta, sigma)");
    w.columns({"phi0_target", "phi0", "Phi", "eta", "sigma", "sigma_long_slab"});
    RunResult res;
    for (double target : phi0s) {
        const auto params = retune_for_peak_phase(sc.params, sc.medium, target);
        auto b = make_kernel(sc, params, sc.medium);
        const auto ks = kerr_summary(b.kernel, b.derived.xi_out);
        w.row({target, b.kernel.phi0(), ks.Phi, ks.eta, ks.sigma, ks.sigma_long_slab});
    }
    res.files.push_back(path);
    return res;
}

RunResult run_field_out(const Scenario& sc, const std::string& out_dir) {
    auto dir = prepare_dir(out_dir);
    if (!sc.input) throw ValidationError("field-out requires an [input] section");
    auto b = make_kernel(sc, sc.params, sc.medium);
    const CoherentInput input = apply_photon_target(sc, *sc.input);

    const double lo = sc.config.get_double("field_out.tau_min", input.support_lo());
    const double hi = sc.config.get_double("field_out.tau_max", input.support_hi());
    const int samples = sc.config.get_int("field_out.samples", 401);

    const auto path = (dir / "field_out.csv").string();
    csv::Writer w(path);
    write_header(w, sc, "outgoing mean field (reduced coordinates)");
    w.columns({"tau", "re_E_in", "im_E_in", "re_E_out", "im_E_out", "suppression"});
    std::vector<std::array<double, 6>> rows(samples);
    parallel_for(static_cast<size_t>(samples), [&](size_t i) {
        const double tau = lo + (hi - lo) * static_cast<double>(i) / (samples - 1.0);
        const cdouble ein = input.envelope(tau);
        const cdouble eout = coherent_out(input, b.kernel, tau, sc.quad);
        const double sup = std::abs(ein) > 0 ? std::abs(eout) / std::abs(ein) : 1.0;
        rows[i] = {tau, ein.real(), ein.imag(), eout.real(), eout.imag(), sup};
    });
    for (const auto& r : rows) w.row({r[0], r[1], r[2], r[3], r[4], r[5]});
    RunResult res;
    res.files.push_back(path);
    return res;
}

RunResult run_correlators(const Scenario& sc, const std::string& out_dir) {
    auto dir = prepare_dir(out_dir);
    if (!sc.input) throw ValidationError("correlators requires an [input] section");
    if (!sc.config.has("correlators.requests"))
        throw ValidationError("correlators.requests: missing list of \"n m tau...\"");

    std::vector<CorrelatorRequest> reqs;
    for (const auto& spec : sc.config.get_strings("correlators.requests")) {
        std::istringstream is(spec);
        CorrelatorRequest r;
        if (!(is >> r.n >> r.m))
            throw ValidationError("correlators.requests: bad entry '" + spec + "'");
        double t;
        while (is >> t) r.points.push_back(t);
        if (r.points.size() != static_cast<size_t>(r.n + r.m))
            throw ValidationError("correlators.requests: '" + spec + "' needs n+m taus");
        reqs.push_back(std::move(r));
    }

    auto b = make_kernel(sc, sc.params, sc.medium);
    const CoherentInput input = apply_photon_target(sc, *sc.input);
    auto results = correlator_batch(input, b.kernel, reqs, sc.quad);

    size_t max_pts = 0;
    for (const auto& r : reqs) max_pts = std::max(max_pts, r.points.size());
    const auto path = (dir / "correlators.csv").string();
    csv::Writer w(path);
    write_header(w, sc, "normally ordered correlators G_{n,m}");
    std::vector<std::string> cols = {"n", "m"};
    for (size_t i = 0; i < max_pts; ++i) cols.push_back("tau" + std::to_string(i + 1));
    cols.insert(cols.end(), {"re_G", "im_G", "quad_error"});
    w.columns(cols);
    for (size_t i = 0; i < reqs.size(); ++i) {
        std::vector<std::string> row = {std::to_string(reqs[i].n),
                                        std::to_string(reqs[i].m)};
        for (size_t j = 0; j < max_pts; ++j)
            row.push_back(j < reqs[i].points.size()
                              ? csv::format_double(reqs[i].points[j])
                              : "");
        row.push_back(csv::format_double(results[i].value.real()));
        row.push_back(csv::format_double(results[i].value.imag()));
        row.push_back(csv::format_double(results[i].quad_error));
        w.raw_row(row);
    }
    RunResult res;
    res.files.push_back(path);
    return res;
}

RunResult run_wigner(const Scenario& sc, const std::string& out_dir) {
    auto dir = prepare_dir(out_dir);
    if (!sc.input) throw ValidationError("wigner requires an [input] section");
    if (!sc.probe) throw ValidationError("wigner requires a [probe] section");

    std::vector<double> phi0s;
    if (sc.config.has("wigner.phi0")) phi0s = sc.config.get_doubles("wigner.phi0");

    const int n_max = sc.config.get_int("wigner.n_max", 26);
    WignerGridSpec spec;
    spec.nq = spec.np = sc.config.get_int("wigner.grid", 101);
    spec.target_residual = sc.config.get_double("wigner.target_residual", 1e-6);
    spec.n_cap = sc.config.get_int("wigner.n_cap", 40);
    const std::string method_name = sc.config.get_string("wigner.method", "narrow");
    const MomentMethod method = method_name == "exact" ? MomentMethod::ExactQuadrature
                                                       : MomentMethod::NarrowProbe;

    RunResult res;
    auto run_one = [&](const PolaritonParams& params, const std::string& stem) {
        auto b = make_kernel(sc, params, sc.medium);
        const CoherentInput input = apply_photon_target(sc, *sc.input);
        auto moments = mode_moments(input, b.kernel, *sc.probe, n_max, method);
        auto grid = wigner(moments, spec);

        const auto path = (dir / (stem + ".csv")).string();
        csv::Writer w(path);
        write_header(w, sc, "Wigner function samples (q, p, W)");
        w.comment("phi0 = " + csv::format_double(b.kernel.phi0()));
        w.columns({"q", "p", "W"});
        for (size_t i = 0; i < grid.q_axis.size(); ++i)
            for (size_t j = 0; j < grid.p_axis.size(); ++j)
                w.row({grid.q_axis[i], grid.p_axis[j], grid.at(i, j)});
        res.files.push_back(path);

        const auto cov = covariance(grid);
        json diag;
        diag["phi0"] = b.kernel.phi0();
        diag["truncation_order"] = grid.truncation_order;
        diag["series_residual"] = grid.series_residual;
        diag["max_imag_residual"] = grid.max_imag_residual;
        diag["converged"] = grid.converged;
        diag["normalization"] = grid.integral();
        diag["purity"] = purity(grid);
        diag["moment_tail_estimate"] = moments.tail_estimate();
        diag["covariance"] = {{"mean_q", cov.mean_q},       {"mean_p", cov.mean_p},
                              {"var_q", cov.var_q},         {"var_p", cov.var_p},
                              {"cov_qp", cov.cov_qp},       {"lambda_min", cov.lambda_min},
                              {"lambda_max", cov.lambda_max}, {"axis_ratio", cov.axis_ratio}};
        const auto jpath = (dir / (stem + ".json")).string();
        std::ofstream jf(jpath);
        jf << diag.dump(2) << "\n";
        res.files.push_back(jpath);
    };

    if (phi0s.empty()) {
        run_one(sc.params, "wigner");
    } else {
        for (double p0 : phi0s)
            run_one(retune_for_peak_phase(sc.params, sc.medium, p0),
                    "wigner_phi0_" + trim_num(p0));
    }
    return res;
}

RunResult run_mass_validity(const Scenario& sc, const std::string& out_dir) {
    auto dir = prepare_dir(out_dir);
    const double phi0 = sc.config.get_double("mass_validity.phi0", 0.5);
    const double threshold = sc.config.get_double("mass_validity.threshold", 0.1);

    auto axis = [&](const std::string& key, double lo, double hi, int count) {
        if (sc.config.has("mass_validity." + key))
            return sc.config.get_doubles("mass_validity." + key);
        std::vector<double> v(count);
        for (int i = 0; i < count; ++i)
            v[i] = lo * std::pow(hi / lo, i / (count - 1.0));
        return v;
    };
    const auto gs = axis("g_over_omega", 0.05, 2.0, 33);
    const auto ls = axis("l_over_xi", 5.0, 200.0, 33);

    const auto scan = mass_validity_scan(phi0, gs, ls, threshold);
    const auto path = (dir / "mass_validity.csv").string();
    csv::Writer w(path);
    write_header(w, sc, "mass-term validity scan at fixed phi0");
    w.comment("phi0 = " + csv::format_double(phi0) +
              ", threshold = " + csv::format_double(threshold));
    w.columns({"g_over_omega", "l_over_xi", "abs_theta_m", "ratio", "valid"});
    for (const auto& p : scan)
        w.row({p.g_over_omega, p.l_over_xi, p.abs_theta, p.ratio, p.valid ? 1.0 : 0.0});
    RunResult res;
    res.files.push_back(path);
    return res;
}

RunResult run_verify(const Scenario& sc, const std::string& out_dir) {
    auto dir = prepare_dir(out_dir);
    if (!sc.input) throw ValidationError("verify requires an [input] section");

    auto b = make_kernel(sc, sc.params, sc.medium);
    const CoherentInput input = apply_photon_target(sc, *sc.input);
    std::vector<double> cells_d = sc.config.has("verify.m_cells")
                                      ? sc.config.get_doubles("verify.m_cells")
                                      : std::vector<double>{32, 64, 128};
    const int n_trunc = sc.config.get_int("verify.n_trunc", 6);
    const double tol = sc.config.get_double("verify.tolerance", 1e-3);

    json report;
    report["scenario"] = sc.name;
    report["n_trunc"] = n_trunc;
    report["tolerance"] = tol;
    bool pass = true;
    double finest_err = 0.0;
    json runs = json::array();
    const double center =
        0.5 * (input.support_lo() + input.support_hi());
    for (double mc : cells_d) {
        const int m = static_cast<int>(mc);
        auto grid = make_oracle_grid(input, 5.0 * b.derived.xi_out, m);
        auto state = prepare_coherent(input, grid, n_trunc);
        auto mapped = apply_phase_map(state, b.kernel);

        json entry;
        entry["m_cells"] = m;
        double worst = 0.0;
        auto check = [&](int n, int mm, std::vector<double> pts, const char* label) {
            const cdouble oracle = measure_correlator(mapped, n, mm, pts);
            const cdouble closed =
                correlator(input, b.kernel, {n, mm, pts}, sc.quad).value;
            const double rel = std::abs(oracle - closed) /
                               std::max(1e-300, std::abs(closed));
            entry[label] = rel;
            worst = std::max(worst, rel);
        };
        auto snap = [&](double t) { return grid.node(grid.nearest_node_index(t)); };
        check(0, 1, {snap(center)}, "g01_rel_error");
        check(0, 2, {snap(center - input.l_coh()), snap(center + 0.5 * input.l_coh())},
              "g02_rel_error");
        entry["worst"] = worst;
        runs.push_back(entry);
        finest_err = worst;
    }
    pass = finest_err < tol;
    report["runs"] = runs;
    report["finest_rel_error"] = finest_err;
    report["pass"] = pass;

    const auto path = (dir / "verify.json").string();
    std::ofstream jf(path);
    jf << report.dump(2) << "\n";
    if (!pass)
        throw NumericalError("verify: oracle disagreement " +
                             std::to_string(finest_err) + " exceeds tolerance");
    RunResult res;
    res.files.push_back(path);
    return res;
}

RunResult run_scenario(const Scenario& sc, const std::string& out_dir) {
    if (sc.outputs.empty())
        throw ValidationError("outputs: scenario requests no products");
    auto dir = prepare_dir(out_dir);
    RunResult all;
    for (const auto& product : sc.outputs) {
        RunResult r;
        if (product == "kernel")
            r = run_kernel(sc, out_dir);
        else if (product == "kerr-scan")
            r = run_kerr_scan(sc, out_dir);
        else if (product == "field-out")
            r = run_field_out(sc, out_dir);
        else if (product == "correlators")
            r = run_correlators(sc, out_dir);
        else if (product == "wigner")
            r = run_wigner(sc, out_dir);
        else if (product == "mass-validity")
            r = run_mass_validity(sc, out_dir);
        else if (product == "verify")
            r = run_verify(sc, out_dir);
        else
            throw ValidationError("outputs: unknown product '" + product + "'");
        all.files.insert(all.files.end(), r.files.begin(), r.files.end());
    }

    json report;
    report["scenario"] = sc.name;
    report["config"] = sc.config.dump();
    std::vector<std::string> names;
    for (const auto& f : all.files)
        names.push_back(std::filesystem::path(f).filename().string());
    report["files"] = names;
    const auto rpath = (dir / "report.json").string();
    std::ofstream jf(rpath);
    jf << report.dump(2) << "\n";
    all.files.push_back(rpath);
    return all;
}

}  // namespace rydkerr
