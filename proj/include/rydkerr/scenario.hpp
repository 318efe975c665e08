#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rydkerr/config.hpp"
#include "rydkerr/homodyne.hpp"
#include "rydkerr/massterm.hpp"
#include "rydkerr/medium.hpp"
#include "rydkerr/oracle.hpp"
#include "rydkerr/phase.hpp"
#include "rydkerr/scattering.hpp"

namespace rydkerr {

/// A named computation: parameters, medium, optional input/probe, and the
/// list of requested products. Built from a config file (or a built-in
/// scenario) plus command-line overrides.
struct Scenario {
    std::string name;
    Config config;  // fully resolved (after overrides)
    PolaritonParams params{};
    MediumProfile medium = MediumProfile::slab(1.0, 1.0);
    std::optional<CoherentInput> input;
    std::optional<ProbeMode> probe;
    std::vector<std::string> outputs;
    PhaseKernelOptions kernel_opts;
    QuadOptions quad;
};

Scenario build_scenario(const Config& cfg);

/// Built-in scenario text by name ("fig2-left", "fig2-right", "fig3",
/// "verify"); empty when unknown.
std::string builtin_scenario_text(const std::string& name);
std::vector<std::string> builtin_scenario_names();

struct RunResult {
    std::vector<std::string> files;
};

RunResult run_kernel(const Scenario& sc, const std::string& out_dir);
RunResult run_kerr_scan(const Scenario& sc, const std::string& out_dir);
RunResult run_field_out(const Scenario& sc, const std::string& out_dir);
RunResult run_correlators(const Scenario& sc, const std::string& out_dir);
RunResult run_wigner(const Scenario& sc, const std::string& out_dir);
RunResult run_mass_validity(const Scenario& sc, const std::string& out_dir);
RunResult run_verify(const Scenario& sc, const std::string& out_dir);

/// Runs every product listed in scenario.outputs and writes report.json.
RunResult run_scenario(const Scenario& sc, const std::string& out_dir);

/// Retunes delta (and c6, preserving the blockade radius and the attractive
/// branch) so the slab peak phase equals phi0_target.
PolaritonParams retune_for_peak_phase(const PolaritonParams& base,
                                      const MediumProfile& medium, double phi0_target);

}  // namespace rydkerr
