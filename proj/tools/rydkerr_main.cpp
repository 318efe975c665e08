#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rydkerr/errors.hpp"
#include "rydkerr/parallel.hpp"
#include "rydkerr/scenario.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string scenario_name;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "scenario config file");
    cmd->add_option("--scenario", args.scenario_name,
                    "built-in scenario (fig2-left, fig2-right, fig3, verify)");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--set", args.overrides,
                    "override a config entry, dotted path: a.b=value");
    cmd->add_option("--threads", args.threads, "worker thread cap");
}

rydkerr::Scenario make_scenario(const CommonArgs& args) {
    rydkerr::Config cfg;
    if (!args.config_path.empty()) {
        cfg = rydkerr::Config::load(args.config_path);
    } else if (!args.scenario_name.empty()) {
        const std::string text = rydkerr::builtin_scenario_text(args.scenario_name);
        if (text.empty())
            throw rydkerr::ValidationError("unknown built-in scenario: " +
                                           args.scenario_name);
        cfg = rydkerr::Config::parse(text, args.scenario_name);
    } else {
        throw rydkerr::ValidationError("pass --config FILE or --scenario NAME");
    }
    for (const auto& o : args.overrides) cfg.apply_override(o);
    if (args.threads > 0) rydkerr::set_thread_budget(args.threads);
    return rydkerr::build_scenario(cfg);
}

void report_files(const rydkerr::RunResult& r) {
    for (const auto& f : r.files) std::cout << "wrote " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "rydkerr: phase kernels, propagation maps, correlators, Wigner "
        "reconstruction, and dispersion-curvature bounds for slow-light "
        "polaritons with a finite-range interaction"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        rydkerr::RunResult (*fn)(const rydkerr::Scenario&, const std::string&);
    };
    const Sub subs[] = {
        {"kernel", "tabulate the pair phase kernel (and optional phi3)",
         rydkerr::run_kernel},
        {"kerr-scan", "scan Phi / eta / sigma against the peak phase",
         rydkerr::run_kerr_scan},
        {"field-out", "outgoing mean field for a coherent input",
         rydkerr::run_field_out},
        {"correlators", "batch normally ordered correlators",
         rydkerr::run_correlators},
        {"wigner", "probe-mode moments and Wigner reconstruction",
         rydkerr::run_wigner},
        {"mass-validity", "dispersion-curvature validity-region scan",
         rydkerr::run_mass_validity},
        {"verify", "compare closed forms against the brute-force simulator",
         rydkerr::run_verify},
    };

    CommonArgs args;
    std::vector<std::pair<CLI::App*, const Sub*>> bound;
    for (const auto& sub : subs) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        add_common(cmd, args);
        bound.emplace_back(cmd, &sub);
    }
    CLI::App* run_cmd =
        app.add_subcommand("run", "run every product a scenario requests");
    add_common(run_cmd, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const rydkerr::Scenario sc = make_scenario(args);
        if (run_cmd->parsed()) {
            report_files(rydkerr::run_scenario(sc, args.out_dir));
            return 0;
        }
        for (const auto& [cmd, sub] : bound) {
            if (cmd->parsed()) {
                report_files(sub->fn(sc, args.out_dir));
                return 0;
            }
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const rydkerr::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const rydkerr::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
