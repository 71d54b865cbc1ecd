// Command-line front end: duffing_cli <verify|orbits|simulate|linear|sweep|phase> --config FILE

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "duffing/commands.hpp"
#include "duffing/config.hpp"

int main(int argc, char** argv) {
    using namespace duffing;

    CLI::App app{"Periodic orbits of the forced Duffing equation x'' + c x' + a x - x^3 = h(t)"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out;
    double x0 = 0.0, v0 = 0.0, t_end = 0.0;
    std::vector<std::string> axes;
    std::size_t steps = 12;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out, "Output directory (overrides output.directory)");
    };

    CLI::App* verify = app.add_subcommand("verify", "Enumerate orbits and check every applicable theorem clause");
    add_common(verify);
    CLI::App* orbits = app.add_subcommand("orbits", "Enumerate orbits; write orbits.json and one CSV per orbit");
    add_common(orbits);
    CLI::App* simulate = app.add_subcommand("simulate", "Integrate one trajectory to trajectory.csv");
    add_common(simulate);
    simulate->add_option("--x0", x0, "Initial displacement")->required();
    simulate->add_option("--v0", v0, "Initial velocity")->required();
    simulate->add_option("--t-end", t_end, "End time")->required();
    CLI::App* linear = app.add_subcommand("linear", "Linear periodic operator suite; writes linear_report.json");
    add_common(linear);
    CLI::App* sweep = app.add_subcommand("sweep", "Parameter grid; writes sweep.csv (no assertions)");
    add_common(sweep);
    sweep->add_option("--axis", axes, "name:lo:hi[:steps], name in {a, c, mean, amplitude}; up to two");
    sweep->add_option("--steps", steps, "Default steps per axis");
    CLI::App* phase = app.add_subcommand("phase", "Phase portrait of all orbits to phase.svg");
    add_common(phase);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    RunConfig cfg = [&]() -> RunConfig {
        try {
            return load_config(config_path);
        } catch (const ConfigError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            std::exit(kExitUsage);
        }
    }();
    if (!out.empty()) cfg.output.directory = out;

    if (verify->parsed()) return cmd_verify(cfg, std::cerr);
    if (orbits->parsed()) return cmd_orbits(cfg, std::cerr);
    if (simulate->parsed()) return cmd_simulate(cfg, x0, v0, t_end, std::cerr);
    if (linear->parsed()) return cmd_linear(cfg, std::cerr);
    if (phase->parsed()) return cmd_phase(cfg, std::cerr);
    if (sweep->parsed()) {
        std::vector<AxisSpec> specs;
        try {
            for (const auto& a : axes) specs.push_back(parse_axis(a, steps));
        } catch (const ConfigError& e) {
            std::cerr << "usage error: " << e.what() << '\n';
            return kExitUsage;
        }
        return cmd_sweep(cfg, specs, std::cerr);
    }
    return kExitUsage;
}
