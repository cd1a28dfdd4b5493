// Command-line front end: simulate, scan, validate, compare.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "barrier/commands.hpp"

namespace {

struct Options
{
    std::string config_path;
    std::string scenario;
    std::string cbf;
    std::vector<std::string> overrides;
    std::string out;
    std::string svg;
};

barrier::ScenarioConfig build_config(const Options& o)
{
    barrier::ScenarioConfig config;
    if (!o.config_path.empty()) barrier::load_config_file(o.config_path, config);
    if (!o.scenario.empty()) config.apply("scenario", o.scenario);
    if (!o.cbf.empty()) config.apply("cbf", o.cbf);
    for (const auto& assignment : o.overrides) {
        const auto [key, value] = barrier::split_assignment(assignment);
        config.apply(key, value);
    }
    return config;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Safety filters with relative-degree-two control barrier functions"};
    app.require_subcommand(1);

    Options o;
    const auto add_common = [&o](CLI::App* sub, bool outputs) {
        sub->add_option("--config", o.config_path, "key = value configuration file");
        sub->add_option("--scenario", o.scenario, "pendulum or bicycle");
        sub->add_option("--cbf", o.cbf, "hocbf, recbf, backstepping or abc");
        sub->add_option("--set", o.overrides, "override one key, e.g. --set sim.dt=1e-4")->allow_extra_args(false);
        if (outputs) {
            sub->add_option("--out", o.out, "CSV path (default: stdout)");
            sub->add_option("--svg", o.svg, "also write an SVG chart");
        }
    };

    auto* simulate = app.add_subcommand("simulate", "closed-loop trajectory CSV");
    auto* scan = app.add_subcommand("scan", "grid CSV of h, psi and validity flags");
    auto* validate = app.add_subcommand("validate", "report on assumptions and CBF validity");
    auto* compare = app.add_subcommand("compare", "metrics CSV, one row per CBF kind");
    auto* show = app.add_subcommand("config", "print the effective configuration");
    add_common(simulate, true);
    add_common(scan, true);
    add_common(validate, false);
    add_common(compare, true);
    add_common(show, false);

    CLI11_PARSE(app, argc, argv);

    try {
        const barrier::ScenarioConfig config = build_config(o);

        std::ofstream file;
        if (!o.out.empty()) {
            file.open(o.out, std::ios::binary);
            if (!file) throw barrier::ConfigError("out", "cannot write '" + o.out + "'");
        }
        std::ostream& out = o.out.empty() ? std::cout : file;

        if (simulate->parsed()) return barrier::run_simulate(config, out, std::cerr, o.svg);
        if (scan->parsed()) return barrier::run_scan(config, out, std::cerr, o.svg);
        if (validate->parsed()) return barrier::run_validate(config, std::cout);
        if (compare->parsed()) return barrier::run_compare(config, out, std::cerr);
        std::cout << config.serialize();
        return barrier::kExitOk;
    } catch (const barrier::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return barrier::kExitConfigError;
    } catch (const barrier::DomainError& e) {
        std::cerr << "config error: init.x0: " << e.what() << '\n';
        return barrier::kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return barrier::kExitConfigError;
    }
}
