#include "barrier/commands.hpp"

#include <fstream>

#include "barrier/csv.hpp"
#include "barrier/svg.hpp"

namespace barrier {

namespace {

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("svg", "cannot write '" + path + "'");
    out << content;
}

std::string describe(const Vector& x)
{
    std::string s = "(";
    for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? ", " : "") + format_number(x(i));
    return s + ")";
}

std::string title(const ScenarioConfig& c, CbfKind kind)
{
    return std::string(to_string(c.scenario)) + " / " + std::string(to_string(kind));
}

ClassKappaE outer_alpha(const ScenarioConfig& c)
{
    return ClassKappaE(c.scenario == Scenario::Pendulum ? c.pendulum.alpha_outer : c.bicycle.alpha_c);
}

}  // namespace

int run_simulate(const ScenarioConfig& config, std::ostream& csv, std::ostream& log, const std::string& svg_path)
{
    const ClosedLoopSetup s = config.setup();
    const SimOptions options = config.sim_options();
    const Trajectory traj = simulate(s.system, s.cbf, s.filter, s.x0, options);
    write_trajectory_csv(csv, traj);
    if (!svg_path.empty()) write_file(svg_path, trajectory_svg(traj, title(config, config.cbf)));

    const SafetyMetrics m = compute_metrics(traj, options.blowup_threshold);
    log << title(config, config.cbf) << ": " << to_string(traj.exit) << " at t=" << format_number(traj.rows.back().t)
        << ", min_h=" << format_number(m.min_h) << ", min_psi=" << format_number(m.min_psi) << '\n';
    return traj.truncated() ? kExitTruncated : kExitOk;
}

int run_scan(const ScenarioConfig& config, std::ostream& csv, std::ostream& log, const std::string& svg_path)
{
    const ClosedLoopSetup s = config.setup();
    const GridSpec grid = config.grid();
    const auto records = grid_scan(s.cbf, s.system, outer_alpha(config), grid);
    write_grid_csv(csv, records);
    if (!svg_path.empty()) write_file(svg_path, scan_svg(records, grid, title(config, config.cbf)));

    const ValidityReport r = validity_report(records, config.cbf);
    log << title(config, config.cbf) << ": " << r.nodes << " nodes, " << r.violations.size() << " violations\n";
    return kExitOk;
}

int run_validate(const ScenarioConfig& config, std::ostream& report)
{
    const ClosedLoopSetup s = config.setup();
    const GridSpec grid = config.grid();
    std::vector<Vector> nodes(grid.node_count());
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = grid.node(i);

    bool pass = true;
    const auto verdict = [&](const std::string& name, bool ok, const std::string& detail) {
        report << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
        pass = pass && ok;
    };

    report << "validate " << title(config, config.cbf) << " on " << nodes.size() << " nodes\n";

    const AssumptionReport a = check_assumptions(s.system, s.cbf.output(), nodes);
    verdict("relative degree two", a.relative_degree.empty(),
            std::to_string(a.relative_degree.size()) + " of " + std::to_string(a.samples) + " samples fail" +
                (a.relative_degree.empty() ? "" : ", first at " + describe(a.relative_degree.front().x)));
    verdict("constraint regularity", a.constraint.empty(),
            std::to_string(a.constraint.size()) + " samples with vanishing gradient on psi <= 0" +
                (a.constraint.empty() ? "" : ", first at " + describe(a.constraint.front().x)));

    if (config.cbf == CbfKind::Recbf) {
        const auto w = recbf_validity_condition(s.cbf, s.system, nodes);
        verdict("rectified CBF condition", w.empty(),
                w.empty() ? "r >= epsilon wherever L_g of psi rate vanishes"
                          : std::to_string(w.size()) + " witnesses, first at " + describe(w.front().x) +
                                " with r=" + format_number(w.front().r) +
                                " < epsilon=" + format_number(s.cbf.epsilon()));
    }

    if (s.cbf.kappa()) {
        const RelDeg2Output& out = s.cbf.output();
        const ClassKappaE alpha(config.scenario == Scenario::Pendulum ? config.pendulum.alpha_c
                                                                      : config.bicycle.alphahat_c);
        std::vector<Vector> ys;
        for (const Vector& x : nodes) {
            if (out.in_domain(x)) ys.push_back(values(out.y(lift(x))));
        }
        const auto failures = check_virtual_controller(*s.cbf.kappa(), out, alpha, ys);
        verdict("virtual controller", failures.empty(),
                std::to_string(failures.size()) + " outputs fail" +
                    (failures.empty() ? "" : ", first at " + describe(failures.front())));
    }

    const auto records = grid_scan(s.cbf, s.system, outer_alpha(config), grid);
    const ValidityReport r = validity_report(records, config.cbf);
    verdict("validity scan", r.violations.empty(),
            std::to_string(r.singular) + " singular nodes, " + std::to_string(r.violations.size()) +
                " violations" + (r.violations.empty() ? "" : ", first at " + describe(r.violations.front())));
    if (r.inclusion_claimed) {
        verdict("S inside C", r.inclusion_violations.empty(),
                std::to_string(r.in_S) + " nodes in S, " + std::to_string(r.inclusion_violations.size()) +
                    " outside C");
    }
    if (config.cbf == CbfKind::Abc) {
        verdict("singular iff s >= 0", abc_equivalence_check(records), "checked on every scanned node");
    }

    report << (pass ? "valid" : "not valid") << '\n';
    return pass ? kExitOk : kExitValidationFailed;
}

int run_compare(const ScenarioConfig& config, std::ostream& csv, std::ostream& log)
{
    if (config.compare_kinds.empty()) throw ConfigError("compare.kinds", "no CBF kinds listed");
    const SimOptions options = config.sim_options();
    std::vector<CompareRow> rows;
    for (CbfKind kind : config.compare_kinds) {
        const ClosedLoopSetup s = config.setup(kind);
        const Trajectory traj = simulate(s.system, s.cbf, s.filter, s.x0, options);
        rows.push_back({kind, traj.exit, compute_metrics(traj, options.blowup_threshold)});
        log << title(config, kind) << ": " << to_string(traj.exit) << '\n';
    }
    write_compare_csv(csv, rows);
    return kExitOk;
}

}  // namespace barrier
