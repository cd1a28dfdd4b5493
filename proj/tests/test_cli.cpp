#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "barrier/commands.hpp"
#include "barrier/csv.hpp"
#include "barrier/svg.hpp"

using namespace barrier;

namespace {

struct Csv
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(const std::string& name) const
    {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::out_of_range(name);
        return static_cast<std::size_t>(it - header.begin());
    }
    double num(std::size_t row, const std::string& name) const { return std::stod(rows[row][col(name)]); }
};

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

Csv parse_csv(const std::string& text)
{
    Csv csv;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    csv.header = split_line(line);
    while (std::getline(in, line)) csv.rows.push_back(split_line(line));
    return csv;
}

ScenarioConfig config(std::initializer_list<std::pair<const char*, const char*>> kv)
{
    ScenarioConfig c;
    for (const auto& [k, v] : kv) c.apply(k, v);
    return c;
}

int run_cli(const std::string& args, const std::string& out_file = "/dev/null")
{
    const std::string cmd = std::string(BARRIER_CLI) + " " + args + " > " + out_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, DefaultsAndOverrides)
{
    ScenarioConfig c;
    EXPECT_EQ(c.scenario, Scenario::Pendulum);
    EXPECT_EQ(c.cbf, CbfKind::Abc);
    EXPECT_EQ(c.initial_state(), PendulumParams{}.x0);

    c.apply("cbf", "backstepping");
    c.apply("cbf.mu", "2.5");
    EXPECT_EQ(c.pendulum.mu_backstepping, 2.5);
    EXPECT_EQ(c.pendulum.mu_abc, 5.0);
    c.apply("init.x0", "0.1, 2.0");
    EXPECT_EQ(c.initial_state(), (Vector(2) << 0.1, 2.0).finished());
    c.apply("sim.dt", "1e-4");
    c.apply("sim.hold", "stage");
    EXPECT_EQ(c.sim_options().dt, 1e-4);
    EXPECT_EQ(c.sim_options().hold, InputHold::PerStage);

    c.apply("scenario", "bicycle");
    c.apply("filter.gamma", "1, 0.5");
    EXPECT_EQ(c.bicycle.gamma2, 0.5);
    EXPECT_THROW(c.initial_state(), ConfigError);  // two values for a four-state plant
}

TEST(Config, RejectsBadInput)
{
    ScenarioConfig c;
    const auto key_of = [&c](const char* k, const char* v) {
        try {
            c.apply(k, v);
        } catch (const ConfigError& e) {
            return e.key();
        }
        return std::string("<accepted>");
    };
    EXPECT_EQ(key_of("cbf.nu", "1"), "cbf.nu");
    EXPECT_EQ(key_of("cbf", "qp"), "cbf");
    EXPECT_EQ(key_of("sim.dt", "-1"), "sim.dt");
    EXPECT_EQ(key_of("sim.dt", "fast"), "sim.dt");
    EXPECT_EQ(key_of("scan.res", "1,4"), "scan.res");
    EXPECT_EQ(key_of("scenario", "cartpole"), "scenario");
    EXPECT_THROW(split_assignment("novalue"), ConfigError);
}

TEST(Config, ParsesFileSyntax)
{
    ScenarioConfig c;
    parse_config_text("# comment\n\ncbf.mu = 7   # trailing\ncbf = recbf\nsim.T=3\n", c);
    // Scenario and kind are applied first, so the alias resolves to ReCBF.
    EXPECT_EQ(c.cbf, CbfKind::Recbf);
    EXPECT_EQ(c.pendulum.mu_recbf, 7.0);
    EXPECT_EQ(c.sim.T, 3.0);
    EXPECT_THROW(parse_config_text("bogus = 1\n", c), ConfigError);
}

TEST(Config, RoundTrip)
{
    ScenarioConfig c = config({{"scenario", "bicycle"},
                               {"cbf", "backstepping"},
                               {"bicycle.mu", "0.3"},
                               {"bicycle.sigma", "0.1"},
                               {"init.x0", "1,2,0.1,3.3"},
                               {"sim.T", "0.1"},
                               {"scan.lo", "0,-1"},
                               {"scan.hi", "1,1"},
                               {"scan.res", "3,5"},
                               {"compare.kinds", "abc,hocbf"}});
    c.pendulum.K = 0.1 + 0.2;  // not exactly representable in short decimal
    const std::string text = c.serialize();
    ScenarioConfig d;
    parse_config_text(text, d);
    EXPECT_EQ(d.serialize(), text);
    EXPECT_EQ(d.pendulum.K, c.pendulum.K);
    EXPECT_EQ(d.bicycle.mu, 0.3);
    EXPECT_EQ(*d.x0, *c.x0);
    EXPECT_EQ(d.compare_kinds, c.compare_kinds);
    EXPECT_TRUE(d == c);

    // Every serialized key is a known key.
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto key = split_assignment(line).first;
        EXPECT_NE(std::find(config_keys().begin(), config_keys().end(), key), config_keys().end()) << key;
    }
}

TEST(Csv, Headers)
{
    EXPECT_EQ(trajectory_header(2, 1), "t,x1,x2,u1,h,psi,s");
    EXPECT_EQ(trajectory_header(4, 2), "t,x1,x2,x3,x4,u1,u2,h,psi,s");
    EXPECT_EQ(grid_header(2), "x1,x2,h,psi,lgh_norm,margin,s,in_S,in_C,singular,violation");
    EXPECT_EQ(grid_header(4), "x1,x2,x3,x4,h,psi,lgh_norm,margin,s,in_S,in_C,singular,violation");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(123456789012.0), "1.23456789e+11");
}

TEST(Simulate, AbcCsv)
{
    std::ostringstream csv, log;
    EXPECT_EQ(run_simulate(config({{"sim.T", "2"}}), csv, log), kExitOk);
    const Csv t = parse_csv(csv.str());
    EXPECT_EQ(t.header, split_line("t,x1,x2,u1,h,psi,s"));
    EXPECT_EQ(t.rows.size(), 2001u);
    double min_psi = 1e9;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        ASSERT_EQ(t.rows[i].size(), t.header.size());
        EXPECT_FALSE(t.rows[i].back().empty());
        min_psi = std::min(min_psi, t.num(i, "psi"));
    }
    EXPECT_GE(min_psi, 0.0);
    EXPECT_EQ(csv.str().find('\r'), std::string::npos);
}

TEST(Simulate, NonAbcLeavesSwitchingEmpty)
{
    std::ostringstream csv, log;
    run_simulate(config({{"cbf", "backstepping"}, {"sim.T", "0.01"}}), csv, log);
    const Csv t = parse_csv(csv.str());
    for (const auto& row : t.rows) {
        ASSERT_EQ(row.size(), t.header.size());
        EXPECT_TRUE(row.back().empty());
    }
}

TEST(Simulate, HocbfHighAngularVelocityIsTruncated)
{
    std::ostringstream csv, log;
    EXPECT_EQ(run_simulate(config({{"cbf", "hocbf"}, {"init.x0", "0.1,2.0"}}), csv, log), kExitTruncated);
}

TEST(Simulate, HocbfDefaultStartIsTruncated)
{
    std::ostringstream csv, log;
    EXPECT_EQ(run_simulate(config({{"cbf", "hocbf"}}), csv, log), kExitTruncated);
}

TEST(Simulate, BicycleClearsObstacle)
{
    std::ostringstream csv, log;
    EXPECT_EQ(run_simulate(config({{"scenario", "bicycle"}, {"sim.T", "20"}}), csv, log), kExitOk);
    const Csv t = parse_csv(csv.str());
    EXPECT_EQ(t.header, split_line("t,x1,x2,x3,x4,u1,u2,h,psi,s"));
    double min_d2 = 1e9;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double dx = t.num(i, "x1") - 20.0, dy = t.num(i, "x2") + 0.1;
        min_d2 = std::min(min_d2, dx * dx + dy * dy);
    }
    EXPECT_GE(min_d2, 16.0);
}

TEST(Simulate, Deterministic)
{
    const ScenarioConfig c = config({{"scenario", "bicycle"}, {"sim.T", "1"}});
    std::ostringstream a, b, log;
    run_simulate(c, a, log);
    run_simulate(c, b, log);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Scan, Csv)
{
    std::ostringstream csv, log;
    EXPECT_EQ(run_scan(config({{"scan.res", "2,2"}}), csv, log), kExitOk);
    const Csv t = parse_csv(csv.str());
    EXPECT_EQ(t.header, split_line(grid_header(2)));
    EXPECT_EQ(t.rows.size(), 4u);

    std::ostringstream abc, hocbf;
    run_scan(config({{"scan.res", "101,101"}}), abc, log);
    run_scan(config({{"cbf", "hocbf"}, {"scan.res", "101,101"}}), hocbf, log);
    const Csv a = parse_csv(abc.str()), h = parse_csv(hocbf.str());
    std::size_t abc_viol = 0, hocbf_viol = 0;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const std::string flag = a.rows[i][a.col("violation")];
        ASSERT_TRUE(flag == "0" || flag == "1");
        abc_viol += flag == "1";
        hocbf_viol += h.rows[i][h.col("violation")] == "1";
        EXPECT_TRUE(h.rows[i][h.col("s")].empty());
        EXPECT_FALSE(a.rows[i][a.col("s")].empty());
    }
    EXPECT_EQ(abc_viol, 0u);
    EXPECT_GT(hocbf_viol, 0u);

    std::ostringstream again;
    run_scan(config({{"scan.res", "101,101"}}), again, log);
    EXPECT_EQ(again.str(), abc.str());
}

TEST(Validate, Verdicts)
{
    const ScenarioConfig small = config({{"scan.res", "201,201"}});
    std::ostringstream report;

    ScenarioConfig c = small;
    c.apply("cbf", "recbf");
    c.apply("cbf.epsilon", "2");
    EXPECT_EQ(run_validate(c, report), kExitOk);

    c.apply("cbf.epsilon", "4");
    std::ostringstream bad;
    EXPECT_EQ(run_validate(c, bad), kExitValidationFailed);
    EXPECT_NE(bad.str().find("FAIL rectified CBF condition"), std::string::npos);
    EXPECT_NE(bad.str().find("witnesses, first at (0,"), std::string::npos);

    EXPECT_EQ(run_validate(small, report), kExitOk);
    c.apply("cbf", "hocbf");
    EXPECT_EQ(run_validate(c, report), kExitValidationFailed);
}

TEST(Compare, Rows)
{
    std::ostringstream csv, log;
    EXPECT_EQ(run_compare(ScenarioConfig{}, csv, log), kExitOk);
    const Csv t = parse_csv(csv.str());
    ASSERT_EQ(t.rows.size(), 4u);
    EXPECT_EQ(t.header.front(), "cbf");
    std::map<std::string, std::size_t> row;
    for (std::size_t i = 0; i < 4; ++i) row[t.rows[i][0]] = i;
    EXPECT_EQ(t.rows[row["hocbf"]][t.col("blew_up")], "1");
    EXPECT_GE(t.num(row["abc"], "max_abs_u1"), t.num(row["backstepping"], "max_abs_u1"));
}

TEST(Compare, HocbfFlaggedFromHighAngularVelocity)
{
    std::ostringstream csv, log;
    run_compare(config({{"init.x0", "0.1,2.0"}}), csv, log);
    const Csv t = parse_csv(csv.str());
    for (const auto& r : t.rows) {
        if (r[0] == "hocbf") EXPECT_EQ(r[t.col("blew_up")], "1");
    }
}

TEST(Compare, SingleKindMatchesSimulate)
{
    const ScenarioConfig c = config({{"compare.kinds", "backstepping"}, {"cbf", "backstepping"}, {"sim.T", "3"}});
    std::ostringstream csv, sim, log;
    run_compare(c, csv, log);
    run_simulate(c, sim, log);
    const Csv t = parse_csv(csv.str()), s = parse_csv(sim.str());
    ASSERT_EQ(t.rows.size(), 1u);
    double min_h = 1e9, max_u = 0.0;
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        min_h = std::min(min_h, s.num(i, "h"));
        max_u = std::max(max_u, std::abs(s.num(i, "u1")));
    }
    EXPECT_EQ(t.rows[0][t.col("min_h")], format_number(min_h));
    EXPECT_EQ(t.rows[0][t.col("max_abs_u1")], format_number(max_u));
    EXPECT_EQ(t.rows[0][t.col("final_x1")], s.rows.back()[1]);
}

TEST(Svg, ProducesDocuments)
{
    const ClosedLoopSetup s = pendulum_setup(CbfKind::Abc);
    SimOptions o;
    o.T = 0.5;
    const std::string svg = trajectory_svg(simulate(s.system, s.cbf, s.filter, s.x0, o), "abc");
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Binary, ExitCodes)
{
    const auto dir = std::filesystem::temp_directory_path() / "barrier_cli_test";
    std::filesystem::create_directories(dir);
    const std::string out = (dir / "traj.csv").string();
    const std::string svg = (dir / "traj.svg").string();

    EXPECT_EQ(run_cli("simulate --scenario pendulum --cbf abc --set sim.T=1 --out " + out + " --svg " + svg), 0);
    EXPECT_TRUE(std::filesystem::exists(svg));
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "t,x1,x2,u1,h,psi,s");

    EXPECT_EQ(run_cli("simulate --cbf hocbf"), 2);
    EXPECT_EQ(run_cli("simulate --set cbf.nu=3"), 1);
    EXPECT_EQ(run_cli("simulate --cbf qp"), 1);
    EXPECT_EQ(run_cli("simulate --config " + (dir / "missing.cfg").string()), 1);
    EXPECT_EQ(run_cli("validate --cbf recbf --set cbf.epsilon=4 --set scan.res=41,41"), 3);
    EXPECT_EQ(run_cli("validate --cbf abc --set scan.res=41,41"), 0);

    const std::string cfg = (dir / "scan.cfg").string();
    std::ofstream(cfg) << "# two by two\nscan.res = 2,2\n";
    const std::string grid = (dir / "grid.csv").string();
    EXPECT_EQ(run_cli("scan --config " + cfg, grid), 0);
    std::ifstream g(grid);
    std::string line;
    int lines = 0;
    while (std::getline(g, line)) ++lines;
    EXPECT_EQ(lines, 5);
}
