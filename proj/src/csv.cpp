#include "barrier/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace barrier {

namespace {

void append_indexed(std::string& out, const char* prefix, Eigen::Index count)
{
    for (Eigen::Index i = 1; i <= count; ++i) {
        out += prefix;
        out += std::to_string(i);
        out += ',';
    }
}

void put(std::ostream& out, const Vector& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) out << format_number(v(i)) << ',';
}

}  // namespace

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);  // no "-0"
    return buf;
}

std::string trajectory_header(Eigen::Index n, Eigen::Index m)
{
    std::string h = "t,";
    append_indexed(h, "x", n);
    append_indexed(h, "u", m);
    h += "h,psi,s";
    return h;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj)
{
    if (traj.rows.empty()) throw std::invalid_argument("write_trajectory_csv: empty trajectory");
    const auto& first = traj.rows.front();
    out << trajectory_header(first.x.size(), first.u.size()) << '\n';
    for (const TrajectoryRow& row : traj.rows) {
        out << format_number(row.t) << ',';
        put(out, row.x);
        put(out, row.u);
        out << format_number(row.h) << ',' << format_number(row.psi) << ',';
        if (row.s) out << format_number(*row.s);
        out << '\n';
    }
}

std::string grid_header(Eigen::Index n)
{
    std::string h;
    append_indexed(h, "x", n);
    h += "h,psi,lgh_norm,margin,s,in_S,in_C,singular,violation";
    return h;
}

void write_grid_csv(std::ostream& out, const std::vector<GridScanRecord>& records)
{
    if (records.empty()) throw std::invalid_argument("write_grid_csv: empty scan");
    out << grid_header(records.front().x.size()) << '\n';
    for (const GridScanRecord& rec : records) {
        put(out, rec.x);
        if (rec.excluded) {
            // Outside E: no field values, all flags clear.
            out << ",,,,,0,0,0,0\n";
            continue;
        }
        out << format_number(rec.h) << ',' << format_number(rec.psi) << ',' << format_number(rec.lgh_norm) << ','
            << format_number(rec.margin) << ',';
        if (rec.s) out << format_number(*rec.s);
        out << ',' << int(rec.in_S) << ',' << int(rec.in_C) << ',' << int(rec.singular) << ',' << int(rec.violation)
            << '\n';
    }
}

std::string compare_header(Eigen::Index n, Eigen::Index m)
{
    std::string h = "cbf,exit,min_h,min_psi,";
    append_indexed(h, "max_abs_u", m);
    append_indexed(h, "max_step_delta_u", m);
    h += "blew_up";
    for (Eigen::Index i = 1; i <= n; ++i) h += ",final_x" + std::to_string(i);
    return h;
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows)
{
    if (rows.empty()) throw std::invalid_argument("write_compare_csv: no rows");
    const auto& m0 = rows.front().metrics;
    out << compare_header(m0.final_state.size(), m0.max_abs_u.size()) << '\n';
    for (const CompareRow& row : rows) {
        const SafetyMetrics& m = row.metrics;
        out << to_string(row.kind) << ',' << to_string(row.exit) << ',' << format_number(m.min_h) << ','
            << format_number(m.min_psi) << ',';
        put(out, m.max_abs_u);
        put(out, m.max_step_delta_u);
        out << int(m.blew_up);
        for (Eigen::Index i = 0; i < m.final_state.size(); ++i) out << ',' << format_number(m.final_state(i));
        out << '\n';
    }
}

}  // namespace barrier
