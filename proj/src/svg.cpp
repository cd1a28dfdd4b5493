#include "barrier/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace barrier {

namespace {

constexpr double kWidth = 640.0;
constexpr double kPanelHeight = 180.0;
constexpr double kMargin = 48.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Range
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v)
    {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    void pad()
    {
        if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
        if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
    }
};

void panel(std::ostream& out, const std::vector<Series>& series, double top)
{
    Range rx, ry;
    for (const auto& s : series) {
        for (double v : s.x) rx.add(v);
        for (double v : s.y) ry.add(v);
    }
    rx.pad();
    ry.pad();
    const double w = kWidth - 2 * kMargin;
    const double h = kPanelHeight - 40.0;
    const auto px = [&](double v) { return kMargin + (v - rx.lo) / (rx.hi - rx.lo) * w; };
    const auto py = [&](double v) { return top + h - (v - ry.lo) / (ry.hi - ry.lo) * h; };

    out << "<rect x='" << kMargin << "' y='" << top << "' width='" << w << "' height='" << h
        << "' fill='none' stroke='#888'/>\n";
    out << "<text x='4' y='" << top + 10 << "' font-size='10'>" << num(ry.hi) << "</text>\n";
    out << "<text x='4' y='" << top + h << "' font-size='10'>" << num(ry.lo) << "</text>\n";
    out << "<text x='" << kMargin << "' y='" << top + h + 12 << "' font-size='10'>" << num(rx.lo) << "</text>\n";
    out << "<text x='" << kMargin + w - 30 << "' y='" << top + h + 12 << "' font-size='10'>" << num(rx.hi)
        << "</text>\n";
    if (ry.lo < 0.0 && ry.hi > 0.0) {
        out << "<line x1='" << kMargin << "' x2='" << kMargin + w << "' y1='" << py(0.0) << "' y2='" << py(0.0)
            << "' stroke='#ccc' stroke-dasharray='3,3'/>\n";
    }

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kColors[k % std::size(kColors)];
        out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.2' points='";
        // Decimate long traces to at most ~2000 vertices.
        const std::size_t stride = std::max<std::size_t>(1, s.x.size() / 2000);
        for (std::size_t i = 0; i < s.x.size(); i += stride) {
            if (!std::isfinite(s.y[i])) continue;
            out << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
        }
        out << "'/>\n";
        out << "<text x='" << kMargin + 8 + 90.0 * static_cast<double>(k) << "' y='" << top + 14
            << "' font-size='11' fill='" << color << "'>" << s.label << "</text>\n";
    }
}

std::string open_svg(double height)
{
    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << height << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n";
    return out.str();
}

}  // namespace

std::string line_chart_svg(const std::vector<std::vector<Series>>& panels, const std::string& title)
{
    std::ostringstream out;
    out << open_svg(30.0 + kPanelHeight * static_cast<double>(panels.size()));
    out << "<text x='" << kMargin << "' y='18' font-size='13'>" << title << "</text>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) panel(out, panels[i], 30.0 + kPanelHeight * static_cast<double>(i));
    out << "</svg>\n";
    return out.str();
}

std::string trajectory_svg(const Trajectory& traj, const std::string& title)
{
    std::vector<double> t;
    Series h{"h", {}, {}}, psi{"psi", {}, {}}, phase{"x2 vs x1", {}, {}};
    const auto m = traj.rows.empty() ? 0 : traj.rows.front().u.size();
    std::vector<Series> inputs(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) inputs[j].label = "u" + std::to_string(j + 1);
    for (const auto& row : traj.rows) {
        t.push_back(row.t);
        h.y.push_back(row.h);
        psi.y.push_back(row.psi);
        phase.x.push_back(row.x(0));
        phase.y.push_back(row.x(1));
        for (Eigen::Index j = 0; j < m; ++j) inputs[j].y.push_back(row.u(j));
    }
    h.x = psi.x = t;
    for (auto& s : inputs) s.x = t;
    return line_chart_svg({{h, psi}, inputs, {phase}}, title);
}

std::string scan_svg(const std::vector<GridScanRecord>& records, const GridSpec& grid, const std::string& title)
{
    const double side = kWidth - 2 * kMargin;
    std::ostringstream out;
    out << open_svg(side + 2 * kMargin);
    out << "<text x='" << kMargin << "' y='18' font-size='13'>" << title
        << " (blue: S, grey: C only, black: singular, red: violation)</text>\n";
    const int r0 = grid.resolution.at(0), r1 = grid.resolution.at(1);
    // Draw at most ~160 cells per axis.
    const int s0 = std::max(1, r0 / 160), s1 = std::max(1, r1 / 160);
    const double cw = side / std::ceil(double(r0) / s0), ch = side / std::ceil(double(r1) / s1);
    for (int i = 0; i < r0; i += s0) {
        for (int j = 0; j < r1; j += s1) {
            const auto& rec = records[static_cast<std::size_t>(i) * r1 + j];
            const char* fill = nullptr;
            if (rec.excluded) continue;
            if (rec.violation) fill = "#d62728";
            else if (rec.singular) fill = "#000000";
            else if (rec.in_S) fill = "#9ecae1";
            else if (rec.in_C) fill = "#dddddd";
            if (!fill) continue;
            const double x = kMargin + (i / s0) * cw;
            const double y = kMargin + side - (j / s1 + 1) * ch;
            out << "<rect x='" << num(x) << "' y='" << num(y) << "' width='" << num(cw) << "' height='" << num(ch)
                << "' fill='" << fill << "'/>\n";
        }
    }
    out << "<rect x='" << kMargin << "' y='" << kMargin << "' width='" << side << "' height='" << side
        << "' fill='none' stroke='#888'/>\n";
    out << "<text x='" << kMargin << "' y='" << kMargin + side + 14 << "' font-size='10'>x" << grid.axes[0] + 1
        << " in [" << num(grid.lo(0)) << ", " << num(grid.hi(0)) << "], x" << grid.axes[1] + 1 << " in ["
        << num(grid.lo(1)) << ", " << num(grid.hi(1)) << "]</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace barrier
