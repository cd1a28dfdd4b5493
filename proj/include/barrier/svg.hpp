#pragma once

#include <string>
#include <vector>

#include "barrier/analysis.hpp"
#include "barrier/sim.hpp"

namespace barrier {

struct Series
{
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Stacked polyline panels, one per series group.
std::string line_chart_svg(const std::vector<std::vector<Series>>& panels, const std::string& title);

/// Panels of h, psi and each input over time, plus the phase plane of the
/// first two states.
std::string trajectory_svg(const Trajectory& traj, const std::string& title);

/// Node map of a two-axis scan: S and C membership, singular nodes, violations.
std::string scan_svg(const std::vector<GridScanRecord>& records, const GridSpec& grid, const std::string& title);

}  // namespace barrier
