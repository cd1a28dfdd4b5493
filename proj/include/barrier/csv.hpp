#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "barrier/analysis.hpp"
#include "barrier/cbf.hpp"
#include "barrier/sim.hpp"

namespace barrier {

/// Nine significant digits, the format used by every CSV column.
std::string format_number(double v);

std::string trajectory_header(Eigen::Index n, Eigen::Index m);
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

std::string grid_header(Eigen::Index n);
void write_grid_csv(std::ostream& out, const std::vector<GridScanRecord>& records);

struct CompareRow
{
    CbfKind kind;
    ExitReason exit;
    SafetyMetrics metrics;
};

std::string compare_header(Eigen::Index n, Eigen::Index m);
void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows);

}  // namespace barrier
