#pragma once

#include <optional>
#include <vector>

#include "barrier/cbf.hpp"
#include "barrier/core.hpp"

namespace barrier {

inline constexpr double kSingularTol = 1e-10;

/// A rectangular grid over selected state axes; the remaining coordinates
/// are pinned to `base` (e.g. a (theta, v) slice of the bicycle).
struct GridSpec
{
    std::vector<int> axes;
    Vector lo;
    Vector hi;
    std::vector<int> resolution;
    Vector base;

    std::size_t node_count() const;

    /// State at a row-major node index (last axis fastest).
    Vector node(std::size_t index) const;
};

/// Two-axis grid over the full pendulum state.
GridSpec plane_grid(double lo0, double hi0, double lo1, double hi1, int res0, int res1);

struct GridScanRecord
{
    Vector x;
    bool excluded = false;  // node outside E; remaining fields unset
    double h = 0.0;
    double psi = 0.0;
    double lgh_norm = 0.0;
    double margin = 0.0;  // L_f h + alpha(h)
    std::optional<double> s;
    bool in_S = false;
    bool in_C = false;
    bool singular = false;
    bool violation = false;
};

/// One record per node in row-major order. `alpha_outer` enters the margin.
std::vector<GridScanRecord> grid_scan(const CbfInstance& inst, const ControlAffineSystem& sys,
                                      const ClassKappaE& alpha_outer, const GridSpec& grid);

struct ValidityReport
{
    std::size_t nodes = 0;
    std::size_t excluded = 0;
    std::size_t in_S = 0;
    std::size_t in_C = 0;
    std::size_t singular = 0;
    std::vector<Vector> violations;
    bool inclusion_claimed = true;  // false for HOCBF: only S intersect C is guaranteed
    std::vector<Vector> inclusion_violations;

    bool valid() const { return violations.empty() && inclusion_violations.empty(); }
};

ValidityReport validity_report(const std::vector<GridScanRecord>& records, CbfKind kind);

/// True iff at every scanned node: singular <=> s >= -1e-10.
bool abc_equivalence_check(const std::vector<GridScanRecord>& records);

}  // namespace barrier
