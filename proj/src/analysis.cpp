#include "barrier/analysis.hpp"

#include <stdexcept>

namespace barrier {

std::size_t GridSpec::node_count() const
{
    std::size_t count = 1;
    for (int r : resolution) count *= static_cast<std::size_t>(r);
    return count;
}

Vector GridSpec::node(std::size_t index) const
{
    Vector x = base;
    for (int k = static_cast<int>(axes.size()) - 1; k >= 0; --k) {
        const auto res = static_cast<std::size_t>(resolution[k]);
        const auto i = index % res;
        index /= res;
        x(axes[k]) = lo(k) + (hi(k) - lo(k)) * static_cast<double>(i) / static_cast<double>(res - 1);
    }
    return x;
}

GridSpec plane_grid(double lo0, double hi0, double lo1, double hi1, int res0, int res1)
{
    GridSpec grid;
    grid.axes = {0, 1};
    grid.lo = (Vector(2) << lo0, lo1).finished();
    grid.hi = (Vector(2) << hi0, hi1).finished();
    grid.resolution = {res0, res1};
    grid.base = Vector::Zero(2);
    return grid;
}

std::vector<GridScanRecord> grid_scan(const CbfInstance& inst, const ControlAffineSystem& sys,
                                      const ClassKappaE& alpha_outer, const GridSpec& grid)
{
    const auto dims = grid.axes.size();
    if (dims == 0 || grid.resolution.size() != dims || static_cast<std::size_t>(grid.lo.size()) != dims ||
        static_cast<std::size_t>(grid.hi.size()) != dims) {
        throw std::invalid_argument("grid_scan: inconsistent grid specification");
    }
    for (int r : grid.resolution) {
        if (r < 2) throw std::invalid_argument("grid_scan: resolution must be at least 2 per axis");
    }
    if (grid.base.size() != sys.n) throw std::invalid_argument("grid_scan: base state has wrong dimension");

    const bool record_s = inst.kind() == CbfKind::Abc;
    std::vector<GridScanRecord> records(grid.node_count());
    for (std::size_t i = 0; i < records.size(); ++i) {
        GridScanRecord& rec = records[i];
        rec.x = grid.node(i);
        if (!inst.output().in_domain(rec.x)) {
            rec.excluded = true;
            continue;
        }
        try {
            const auto [h, grad_h] = inst.value_and_gradient(rec.x);
            rec.h = h;
            rec.psi = inst.constraint(rec.x);
            rec.lgh_norm = (grad_h.transpose() * sys.g(rec.x)).norm();
            rec.margin = grad_h.dot(sys.f(rec.x)) + alpha_outer(h);
            if (record_s) rec.s = inst.switching(rec.x);
        } catch (const DomainError&) {
            rec.excluded = true;
            continue;
        } catch (const EvaluationError&) {
            rec.excluded = true;
            continue;
        }
        rec.in_S = rec.h >= 0.0;
        rec.in_C = rec.psi >= 0.0;
        rec.singular = rec.lgh_norm < kSingularTol;
        rec.violation = rec.singular && rec.margin <= 0.0;
    }
    return records;
}

ValidityReport validity_report(const std::vector<GridScanRecord>& records, CbfKind kind)
{
    if (records.empty()) throw std::invalid_argument("validity_report: empty scan");

    ValidityReport report;
    report.inclusion_claimed = kind != CbfKind::Hocbf;
    for (const GridScanRecord& rec : records) {
        ++report.nodes;
        if (rec.excluded) {
            ++report.excluded;
            continue;
        }
        report.in_S += rec.in_S;
        report.in_C += rec.in_C;
        report.singular += rec.singular;
        if (rec.violation) report.violations.push_back(rec.x);
        if (report.inclusion_claimed && rec.in_S && !rec.in_C) report.inclusion_violations.push_back(rec.x);
    }
    return report;
}

bool abc_equivalence_check(const std::vector<GridScanRecord>& records)
{
    for (const GridScanRecord& rec : records) {
        if (rec.excluded) continue;
        if (!rec.s) return false;
        if (rec.singular != (*rec.s >= -kSingularTol)) return false;
    }
    return true;
}

}  // namespace barrier
