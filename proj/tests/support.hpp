#pragma once

// Oracles and samplers shared by the unit tests and the acceptance suite.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "barrier/analysis.hpp"
#include "barrier/cbf.hpp"
#include "barrier/safety_filter.hpp"
#include "barrier/sim.hpp"
#include "barrier/systems.hpp"

namespace barrier::testing {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline const std::vector<CbfKind> kAllKinds = {CbfKind::Hocbf, CbfKind::Recbf, CbfKind::Backstepping, CbfKind::Abc};

/// Central differences of a plain scalar function.
inline Vector central_difference(const std::function<double(const Vector&)>& f, const Vector& x, double step = 1e-6)
{
    Vector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Vector xp = x, xm = x;
        xp(i) += step;
        xm(i) -= step;
        g(i) = (f(xp) - f(xm)) / (2.0 * step);
    }
    return g;
}

inline Vector uniform_in(std::mt19937_64& rng, const Vector& lo, const Vector& hi)
{
    Vector x(lo.size());
    for (Eigen::Index i = 0; i < lo.size(); ++i) x(i) = std::uniform_real_distribution<double>(lo(i), hi(i))(rng);
    return x;
}

inline Vector pendulum_sample(std::mt19937_64& rng)
{
    return uniform_in(rng, (Vector(2) << -kHalfPi, -4.0).finished(), (Vector(2) << kHalfPi, 4.0).finished());
}

/// Bicycle states around the obstacle, moving forward at a reasonable speed.
inline Vector bicycle_sample(std::mt19937_64& rng)
{
    return uniform_in(rng, (Vector(4) << 0.0, -8.0, -1.0, 1.0).finished(),
                      (Vector(4) << 40.0, 8.0, 1.0, 12.0).finished());
}

/// Distance from the kinks of the piecewise constructions (ReQU switches and
/// the smooth filter's branch) so finite differences do not straddle them.
inline bool away_from_kinks(const CbfInstance& inst, const Vector& x, double gap = 1e-3)
{
    const DualVector xd = lift(x);
    const RelDeg2Output& out = inst.output();
    switch (inst.kind()) {
    case CbfKind::Recbf:
        if (std::abs(hocbf_value(out, *inst.alpha_inner(), xd).value() - inst.epsilon()) < gap) return false;
        break;
    case CbfKind::Abc:
        if (std::abs(switching_s(out, *inst.kappa(), xd).value()) < gap) return false;
        break;
    default: break;
    }
    return true;
}

/// Brute-force minimizer of |u - k_d|^2_Gamma subject to
/// L_f h + L_g h u + alpha(h) >= 0 over the box [-bound, bound]^m.
/// Grid search over u_1 with repeated local refinement; for two inputs the
/// second coordinate is minimized exactly along each grid line, which keeps
/// the search one-dimensional and convex.
struct QpOracle
{
    Vector u;
    double cost = std::numeric_limits<double>::infinity();
};

inline QpOracle brute_force_qp(const Vector& kd, const Vector& gamma, double lf_h, const RowVector& lg_h,
                               double alpha_h, double bound = 1e3, double final_step = 1e-12)
{
    const auto m = kd.size();
    if (m < 1 || m > 2) throw std::invalid_argument("brute_force_qp: one or two inputs");
    const double rhs = lf_h + alpha_h;  // feasible iff rhs + lg . u >= 0
    const double c0 = lg_h(0), c1 = m == 2 ? lg_h(1) : 0.0;
    const double k0 = kd(0), k1 = m == 2 ? kd(1) : 0.0;
    const double g0 = gamma(0), g1 = m == 2 ? gamma(1) : 0.0;

    // Best second coordinate on the line u_0 = const, or NaN when infeasible.
    const auto line_min = [&](double u0) {
        const double rest = rhs + c0 * u0;
        if (c1 == 0.0) return rest >= 0.0 ? k1 : std::numeric_limits<double>::quiet_NaN();
        const double edge = -rest / c1;
        const double u1 = c1 > 0.0 ? std::max(k1, edge) : std::min(k1, edge);
        return std::abs(u1) <= bound ? u1 : std::numeric_limits<double>::quiet_NaN();
    };

    QpOracle best;
    double b0 = 0.0, b1 = 0.0, center = 0.0, half = bound;
    const int n = 2001;
    for (;;) {
        const double step = 2.0 * half / (n - 1);
        for (int i = 0; i < n; ++i) {
            const double u0 = center - half + step * i;
            const double u1 = line_min(u0);
            if (std::isnan(u1)) continue;
            const double c = g0 * (u0 - k0) * (u0 - k0) + g1 * (u1 - k1) * (u1 - k1);
            if (c < best.cost) {
                best.cost = c;
                b0 = u0;
                b1 = u1;
            }
        }
        if (step <= final_step || !std::isfinite(best.cost)) break;
        center = b0;
        half = 5.0 * step;
    }
    best.u = m == 1 ? (Vector(1) << b0).finished() : (Vector(2) << b0, b1).finished();
    return best;
}

/// Initial states on the pendulum window with h(x0) >= threshold.
inline std::vector<Vector> pendulum_starts(const CbfInstance& inst, std::size_t count, double threshold,
                                           std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Vector> starts;
    while (starts.size() < count) {
        const Vector x = pendulum_sample(rng);
        if (inst.value(x) >= threshold) starts.push_back(x);
    }
    return starts;
}

}  // namespace barrier::testing
