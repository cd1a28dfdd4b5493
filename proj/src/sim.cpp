#include "barrier/sim.hpp"

#include <cmath>

namespace barrier {

namespace {

void require_finite(const Vector& v, double t, const char* stage)
{
    if (!v.allFinite()) throw NonFiniteError(t, std::string("non-finite state derivative at ") + stage);
}

}  // namespace

Vector rk4_step(const StateDerivative& derivative, const Vector& x, double dt, double t)
{
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
    const Vector k1 = derivative(x);
    require_finite(k1, t, "stage 1");
    const Vector k2 = derivative(x + 0.5 * dt * k1);
    require_finite(k2, t, "stage 2");
    const Vector k3 = derivative(x + 0.5 * dt * k2);
    require_finite(k3, t, "stage 3");
    const Vector k4 = derivative(x + dt * k3);
    require_finite(k4, t, "stage 4");
    return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::string_view to_string(ExitReason reason)
{
    switch (reason) {
    case ExitReason::Completed: return "completed";
    case ExitReason::BlowUp: return "blow-up";
    case ExitReason::LeftDomain: return "left-domain";
    case ExitReason::NonFinite: return "non-finite";
    }
    return "unknown";
}

Trajectory simulate(const ControlAffineSystem& sys, const CbfInstance& cbf, const SafetyFilterSpec& filter,
                    const Vector& x0, const SimOptions& options)
{
    if (!(options.T > 0.0) || !(options.dt > 0.0)) throw std::invalid_argument("simulate: T and dt must be positive");
    cbf.output().require_domain(x0);

    const auto steps = static_cast<long>(std::floor(options.T / options.dt + 1e-9));
    const bool log_s = cbf.kind() == CbfKind::Abc;

    Trajectory traj;
    traj.dt = options.dt;
    traj.rows.reserve(static_cast<std::size_t>(steps) + 1);

    const auto stop = [&traj](ExitReason reason, double t) {
        traj.exit = reason;
        traj.exit_time = t;
        return traj;
    };

    Vector x = x0;
    for (long k = 0;; ++k) {
        const double t = static_cast<double>(k) * options.dt;
        if (!x.allFinite()) return stop(ExitReason::NonFinite, t);
        if (!cbf.output().in_domain(x)) return stop(ExitReason::LeftDomain, t);

        FilterEvaluation ev;
        try {
            ev = evaluate_filter(filter, cbf, sys, x);
        } catch (const DomainError&) {
            return stop(ExitReason::LeftDomain, t);
        } catch (const EvaluationError&) {
            return stop(ExitReason::LeftDomain, t);
        }

        TrajectoryRow row;
        row.t = t;
        row.x = x;
        row.u = ev.u;
        row.h = ev.h;
        row.psi = cbf.constraint(x);
        if (log_s) row.s = cbf.switching(x);
        traj.rows.push_back(std::move(row));

        if (!ev.u.allFinite()) return stop(ExitReason::NonFinite, t);
        if (ev.u.lpNorm<Eigen::Infinity>() > options.blowup_threshold) return stop(ExitReason::BlowUp, t);
        if (k == steps) break;

        StateDerivative derivative;
        if (options.hold == InputHold::ZeroOrder) {
            derivative = [&sys, u = ev.u](const Vector& xs) { return sys.closed_loop(xs, u); };
        } else {
            derivative = [&](const Vector& xs) { return sys.closed_loop(xs, safety_filter(filter, cbf, sys, xs)); };
        }

        try {
            x = rk4_step(derivative, x, options.dt, t);
        } catch (const NonFiniteError& e) {
            return stop(ExitReason::NonFinite, e.time());
        } catch (const DomainError&) {
            return stop(ExitReason::LeftDomain, t);
        } catch (const EvaluationError&) {
            return stop(ExitReason::LeftDomain, t);
        }
    }
    return traj;
}

SafetyMetrics compute_metrics(const Trajectory& traj, double blowup_threshold)
{
    if (traj.rows.empty()) throw std::invalid_argument("compute_metrics: empty trajectory");

    const auto m = traj.rows.front().u.size();
    SafetyMetrics metrics;
    metrics.min_h = traj.rows.front().h;
    metrics.min_psi = traj.rows.front().psi;
    metrics.max_abs_u = Vector::Zero(m);
    metrics.max_step_delta_u = Vector::Zero(m);

    for (std::size_t i = 0; i < traj.rows.size(); ++i) {
        const TrajectoryRow& row = traj.rows[i];
        metrics.min_h = std::min(metrics.min_h, row.h);
        metrics.min_psi = std::min(metrics.min_psi, row.psi);
        metrics.max_abs_u = metrics.max_abs_u.cwiseMax(row.u.cwiseAbs());
        if (i > 0) {
            metrics.max_step_delta_u = metrics.max_step_delta_u.cwiseMax((row.u - traj.rows[i - 1].u).cwiseAbs());
        }
    }
    metrics.blew_up = traj.exit == ExitReason::BlowUp || metrics.max_abs_u.maxCoeff() > blowup_threshold;
    metrics.final_state = traj.rows.back().x;
    return metrics;
}

}  // namespace barrier
