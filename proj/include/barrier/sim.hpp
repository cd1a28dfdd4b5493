#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "barrier/cbf.hpp"
#include "barrier/core.hpp"
#include "barrier/safety_filter.hpp"

namespace barrier {

using StateDerivative = std::function<Vector(const Vector&)>;

class NonFiniteError : public std::runtime_error
{
public:
    NonFiniteError(double t, const std::string& what) : std::runtime_error(what), time_(t) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Classical fourth-order Runge-Kutta step. `t` only labels errors.
Vector rk4_step(const StateDerivative& derivative, const Vector& x, double dt, double t = 0.0);

/// How the feedback enters the integrator.
enum class InputHold {
    ZeroOrder,  // u evaluated once per step and held over all four stages
    PerStage,   // u re-evaluated at every RK4 stage; the logged u is the step-start value
};

struct SimOptions
{
    double T = 10.0;
    double dt = 1e-3;
    double blowup_threshold = 1e3;
    InputHold hold = InputHold::ZeroOrder;
};

enum class ExitReason { Completed, BlowUp, LeftDomain, NonFinite };

std::string_view to_string(ExitReason reason);

struct TrajectoryRow
{
    double t = 0.0;
    Vector x;
    Vector u;
    double h = 0.0;
    double psi = 0.0;
    std::optional<double> s;
};

struct Trajectory
{
    double dt = 0.0;
    std::vector<TrajectoryRow> rows;
    ExitReason exit = ExitReason::Completed;
    double exit_time = 0.0;

    bool truncated() const { return exit != ExitReason::Completed; }
};

struct SafetyMetrics
{
    double min_h = 0.0;
    double min_psi = 0.0;
    Vector max_abs_u;
    Vector max_step_delta_u;
    bool blew_up = false;
    Vector final_state;
};

/// Fixed-step closed loop xdot = f(x) + g(x) k(x) with logging.
/// Leaving E, crossing the blow-up threshold, or a non-finite state truncate
/// the trajectory; the last logged row is the offending one.
Trajectory simulate(const ControlAffineSystem& sys, const CbfInstance& cbf, const SafetyFilterSpec& filter,
                    const Vector& x0, const SimOptions& options = {});

SafetyMetrics compute_metrics(const Trajectory& traj, double blowup_threshold = 1e3);

}  // namespace barrier
