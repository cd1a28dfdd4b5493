#pragma once

#include <numbers>

#include "barrier/cbf.hpp"
#include "barrier/core.hpp"
#include "barrier/safety_filter.hpp"

namespace barrier {

// ---------------------------------------------------------------------------
// Inverted pendulum, x = (phi, omega), angle measured from upright.

inline constexpr double kPendulumPsiMax = std::numbers::pi * std::numbers::pi / 4.0;

struct PendulumParams
{
    double alpha_c = 1.0;      // 1/s, inner alpha (HOCBF, ReCBF)
    double alpha_outer = 1.0;  // 1/s, filter alpha
    double gamma = 1.0;
    double epsilon = 2.0;      // 1/s, ReCBF
    double K = 0.75;           // 1/s, kappa(phi) = -K phi
    double mu_backstepping = 1.5;
    double mu_abc = 5.0;
    double mu_recbf = 5.0;
    Vector x0 = (Vector(2) << -1.2, 2.4).finished();
};

template <typename Scalar>
VectorX<Scalar> pendulum_dynamics(const VectorX<Scalar>& x, const Scalar& u)
{
    using std::sin;
    VectorX<Scalar> dx(2);
    dx << x(1), sin(x(0)) + u;
    return dx;
}

inline Vector pendulum_dynamics(const Vector& x, double u) { return pendulum_dynamics<double>(x, u); }

template <typename Scalar>
Scalar pendulum_constraint(const Scalar& phi)
{
    return Scalar(kPendulumPsiMax) - phi * phi;
}

ControlAffineSystem pendulum_system();
RelDeg2Output pendulum_output();
CbfInstance pendulum_cbf(CbfKind kind, const PendulumParams& params = {});

/// k_d = 0 with exact lambda.
SafetyFilterSpec pendulum_filter(const PendulumParams& params = {});

/// Undriven energy omega^2/2 + cos(phi).
inline double pendulum_energy(const Vector& x) { return 0.5 * x(1) * x(1) + std::cos(x(0)); }

// ---------------------------------------------------------------------------
// Kinematic bicycle, x = (xi, eta, theta, v), u = (tan steer, accel).

struct BicycleParams
{
    double L = 2.5;          // m
    double v_d = 10.0;       // m/s
    double vhat_d = 4.0;     // m/s, virtual controller speed
    double xi_o = 20.0;      // m
    double eta_o = -0.1;     // m
    double r_o = 4.0;        // m
    double k_eta = 0.4;      // 1/(m s)
    double k_theta = 1.75;   // 1/s
    double k_v = 0.3;        // 1/s
    double gamma1 = 1.0;
    double gamma2 = 0.15;    // s^4/m^2
    double alphahat_c = 1.0; // 1/s
    double sigma = 0.001;    // 1/s^2
    double mu = 1.0;         // m^2/s^2
    double alpha_c = 5.0;    // 1/s
    double epsilon = 1.0;    // ReCBF only; not a case-study parameter
    Vector x0 = (Vector(4) << 0.0, 0.0, 0.0, 5.0).finished();
};

template <typename Scalar>
VectorX<Scalar> bicycle_dynamics(const VectorX<Scalar>& x, const VectorX<Scalar>& u, double L)
{
    using std::cos;
    using std::sin;
    VectorX<Scalar> dx(4);
    dx << x(3) * cos(x(2)), x(3) * sin(x(2)), x(3) * u(0) / Scalar(L), u(1);
    return dx;
}

inline Vector bicycle_dynamics(const Vector& x, const Vector& u, double L) { return bicycle_dynamics<double>(x, u, L); }

template <typename Scalar>
Scalar bicycle_constraint(const VectorX<Scalar>& y, const BicycleParams& p)
{
    const Scalar dx = y(0) - Scalar(p.xi_o);
    const Scalar dy = y(1) - Scalar(p.eta_o);
    return dx * dx + dy * dy - Scalar(p.r_o * p.r_o);
}

/// (-K_eta eta - K_theta sin theta, K_v (v_d - v))
Vector lane_keeping_desired(const Vector& x, const BicycleParams& p = {});

ControlAffineSystem bicycle_system(const BicycleParams& p = {});

/// E excludes the obstacle center; states with |v| below `min_speed` are
/// also treated as outside, since the output loses relative degree two at v = 0.
RelDeg2Output bicycle_output(const BicycleParams& p = {}, double min_speed = 0.0);
VirtualController bicycle_virtual_controller(const BicycleParams& p = {});
CbfInstance bicycle_cbf(CbfKind kind, const BicycleParams& p = {});
SafetyFilterSpec bicycle_filter(const BicycleParams& p = {});

/// A plant, a CBF, and the filter around it, ready to simulate.
struct ClosedLoopSetup
{
    ControlAffineSystem system;
    CbfInstance cbf;
    SafetyFilterSpec filter;
    Vector x0;
};

ClosedLoopSetup pendulum_setup(CbfKind kind, const PendulumParams& params = {});
ClosedLoopSetup bicycle_setup(CbfKind kind, const BicycleParams& params = {});

}  // namespace barrier
