#include "barrier/systems.hpp"

namespace barrier {

ControlAffineSystem pendulum_system()
{
    ControlAffineSystem sys;
    sys.n = 2;
    sys.m = 1;
    sys.drift = [](const DualVector& x) {
        DualVector f(2);
        f << x(1), sin(x(0));
        return f;
    };
    sys.input_matrix = [](const DualVector&) {
        DualMatrix g(2, 1);
        g << Dual(0.0), Dual(1.0);
        return g;
    };
    return sys;
}

RelDeg2Output pendulum_output()
{
    RelDeg2Output out;
    out.p = 1;
    out.y = [](const DualVector& x) { return DualVector(x.head(1)); };
    out.y_dot = [](const DualVector& x) { return DualVector(x.tail(1)); };
    out.psi = [](const DualVector& y) { return pendulum_constraint(y(0)); };
    out.psi_gradient = [](const DualVector& y) {
        DualVector d(1);
        d(0) = Dual(-2.0) * y(0);
        return d;
    };
    return out;
}

CbfInstance pendulum_cbf(CbfKind kind, const PendulumParams& params)
{
    const ClassKappaE alpha(params.alpha_c);
    switch (kind) {
    case CbfKind::Hocbf: return CbfInstance::hocbf(pendulum_output(), alpha);
    case CbfKind::Recbf:
        return CbfInstance::recbf(pendulum_output(), alpha, ActivationTheta(params.mu_recbf), params.epsilon);
    case CbfKind::Backstepping:
        return CbfInstance::backstepping(pendulum_output(), VirtualController::linear_gain(params.K, 1),
                                         params.mu_backstepping);
    case CbfKind::Abc:
        return CbfInstance::abc(pendulum_output(), VirtualController::linear_gain(params.K, 1),
                                ActivationTheta(params.mu_abc));
    }
    throw std::logic_error("unknown CBF kind");
}

SafetyFilterSpec pendulum_filter(const PendulumParams& params)
{
    return {[](const Vector&) { return Vector::Zero(1).eval(); }, Vector::Constant(1, params.gamma), ExactLambda{},
            ClassKappaE(params.alpha_outer)};
}

Vector lane_keeping_desired(const Vector& x, const BicycleParams& p)
{
    Vector kd(2);
    kd << -p.k_eta * x(1) - p.k_theta * std::sin(x(2)), p.k_v * (p.v_d - x(3));
    return kd;
}

ControlAffineSystem bicycle_system(const BicycleParams& p)
{
    ControlAffineSystem sys;
    sys.n = 4;
    sys.m = 2;
    sys.drift = [](const DualVector& x) {
        DualVector f(4);
        f << x(3) * cos(x(2)), x(3) * sin(x(2)), Dual(0.0), Dual(0.0);
        return f;
    };
    sys.input_matrix = [L = p.L](const DualVector& x) {
        DualMatrix g = DualMatrix::Constant(4, 2, Dual(0.0));
        g(2, 0) = x(3) / Dual(L);
        g(3, 1) = Dual(1.0);
        return g;
    };
    return sys;
}

RelDeg2Output bicycle_output(const BicycleParams& p, double min_speed)
{
    RelDeg2Output out;
    out.p = 2;
    out.y = [](const DualVector& x) { return DualVector(x.head(2)); };
    out.y_dot = [](const DualVector& x) {
        DualVector yd(2);
        yd << x(3) * cos(x(2)), x(3) * sin(x(2));
        return yd;
    };
    out.psi = [p](const DualVector& y) { return bicycle_constraint(y, p); };
    out.psi_gradient = [xi = p.xi_o, eta = p.eta_o](const DualVector& y) {
        DualVector d(2);
        d << Dual(2.0) * (y(0) - Dual(xi)), Dual(2.0) * (y(1) - Dual(eta));
        return d;
    };
    out.in_domain = [xi = p.xi_o, eta = p.eta_o, min_speed](const Vector& x) {
        const bool at_center = x(0) == xi && x(1) == eta;
        const bool stalled = min_speed > 0.0 ? std::abs(x(3)) < min_speed : x(3) == 0.0;
        return !at_center && !stalled;
    };
    return out;
}

VirtualController bicycle_virtual_controller(const BicycleParams& p)
{
    VectorField desired = [vhat = p.vhat_d](const DualVector&) {
        DualVector kd(2);
        kd << Dual(vhat), Dual(0.0);
        return kd;
    };
    return VirtualController::smooth_filter(std::move(desired), ClassKappaE(p.alphahat_c), p.sigma, 2);
}

CbfInstance bicycle_cbf(CbfKind kind, const BicycleParams& p)
{
    const ClassKappaE alpha(p.alpha_c);
    switch (kind) {
    case CbfKind::Hocbf: return CbfInstance::hocbf(bicycle_output(p), alpha);
    case CbfKind::Recbf: return CbfInstance::recbf(bicycle_output(p), alpha, ActivationTheta(p.mu), p.epsilon);
    case CbfKind::Backstepping: return CbfInstance::backstepping(bicycle_output(p), bicycle_virtual_controller(p), p.mu);
    case CbfKind::Abc:
        return CbfInstance::abc(bicycle_output(p), bicycle_virtual_controller(p), ActivationTheta(p.mu));
    }
    throw std::logic_error("unknown CBF kind");
}

SafetyFilterSpec bicycle_filter(const BicycleParams& p)
{
    Vector gamma(2);
    gamma << p.gamma1, p.gamma2;
    return {[p](const Vector& x) { return lane_keeping_desired(x, p); }, gamma, ExactLambda{},
            ClassKappaE(p.alpha_c)};
}

ClosedLoopSetup pendulum_setup(CbfKind kind, const PendulumParams& params)
{
    return {pendulum_system(), pendulum_cbf(kind, params), pendulum_filter(params), params.x0};
}

ClosedLoopSetup bicycle_setup(CbfKind kind, const BicycleParams& params)
{
    return {bicycle_system(params), bicycle_cbf(kind, params), bicycle_filter(params), params.x0};
}

}  // namespace barrier
