#include "barrier/cbf.hpp"

namespace barrier {

std::string_view to_string(CbfKind kind)
{
    switch (kind) {
    case CbfKind::Hocbf: return "hocbf";
    case CbfKind::Recbf: return "recbf";
    case CbfKind::Backstepping: return "backstepping";
    case CbfKind::Abc: return "abc";
    }
    return "unknown";
}

std::optional<CbfKind> parse_cbf_kind(std::string_view name)
{
    for (CbfKind k : {CbfKind::Hocbf, CbfKind::Recbf, CbfKind::Backstepping, CbfKind::Abc}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

Dual psi_rate(const RelDeg2Output& output, const DualVector& x)
{
    const DualVector y = output.y(x);
    return output.psi_gradient(y).dot(output.y_dot(x));
}

Dual hocbf_value(const RelDeg2Output& output, const ClassKappaE& alpha, const DualVector& x)
{
    const Dual psi = output.psi(output.y(x));
    return psi_rate(output, x) + alpha(psi);
}

Dual recbf_value(const RelDeg2Output& output, const ClassKappaE& alpha, const ActivationTheta& theta,
                 double epsilon, const DualVector& x)
{
    const Dual psi = output.psi(output.y(x));
    const Dual r = psi_rate(output, x) + alpha(psi);
    return psi - theta(Dual(epsilon) - r);
}

Dual backstepping_value(const RelDeg2Output& output, const VirtualController& kappa, double mu,
                        const DualVector& x)
{
    const DualVector y = output.y(x);
    const DualVector dev = output.y_dot(x) - kappa(output, y);
    return output.psi(y) - dev.squaredNorm() / Dual(2.0 * mu);
}

Dual switching_s(const RelDeg2Output& output, const VirtualController& kappa, const DualVector& x)
{
    const DualVector y = output.y(x);
    return output.psi_gradient(y).dot(output.y_dot(x) - kappa(output, y));
}

Dual abc_value(const RelDeg2Output& output, const VirtualController& kappa, const ActivationTheta& theta,
               const DualVector& x)
{
    const DualVector y = output.y(x);
    const Dual s = output.psi_gradient(y).dot(output.y_dot(x) - kappa(output, y));
    return output.psi(y) - theta(-s);
}

CbfInstance CbfInstance::hocbf(RelDeg2Output output, ClassKappaE alpha)
{
    CbfInstance inst(CbfKind::Hocbf, std::move(output));
    inst.alpha_ = alpha;
    return inst;
}

CbfInstance CbfInstance::recbf(RelDeg2Output output, ClassKappaE alpha, ActivationTheta theta, double epsilon)
{
    if (!(epsilon >= 0.0)) throw std::invalid_argument("rectified CBF epsilon must be non-negative");
    CbfInstance inst(CbfKind::Recbf, std::move(output));
    inst.alpha_ = alpha;
    inst.theta_ = theta;
    inst.epsilon_ = epsilon;
    inst.mu_ = theta.mu();
    return inst;
}

CbfInstance CbfInstance::backstepping(RelDeg2Output output, VirtualController kappa, double mu)
{
    if (!(mu > 0.0)) throw std::invalid_argument("backstepping mu must be positive");
    CbfInstance inst(CbfKind::Backstepping, std::move(output));
    inst.kappa_ = std::move(kappa);
    inst.mu_ = mu;
    return inst;
}

CbfInstance CbfInstance::abc(RelDeg2Output output, VirtualController kappa, ActivationTheta theta)
{
    CbfInstance inst(CbfKind::Abc, std::move(output));
    inst.kappa_ = std::move(kappa);
    inst.theta_ = theta;
    inst.mu_ = theta.mu();
    return inst;
}

Dual CbfInstance::evaluate(const DualVector& x) const
{
    switch (kind_) {
    case CbfKind::Hocbf: return hocbf_value(output_, *alpha_, x);
    case CbfKind::Recbf: return recbf_value(output_, *alpha_, *theta_, epsilon_, x);
    case CbfKind::Backstepping: return backstepping_value(output_, *kappa_, mu_, x);
    case CbfKind::Abc: return abc_value(output_, *kappa_, *theta_, x);
    }
    throw std::logic_error("unknown CBF kind");
}

double CbfInstance::value(const Vector& x) const
{
    output_.require_domain(x);
    return evaluate(lift(x)).value();
}

Vector CbfInstance::gradient(const Vector& x) const
{
    return value_and_gradient(x).second;
}

std::pair<double, Vector> CbfInstance::value_and_gradient(const Vector& x) const
{
    output_.require_domain(x);
    return value_and_grad([this](const DualVector& xd) { return evaluate(xd); }, x);
}

std::optional<double> CbfInstance::switching(const Vector& x) const
{
    if (!kappa_) return std::nullopt;
    output_.require_domain(x);
    return switching_s(output_, *kappa_, lift(x)).value();
}

ScalarField CbfInstance::as_field() const
{
    return [inst = *this](const DualVector& x) { return inst.evaluate(x); };
}

std::vector<RecbfConditionWitness> recbf_validity_condition(const CbfInstance& inst,
                                                            const ControlAffineSystem& sys,
                                                            const std::vector<Vector>& grid)
{
    if (inst.kind() != CbfKind::Recbf && inst.kind() != CbfKind::Hocbf) {
        throw std::invalid_argument("rectified CBF condition needs an inner class-K function");
    }
    const RelDeg2Output& output = inst.output();
    const ClassKappaE alpha = *inst.alpha_inner();
    const ScalarField psi_dot = [&output](const DualVector& x) { return psi_rate(output, x); };

    std::vector<RecbfConditionWitness> witnesses;
    for (const Vector& x : grid) {
        if (!output.in_domain(x)) continue;
        const double lglf = lie_g(psi_dot, sys, x).norm();
        const double r = hocbf_value(output, alpha, lift(x)).value();
        if (lglf < 1e-8 && r < inst.epsilon()) witnesses.push_back({x, lglf, r});
    }
    return witnesses;
}

}  // namespace barrier
