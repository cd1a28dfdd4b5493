#include "barrier/safety_filter.hpp"

namespace barrier {

SafetyFilterSpec::SafetyFilterSpec(DesiredController desired_, Vector gamma_weights_, LambdaKind lambda_,
                                   ClassKappaE alpha_outer_)
    : desired(std::move(desired_)), gamma_weights(std::move(gamma_weights_)), lambda(lambda_), alpha_outer(alpha_outer_)
{
    if (gamma_weights.size() == 0 || !(gamma_weights.array() > 0.0).all()) {
        throw std::invalid_argument("filter weights Gamma must be positive");
    }
    if (const auto* hs = std::get_if<HalfSontagLambda>(&lambda); hs && !(hs->sigma > 0.0)) {
        throw std::invalid_argument("half-Sontag sigma must be positive");
    }
}

FilterEvaluation evaluate_filter(const SafetyFilterSpec& spec, const CbfInstance& inst,
                                 const ControlAffineSystem& sys, const Vector& x)
{
    if (spec.gamma_weights.size() != sys.m) throw std::invalid_argument("Gamma size does not match input dimension");

    FilterEvaluation ev;
    const auto [h, grad_h] = inst.value_and_gradient(x);
    ev.h = h;
    ev.lf_h = grad_h.dot(sys.f(x));
    ev.lg_h = grad_h.transpose() * sys.g(x);
    ev.desired = spec.desired(x);
    ev.a = ev.lf_h + ev.lg_h.dot(ev.desired) + spec.alpha_outer(h);
    ev.b = ev.lg_h.transpose().cwiseQuotient(spec.gamma_weights);
    ev.b_norm2 = ev.b.dot(spec.gamma_weights.asDiagonal() * ev.b);
    ev.lambda = apply_lambda(spec.lambda, ev.a, ev.b_norm2);
    ev.u = ev.desired + ev.lambda * ev.b;
    return ev;
}

}  // namespace barrier
