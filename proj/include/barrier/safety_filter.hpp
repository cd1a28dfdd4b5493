#pragma once

#include <functional>

#include "barrier/cbf.hpp"
#include "barrier/core.hpp"
#include "barrier/virtual_controller.hpp"

namespace barrier {

using DesiredController = std::function<Vector(const Vector&)>;

/// Min-norm safety filter around a desired controller.
struct SafetyFilterSpec
{
    DesiredController desired;
    Vector gamma_weights;  // diagonal of Gamma, all entries > 0
    LambdaKind lambda = ExactLambda{};
    ClassKappaE alpha_outer{1.0};

    SafetyFilterSpec(DesiredController desired, Vector gamma_weights, LambdaKind lambda, ClassKappaE alpha_outer);
};

/// Everything the filter computes at one state.
struct FilterEvaluation
{
    Vector u;
    Vector desired;
    double h = 0.0;
    double lf_h = 0.0;
    RowVector lg_h;
    double a = 0.0;       // hdot(x, k_d(x)) + alpha(h)
    Vector b;             // Gamma^{-1} L_g h^T
    double b_norm2 = 0.0;  // |b|^2_Gamma
    double lambda = 0.0;
};

/// k(x) = k_d(x) + lambda(a, |b|^2_Gamma) b with one gradient evaluation of h.
FilterEvaluation evaluate_filter(const SafetyFilterSpec& spec, const CbfInstance& inst,
                                 const ControlAffineSystem& sys, const Vector& x);

inline Vector safety_filter(const SafetyFilterSpec& spec, const CbfInstance& inst, const ControlAffineSystem& sys,
                            const Vector& x)
{
    return evaluate_filter(spec, inst, sys, x).u;
}

}  // namespace barrier
