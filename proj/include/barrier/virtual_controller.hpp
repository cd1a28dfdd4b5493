#pragma once

#include <cmath>
#include <variant>

#include "barrier/core.hpp"

namespace barrier {

/// Multiplier of the min-norm safety filter: 0 if b <= 0, else max{0, -a/b}.
template <typename Scalar>
Scalar lambda_exact(const Scalar& a, const Scalar& b)
{
    if (value_of(b) <= 0.0) return Scalar(0.0);
    return relu(Scalar(-a / b));
}

/// Half-Sontag smoothing of lambda_exact; recovers it as sigma -> 0.
template <typename Scalar>
Scalar lambda_half_sontag(const Scalar& a, const Scalar& b, double sigma)
{
    if (value_of(b) == 0.0) return Scalar(0.0);
    using std::sqrt;
    return (-a + sqrt(a * a + Scalar(sigma) * b * b)) / (Scalar(2.0) * b);
}

struct ExactLambda
{};

struct HalfSontagLambda
{
    double sigma = 0.0;
};

using LambdaKind = std::variant<ExactLambda, HalfSontagLambda>;

template <typename Scalar>
Scalar apply_lambda(const LambdaKind& kind, const Scalar& a, const Scalar& b)
{
    if (const auto* hs = std::get_if<HalfSontagLambda>(&kind)) return lambda_half_sontag(a, b, hs->sigma);
    return lambda_exact(a, b);
}

/// Safe controller kappa(y) for the single integrator ydot = kappa(y).
///
/// Two forms ship: a linear gain kappa(y) = -K y, and a smooth filter that
/// runs a desired velocity kappa_d(y) through the half-Sontag safety filter
/// for the single integrator with unit weights.
class VirtualController
{
public:
    struct LinearGain
    {
        double gain = 0.0;
    };

    struct SmoothFilter
    {
        VectorField desired;  // kappa_d: R^p -> R^p
        double alpha_gain = 1.0;
        double sigma = 1e-3;
    };

    static VirtualController linear_gain(double gain, int p);
    static VirtualController smooth_filter(VectorField desired, ClassKappaE alpha_hat, double sigma, int p);

    int p() const { return p_; }
    bool is_linear() const { return std::holds_alternative<LinearGain>(form_); }
    const std::variant<LinearGain, SmoothFilter>& form() const { return form_; }

    /// kappa(y) traced through `output.psi` and `output.psi_gradient`.
    /// Throws DomainError at a constrained singular point of the smooth filter.
    DualVector operator()(const RelDeg2Output& output, const DualVector& y) const;

    Vector operator()(const RelDeg2Output& output, const Vector& y) const
    {
        return values((*this)(output, lift(y)));
    }

private:
    VirtualController(std::variant<LinearGain, SmoothFilter> form, int p) : form_(std::move(form)), p_(p) {}

    std::variant<LinearGain, SmoothFilter> form_;
    int p_ = 0;
};

inline Vector virtual_kappa(const VirtualController& vc, const RelDeg2Output& output, const Vector& y)
{
    return vc(output, y);
}

/// Sampled check that psidot(y, kappa(y)) > -alpha(psi(y)) with a margin.
/// Returns the output points that fail.
std::vector<Vector> check_virtual_controller(const VirtualController& vc, const RelDeg2Output& output,
                                             const ClassKappaE& alpha, const std::vector<Vector>& ys,
                                             double margin = 1e-10);

}  // namespace barrier
