#include "barrier/virtual_controller.hpp"

namespace barrier {

VirtualController VirtualController::linear_gain(double gain, int p)
{
    if (!(gain > 0.0)) throw std::invalid_argument("virtual controller gain must be positive");
    return {LinearGain{gain}, p};
}

VirtualController VirtualController::smooth_filter(VectorField desired, ClassKappaE alpha_hat, double sigma, int p)
{
    if (!(sigma > 0.0)) throw std::invalid_argument("half-Sontag sigma must be positive");
    return {SmoothFilter{std::move(desired), alpha_hat.gain(), sigma}, p};
}

DualVector VirtualController::operator()(const RelDeg2Output& output, const DualVector& y) const
{
    if (const auto* lin = std::get_if<LinearGain>(&form_)) {
        return -Dual(lin->gain) * y;
    }

    const auto& sf = std::get<SmoothFilter>(form_);
    const DualVector kd = sf.desired(y);
    const DualVector b = output.psi_gradient(y);
    const Dual a = b.dot(kd) + Dual(sf.alpha_gain) * output.psi(y);
    const Dual b_norm2 = b.squaredNorm();
    if (std::sqrt(b_norm2.value()) < 1e-10 && a.value() < 0.0) {
        throw DomainError("virtual controller undefined at a constrained singular point (obstacle center)");
    }
    return kd + lambda_half_sontag(a, b_norm2, sf.sigma) * b;
}

std::vector<Vector> check_virtual_controller(const VirtualController& vc, const RelDeg2Output& output,
                                             const ClassKappaE& alpha, const std::vector<Vector>& ys,
                                             double margin)
{
    std::vector<Vector> failures;
    for (const Vector& y : ys) {
        const DualVector yd = lift(y);
        const double psi = output.psi(yd).value();
        const Vector dpsi = values(output.psi_gradient(yd));
        Vector kappa;
        try {
            kappa = vc(output, y);
        } catch (const DomainError&) {
            failures.push_back(y);
            continue;
        }
        if (!(dpsi.dot(kappa) + alpha(psi) > margin)) failures.push_back(y);
    }
    return failures;
}

}  // namespace barrier
