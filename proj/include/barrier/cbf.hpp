#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "barrier/core.hpp"
#include "barrier/virtual_controller.hpp"

namespace barrier {

enum class CbfKind { Hocbf, Recbf, Backstepping, Abc };

std::string_view to_string(CbfKind kind);
std::optional<CbfKind> parse_cbf_kind(std::string_view name);

// Traced building blocks. All take the state as a DualVector.

/// psidot(y(x), ydot(x)) = d psi/dy . ydot
Dual psi_rate(const RelDeg2Output& output, const DualVector& x);

/// psidot + alpha(psi); the high-order CBF, and r(x) inside the rectified CBF.
Dual hocbf_value(const RelDeg2Output& output, const ClassKappaE& alpha, const DualVector& x);

/// psi - ReQU(-(r - eps)) / (2 mu)
Dual recbf_value(const RelDeg2Output& output, const ClassKappaE& alpha, const ActivationTheta& theta,
                 double epsilon, const DualVector& x);

/// psi - |ydot - kappa(y)|^2 / (2 mu)
Dual backstepping_value(const RelDeg2Output& output, const VirtualController& kappa, double mu,
                        const DualVector& x);

/// s = d psi/dy . (ydot - kappa(y))
Dual switching_s(const RelDeg2Output& output, const VirtualController& kappa, const DualVector& x);

/// psi - Theta(-s)
Dual abc_value(const RelDeg2Output& output, const VirtualController& kappa, const ActivationTheta& theta,
               const DualVector& x);

/// One CBF construction bound to its output and parameters.
class CbfInstance
{
public:
    static CbfInstance hocbf(RelDeg2Output output, ClassKappaE alpha);
    static CbfInstance recbf(RelDeg2Output output, ClassKappaE alpha, ActivationTheta theta, double epsilon);
    static CbfInstance backstepping(RelDeg2Output output, VirtualController kappa, double mu);
    static CbfInstance abc(RelDeg2Output output, VirtualController kappa, ActivationTheta theta);

    CbfKind kind() const { return kind_; }
    const RelDeg2Output& output() const { return output_; }
    const std::optional<ClassKappaE>& alpha_inner() const { return alpha_; }
    const std::optional<ActivationTheta>& theta() const { return theta_; }
    const std::optional<VirtualController>& kappa() const { return kappa_; }
    double epsilon() const { return epsilon_; }
    double mu() const { return mu_; }

    /// h traced at x. No domain check.
    Dual evaluate(const DualVector& x) const;

    /// h(x); throws DomainError outside E.
    double value(const Vector& x) const;

    /// Exact grad h(x) by forward-mode AD; throws DomainError outside E.
    Vector gradient(const Vector& x) const;

    /// h and grad h from one traced evaluation.
    std::pair<double, Vector> value_and_gradient(const Vector& x) const;

    /// psi(y(x)).
    double constraint(const Vector& x) const { return output_.constraint(x); }

    /// Switching function s(x) for the constructions built on a virtual
    /// controller (ABC and backstepping); empty otherwise.
    std::optional<double> switching(const Vector& x) const;

    ScalarField as_field() const;

private:
    CbfInstance(CbfKind kind, RelDeg2Output output) : kind_(kind), output_(std::move(output)) {}

    CbfKind kind_;
    RelDeg2Output output_;
    std::optional<ClassKappaE> alpha_;
    std::optional<ActivationTheta> theta_;
    std::optional<VirtualController> kappa_;
    double epsilon_ = 0.0;
    double mu_ = 0.0;
};

inline Vector cbf_gradient(const CbfInstance& inst, const Vector& x) { return inst.gradient(x); }

struct RecbfConditionWitness
{
    Vector x;
    double lglf_psi_norm = 0.0;
    double r = 0.0;
};

/// States where L_g L_f psi vanishes (norm < 1e-8) but psidot + alpha(psi) < eps.
/// An empty result means the rectified CBF validity condition holds on the grid.
std::vector<RecbfConditionWitness> recbf_validity_condition(const CbfInstance& inst,
                                                            const ControlAffineSystem& sys,
                                                            const std::vector<Vector>& grid);

}  // namespace barrier
