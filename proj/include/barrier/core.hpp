#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "barrier/autodiff.hpp"

namespace barrier {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using RowVector = Eigen::RowVectorXd;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Traced (AD-capable) maps. Plain evaluation lifts the argument to constants.
using ScalarField = std::function<Dual(const DualVector&)>;
using VectorField = std::function<DualVector(const DualVector&)>;
using MatrixField = std::function<DualMatrix(const DualVector&)>;
using DomainPredicate = std::function<bool(const Vector&)>;

/// A state lies outside the extended set a function is defined on.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// xdot = f(x) + g(x) u with f: R^n -> R^n, g: R^n -> R^{n x m}.
struct ControlAffineSystem
{
    int n = 0;
    int m = 0;
    VectorField drift;
    MatrixField input_matrix;

    Vector f(const Vector& x) const { return values(drift(lift(x))); }
    Matrix g(const Vector& x) const { return values(input_matrix(lift(x))); }
    Vector closed_loop(const Vector& x, const Vector& u) const { return f(x) + g(x) * u; }
};

/// Output y: R^n -> R^p of relative degree two with constraint psi: R^p -> R.
///
/// `y_dot` (= L_f y) and `psi_gradient` (= d psi / d y) are carried in closed
/// form so that the CBF constructions stay first-order traceable; both are
/// checked against AD of `y` and `psi` in the tests.
struct RelDeg2Output
{
    int p = 0;
    VectorField y;
    VectorField y_dot;
    ScalarField psi;
    VectorField psi_gradient;
    DomainPredicate in_domain = [](const Vector&) { return true; };

    /// psi(y(x)) on a state.
    double constraint(const Vector& x) const { return psi(y(lift(x))).value(); }

    void require_domain(const Vector& x) const
    {
        if (!in_domain(x)) throw DomainError("state outside the extended set E");
    }
};

/// Linear extended class-K function alpha(r) = gain * r.
class ClassKappaE
{
public:
    explicit ClassKappaE(double gain) : gain_(gain)
    {
        if (!(gain > 0.0)) throw std::invalid_argument("class-K gain must be positive");
    }

    double gain() const { return gain_; }

    template <typename Scalar>
    Scalar operator()(const Scalar& r) const
    {
        return Scalar(gain_) * r;
    }

private:
    double gain_;
};

/// Rectified activation Theta(s) = ReQU(s) / (2 mu).
class ActivationTheta
{
public:
    explicit ActivationTheta(double mu) : mu_(mu)
    {
        if (!(mu > 0.0)) throw std::invalid_argument("activation scale mu must be positive");
    }

    double mu() const { return mu_; }

    template <typename Scalar>
    Scalar operator()(const Scalar& s) const
    {
        return requ(s) / Scalar(2.0 * mu_);
    }

    double derivative(double s) const { return requ_prime(s) / (2.0 * mu_); }

private:
    double mu_;
};

double lie_f(const ScalarField& field, const ControlAffineSystem& sys, const Vector& x);
RowVector lie_g(const ScalarField& field, const ControlAffineSystem& sys, const Vector& x);

/// L_g of a vector-valued map: (d map / dx) g(x), one row per output.
Matrix lie_g_vector(const VectorField& map, const ControlAffineSystem& sys, const Vector& x);
Vector lie_f_vector(const VectorField& map, const ControlAffineSystem& sys, const Vector& x);

struct AssumptionViolation
{
    Vector x;
    std::string what;
};

struct AssumptionReport
{
    std::size_t samples = 0;
    std::vector<AssumptionViolation> relative_degree;  // L_g y != 0 or rank(L_g L_f y) < p
    std::vector<AssumptionViolation> constraint;       // d psi/dy = 0 with psi <= 0

    bool ok() const { return relative_degree.empty() && constraint.empty(); }
};

/// Sampled checks of the relative-degree-two and single-integrator
/// assumptions. Samples outside the output's extended set are skipped.
AssumptionReport check_assumptions(const ControlAffineSystem& sys, const RelDeg2Output& output,
                                   const std::vector<Vector>& samples);

}  // namespace barrier
