#include "barrier/core.hpp"

#include <Eigen/SVD>

namespace barrier {

double lie_f(const ScalarField& field, const ControlAffineSystem& sys, const Vector& x)
{
    return grad(field, x).dot(sys.f(x));
}

RowVector lie_g(const ScalarField& field, const ControlAffineSystem& sys, const Vector& x)
{
    return grad(field, x).transpose() * sys.g(x);
}

Matrix lie_g_vector(const VectorField& map, const ControlAffineSystem& sys, const Vector& x)
{
    return jacobian(map, x) * sys.g(x);
}

Vector lie_f_vector(const VectorField& map, const ControlAffineSystem& sys, const Vector& x)
{
    return jacobian(map, x) * sys.f(x);
}

AssumptionReport check_assumptions(const ControlAffineSystem& sys, const RelDeg2Output& output,
                                   const std::vector<Vector>& samples)
{
    constexpr double kZeroTol = 1e-10;
    constexpr double kRankTol = 1e-8;

    AssumptionReport report;
    for (const Vector& x : samples) {
        if (!output.in_domain(x)) continue;
        ++report.samples;

        const Matrix lgy = lie_g_vector(output.y, sys, x);
        if (lgy.lpNorm<Eigen::Infinity>() >= kZeroTol) {
            report.relative_degree.push_back({x, "L_g y is not zero"});
        }

        const Matrix lglfy = lie_g_vector(output.y_dot, sys, x);
        Eigen::JacobiSVD<Matrix> svd(lglfy);
        const auto& sv = svd.singularValues();
        if (sv.size() < output.p || sv(output.p - 1) <= kRankTol) {
            report.relative_degree.push_back({x, "L_g L_f y is rank deficient"});
        }

        const DualVector y = output.y(lift(x));
        const Vector dpsi = values(output.psi_gradient(y));
        if (dpsi.norm() < kZeroTol && output.psi(y).value() <= 0.0) {
            report.constraint.push_back({x, "d psi/dy vanishes where psi <= 0"});
        }
    }
    return report;
}

}  // namespace barrier
