#pragma once

// Forward-mode dual numbers with a short dense partials vector.
//
// A Dual carries a value and the partial derivatives with respect to up to
// kMaxSeed seeded variables. A Dual with an empty partials vector is a
// constant; mixing constants and seeded duals is allowed everywhere.

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace barrier {

inline constexpr int kMaxSeed = 8;

using Partials = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxSeed, 1>;

/// Raised when a traced field hits a primitive outside its domain
/// (division by zero, square root of a negative number).
class EvaluationError : public std::runtime_error
{
public:
    EvaluationError(std::string primitive, const std::string& what)
        : std::runtime_error(primitive + ": " + what), primitive_(std::move(primitive))
    {}

    const std::string& primitive() const noexcept { return primitive_; }

private:
    std::string primitive_;
};

class Dual
{
public:
    Dual() = default;
    Dual(double value) : value_(value) {}  // NOLINT: implicit lift of constants
    Dual(double value, Partials partials) : value_(value), partials_(std::move(partials)) {}

    /// Independent variable number `index` out of `count`.
    static Dual variable(double value, int index, int count)
    {
        Partials d = Partials::Zero(count);
        d(index) = 1.0;
        return {value, std::move(d)};
    }

    double value() const { return value_; }
    const Partials& partials() const { return partials_; }
    bool is_constant() const { return partials_.size() == 0; }

    double partial(int i) const { return i < partials_.size() ? partials_(i) : 0.0; }

    Dual& operator+=(const Dual& o);
    Dual& operator-=(const Dual& o);
    Dual& operator*=(const Dual& o);
    Dual& operator/=(const Dual& o);

private:
    double value_ = 0.0;
    Partials partials_;
};

namespace detail {

// ca * a + cb * b, treating empty vectors as zero.
inline Partials combine(double ca, const Partials& a, double cb, const Partials& b)
{
    if (a.size() == 0 && b.size() == 0) return {};
    if (a.size() == 0) return cb * b;
    if (b.size() == 0) return ca * a;
    if (a.size() != b.size()) {
        throw EvaluationError("seed", "mismatched partials dimensions");
    }
    return ca * a + cb * b;
}

inline Partials scaled(double c, const Partials& a)
{
    if (a.size() == 0) return {};
    return c * a;
}

}  // namespace detail

inline Dual operator+(const Dual& a, const Dual& b)
{
    return {a.value() + b.value(), detail::combine(1.0, a.partials(), 1.0, b.partials())};
}

inline Dual operator-(const Dual& a, const Dual& b)
{
    return {a.value() - b.value(), detail::combine(1.0, a.partials(), -1.0, b.partials())};
}

inline Dual operator-(const Dual& a) { return {-a.value(), detail::scaled(-1.0, a.partials())}; }
inline Dual operator+(const Dual& a) { return a; }

inline Dual operator*(const Dual& a, const Dual& b)
{
    return {a.value() * b.value(), detail::combine(b.value(), a.partials(), a.value(), b.partials())};
}

inline Dual operator/(const Dual& a, const Dual& b)
{
    if (b.value() == 0.0) throw EvaluationError("division", "denominator is zero");
    const double inv = 1.0 / b.value();
    const double q = a.value() * inv;
    return {q, detail::combine(inv, a.partials(), -q * inv, b.partials())};
}

inline Dual& Dual::operator+=(const Dual& o) { return *this = *this + o; }
inline Dual& Dual::operator-=(const Dual& o) { return *this = *this - o; }
inline Dual& Dual::operator*=(const Dual& o) { return *this = *this * o; }
inline Dual& Dual::operator/=(const Dual& o) { return *this = *this / o; }

// Comparisons act on the value only.
inline bool operator==(const Dual& a, const Dual& b) { return a.value() == b.value(); }
inline bool operator!=(const Dual& a, const Dual& b) { return a.value() != b.value(); }
inline bool operator<(const Dual& a, const Dual& b) { return a.value() < b.value(); }
inline bool operator>(const Dual& a, const Dual& b) { return a.value() > b.value(); }
inline bool operator<=(const Dual& a, const Dual& b) { return a.value() <= b.value(); }
inline bool operator>=(const Dual& a, const Dual& b) { return a.value() >= b.value(); }

inline Dual sin(const Dual& a)
{
    return {std::sin(a.value()), detail::scaled(std::cos(a.value()), a.partials())};
}

inline Dual cos(const Dual& a)
{
    return {std::cos(a.value()), detail::scaled(-std::sin(a.value()), a.partials())};
}

inline Dual sqrt(const Dual& a)
{
    if (a.value() < 0.0) throw EvaluationError("sqrt", "argument is negative");
    const double r = std::sqrt(a.value());
    if (r == 0.0) {
        if (a.is_constant() || a.partials().isZero(0.0)) return {0.0, detail::scaled(0.0, a.partials())};
        throw EvaluationError("sqrt", "not differentiable at zero");
    }
    return {r, detail::scaled(0.5 / r, a.partials())};
}

inline Dual abs(const Dual& a) { return a.value() < 0.0 ? -a : a; }

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.value(); }

// Max/min of smooth arguments; differentiable away from ties.
template <typename Scalar>
Scalar smooth_max(const Scalar& a, const Scalar& b)
{
    return value_of(a) >= value_of(b) ? a : b;
}

template <typename Scalar>
Scalar smooth_min(const Scalar& a, const Scalar& b)
{
    return value_of(a) <= value_of(b) ? a : b;
}

/// max(s, 0). Subderivative 0 at the kink; differentiating across it is
/// outside the smoothness contract.
template <typename Scalar>
Scalar relu(const Scalar& s)
{
    return value_of(s) > 0.0 ? s : Scalar(0.0);
}

/// Rectified quadratic unit: s^2 for s > 0, else 0. C^1 with derivative 0 at 0.
template <typename Scalar>
Scalar requ(const Scalar& s)
{
    return value_of(s) > 0.0 ? Scalar(s * s) : Scalar(0.0);
}

inline double requ_prime(double s) { return s > 0.0 ? 2.0 * s : 0.0; }

}  // namespace barrier

namespace Eigen {

template <>
struct NumTraits<barrier::Dual> : GenericNumTraits<double>
{
    using Real = barrier::Dual;
    using NonInteger = barrier::Dual;
    using Nested = barrier::Dual;
    using Literal = double;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 3,
        MulCost = 3
    };
    static inline Real epsilon() { return NumTraits<double>::epsilon(); }
    static inline Real dummy_precision() { return NumTraits<double>::dummy_precision(); }
    static inline int digits10() { return NumTraits<double>::digits10(); }
};

}  // namespace Eigen

namespace barrier {

using DualVector = Eigen::Matrix<Dual, Eigen::Dynamic, 1>;
using DualMatrix = Eigen::Matrix<Dual, Eigen::Dynamic, Eigen::Dynamic>;

/// Seeds every component of x as an independent variable.
inline DualVector seed(const Eigen::VectorXd& x)
{
    const int n = static_cast<int>(x.size());
    if (n > kMaxSeed) throw std::invalid_argument("seed: dimension exceeds kMaxSeed");
    DualVector out(n);
    for (int i = 0; i < n; ++i) out(i) = Dual::variable(x(i), i, n);
    return out;
}

/// Lifts x to constant duals (no partials).
inline DualVector lift(const Eigen::VectorXd& x) { return x.cast<Dual>(); }

inline Eigen::VectorXd values(const DualVector& x)
{
    Eigen::VectorXd out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = x(i).value();
    return out;
}

inline Eigen::MatrixXd values(const DualMatrix& x)
{
    Eigen::MatrixXd out(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j) out(i, j) = x(i, j).value();
    return out;
}

/// Gradient of a scalar field at x. `field` maps a DualVector to a Dual.
template <typename Field>
Eigen::VectorXd grad(const Field& field, const Eigen::VectorXd& x)
{
    const Dual y = field(seed(x));
    Eigen::VectorXd g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) g(i) = y.partial(static_cast<int>(i));
    return g;
}

/// Value and gradient from one traced evaluation.
template <typename Field>
std::pair<double, Eigen::VectorXd> value_and_grad(const Field& field, const Eigen::VectorXd& x)
{
    const Dual y = field(seed(x));
    Eigen::VectorXd g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) g(i) = y.partial(static_cast<int>(i));
    return {y.value(), g};
}

/// Jacobian (rows = outputs) of a vector field at x.
template <typename Field>
Eigen::MatrixXd jacobian(const Field& field, const Eigen::VectorXd& x)
{
    const DualVector y = field(seed(x));
    Eigen::MatrixXd j(y.size(), x.size());
    for (Eigen::Index r = 0; r < y.size(); ++r)
        for (Eigen::Index c = 0; c < x.size(); ++c) j(r, c) = y(r).partial(static_cast<int>(c));
    return j;
}

}  // namespace barrier
