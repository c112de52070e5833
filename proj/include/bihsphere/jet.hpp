#pragma once

/// Truncated multivariate Taylor arithmetic ("jets"): up to 4 variables,
/// total order up to 4. A jet stores the Taylor coefficients d^a f / a!
/// of a scalar at a point, densely, in graded-lexicographic order, so
/// that multiplication is a plain truncated convolution. All operations
/// are pure; jets are immutable values.

#include <array>
#include <vector>

namespace bihsphere {

inline constexpr int kMaxVars = 4;
inline constexpr int kMaxOrder = 4;

// Multi-index over at most kMaxVars variables; unused entries stay 0.
using MultiIndex = std::array<int, kMaxVars>;

inline int degree(const MultiIndex& a) { return a[0] + a[1] + a[2] + a[3]; }

class Jet {
public:
    // Default: the zero scalar (1 variable, order 0).
    Jet() = default;

    static Jet constant(double value, int num_vars, int order);
    // Coordinate jet: constant term `value`, unit first-order coefficient in
    // slot `index` (when order >= 1), zero elsewhere.
    static Jet variable(int index, double value, int num_vars, int order);

    int num_vars() const { return num_vars_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(coeffs_.size()); }

    double value() const { return coeffs_[0]; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    // Taylor coefficient at a (d^a f / a!).
    double coeff(const MultiIndex& alpha) const;
    // Derivative d^a f = a! * coeff(a). Throws if |a| exceeds the order.
    double partial(const MultiIndex& alpha) const;

    // Copy truncated to a lower (or equal) order.
    Jet truncated(int order) const;

    // Jet of df/dx_i, order reduced by one. Throws on order-0 input.
    Jet derive(int index) const;

    Jet operator-() const;
    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

    friend Jet operator+(const Jet& a, double s);
    friend Jet operator+(double s, const Jet& a);
    friend Jet operator-(const Jet& a, double s);
    friend Jet operator-(double s, const Jet& a);
    friend Jet operator*(const Jet& a, double s);
    friend Jet operator*(double s, const Jet& a);
    friend Jet operator/(const Jet& a, double s);

    Jet& operator+=(const Jet& b) { *this = *this + b; return *this; }
    Jet& operator-=(const Jet& b) { *this = *this - b; return *this; }
    Jet& operator*=(const Jet& b) { *this = *this * b; return *this; }

private:
    Jet(int num_vars, int order);  // zero jet of given shape

    int num_vars_ = 1;
    int order_ = 0;
    std::vector<double> coeffs_ = {0.0};
};

// Elementary functions lifted to jets by univariate Taylor composition
// around the constant term. Domain violations at the constant term throw
// std::domain_error naming the function and offending value.
enum class Elementary { Sin, Cos, Exp, Sqrt, Log, Neg, Recip };

Jet apply(Elementary f, const Jet& a);

Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet exp(const Jet& a);
Jet sqrt(const Jet& a);
Jet log(const Jet& a);
Jet recip(const Jet& a);
// Integer power; negative exponents require a nonzero constant term.
Jet pow(const Jet& a, int exponent);

// Number of Taylor slots for (num_vars, order): C(order + num_vars, num_vars).
int jet_slot_count(int num_vars, int order);
// Multi-indices in storage order for (num_vars, order).
const std::vector<MultiIndex>& jet_slots(int num_vars, int order);

}  // namespace bihsphere
