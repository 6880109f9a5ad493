// SPDX-License-Identifier: Apache-2.0

#ifndef ZGP_OPERATORS_HPP
#define ZGP_OPERATORS_HPP

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace zgp {

/// Primitive operators available to fusion genes. Binary operators combine
/// both elements of a pair; unary operators are applied to the first element
/// only.
enum class Op : int {
    add = 0,
    sub,
    mul,
    div,
    mod,
    abs,
    sqrt,
    sin,
    cos,
    floor,
    ceil,
    trunc, // printed as "int": truncation toward zero
};

using OperatorSet = std::vector<Op>;

/// The default operator set: {+, -, *, /, abs, sqrt, sin, cos, floor, ceil,
/// int, mod}, in this order.
OperatorSet default_operator_set();

bool is_binary(Op op);
inline bool is_unary(Op op) { return !is_binary(op); }

std::string_view op_name(Op op);

/// Inverse of op_name. Throws std::invalid_argument for unknown names.
Op op_from_name(std::string_view name);

/// Values are kept inside this magnitude so that chained arithmetic can
/// never overflow a double to infinity.
inline constexpr double kValueClamp = 1e150;

/// Divisor magnitudes at or below this threshold trigger the protected
/// fallbacks of div and mod.
inline constexpr double kDivisorEpsilon = 1e-12;

inline double clamp_value(double x)
{
    if (std::isnan(x)) {
        return x;
    }
    if (x > kValueClamp) {
        return kValueClamp;
    }
    if (x < -kValueClamp) {
        return -kValueClamp;
    }
    return x;
}

/// Protected application of a binary operator. div returns 1 when the
/// divisor is (near) zero, mod returns 0. Results are clamped.
double apply_binary(Op op, double a, double b);

/// Protected application of a unary operator to its single argument.
/// sqrt operates on |x|, int truncates toward zero. Results are clamped.
double apply_unary(Op op, double a);

/// Dispatches on arity: unary operators see only `a`.
inline double apply_op(Op op, double a, double b)
{
    return is_binary(op) ? apply_binary(op, a, b) : apply_unary(op, a);
}

} // namespace zgp

#endif
