// SPDX-License-Identifier: Apache-2.0

#include "zgp/operators.hpp"

#include <stdexcept>

namespace zgp {

OperatorSet default_operator_set()
{
    return { Op::add, Op::sub, Op::mul, Op::div, Op::abs, Op::sqrt,
        Op::sin, Op::cos, Op::floor, Op::ceil, Op::trunc, Op::mod };
}

bool is_binary(Op op)
{
    switch (op) {
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div:
    case Op::mod:
        return true;
    default:
        return false;
    }
}

std::string_view op_name(Op op)
{
    switch (op) {
    case Op::add:
        return "add";
    case Op::sub:
        return "sub";
    case Op::mul:
        return "mul";
    case Op::div:
        return "div";
    case Op::mod:
        return "mod";
    case Op::abs:
        return "abs";
    case Op::sqrt:
        return "sqrt";
    case Op::sin:
        return "sin";
    case Op::cos:
        return "cos";
    case Op::floor:
        return "floor";
    case Op::ceil:
        return "ceil";
    case Op::trunc:
        return "int";
    }
    return "?";
}

Op op_from_name(std::string_view name)
{
    for (Op op : default_operator_set()) {
        if (op_name(op) == name) {
            return op;
        }
    }
    throw std::invalid_argument("unknown operator name: " + std::string(name));
}

double apply_binary(Op op, double a, double b)
{
    double r = 0.0;
    switch (op) {
    case Op::add:
        r = a + b;
        break;
    case Op::sub:
        r = a - b;
        break;
    case Op::mul:
        r = a * b;
        break;
    case Op::div:
        r = std::abs(b) > kDivisorEpsilon ? a / b : 1.0;
        break;
    case Op::mod:
        r = std::abs(b) > kDivisorEpsilon ? std::fmod(a, b) : 0.0;
        break;
    default:
        throw std::invalid_argument("apply_binary: operator is unary");
    }
    return clamp_value(r);
}

double apply_unary(Op op, double a)
{
    double r = 0.0;
    switch (op) {
    case Op::abs:
        r = std::abs(a);
        break;
    case Op::sqrt:
        r = std::sqrt(std::abs(a));
        break;
    case Op::sin:
        r = std::sin(a);
        break;
    case Op::cos:
        r = std::cos(a);
        break;
    case Op::floor:
        r = std::floor(a);
        break;
    case Op::ceil:
        r = std::ceil(a);
        break;
    case Op::trunc:
        r = std::trunc(a);
        break;
    default:
        throw std::invalid_argument("apply_unary: operator is binary");
    }
    return clamp_value(r);
}

} // namespace zgp
