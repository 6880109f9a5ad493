// SPDX-License-Identifier: Apache-2.0

#include "zgp/formula.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace zgp {

std::string format_double(double value, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
}

namespace {

    std::string render_op(Op op, const std::string& a, const std::string& b, int /*digits*/)
    {
        if (is_binary(op)) {
            switch (op) {
            case Op::add:
                return "(" + a + " + " + b + ")";
            case Op::sub:
                return "(" + a + " - " + b + ")";
            case Op::mul:
                return "(" + a + "*" + b + ")";
            case Op::div:
                return "(" + a + "/" + b + ")";
            case Op::mod:
                return "(" + a + " % " + b + ")";
            default:
                break;
            }
        }
        return std::string(op_name(op)) + "(" + a + ")";
    }

} // namespace

std::string render_formula(const Genotype& genotype, const MaturationSchedule& schedule,
    const Eigen::VectorXd& weights, const std::vector<std::string>& leaf_names,
    int digits)
{
    const int n_e = genotype.num_elements();
    if (weights.size() != n_e) {
        throw std::invalid_argument("render_formula: weights length differs from element count");
    }
    if (genotype.num_fusions() != schedule.total_fusions()
        || schedule.num_elements != n_e) {
        throw std::invalid_argument("render_formula: schedule does not match genotype template");
    }

    // Expand the maturation on strings instead of values.
    std::vector<std::string> slot(n_e);
    for (int k = 0; k < n_e; ++k) {
        const Terminal& t = genotype.elements[k];
        if (t.is_variable()) {
            if (t.var_index < 0 || t.var_index >= static_cast<int>(leaf_names.size())) {
                throw std::out_of_range("render_formula: no name for variable index "
                    + std::to_string(t.var_index));
            }
            slot[k] = leaf_names[t.var_index];
        } else {
            slot[k] = format_double(t.value, digits);
        }
    }
    for (std::size_t f = 0; f < schedule.pairs.size(); ++f) {
        const auto [i, j] = schedule.pairs[f];
        const FusionGene& gene = genotype.fusions[f];
        const double r = gene.r();
        std::string first = render_op(gene.op1, slot[i], slot[j], digits);
        std::string second = render_op(gene.op2, slot[i], slot[j], digits);
        std::string fused = "(" + format_double(r, digits) + "*" + first + " + "
            + format_double(1.0 - r, digits) + "*" + second + ")";
        slot[gene.keep_first ? j : i] = std::move(fused);
    }

    std::string out;
    for (int k = 0; k < n_e; ++k) {
        const double w = weights[k];
        if (w == 0.0) {
            continue;
        }
        if (out.empty()) {
            out = format_double(w, digits) + "*" + slot[k];
        } else if (w < 0.0) {
            out += " - " + format_double(-w, digits) + "*" + slot[k];
        } else {
            out += " + " + format_double(w, digits) + "*" + slot[k];
        }
    }
    if (out.empty()) {
        return "0";
    }
    return out;
}

} // namespace zgp
