// SPDX-License-Identifier: Apache-2.0

#ifndef ZGP_FORMULA_HPP
#define ZGP_FORMULA_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "zgp/genotype.hpp"
#include "zgp/schedule.hpp"

namespace zgp {

/// Formats a double with the given number of significant digits (printf %g).
/// 17 digits reproduce the value exactly on re-parse.
std::string format_double(double value, int digits);

/// Renders the full analytical expression sum_j alpha_j * Z_j with every
/// zoetrope expanded into nested parenthesized sub-expressions.
///
/// Binary operators print infix ("(a + b)", "(a*b)", "(a % b)" for the
/// protected modulo), unary operators print as calls ("sqrt(x)"). Fusions
/// print as "(r*A + s*B)" with s = 1-r. Terms whose weight is zero are
/// omitted; if every weight is zero the result is "0". `leaf_names[k]` is
/// substituted verbatim for variable index k, so callers may pass plain
/// feature names or composite expressions.
std::string render_formula(const Genotype& genotype, const MaturationSchedule& schedule,
    const Eigen::VectorXd& weights, const std::vector<std::string>& leaf_names,
    int digits = 6);

} // namespace zgp

#endif
