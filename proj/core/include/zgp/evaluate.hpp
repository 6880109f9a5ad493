// SPDX-License-Identifier: Apache-2.0

#ifndef ZGP_EVALUATE_HPP
#define ZGP_EVALUATE_HPP

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "zgp/genotype.hpp"
#include "zgp/schedule.hpp"

namespace zgp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Values of the final elements on a dataset: one column per zoetrope.
/// A column is valid when every entry is finite; only valid columns take
/// part in the linear fit.
struct ZoetropeMatrix {
    Matrix values; // N x n_e
    std::vector<bool> column_valid;

    int num_columns() const { return static_cast<int>(values.cols()); }
    Eigen::Index num_rows() const { return values.rows(); }
};

/// Applies one fusion to a pair of value vectors. The fused vector is
///   f = r * op1(e_i, e_j) + (1 - r) * op2(e_i, e_j)
/// elementwise, unary operators seeing e_i only. Returns (e_i, f) when the
/// gene keeps the first input, (f, e_j) otherwise. Operators use protected
/// semantics, so the result is finite for finite inputs.
std::pair<Vector, Vector> fuse_values(const Vector& e_i, const Vector& e_j, const FusionGene& gene);

/// Runs the maturation schedule on a dataset: initializes one value vector
/// per element from its terminal (variable -> column of X, constant ->
/// constant vector), applies the fusions in schedule order, and returns the
/// final vectors as columns. Throws std::out_of_range if a variable index
/// is not a column of X.
ZoetropeMatrix mature(const Genotype& genotype, const Matrix& X, const MaturationSchedule& schedule);

} // namespace zgp

#endif
