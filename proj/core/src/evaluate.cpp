// SPDX-License-Identifier: Apache-2.0

#include "zgp/evaluate.hpp"

#include <cmath>
#include <stdexcept>

namespace zgp {

namespace {

    // Writes the fused vector of `gene` over (a, b) into `out`. The weights
    // are applied as r*v1 + (1-r)*v2 per row, then clamped like any other
    // operator output so later stages cannot overflow.
    void fuse_into(const Vector& a, const Vector& b, const FusionGene& gene, Vector& out)
    {
        const double r = gene.r();
        const double s = 1.0 - r;
        const Eigen::Index n = a.size();
        out.resize(n);
        for (Eigen::Index row = 0; row < n; ++row) {
            const double v1 = apply_op(gene.op1, a[row], b[row]);
            const double v2 = apply_op(gene.op2, a[row], b[row]);
            out[row] = clamp_value(r * v1 + s * v2);
        }
    }

} // namespace

std::pair<Vector, Vector> fuse_values(const Vector& e_i, const Vector& e_j, const FusionGene& gene)
{
    if (e_i.size() != e_j.size()) {
        throw std::invalid_argument("fuse_values: vectors differ in length");
    }
    Vector fused;
    fuse_into(e_i, e_j, gene, fused);
    if (gene.keep_first) {
        return { e_i, std::move(fused) };
    }
    return { std::move(fused), e_j };
}

ZoetropeMatrix mature(const Genotype& genotype, const Matrix& X, const MaturationSchedule& schedule)
{
    if (genotype.num_elements() != schedule.num_elements
        || genotype.num_fusions() != schedule.total_fusions()) {
        throw std::invalid_argument("mature: schedule does not match genotype template");
    }

    const Eigen::Index rows = X.rows();
    const int n_e = genotype.num_elements();

    std::vector<Vector> slot(n_e);
    for (int k = 0; k < n_e; ++k) {
        const Terminal& t = genotype.elements[k];
        if (t.is_variable()) {
            if (t.var_index < 0 || t.var_index >= X.cols()) {
                throw std::out_of_range("mature: variable index "
                    + std::to_string(t.var_index) + " outside dataset with "
                    + std::to_string(X.cols()) + " features");
            }
            slot[k] = X.col(t.var_index);
        } else {
            slot[k] = Vector::Constant(rows, t.value);
        }
    }

    Vector fused;
    for (std::size_t f = 0; f < schedule.pairs.size(); ++f) {
        const auto [i, j] = schedule.pairs[f];
        const FusionGene& gene = genotype.fusions[f];
        fuse_into(slot[i], slot[j], gene, fused);
        slot[gene.keep_first ? j : i].swap(fused);
    }

    ZoetropeMatrix z;
    z.values.resize(rows, n_e);
    z.column_valid.assign(n_e, true);
    for (int k = 0; k < n_e; ++k) {
        z.values.col(k) = slot[k];
        z.column_valid[k] = slot[k].allFinite();
    }
    return z;
}

} // namespace zgp
