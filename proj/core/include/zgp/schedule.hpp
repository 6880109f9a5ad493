// SPDX-License-Identifier: Apache-2.0

#ifndef ZGP_SCHEDULE_HPP
#define ZGP_SCHEDULE_HPP

#include <utility>
#include <vector>

#include "zgp/genotype.hpp"

namespace zgp {

/// The fusion pairing applied during maturation. The schedule depends only
/// on (num_elements, num_stages); every individual of a run shares it.
///
/// Elements sit on a circle. Stage k (1-based) fuses the pairs
///   ((k-1) + 2i) mod n_e  with  ((k-1) + 2i + 1) mod n_e,
/// i = 0 .. floor(n_e/2)-1, so the pairing rotates by one position per
/// stage and every element takes part in some fusion. For odd n_e each
/// stage leaves one element untouched; a single extra fusion after the last
/// stage pairs the stage-n_m leftover with its circular successor, which
/// brings the total to n_m*floor(n_e/2) + n_e%2.
struct MaturationSchedule {
    int num_elements = 0;
    int num_stages = 0;
    /// Slot index pairs in application order, stage-major; the extra
    /// odd-n_e fusion (if any) comes last.
    std::vector<std::pair<int, int>> pairs;

    int pairs_per_stage() const { return num_elements / 2; }
    bool has_extra_fusion() const { return num_elements % 2 != 0; }
    int total_fusions() const { return static_cast<int>(pairs.size()); }
};

/// Builds the schedule. Throws std::invalid_argument unless
/// num_elements >= 2 and num_stages >= 1.
MaturationSchedule build_schedule(int num_elements, int num_stages);

/// Depth of each zoetrope's rendered expression tree, with terminals at
/// depth 1. One fusion adds three levels (sum, weight product, operator)
/// above the deepest operand it actually uses; a pass-through output keeps
/// the depth of its input.
std::vector<int> zoetrope_depths(const Genotype& genotype, const MaturationSchedule& schedule);

/// Number of fusion applications stacked on each zoetrope (the fused value
/// of a fusion counts one more than the deepest operand it uses).
std::vector<int> zoetrope_fusion_layers(const Genotype& genotype, const MaturationSchedule& schedule);

} // namespace zgp

#endif
