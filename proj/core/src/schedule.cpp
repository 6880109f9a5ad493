// SPDX-License-Identifier: Apache-2.0

#include "zgp/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace zgp {

MaturationSchedule build_schedule(int num_elements, int num_stages)
{
    if (num_elements < 2) {
        throw std::invalid_argument("build_schedule: num_elements must be >= 2");
    }
    if (num_stages < 1) {
        throw std::invalid_argument("build_schedule: num_stages must be >= 1");
    }

    MaturationSchedule schedule;
    schedule.num_elements = num_elements;
    schedule.num_stages = num_stages;

    const int per_stage = num_elements / 2;
    schedule.pairs.reserve(num_stages * per_stage + (num_elements % 2));
    for (int stage = 1; stage <= num_stages; ++stage) {
        for (int i = 0; i < per_stage; ++i) {
            int a = (stage - 1 + 2 * i) % num_elements;
            int b = (stage - 1 + 2 * i + 1) % num_elements;
            schedule.pairs.emplace_back(a, b);
        }
    }
    if (num_elements % 2 != 0) {
        // The element a stage leaves out is the one just before the stage's
        // first pair; pair the last stage's leftover with its successor.
        int leftover = ((num_stages - 2) % num_elements + num_elements) % num_elements;
        schedule.pairs.emplace_back(leftover, (leftover + 1) % num_elements);
    }
    return schedule;
}

namespace {

    // Shared fold over the schedule: per-slot metric, fused value gets
    // `step` added on top of the deepest operand it structurally uses.
    std::vector<int> fold_depth(const Genotype& genotype,
        const MaturationSchedule& schedule, int base, int step)
    {
        if (genotype.num_elements() != schedule.num_elements
            || genotype.num_fusions() != schedule.total_fusions()) {
            throw std::invalid_argument("schedule does not match genotype template");
        }
        std::vector<int> depth(schedule.num_elements, base);
        for (std::size_t f = 0; f < schedule.pairs.size(); ++f) {
            const auto [i, j] = schedule.pairs[f];
            const FusionGene& gene = genotype.fusions[f];
            const bool uses_second = is_binary(gene.op1) || is_binary(gene.op2);
            const int operand = uses_second ? std::max(depth[i], depth[j]) : depth[i];
            const int fused = operand + step;
            if (gene.keep_first) {
                depth[j] = fused;
            } else {
                depth[i] = fused;
            }
        }
        return depth;
    }

} // namespace

std::vector<int> zoetrope_depths(const Genotype& genotype, const MaturationSchedule& schedule)
{
    return fold_depth(genotype, schedule, 1, 3);
}

std::vector<int> zoetrope_fusion_layers(const Genotype& genotype, const MaturationSchedule& schedule)
{
    return fold_depth(genotype, schedule, 0, 1);
}

} // namespace zgp
