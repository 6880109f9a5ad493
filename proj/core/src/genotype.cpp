// SPDX-License-Identifier: Apache-2.0

#include "zgp/genotype.hpp"

#include <stdexcept>

namespace zgp {

int fusion_count(int num_elements, int num_stages)
{
    if (num_elements < 2) {
        throw std::invalid_argument("fusion_count: num_elements must be >= 2");
    }
    if (num_stages < 1) {
        throw std::invalid_argument("fusion_count: num_stages must be >= 1");
    }
    return num_stages * (num_elements / 2) + (num_elements % 2);
}

Genotype random_genotype(RandomStream& rng, const RunConfig& config, int dimensionality)
{
    if (dimensionality < 1) {
        throw std::invalid_argument("random_genotype: dimensionality must be >= 1");
    }
    config.validate();

    Genotype g;
    g.elements.reserve(config.num_elements);
    for (int i = 0; i < config.num_elements; ++i) {
        if (rng.uniform() < config.const_prob) {
            g.elements.push_back(
                Terminal::constant(rng.uniform(config.const_min, config.const_max)));
        } else {
            g.elements.push_back(Terminal::variable(
                static_cast<int>(rng.uniform_index(dimensionality))));
        }
    }

    const int n_f = fusion_count(config.num_elements, config.num_stages);
    g.fusions.reserve(n_f);
    for (int i = 0; i < n_f; ++i) {
        FusionGene gene;
        gene.op1 = config.operators[rng.uniform_index(config.operators.size())];
        gene.op2 = config.operators[rng.uniform_index(config.operators.size())];
        gene.r_bits = rng.next_u32();
        gene.keep_first = rng.coin();
        g.fusions.push_back(gene);
    }
    return g;
}

} // namespace zgp
