// SPDX-License-Identifier: Apache-2.0

#ifndef ZGP_GENOTYPE_HPP
#define ZGP_GENOTYPE_HPP

#include <cstdint>
#include <vector>

#include "zgp/config.hpp"
#include "zgp/operators.hpp"
#include "zgp/random.hpp"

namespace zgp {

/// A level-0 element: either a reference to an input feature or an
/// ephemeral constant.
struct Terminal {
    enum class Kind { variable, constant };

    Kind kind = Kind::variable;
    int var_index = 0; // meaningful when kind == variable
    double value = 0.0; // meaningful when kind == constant

    static Terminal variable(int index)
    {
        Terminal t;
        t.kind = Kind::variable;
        t.var_index = index;
        return t;
    }

    static Terminal constant(double v)
    {
        Terminal t;
        t.kind = Kind::constant;
        t.value = v;
        return t;
    }

    bool is_variable() const { return kind == Kind::variable; }
    bool is_constant() const { return kind == Kind::constant; }

    bool operator==(const Terminal&) const = default;
};

/// Parameters of one fusion: the pair of operators, the mixing weight r
/// and the pass-through flag b.
///
/// The weight is stored as a 32-bit unsigned fraction, r = bits / (2^32 - 1),
/// so that flipping any single bit of the encoding still yields a valid
/// weight in [0, 1].
struct FusionGene {
    Op op1 = Op::add;
    Op op2 = Op::add;
    std::uint32_t r_bits = 0;
    /// b = 1: the first output of the fusion is the untouched first input
    /// and the fused value replaces the second; b = 0 is the reverse.
    bool keep_first = false;

    double r() const { return static_cast<double>(r_bits) / 4294967295.0; }

    static std::uint32_t fraction_bits_max() { return 0xFFFFFFFFu; }

    bool operator==(const FusionGene&) const = default;
};

/// The fixed-size evolvable unit: num_elements terminals plus
/// fusion_count(num_elements, num_stages) fusion genes. Variation operators
/// modify genes in place; the array lengths never change.
struct Genotype {
    std::vector<Terminal> elements;
    std::vector<FusionGene> fusions;

    int num_elements() const { return static_cast<int>(elements.size()); }
    int num_fusions() const { return static_cast<int>(fusions.size()); }

    bool operator==(const Genotype&) const = default;
};

/// Total number of fusions for a template: n_m * floor(n_e / 2) + (n_e % 2).
int fusion_count(int num_elements, int num_stages);

/// Draws a fresh genotype. Each element is a variable index uniform in
/// [0, dimensionality) with probability 1 - const_prob, otherwise a constant
/// uniform in [const_min, const_max]. Fusion genes draw both operators
/// uniformly from the configured set, a uniform 32-bit weight fraction and a
/// fair pass-through coin.
Genotype random_genotype(RandomStream& rng, const RunConfig& config, int dimensionality);

} // namespace zgp

#endif
