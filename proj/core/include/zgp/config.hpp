// SPDX-License-Identifier: Apache-2.0

#ifndef ZGP_CONFIG_HPP
#define ZGP_CONFIG_HPP

#include <cstdint>

#include "zgp/operators.hpp"

namespace zgp {

/// All hyperparameters of one run. Defaults are the published ZGP defaults.
struct RunConfig {
    /// Number of elements per individual (n_e).
    int num_elements = 7;
    /// Number of maturation stages (n_m).
    int num_stages = 3;
    /// Ephemeral constant range.
    double const_min = -3.0;
    double const_max = 3.0;
    /// Probability that a terminal (or an element mutation) is a constant.
    double const_prob = 0.1;
    /// Crossover tournament size (n_t).
    int tournament_size = 12;
    /// Fraction of the population entering crossover tournaments per
    /// generation (rho_X).
    double crossover_rate = 0.1;
    /// Mutation parameter m_mut: each generation ceil(P / m_mut) individuals
    /// are designated for mutation.
    int mutation_divisor = 4;
    /// Threshold mutation regime parameter (r_lim). Carried in the
    /// configuration for completeness; the engine does not use it.
    double mutation_regime_threshold = 0.1;
    /// Population size (P).
    int population_size = 500;
    /// Maximum number of generations (G).
    int max_generations = 100;
    /// Stopping window length (L) and threshold (tau_sigma): stop once the
    /// standard deviation of the best fitness over the last L generations
    /// falls below the threshold.
    int stagnation_window = 30;
    double stagnation_threshold = 1e-3;
    /// Operator set used by fusion genes.
    OperatorSet operators = default_operator_set();
    /// Base seed of the run.
    std::uint64_t seed = 0;
    /// Fraction of the training portion held out for validation.
    double validation_fraction = 0.25;

    /// Throws std::invalid_argument if any field is out of range.
    void validate() const;
};

} // namespace zgp

#endif
