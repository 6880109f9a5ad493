// SPDX-License-Identifier: Apache-2.0

#include "zgp/config.hpp"

#include <stdexcept>

namespace zgp {

void RunConfig::validate() const
{
    if (num_elements < 2) {
        throw std::invalid_argument("invalid config: num_elements must be >= 2");
    }
    if (num_stages < 1) {
        throw std::invalid_argument("invalid config: num_stages must be >= 1");
    }
    if (!(const_min <= const_max)) {
        throw std::invalid_argument("invalid config: const_min > const_max");
    }
    if (const_prob < 0.0 || const_prob > 1.0) {
        throw std::invalid_argument("invalid config: const_prob outside [0, 1]");
    }
    if (tournament_size < 2) {
        throw std::invalid_argument("invalid config: tournament_size must be >= 2");
    }
    if (population_size < 1) {
        throw std::invalid_argument("invalid config: population_size must be >= 1");
    }
    if (tournament_size > population_size) {
        throw std::invalid_argument(
            "invalid config: tournament_size exceeds population_size");
    }
    if (crossover_rate < 0.0 || crossover_rate > 1.0) {
        throw std::invalid_argument("invalid config: crossover_rate outside [0, 1]");
    }
    if (mutation_divisor < 1) {
        throw std::invalid_argument("invalid config: mutation_divisor must be >= 1");
    }
    if (max_generations < 1) {
        throw std::invalid_argument("invalid config: max_generations must be >= 1");
    }
    if (stagnation_window < 1) {
        throw std::invalid_argument("invalid config: stagnation_window must be >= 1");
    }
    if (stagnation_threshold < 0.0) {
        throw std::invalid_argument("invalid config: stagnation_threshold < 0");
    }
    if (operators.empty()) {
        throw std::invalid_argument("invalid config: empty operator set");
    }
    if (validation_fraction <= 0.0 || validation_fraction >= 1.0) {
        throw std::invalid_argument(
            "invalid config: validation_fraction outside (0, 1)");
    }
}

} // namespace zgp
