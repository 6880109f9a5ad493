// SPDX-License-Identifier: Apache-2.0

#ifndef ZGP_EVOLUTION_HPP
#define ZGP_EVOLUTION_HPP

#include <Eigen/Core>
#include <optional>
#include <string_view>
#include <vector>

#include "zgp/config.hpp"
#include "zgp/dataset.hpp"
#include "zgp/evaluate.hpp"
#include "zgp/genotype.hpp"
#include "zgp/linear_fit.hpp"
#include "zgp/random.hpp"
#include "zgp/schedule.hpp"

namespace zgp {

/// One member of the population. Fitness (training MSE of the fitted
/// linear combination) and the weights are cached; any genotype change
/// must go through a fresh Individual or reset the caches.
struct Individual {
    Genotype genotype;
    std::optional<double> train_mse;
    std::optional<Eigen::VectorXd> alpha;
    std::optional<double> validation_mse;

    explicit Individual(Genotype g = {})
        : genotype(std::move(g))
    {
    }

    void reset_caches()
    {
        train_mse.reset();
        alpha.reset();
        validation_mse.reset();
    }
};

using Population = std::vector<Individual>;

/// Dataset view the engine evaluates fitness against (standardized
/// features/target plus the shared schedule).
struct EvaluationContext {
    const Matrix& X;
    const Vector& y;
    const MaturationSchedule& schedule;

    int dimensionality() const { return static_cast<int>(X.cols()); }
};

/// Matures, fits and caches training MSE + weights. No-op when cached.
void evaluate_individual(Individual& individual, const EvaluationContext& ctx);

/// Validation MSE of the individual's fitted combination on another
/// dataset; cached on the individual. Requires an evaluated individual.
double validation_mse(Individual& individual, const EvaluationContext& validation_ctx);

/// Components are addressed by flat ids: 0..n_e-1 are elements,
/// n_e..n_e+n_f-1 are fusions.
inline int component_count(const Genotype& g)
{
    return g.num_elements() + g.num_fusions();
}

/// Ids of the elements and fusions that influence at least one zoetrope
/// with a nonzero weight, found by walking the schedule backwards. The
/// pass-through output of a fusion does not make the fusion (or its
/// operands) effective; only the fused output does.
std::vector<int> effective_components(const Genotype& genotype,
    const MaturationSchedule& schedule, const Eigen::VectorXd& alpha);

/// Tournament counts per batch: ceil(crossover_rate * P) tournaments are
/// grouped into batches of at most floor(P / tournament_size), the largest
/// group that can draw all participants without replacement.
std::vector<int> tournament_batches(int population_size, int tournament_size,
    double crossover_rate);

/// One generation's worth of crossover. Within each tournament the fittest
/// parent donates each of its n_e + n_f genes (a fusion being one gene)
/// with probability 1/2 to a copy of the weakest parent, redrawing until at
/// least one gene moves; the child replaces the weakest parent if its
/// training MSE is no worse. Children are installed as soon as their
/// tournament finishes.
void crossover_tournament(Population& population, RandomStream& rng,
    const RunConfig& config, const EvaluationContext& ctx);

/// The five ways a mutated constant C combines with the auxiliary draw.
enum class ConstOp : int { mul = 0, div, add, power, nil };

/// C o C_hat with the composition guards: division by a (near-)zero
/// C_hat and any non-finite result collapse to nil, i.e. C_hat itself.
double compose_constant(double c, double c_hat, ConstOp op);

/// One point mutation on the addressed component. Elements turn into a
/// constant with probability const_prob (composing via compose_constant
/// when already a constant) and into a uniformly drawn different variable
/// otherwise. Fusions mutate exactly one of op1 / op2 / b / r, the weight
/// by flipping one uniformly chosen bit of its 32-bit fraction.
void apply_point_mutation(Genotype& genotype, int component_id, RandomStream& rng,
    const RunConfig& config, int dimensionality);

/// The double point mutation applied to a designated individual: one
/// mutation targets a uniformly drawn effective component (any component
/// when the effective set is empty), a second targets a uniformly drawn
/// component among all of them. The mutant replaces the parent when its
/// training MSE is less than or equal to the parent's, so mutations of
/// non-effective components survive and drift.
Individual point_mutate(const Individual& parent, RandomStream& rng,
    const RunConfig& config, const EvaluationContext& ctx);

enum class StopReason { max_generations, stagnation };

std::string_view stop_reason_name(StopReason reason);

/// Rolling stagnation test: fires once the population-convention standard
/// deviation of the last `window` pushed values drops below `threshold`.
class StagnationWindow {
public:
    StagnationWindow(int window, double threshold)
        : window_(window)
        , threshold_(threshold)
    {
    }

    bool push(double value);

private:
    int window_;
    double threshold_;
    std::vector<double> values_;
};

struct GenerationRecord {
    double best_train_mse = 0.0;
    double best_validation_mse = 0.0;
    /// Snapshot of the generation's best individual by validation MSE.
    Genotype best_genotype;
    Eigen::VectorXd best_alpha;
    int population_size = 0;
    double wall_seconds = 0.0;
};

struct EvolutionTrace {
    std::vector<GenerationRecord> generations;
    StopReason stop_reason = StopReason::max_generations;

    int generations_run() const { return static_cast<int>(generations.size()); }
};

struct EvolutionResult {
    FittedModel model;
    EvolutionTrace trace;
};

/// Runs the full generational loop on raw-scale train / validation data:
/// standardizes (scaler fitted on train only), initializes P random
/// individuals, and per generation evaluates fitness, applies crossover
/// tournaments, mutates ceil(P / mutation_divisor) individuals drawn
/// without replacement, and records the generation's best individual by
/// validation MSE. Stops at max_generations or when the best-fitness
/// stagnation window fires. Returns the overall validation-best individual
/// refitted and packaged with the scaler; its stored MSEs are raw-scale.
///
/// All random draws happen on the passed stream in a fixed order; `threads`
/// only parallelizes pure fitness evaluations, so results are identical for
/// any thread count.
EvolutionResult run_evolution(const Dataset& train, const Dataset& validation,
    const RunConfig& config, RandomStream& rng, int threads = 1);

} // namespace zgp

#endif
