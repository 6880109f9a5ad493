// SPDX-License-Identifier: Apache-2.0

#include "zgp/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "zgp/metrics.hpp"

namespace zgp {

namespace {

    // Runs fn(0..n-1) across up to `threads` workers. fn must not touch
    // shared state beyond its own index; no random draws happen inside, so
    // the thread count cannot change any result.
    template <typename Fn>
    void parallel_for(int n, int threads, Fn&& fn)
    {
        if (threads <= 1 || n < 2) {
            for (int i = 0; i < n; ++i) {
                fn(i);
            }
            return;
        }
        std::atomic<int> next { 0 };
        std::exception_ptr error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) {
                    return;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        };
        std::vector<std::thread> workers;
        const int count = std::min(threads, n);
        workers.reserve(count);
        for (int t = 0; t < count; ++t) {
            workers.emplace_back(worker);
        }
        for (auto& w : workers) {
            w.join();
        }
        if (error) {
            std::rethrow_exception(error);
        }
    }

    // Draws `count` distinct indices from [0, n) into the front of `pool`
    // (partial Fisher-Yates); pool must hold a permutation of 0..n-1.
    void draw_without_replacement(std::vector<int>& pool, int count, RandomStream& rng)
    {
        const int n = static_cast<int>(pool.size());
        for (int i = 0; i < count; ++i) {
            const int j = i + static_cast<int>(rng.uniform_index(n - i));
            std::swap(pool[i], pool[j]);
        }
    }

} // namespace

void evaluate_individual(Individual& individual, const EvaluationContext& ctx)
{
    if (individual.train_mse.has_value()) {
        return;
    }
    const ZoetropeMatrix Z = mature(individual.genotype, ctx.X, ctx.schedule);
    Eigen::VectorXd alpha = fit_weights(Z, ctx.y);
    const Eigen::VectorXd pred = combine_predictions(Z.values, alpha, 0.0);
    individual.train_mse = mean_squared_error(ctx.y, pred);
    individual.alpha = std::move(alpha);
}

double validation_mse(Individual& individual, const EvaluationContext& validation_ctx)
{
    if (individual.validation_mse.has_value()) {
        return *individual.validation_mse;
    }
    if (!individual.alpha.has_value()) {
        throw std::logic_error("validation_mse: individual not evaluated");
    }
    const ZoetropeMatrix Z = mature(individual.genotype, validation_ctx.X, validation_ctx.schedule);
    const Eigen::VectorXd pred = combine_predictions(Z.values, *individual.alpha, 0.0);
    individual.validation_mse = mean_squared_error(validation_ctx.y, pred);
    return *individual.validation_mse;
}

std::vector<int> effective_components(const Genotype& genotype,
    const MaturationSchedule& schedule, const Eigen::VectorXd& alpha)
{
    const int n_e = genotype.num_elements();
    const int n_f = genotype.num_fusions();
    if (alpha.size() != n_e) {
        throw std::invalid_argument("effective_components: weight length mismatch");
    }
    if (schedule.num_elements != n_e || schedule.total_fusions() != n_f) {
        throw std::invalid_argument("effective_components: schedule mismatch");
    }

    std::vector<char> needed(n_e);
    for (int k = 0; k < n_e; ++k) {
        needed[k] = alpha[k] != 0.0;
    }
    std::vector<char> fusion_used(n_f, 0);

    for (int f = n_f - 1; f >= 0; --f) {
        const auto [i, j] = schedule.pairs[f];
        const FusionGene& gene = genotype.fusions[f];
        const bool uses_second = is_binary(gene.op1) || is_binary(gene.op2);
        if (gene.keep_first) {
            // slot i passes E_i through, slot j carries the fused value
            const bool fused_needed = needed[j];
            fusion_used[f] = fused_needed;
            needed[i] = needed[i] || fused_needed;
            needed[j] = fused_needed && uses_second;
        } else {
            const bool fused_needed = needed[i];
            fusion_used[f] = fused_needed;
            needed[j] = needed[j] || (fused_needed && uses_second);
            needed[i] = fused_needed;
        }
    }

    std::vector<int> ids;
    for (int k = 0; k < n_e; ++k) {
        if (needed[k]) {
            ids.push_back(k);
        }
    }
    for (int f = 0; f < n_f; ++f) {
        if (fusion_used[f]) {
            ids.push_back(n_e + f);
        }
    }
    return ids;
}

std::vector<int> tournament_batches(int population_size, int tournament_size,
    double crossover_rate)
{
    if (tournament_size > population_size) {
        throw std::invalid_argument("tournament size exceeds population size");
    }
    // The epsilon keeps ceil() from tripping over e.g. 0.1 * 500 being
    // represented slightly above 50.
    int remaining = static_cast<int>(
        std::ceil(crossover_rate * population_size - 1e-9));
    const int batch_cap = population_size / tournament_size;
    std::vector<int> batches;
    while (remaining > 0) {
        const int batch = std::min(remaining, batch_cap);
        batches.push_back(batch);
        remaining -= batch;
    }
    return batches;
}

namespace {

    struct TournamentOutcome {
        int fittest = -1;
        int weakest = -1;
    };

    // First-drawn wins ties, for both roles.
    TournamentOutcome rank_tournament(const Population& population,
        const int* members, int count)
    {
        TournamentOutcome out;
        out.fittest = members[0];
        out.weakest = members[0];
        for (int k = 1; k < count; ++k) {
            const int idx = members[k];
            if (*population[idx].train_mse < *population[out.fittest].train_mse) {
                out.fittest = idx;
            }
            if (*population[idx].train_mse > *population[out.weakest].train_mse) {
                out.weakest = idx;
            }
        }
        return out;
    }

    Genotype recombine(const Genotype& weakest, const Genotype& fittest, RandomStream& rng)
    {
        const int genes = component_count(weakest);
        std::vector<char> take(genes);
        for (;;) {
            bool any = false;
            for (int g = 0; g < genes; ++g) {
                take[g] = rng.coin();
                any = any || take[g];
            }
            if (any) {
                break;
            }
        }
        Genotype child = weakest;
        const int n_e = child.num_elements();
        for (int g = 0; g < genes; ++g) {
            if (!take[g]) {
                continue;
            }
            if (g < n_e) {
                child.elements[g] = fittest.elements[g];
            } else {
                child.fusions[g - n_e] = fittest.fusions[g - n_e];
            }
        }
        return child;
    }

} // namespace

void crossover_tournament(Population& population, RandomStream& rng,
    const RunConfig& config, const EvaluationContext& ctx)
{
    const int P = static_cast<int>(population.size());
    const auto batches = tournament_batches(P, config.tournament_size, config.crossover_rate);

    for (auto& individual : population) {
        evaluate_individual(individual, ctx);
    }

    std::vector<int> pool(P);
    std::iota(pool.begin(), pool.end(), 0);
    const int n_t = config.tournament_size;

    for (const int batch : batches) {
        // Participants of one batch are drawn without replacement, so its
        // tournaments touch disjoint individuals.
        draw_without_replacement(pool, batch * n_t, rng);
        for (int t = 0; t < batch; ++t) {
            const int* members = pool.data() + t * n_t;
            const auto outcome = rank_tournament(population, members, n_t);

            Genotype child_genotype = recombine(population[outcome.weakest].genotype,
                population[outcome.fittest].genotype, rng);
            Individual child(std::move(child_genotype));
            evaluate_individual(child, ctx);
            if (*child.train_mse <= *population[outcome.weakest].train_mse) {
                population[outcome.weakest] = std::move(child);
            }
        }
    }
}

double compose_constant(double c, double c_hat, ConstOp op)
{
    double result;
    switch (op) {
    case ConstOp::mul:
        result = c * c_hat;
        break;
    case ConstOp::div:
        result = std::abs(c_hat) > kDivisorEpsilon ? c / c_hat : c_hat;
        break;
    case ConstOp::add:
        result = c + c_hat;
        break;
    case ConstOp::power:
        result = std::pow(c, c_hat);
        break;
    case ConstOp::nil:
        result = c_hat;
        break;
    default:
        throw std::invalid_argument("compose_constant: bad operation");
    }
    // Constants stay finite by construction.
    return std::isfinite(result) ? result : c_hat;
}

void apply_point_mutation(Genotype& genotype, int component_id, RandomStream& rng,
    const RunConfig& config, int dimensionality)
{
    const int n_e = genotype.num_elements();
    if (component_id < 0 || component_id >= component_count(genotype)) {
        throw std::out_of_range("apply_point_mutation: bad component id");
    }

    if (component_id < n_e) {
        Terminal& element = genotype.elements[component_id];
        if (rng.uniform() < config.const_prob) {
            if (element.is_constant()) {
                const double c_hat = rng.uniform(config.const_min, config.const_max);
                const auto op = static_cast<ConstOp>(rng.uniform_index(5));
                element = Terminal::constant(compose_constant(element.value, c_hat, op));
            } else {
                element = Terminal::constant(
                    rng.uniform(config.const_min, config.const_max));
            }
        } else {
            if (element.is_variable()) {
                if (dimensionality > 1) {
                    // uniform over the other d-1 variables
                    int pick = static_cast<int>(rng.uniform_index(dimensionality - 1));
                    if (pick >= element.var_index) {
                        ++pick;
                    }
                    element = Terminal::variable(pick);
                }
            } else {
                element = Terminal::variable(
                    static_cast<int>(rng.uniform_index(dimensionality)));
            }
        }
        return;
    }

    FusionGene& gene = genotype.fusions[component_id - n_e];
    switch (rng.uniform_index(4)) {
    case 0:
        gene.op1 = config.operators[rng.uniform_index(config.operators.size())];
        break;
    case 1:
        gene.op2 = config.operators[rng.uniform_index(config.operators.size())];
        break;
    case 2:
        gene.keep_first = !gene.keep_first;
        break;
    default:
        gene.r_bits ^= (1u << rng.uniform_index(32));
        break;
    }
}

Individual point_mutate(const Individual& parent, RandomStream& rng,
    const RunConfig& config, const EvaluationContext& ctx)
{
    if (!parent.train_mse.has_value() || !parent.alpha.has_value()) {
        throw std::logic_error("point_mutate: parent not evaluated");
    }
    const int total = component_count(parent.genotype);
    const int d = ctx.dimensionality();

    Genotype mutated = parent.genotype;

    const auto effective = effective_components(parent.genotype, ctx.schedule, *parent.alpha);
    const int first = effective.empty()
        ? static_cast<int>(rng.uniform_index(total))
        : effective[rng.uniform_index(effective.size())];
    apply_point_mutation(mutated, first, rng, config, d);

    const int second = static_cast<int>(rng.uniform_index(total));
    apply_point_mutation(mutated, second, rng, config, d);

    Individual child(std::move(mutated));
    evaluate_individual(child, ctx);
    // <= lets neutral mutations through (drift of non-effective components).
    if (*child.train_mse <= *parent.train_mse) {
        return child;
    }
    return parent;
}

std::string_view stop_reason_name(StopReason reason)
{
    return reason == StopReason::stagnation ? "stagnation" : "max_generations";
}

bool StagnationWindow::push(double value)
{
    values_.push_back(value);
    if (static_cast<int>(values_.size()) > window_) {
        values_.erase(values_.begin());
    }
    if (static_cast<int>(values_.size()) < window_) {
        return false;
    }
    const double mean = std::accumulate(values_.begin(), values_.end(), 0.0)
        / static_cast<double>(window_);
    double var = 0.0;
    for (double v : values_) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(window_);
    return std::sqrt(var) < threshold_;
}

EvolutionResult run_evolution(const Dataset& train, const Dataset& validation,
    const RunConfig& config, RandomStream& rng, int threads)
{
    config.validate();
    if (train.rows() < 1) {
        throw std::invalid_argument("run_evolution: empty training set");
    }
    if (validation.rows() < 1) {
        throw std::invalid_argument("run_evolution: empty validation set");
    }
    if (train.cols() != validation.cols()) {
        throw std::invalid_argument("run_evolution: train and validation dimensionality differ");
    }

    const Standardizer scaler = fit_standardizer(train);
    const Dataset train_std = scaler.transform(train);
    const Dataset validation_std = scaler.transform(validation);
    const MaturationSchedule schedule = build_schedule(config.num_elements, config.num_stages);
    const EvaluationContext train_ctx { train_std.X, train_std.y, schedule };
    const EvaluationContext validation_ctx { validation_std.X, validation_std.y, schedule };

    const int P = config.population_size;
    const int d = static_cast<int>(train.cols());

    Population population;
    population.reserve(P);
    for (int i = 0; i < P; ++i) {
        population.emplace_back(random_genotype(rng, config, d));
    }

    const int mutation_count = (P + config.mutation_divisor - 1) / config.mutation_divisor;
    std::vector<int> mutation_pool(P);

    EvolutionTrace trace;
    StagnationWindow window(config.stagnation_window, config.stagnation_threshold);
    double best_validation = std::numeric_limits<double>::infinity();
    Genotype best_genotype;

    for (int generation = 1; generation <= config.max_generations; ++generation) {
        const auto started = std::chrono::steady_clock::now();

        parallel_for(P, threads, [&](int i) { evaluate_individual(population[i], train_ctx); });

        crossover_tournament(population, rng, config, train_ctx);

        std::iota(mutation_pool.begin(), mutation_pool.end(), 0);
        draw_without_replacement(mutation_pool, mutation_count, rng);
        for (int m = 0; m < mutation_count; ++m) {
            Individual& target = population[mutation_pool[m]];
            target = point_mutate(target, rng, config, train_ctx);
        }

        parallel_for(P, threads, [&](int i) { validation_mse(population[i], validation_ctx); });

        GenerationRecord record;
        record.population_size = static_cast<int>(population.size());
        record.best_train_mse = *population[0].train_mse;
        int best_val_index = 0;
        for (int i = 0; i < P; ++i) {
            record.best_train_mse = std::min(record.best_train_mse, *population[i].train_mse);
            if (*population[i].validation_mse < *population[best_val_index].validation_mse) {
                best_val_index = i;
            }
        }
        record.best_validation_mse = *population[best_val_index].validation_mse;
        record.best_genotype = population[best_val_index].genotype;
        record.best_alpha = *population[best_val_index].alpha;
        record.wall_seconds = std::chrono::duration<double>(
            std::chrono::steady_clock::now() - started)
                                  .count();
        trace.generations.push_back(std::move(record));
        const GenerationRecord& recorded = trace.generations.back();

        if (recorded.best_validation_mse < best_validation) {
            best_validation = recorded.best_validation_mse;
            best_genotype = recorded.best_genotype;
        }

        if (window.push(recorded.best_train_mse)) {
            trace.stop_reason = StopReason::stagnation;
            break;
        }
        trace.stop_reason = StopReason::max_generations;
    }

    // Refit the overall validation-best genotype and package it.
    Individual final_individual(best_genotype);
    evaluate_individual(final_individual, train_ctx);

    FittedModel model;
    model.config = config;
    model.genotype = std::move(best_genotype);
    model.alpha = *final_individual.alpha;
    model.scaler = scaler;
    model.feature_names = train.feature_names;
    model.target_name = train.target_name;
    model.train_mse = mean_squared_error(train.y, model.predict(train.X));
    model.validation_mse = mean_squared_error(validation.y, model.predict(validation.X));

    return { std::move(model), std::move(trace) };
}

} // namespace zgp
