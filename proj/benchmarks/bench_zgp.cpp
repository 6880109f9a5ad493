// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "zgp/evaluate.hpp"
#include "zgp/evolution.hpp"
#include "zgp/linear_fit.hpp"

using namespace zgp;

namespace {

Matrix random_matrix(int rows, int cols, std::uint64_t seed)
{
    RandomStream rng(seed);
    Matrix X(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            X(r, c) = rng.uniform(-2.0, 2.0);
        }
    }
    return X;
}

void BM_BuildSchedule(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_schedule(7, 3));
    }
}
BENCHMARK(BM_BuildSchedule);

void BM_Mature(benchmark::State& state)
{
    const int rows = static_cast<int>(state.range(0));
    RunConfig config;
    RandomStream rng(1);
    const Genotype g = random_genotype(rng, config, 10);
    const auto schedule = build_schedule(config.num_elements, config.num_stages);
    const Matrix X = random_matrix(rows, 10, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mature(g, X, schedule));
    }
    state.SetItemsProcessed(state.iterations() * rows);
}
BENCHMARK(BM_Mature)->Arg(256)->Arg(1024)->Arg(4096);

void BM_FitWeights(benchmark::State& state)
{
    const int rows = static_cast<int>(state.range(0));
    RandomStream rng(3);
    ZoetropeMatrix Z;
    Z.values = random_matrix(rows, 7, 4);
    Z.column_valid.assign(7, true);
    Eigen::VectorXd y(rows);
    for (int r = 0; r < rows; ++r) {
        y[r] = rng.gaussian();
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_weights(Z, y));
    }
}
BENCHMARK(BM_FitWeights)->Arg(256)->Arg(1024);

void BM_EvaluateIndividual(benchmark::State& state)
{
    RunConfig config;
    RandomStream rng(5);
    const auto schedule = build_schedule(config.num_elements, config.num_stages);
    const Matrix X = random_matrix(512, 8, 6);
    Eigen::VectorXd y(512);
    for (int r = 0; r < 512; ++r) {
        y[r] = rng.gaussian();
    }
    const EvaluationContext ctx { X, y, schedule };
    for (auto _ : state) {
        Individual individual(random_genotype(rng, config, 8));
        evaluate_individual(individual, ctx);
        benchmark::DoNotOptimize(individual.train_mse);
    }
}
BENCHMARK(BM_EvaluateIndividual);

void BM_EvolutionGeneration(benchmark::State& state)
{
    RandomStream data_rng(7);
    Dataset train;
    train.X = random_matrix(256, 5, 8);
    train.y = train.X.col(0).array() * train.X.col(1).array();
    train.feature_names = { "a", "b", "c", "d", "e" };
    Dataset validation = train;

    RunConfig config;
    config.population_size = 100;
    config.max_generations = 1;
    config.tournament_size = 12;
    for (auto _ : state) {
        RandomStream rng(9);
        benchmark::DoNotOptimize(run_evolution(train, validation, config, rng));
    }
}
BENCHMARK(BM_EvolutionGeneration);

} // namespace

BENCHMARK_MAIN();
