// SPDX-License-Identifier: Apache-2.0

#ifndef ZGP_EXPERIMENT_HPP
#define ZGP_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zgp/config.hpp"
#include "zgp/dataset.hpp"
#include "zgp/evolution.hpp"

namespace zgp {

/// Full single-run pipeline: seeded split, standardization inside the
/// engine, evolution, and raw-scale metrics on the held-out parts. The
/// split and evolution consume independent streams derived from
/// config.seed, so two datasets run with the same seed share the same row
/// permutation.
struct FitOutcome {
    FittedModel model;
    EvolutionTrace trace;
    DataSplit split;
    double r2_train = 0.0;
    double r2_test = 0.0;
    double nrmse_test = 0.0;
};

FitOutcome fit_dataset(const Dataset& dataset, const RunConfig& config,
    const SplitSpec& split_spec, int threads = 1);

/// A multi-run benchmark over one or more datasets. Run i of every dataset
/// uses seed base_seed + i.
struct ExperimentPlan {
    std::vector<std::string> dataset_paths;
    std::string target_column; // empty: last column
    int runs = 20;
    std::uint64_t base_seed = 1;
    RunConfig config;
    SplitSpec split;
    int threads = 1;
};

struct RunRecord {
    std::string dataset;
    std::uint64_t seed = 0;
    double r2_train = 0.0;
    double r2_test = 0.0;
    double nrmse_test = 0.0;
    int generations_run = 0;
    std::string stop_reason;
    double wall_seconds = 0.0;
    std::string formula;
    bool failed = false;
    std::string error;
};

/// Executes the plan. Runs may be spread over plan.threads workers; the
/// record order is always dataset-major, seed-minor. A dataset that fails
/// to load (or a run that errors) produces a failed record and does not
/// disturb the other datasets.
std::vector<RunRecord> run_experiment(const ExperimentPlan& plan);

/// Median of a sample (mean of the two middle values for even sizes).
double median(std::vector<double> values);

/// Writes the results table: one row per record in plan order plus, after
/// each dataset's block, a summary row carrying the medians of the
/// successful runs' test R2 and test NRMSE. Metric cells use 17 significant
/// digits so the medians can be recomputed exactly from the rows.
void write_results_csv(const std::vector<RunRecord>& records, const std::string& path);
std::string results_csv_header();

} // namespace zgp

#endif
