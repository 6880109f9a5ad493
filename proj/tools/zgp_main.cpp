// SPDX-License-Identifier: Apache-2.0
//
// zgp command line: fit a model on a CSV dataset, predict with a saved
// model, run a seeded multi-run benchmark, or generate synthetic data.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "zgp/dataset.hpp"
#include "zgp/experiment.hpp"
#include "zgp/formula.hpp"
#include "zgp/metrics.hpp"
#include "zgp/model_io.hpp"

namespace {

using nlohmann::json;

json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return json::parse(buffer.str());
    } catch (const json::exception& e) {
        throw std::runtime_error(path + " is not valid JSON: " + e.what());
    }
}

// Applies the keys present in `j` onto the configuration; keys mirror the
// RunConfig field names.
void apply_config_overrides(const json& j, zgp::RunConfig& config)
{
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) {
            field = j.at(key).get<std::decay_t<decltype(field)>>();
        }
    };
    get("num_elements", config.num_elements);
    get("num_stages", config.num_stages);
    get("const_min", config.const_min);
    get("const_max", config.const_max);
    get("const_prob", config.const_prob);
    get("tournament_size", config.tournament_size);
    get("crossover_rate", config.crossover_rate);
    get("mutation_divisor", config.mutation_divisor);
    get("mutation_regime_threshold", config.mutation_regime_threshold);
    get("population_size", config.population_size);
    get("max_generations", config.max_generations);
    get("stagnation_window", config.stagnation_window);
    get("stagnation_threshold", config.stagnation_threshold);
    get("seed", config.seed);
    get("validation_fraction", config.validation_fraction);
    if (j.contains("operators")) {
        config.operators.clear();
        for (const auto& name : j.at("operators")) {
            config.operators.push_back(zgp::op_from_name(name.get<std::string>()));
        }
    }
}

void print_fit_metrics(const zgp::FitOutcome& outcome)
{
    fmt::print(stderr, "train: mse={:.6g} r2={:.6g}\n", outcome.model.train_mse,
        outcome.r2_train);
    fmt::print(stderr, "test:  r2={:.6g} nrmse={:.6g}\n", outcome.r2_test,
        outcome.nrmse_test);
    fmt::print(stderr, "generations: {} ({})\n", outcome.trace.generations_run(),
        zgp::stop_reason_name(outcome.trace.stop_reason));
}

int run_fit(const std::string& data_path, const std::string& target,
    std::uint64_t seed, const std::string& config_path, const std::string& model_out,
    double test_fraction, const std::string& dump_dir, int threads)
{
    zgp::RunConfig config;
    if (!config_path.empty()) {
        apply_config_overrides(load_json_file(config_path), config);
    }
    config.seed = seed;

    zgp::SplitSpec split;
    split.test_fraction = test_fraction;
    split.validation_fraction = config.validation_fraction;

    const zgp::Dataset dataset = zgp::load_csv(data_path, target);
    const zgp::FitOutcome outcome = zgp::fit_dataset(dataset, config, split, threads);

    fmt::print("{}\n", outcome.model.formula());
    print_fit_metrics(outcome);

    if (!model_out.empty()) {
        zgp::save_model(outcome.model, model_out);
        fmt::print(stderr, "model written to {}\n", model_out);
    }
    if (!dump_dir.empty()) {
        zgp::save_csv(outcome.split.train, dump_dir + "/train.csv");
        zgp::save_csv(outcome.split.validation, dump_dir + "/validation.csv");
        zgp::save_csv(outcome.split.test, dump_dir + "/test.csv");
    }
    return 0;
}

int run_predict(const std::string& model_path, const std::string& data_path,
    const std::string& out_path)
{
    const zgp::FittedModel model = zgp::load_model(model_path);
    const zgp::CsvTable table = zgp::load_csv_table(data_path);

    // Pick the model's feature columns by name.
    Eigen::MatrixXd X(table.values.rows(), model.feature_names.size());
    for (std::size_t f = 0; f < model.feature_names.size(); ++f) {
        auto it = std::find(table.column_names.begin(), table.column_names.end(),
            model.feature_names[f]);
        if (it == table.column_names.end()) {
            throw std::runtime_error(data_path + ": missing feature column '"
                + model.feature_names[f] + "'");
        }
        X.col(static_cast<Eigen::Index>(f)) = table.values.col(it - table.column_names.begin());
    }

    const Eigen::VectorXd pred = model.predict(X);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            throw std::runtime_error("cannot write predictions file: " + out_path);
        }
        out = &file;
    }
    *out << "prediction\n";
    for (Eigen::Index i = 0; i < pred.size(); ++i) {
        *out << zgp::format_double(pred[i], 17) << '\n';
    }

    // When the target column is present, report metrics on the side.
    auto target_it = std::find(table.column_names.begin(), table.column_names.end(),
        model.target_name);
    if (target_it != table.column_names.end()) {
        const Eigen::VectorXd y = table.values.col(target_it - table.column_names.begin());
        fmt::print(stderr, "mse={:.17g} r2={:.6g}\n", zgp::mean_squared_error(y, pred),
            zgp::r2_score(y, pred));
    }
    return 0;
}

int run_bench(const std::string& plan_path, const std::string& out_override,
    int runs_override, std::int64_t seed_override, int threads_override)
{
    const json j = load_json_file(plan_path);

    zgp::ExperimentPlan plan;
    if (!j.contains("datasets") || !j.at("datasets").is_array() || j.at("datasets").empty()) {
        throw std::runtime_error(plan_path + ": plan needs a non-empty 'datasets' array");
    }
    plan.dataset_paths = j.at("datasets").get<std::vector<std::string>>();
    if (j.contains("target")) {
        plan.target_column = j.at("target").get<std::string>();
    }
    if (j.contains("runs")) {
        plan.runs = j.at("runs").get<int>();
    }
    if (j.contains("base_seed")) {
        plan.base_seed = j.at("base_seed").get<std::uint64_t>();
    }
    if (j.contains("test_fraction")) {
        plan.split.test_fraction = j.at("test_fraction").get<double>();
    }
    if (j.contains("config")) {
        apply_config_overrides(j.at("config"), plan.config);
    }
    plan.split.validation_fraction = plan.config.validation_fraction;
    if (j.contains("threads")) {
        plan.threads = j.at("threads").get<int>();
    }
    if (runs_override > 0) {
        plan.runs = runs_override;
    }
    if (seed_override >= 0) {
        plan.base_seed = static_cast<std::uint64_t>(seed_override);
    }
    if (threads_override > 0) {
        plan.threads = threads_override;
    }

    std::string out_path = j.value("out", "results.csv");
    if (!out_override.empty()) {
        out_path = out_override;
    }

    const auto records = zgp::run_experiment(plan);
    zgp::write_results_csv(records, out_path);

    int failed = 0;
    for (const auto& r : records) {
        if (r.failed) {
            ++failed;
            fmt::print(stderr, "failed: {} seed {}: {}\n", r.dataset, r.seed, r.error);
        }
    }
    fmt::print(stderr, "{} records ({} failed) written to {}\n", records.size(), failed,
        out_path);
    return failed == 0 ? 0 : 1;
}

int run_gen_friedman(int n, double noise, std::uint64_t seed, const std::string& out_path)
{
    zgp::RandomStream rng = zgp::RandomStream::derive(seed, "friedman1");
    const zgp::Dataset data = zgp::generate_friedman1(n, noise, rng);
    zgp::save_csv(data, out_path);
    fmt::print(stderr, "{} rows written to {}\n", n, out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app { "Zoetrope genetic programming for symbolic regression" };
    app.require_subcommand(1);

    // fit
    auto* fit = app.add_subcommand("fit", "Fit a model on a CSV dataset");
    std::string fit_data;
    std::string fit_target;
    std::string fit_config;
    std::string fit_out;
    std::string fit_dump;
    std::uint64_t fit_seed = 0;
    double fit_test_fraction = 0.30;
    int fit_threads = 1;
    fit->add_option("--data", fit_data, "Dataset CSV (header row required)")->required();
    fit->add_option("--target", fit_target, "Target column name (default: last column)");
    fit->add_option("--seed", fit_seed, "Base seed for split and evolution");
    fit->add_option("--config", fit_config, "JSON file with hyperparameter overrides");
    fit->add_option("--out", fit_out, "Write the fitted model to this JSON file");
    fit->add_option("--test-fraction", fit_test_fraction, "Held-out test fraction");
    fit->add_option("--dump-splits", fit_dump, "Directory for train/validation/test CSVs");
    fit->add_option("--threads", fit_threads, "Evaluation threads (1 = strict determinism)");

    // predict
    auto* predict = app.add_subcommand("predict", "Predict with a saved model");
    std::string predict_model;
    std::string predict_data;
    std::string predict_out;
    predict->add_option("--model", predict_model, "Model JSON file")->required();
    predict->add_option("--data", predict_data, "Input CSV with the model's feature columns")
        ->required();
    predict->add_option("--out", predict_out, "Predictions CSV (default: stdout)");

    // bench
    auto* bench = app.add_subcommand("bench", "Run a multi-seed benchmark plan");
    std::string bench_plan;
    std::string bench_out;
    int bench_runs = 0;
    std::int64_t bench_seed = -1;
    int bench_threads = 0;
    bench->add_option("--config", bench_plan, "JSON experiment plan")->required();
    bench->add_option("--out", bench_out, "Results CSV path (overrides the plan)");
    bench->add_option("--runs", bench_runs, "Runs per dataset (overrides the plan)");
    bench->add_option("--seed", bench_seed, "Base seed (overrides the plan)");
    bench->add_option("--threads", bench_threads, "Parallel runs (1 = strict determinism)");

    // gen-friedman
    auto* gen = app.add_subcommand("gen-friedman", "Generate a friedman1 dataset CSV");
    int gen_n = 1000;
    double gen_noise = 1.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "Number of rows");
    gen->add_option("--noise", gen_noise, "Gaussian noise sigma");
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--out", gen_out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        fmt::print(stderr, "{}\n\n{}", e.what(), app.help());
        return 2;
    }

    try {
        if (fit->parsed()) {
            return run_fit(fit_data, fit_target, fit_seed, fit_config, fit_out,
                fit_test_fraction, fit_dump, fit_threads);
        }
        if (predict->parsed()) {
            return run_predict(predict_model, predict_data, predict_out);
        }
        if (bench->parsed()) {
            return run_bench(bench_plan, bench_out, bench_runs, bench_seed, bench_threads);
        }
        if (gen->parsed()) {
            return run_gen_friedman(gen_n, gen_noise, gen_seed, gen_out);
        }
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
