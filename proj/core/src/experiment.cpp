// SPDX-License-Identifier: Apache-2.0

#include "zgp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

#include "zgp/formula.hpp"
#include "zgp/metrics.hpp"

namespace zgp {

FitOutcome fit_dataset(const Dataset& dataset, const RunConfig& config,
    const SplitSpec& split_spec, int threads)
{
    RandomStream split_rng = RandomStream::derive(config.seed, "split");
    FitOutcome out;
    out.split = split_dataset(dataset, split_spec, split_rng);

    RandomStream evolution_rng = RandomStream::derive(config.seed, "evolution");
    EvolutionResult result = run_evolution(out.split.train, out.split.validation,
        config, evolution_rng, threads);
    out.model = std::move(result.model);
    out.trace = std::move(result.trace);

    out.r2_train = r2_score(out.split.train.y, out.model.predict(out.split.train.X));
    const Eigen::VectorXd test_pred = out.model.predict(out.split.test.X);
    out.r2_test = r2_score(out.split.test.y, test_pred);
    out.nrmse_test = nrmse(out.split.test.y, test_pred);
    return out;
}

namespace {

    std::string dataset_label(const std::string& path)
    {
        auto slash = path.find_last_of("/\\");
        std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
        auto dot = name.rfind('.');
        if (dot != std::string::npos && dot > 0) {
            name.resize(dot);
        }
        return name;
    }

    std::string sanitize_cell(std::string text)
    {
        for (char& c : text) {
            if (c == ',' || c == '\n' || c == '\r') {
                c = ' ';
            }
        }
        return text;
    }

} // namespace

std::vector<RunRecord> run_experiment(const ExperimentPlan& plan)
{
    if (plan.runs < 1) {
        throw std::invalid_argument("run_experiment: runs must be >= 1");
    }
    plan.config.validate();

    const int n_datasets = static_cast<int>(plan.dataset_paths.size());
    std::vector<Dataset> datasets(n_datasets);
    std::vector<std::string> load_errors(n_datasets);
    std::vector<bool> loaded(n_datasets, false);
    for (int d = 0; d < n_datasets; ++d) {
        try {
            datasets[d] = load_csv(plan.dataset_paths[d], plan.target_column);
            loaded[d] = true;
        } catch (const std::exception& e) {
            load_errors[d] = e.what();
        }
    }

    struct Task {
        int dataset = 0;
        int run = 0;
    };
    std::vector<Task> tasks;
    std::vector<RunRecord> records;
    for (int d = 0; d < n_datasets; ++d) {
        const std::string label = dataset_label(plan.dataset_paths[d]);
        if (!loaded[d]) {
            RunRecord failed;
            failed.dataset = label;
            failed.seed = plan.base_seed;
            failed.failed = true;
            failed.stop_reason = "failed";
            failed.error = load_errors[d];
            records.push_back(std::move(failed));
            continue;
        }
        for (int i = 0; i < plan.runs; ++i) {
            Task t;
            t.dataset = d;
            t.run = i;
            tasks.push_back(t);
            RunRecord r;
            r.dataset = label;
            r.seed = plan.base_seed + static_cast<std::uint64_t>(i);
            records.push_back(std::move(r));
        }
    }

    // Map each task back to its slot so parallel completion order cannot
    // reorder the records.
    std::vector<int> slot_of_task(tasks.size());
    {
        int slot = 0;
        std::size_t task = 0;
        for (int d = 0; d < n_datasets; ++d) {
            if (!loaded[d]) {
                ++slot;
                continue;
            }
            for (int i = 0; i < plan.runs; ++i) {
                slot_of_task[task++] = slot++;
            }
        }
    }

    auto execute = [&](std::size_t task_index) {
        const Task& task = tasks[task_index];
        RunRecord& record = records[slot_of_task[task_index]];
        const auto started = std::chrono::steady_clock::now();
        try {
            RunConfig config = plan.config;
            config.seed = plan.base_seed + static_cast<std::uint64_t>(task.run);
            const FitOutcome outcome = fit_dataset(datasets[task.dataset], config, plan.split, 1);
            record.r2_train = outcome.r2_train;
            record.r2_test = outcome.r2_test;
            record.nrmse_test = outcome.nrmse_test;
            record.generations_run = outcome.trace.generations_run();
            record.stop_reason = std::string(stop_reason_name(outcome.trace.stop_reason));
            record.formula = outcome.model.formula();
        } catch (const std::exception& e) {
            record.failed = true;
            record.stop_reason = "failed";
            record.error = e.what();
        }
        record.wall_seconds = std::chrono::duration<double>(
            std::chrono::steady_clock::now() - started)
                                  .count();
    };

    const int workers = std::max(1, plan.threads);
    if (workers == 1 || tasks.size() < 2) {
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            execute(t);
        }
    } else {
        std::atomic<std::size_t> next { 0 };
        auto worker = [&] {
            for (;;) {
                const std::size_t t = next.fetch_add(1);
                if (t >= tasks.size()) {
                    return;
                }
                execute(t);
            }
        };
        std::vector<std::thread> pool;
        const int count = static_cast<int>(
            std::min(static_cast<std::size_t>(workers), tasks.size()));
        for (int w = 0; w < count; ++w) {
            pool.emplace_back(worker);
        }
        for (auto& w : pool) {
            w.join();
        }
    }
    return records;
}

double median(std::vector<double> values)
{
    if (values.empty()) {
        throw std::invalid_argument("median of empty sample");
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string results_csv_header()
{
    return "dataset,seed,r2_train,r2_test,nrmse_test,generations_run,stop_reason,"
           "wall_seconds,formula";
}

void write_results_csv(const std::vector<RunRecord>& records, const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write results file: " + path);
    }
    out << results_csv_header() << '\n';

    auto flush_summary = [&out](const std::string& dataset, std::vector<double>& r2,
                             std::vector<double>& nr) {
        if (dataset.empty()) {
            return;
        }
        out << dataset << ",median,,";
        if (!r2.empty()) {
            out << format_double(median(r2), 17) << ',' << format_double(median(nr), 17);
        } else {
            out << ',';
        }
        out << ",,,,\n";
        r2.clear();
        nr.clear();
    };

    std::string current;
    std::vector<double> r2_values;
    std::vector<double> nrmse_values;
    for (const RunRecord& r : records) {
        if (r.dataset != current) {
            flush_summary(current, r2_values, nrmse_values);
            current = r.dataset;
        }
        if (r.failed) {
            out << r.dataset << ',' << r.seed << ",,,,," << "failed" << ','
                << format_double(r.wall_seconds, 6) << ',' << sanitize_cell(r.error)
                << '\n';
            continue;
        }
        out << r.dataset << ',' << r.seed << ',' << format_double(r.r2_train, 17)
            << ',' << format_double(r.r2_test, 17) << ',' << format_double(r.nrmse_test, 17)
            << ',' << r.generations_run << ',' << r.stop_reason << ','
            << format_double(r.wall_seconds, 6) << ',' << sanitize_cell(r.formula) << '\n';
        r2_values.push_back(r.r2_test);
        nrmse_values.push_back(r.nrmse_test);
    }
    flush_summary(current, r2_values, nrmse_values);
}

} // namespace zgp
