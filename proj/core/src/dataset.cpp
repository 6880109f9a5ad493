// SPDX-License-Identifier: Apache-2.0

#include "zgp/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "zgp/formula.hpp"

namespace zgp {

namespace {

    std::vector<std::string> split_line(const std::string& line)
    {
        std::vector<std::string> cells;
        std::string cell;
        std::stringstream ss(line);
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        return cells;
    }

    std::string strip(const std::string& s)
    {
        auto begin = s.find_first_not_of(" \t\r");
        auto end = s.find_last_not_of(" \t\r");
        if (begin == std::string::npos) {
            return "";
        }
        return s.substr(begin, end - begin + 1);
    }

} // namespace

CsvTable load_csv_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw CsvError("cannot open file: " + path);
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw CsvError("empty file: " + path);
    }
    CsvTable table;
    for (const auto& name : split_line(line)) {
        table.column_names.push_back(strip(name));
    }
    if (table.column_names.empty()) {
        throw CsvError("empty header: " + path);
    }

    const int cols = static_cast<int>(table.column_names.size());
    std::vector<double> data;
    int rows = 0;
    while (std::getline(in, line)) {
        if (strip(line).empty()) {
            continue;
        }
        const auto cells = split_line(line);
        ++rows;
        if (static_cast<int>(cells.size()) != cols) {
            throw CsvError(path + ": row " + std::to_string(rows) + " has "
                    + std::to_string(cells.size()) + " cells, expected "
                    + std::to_string(cols),
                rows);
        }
        for (int c = 0; c < cols; ++c) {
            const std::string cell = strip(cells[c]);
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v)) {
                throw CsvError(path + ": non-numeric cell '" + cell + "' at row "
                        + std::to_string(rows) + ", column "
                        + table.column_names[c],
                    rows, c + 1);
            }
            data.push_back(v);
        }
    }
    if (rows == 0) {
        throw CsvError("no data rows in file: " + path);
    }

    table.values.resize(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            table.values(r, c) = data[static_cast<std::size_t>(r) * cols + c];
        }
    }
    return table;
}

Dataset load_csv(const std::string& path, const std::string& target_column)
{
    CsvTable table = load_csv_table(path);
    const int cols = static_cast<int>(table.column_names.size());
    if (cols < 2) {
        throw CsvError(path + ": need at least one feature and one target column");
    }

    int target = cols - 1;
    if (!target_column.empty()) {
        auto it = std::find(table.column_names.begin(), table.column_names.end(), target_column);
        if (it == table.column_names.end()) {
            throw CsvError(path + ": no column named '" + target_column + "'");
        }
        target = static_cast<int>(it - table.column_names.begin());
    }

    Dataset d;
    d.target_name = table.column_names[target];
    d.y = table.values.col(target);
    d.X.resize(table.values.rows(), cols - 1);
    int out = 0;
    for (int c = 0; c < cols; ++c) {
        if (c == target) {
            continue;
        }
        d.feature_names.push_back(table.column_names[c]);
        d.X.col(out++) = table.values.col(c);
    }
    return d;
}

void save_csv(const Dataset& dataset, const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        throw CsvError("cannot write file: " + path);
    }
    for (const auto& name : dataset.feature_names) {
        out << name << ',';
    }
    out << (dataset.target_name.empty() ? "target" : dataset.target_name) << '\n';
    for (Eigen::Index r = 0; r < dataset.rows(); ++r) {
        for (Eigen::Index c = 0; c < dataset.cols(); ++c) {
            out << format_double(dataset.X(r, c), 17) << ',';
        }
        out << format_double(dataset.y[r], 17) << '\n';
    }
}

Standardizer Standardizer::identity(Eigen::Index d)
{
    Standardizer s;
    s.feature_mean = Eigen::VectorXd::Zero(d);
    s.feature_std = Eigen::VectorXd::Ones(d);
    s.feature_constant.assign(d, false);
    return s;
}

bool Standardizer::is_identity() const
{
    return target_mean == 0.0 && target_std == 1.0 && feature_mean.isZero(0.0)
        && (feature_std.array() == 1.0).all();
}

Eigen::MatrixXd Standardizer::transform_features(const Eigen::MatrixXd& X) const
{
    if (X.cols() != feature_mean.size()) {
        throw std::invalid_argument("standardizer: feature count mismatch");
    }
    // Scaling multiplies by the reciprocal; the rendered model formula
    // prints the same reciprocal, so re-evaluating it reproduces predict()
    // bit for bit.
    const Eigen::ArrayXd inv = 1.0 / feature_std.array();
    return (X.rowwise() - feature_mean.transpose()).array().rowwise()
        * inv.transpose();
}

Eigen::VectorXd Standardizer::transform_target(const Eigen::VectorXd& y) const
{
    return (y.array() - target_mean) * (1.0 / target_std);
}

Eigen::VectorXd Standardizer::inverse_target(const Eigen::VectorXd& y_std) const
{
    return y_std.array() * target_std + target_mean;
}

Dataset Standardizer::transform(const Dataset& dataset) const
{
    Dataset out = dataset;
    out.X = transform_features(dataset.X);
    out.y = transform_target(dataset.y);
    return out;
}

Standardizer fit_standardizer(const Dataset& train)
{
    if (train.rows() < 1) {
        throw std::invalid_argument("fit_standardizer: empty dataset");
    }
    const double n = static_cast<double>(train.rows());

    Standardizer s;
    s.feature_mean = train.X.colwise().mean();
    s.feature_std.resize(train.cols());
    s.feature_constant.assign(train.cols(), false);
    for (Eigen::Index c = 0; c < train.cols(); ++c) {
        const double var = (train.X.col(c).array() - s.feature_mean[c]).square().sum() / n;
        const double sd = std::sqrt(var);
        if (sd > 0.0) {
            s.feature_std[c] = sd;
        } else {
            s.feature_std[c] = 1.0;
            s.feature_constant[c] = true;
        }
    }

    s.target_mean = train.y.mean();
    const double tvar = (train.y.array() - s.target_mean).square().sum() / n;
    const double tsd = std::sqrt(tvar);
    if (tsd > 0.0) {
        s.target_std = tsd;
    } else {
        s.target_std = 1.0;
        s.target_constant = true;
    }
    return s;
}

namespace {

    Dataset take_rows(const Dataset& dataset, const std::vector<int>& idx, int begin, int end)
    {
        Dataset out;
        out.feature_names = dataset.feature_names;
        out.target_name = dataset.target_name;
        out.X.resize(end - begin, dataset.cols());
        out.y.resize(end - begin);
        for (int r = begin; r < end; ++r) {
            out.X.row(r - begin) = dataset.X.row(idx[r]);
            out.y[r - begin] = dataset.y[idx[r]];
        }
        return out;
    }

} // namespace

DataSplit split_dataset(const Dataset& dataset, const SplitSpec& spec, RandomStream& rng)
{
    const int n = static_cast<int>(dataset.rows());
    if (n < 4) {
        throw std::invalid_argument("split_dataset: need at least 4 rows, got "
            + std::to_string(n));
    }
    if (spec.test_fraction <= 0.0 || spec.test_fraction >= 1.0
        || spec.validation_fraction <= 0.0 || spec.validation_fraction >= 1.0) {
        throw std::invalid_argument("split_dataset: fractions must lie in (0, 1)");
    }

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    // Fisher-Yates driven by the split stream.
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng.uniform_index(i + 1));
        std::swap(idx[i], idx[j]);
    }

    auto clamped_round = [](double x, int lo, int hi) {
        const int v = static_cast<int>(std::llround(x));
        return std::max(lo, std::min(hi, v));
    };
    // Each part keeps at least one row.
    const int n_test = clamped_round(n * spec.test_fraction, 1, n - 2);
    const int rest = n - n_test;
    const int n_val = clamped_round(rest * spec.validation_fraction, 1, rest - 1);
    const int n_train = rest - n_val;

    DataSplit split;
    split.train = take_rows(dataset, idx, 0, n_train);
    split.validation = take_rows(dataset, idx, n_train, n_train + n_val);
    split.test = take_rows(dataset, idx, n_train + n_val, n);
    return split;
}

Dataset generate_friedman1(int n, double noise_sigma, RandomStream& rng)
{
    if (n < 1) {
        throw std::invalid_argument("generate_friedman1: n must be >= 1");
    }
    constexpr int d = 10;

    Dataset out;
    out.X.resize(n, d);
    out.y.resize(n);
    for (int c = 0; c < d; ++c) {
        out.feature_names.push_back("x" + std::to_string(c));
    }
    out.target_name = "target";

    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < d; ++c) {
            out.X(r, c) = rng.uniform();
        }
        const double base = 10.0 * std::sin(std::numbers::pi * out.X(r, 0) * out.X(r, 1))
            + 20.0 * (out.X(r, 2) - 0.5) * (out.X(r, 2) - 0.5)
            + 10.0 * out.X(r, 3) + 5.0 * out.X(r, 4);
        out.y[r] = noise_sigma > 0.0 ? base + noise_sigma * rng.gaussian() : base;
    }
    return out;
}

} // namespace zgp
