// SPDX-License-Identifier: Apache-2.0

#ifndef ZGP_DATASET_HPP
#define ZGP_DATASET_HPP

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <vector>

#include "zgp/random.hpp"

namespace zgp {

/// A regression dataset: feature matrix, target vector and column names.
/// Loaders guarantee that every entry is finite.
struct Dataset {
    Eigen::MatrixXd X; // N x d
    Eigen::VectorXd y; // N
    std::vector<std::string> feature_names;
    std::string target_name;

    Eigen::Index rows() const { return X.rows(); }
    Eigen::Index cols() const { return X.cols(); }
};

/// Raised on malformed CSV input; carries the 1-based data row and column
/// of the offending cell when applicable.
class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& message, int row = 0, int column = 0)
        : std::runtime_error(message)
        , row_(row)
        , column_(column)
    {
    }

    int row() const { return row_; }
    int column() const { return column_; }

private:
    int row_;
    int column_;
};

/// A plain numeric table with a header, before any target designation.
struct CsvTable {
    std::vector<std::string> column_names;
    Eigen::MatrixXd values;
};

/// Reads a comma-separated file: UTF-8, first row header, plain decimal
/// cells, no quoting. Throws CsvError for a missing file, a header-only
/// file, a ragged row, or a cell that does not parse to a finite number.
CsvTable load_csv_table(const std::string& path);

/// Loads a dataset, designating `target_column` (or the last column when
/// empty) as the target.
Dataset load_csv(const std::string& path, const std::string& target_column = "");

/// Writes a dataset back out with 17 significant digits so a reload
/// reproduces the exact values.
void save_csv(const Dataset& dataset, const std::string& path);

/// Per-column affine transform fitted on a training set: features and
/// target are centered and scaled to unit standard deviation (population
/// convention, N divisor). Zero-variance columns keep scale 1 and are
/// flagged.
struct Standardizer {
    Eigen::VectorXd feature_mean;
    Eigen::VectorXd feature_std;
    std::vector<bool> feature_constant;
    double target_mean = 0.0;
    double target_std = 1.0;
    bool target_constant = false;

    /// Identity transform for d features; useful when a model is built on
    /// already-scaled data.
    static Standardizer identity(Eigen::Index d);

    Eigen::MatrixXd transform_features(const Eigen::MatrixXd& X) const;
    Eigen::VectorXd transform_target(const Eigen::VectorXd& y) const;
    Eigen::VectorXd inverse_target(const Eigen::VectorXd& y_std) const;
    Dataset transform(const Dataset& dataset) const;

    bool is_identity() const;
};

Standardizer fit_standardizer(const Dataset& train);

/// How to carve a dataset into train / validation / test parts.
struct SplitSpec {
    double test_fraction = 0.30;
    /// Fraction of the remaining (non-test) portion used for validation.
    double validation_fraction = 0.25;
};

struct DataSplit {
    Dataset train;
    Dataset validation;
    Dataset test;
};

/// Splits by a seeded uniform permutation, then cuts off round(N * test
/// fraction) test rows and round(rest * validation fraction) validation
/// rows. Every part keeps at least one row. Throws std::invalid_argument
/// when the dataset has fewer than 4 rows or a fraction is outside (0, 1).
DataSplit split_dataset(const Dataset& dataset, const SplitSpec& spec, RandomStream& rng);

/// Synthetic benchmark sampler: d = 10 features uniform on [0, 1],
///   y = 10*sin(pi*x0*x1) + 20*(x2 - 0.5)^2 + 10*x3 + 5*x4 + noise,
/// noise drawn from N(0, noise_sigma^2). Features x5..x9 do not enter the
/// target.
Dataset generate_friedman1(int n, double noise_sigma, RandomStream& rng);

} // namespace zgp

#endif
