// SPDX-License-Identifier: Apache-2.0

#ifndef ZGP_LINEAR_FIT_HPP
#define ZGP_LINEAR_FIT_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "zgp/config.hpp"
#include "zgp/dataset.hpp"
#include "zgp/evaluate.hpp"
#include "zgp/genotype.hpp"
#include "zgp/schedule.hpp"

namespace zgp {

/// Least-squares weights for the linear combination of zoetropes,
///   argmin_alpha sum_i (y_i - sum_j alpha_j Z_ij)^2,
/// with no intercept. Only valid columns enter the solve; weights of
/// invalid columns are exactly zero. Full-rank systems are solved by QR;
/// rank-deficient ones fall back to ridge-regularized normal equations
/// (lambda = 1e-8) on norm-equilibrated columns. With no valid column at
/// all the result is the zero vector.
Eigen::VectorXd fit_weights(const ZoetropeMatrix& Z, const Eigen::VectorXd& y);

/// Combines zoetrope values with fitted weights row by row, skipping
/// zero-weight columns entirely. Rows where the combination is not finite
/// fall back to `fallback` (the training-target mean in the caller's
/// scale).
Eigen::VectorXd combine_predictions(const Matrix& zoetrope_values,
    const Eigen::VectorXd& alpha, double fallback);

/// A complete trained model: genotype, fitted weights and the scaler of
/// the training run. Predictions accept raw-scale inputs and return
/// raw-scale outputs.
struct FittedModel {
    RunConfig config;
    Genotype genotype;
    Eigen::VectorXd alpha;
    Standardizer scaler;
    std::vector<std::string> feature_names;
    std::string target_name;
    double train_mse = 0.0;
    double validation_mse = 0.0;

    MaturationSchedule schedule() const
    {
        return build_schedule(config.num_elements, config.num_stages);
    }

    /// Standardizes X, matures the genotype and returns the destandardized
    /// linear combination. Rows with a non-finite combination fall back to
    /// the training-target mean. Throws std::invalid_argument when X does
    /// not have the training dimensionality.
    Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;

    /// The complete analytical formula in terms of the raw input features,
    /// with the standardization folded in. `digits` controls constant
    /// precision; 17 reproduces predict() exactly up to rounding.
    std::string formula(int digits = 6) const;
};

} // namespace zgp

#endif
