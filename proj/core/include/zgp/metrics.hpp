// SPDX-License-Identifier: Apache-2.0

#ifndef ZGP_METRICS_HPP
#define ZGP_METRICS_HPP

#include <Eigen/Core>

namespace zgp {

/// Mean squared error, (1/N) * sum (y_i - yhat_i)^2.
/// Throws std::invalid_argument on empty or mismatched inputs.
double mean_squared_error(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred);

/// Coefficient of determination, 1 - SS_res / SS_tot. A constant target is
/// handled by convention: 1.0 for a perfect prediction, 0.0 otherwise.
double r2_score(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred);

/// Root mean squared error divided by the range of the target.
/// Throws std::domain_error when the target range is zero.
double nrmse(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred);

} // namespace zgp

#endif
