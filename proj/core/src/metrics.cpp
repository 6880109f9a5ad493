// SPDX-License-Identifier: Apache-2.0

#include "zgp/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace zgp {

namespace {

    void check_lengths(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
    {
        if (a.size() == 0) {
            throw std::invalid_argument("metric on empty input");
        }
        if (a.size() != b.size()) {
            throw std::invalid_argument("metric inputs differ in length");
        }
    }

} // namespace

double mean_squared_error(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred)
{
    check_lengths(y_true, y_pred);
    return (y_true - y_pred).squaredNorm() / static_cast<double>(y_true.size());
}

double r2_score(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred)
{
    check_lengths(y_true, y_pred);
    const double ss_res = (y_true - y_pred).squaredNorm();
    const double mean = y_true.mean();
    const double ss_tot = (y_true.array() - mean).matrix().squaredNorm();
    if (ss_tot == 0.0) {
        return ss_res == 0.0 ? 1.0 : 0.0;
    }
    return 1.0 - ss_res / ss_tot;
}

double nrmse(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred)
{
    check_lengths(y_true, y_pred);
    const double range = y_true.maxCoeff() - y_true.minCoeff();
    if (range <= 0.0) {
        throw std::domain_error("nrmse: target range is zero");
    }
    return std::sqrt(mean_squared_error(y_true, y_pred)) / range;
}

} // namespace zgp
