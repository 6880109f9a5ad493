// SPDX-License-Identifier: Apache-2.0

#include "zgp/linear_fit.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <cmath>

#include "zgp/formula.hpp"

namespace zgp {

namespace {

    constexpr double kRidgeLambda = 1e-8;

} // namespace

Eigen::VectorXd fit_weights(const ZoetropeMatrix& Z, const Eigen::VectorXd& y)
{
    if (Z.num_rows() != y.size()) {
        throw std::invalid_argument("fit_weights: row count differs from target length");
    }
    if (y.size() < 1) {
        throw std::invalid_argument("fit_weights: empty system");
    }

    const int n_e = Z.num_columns();
    std::vector<int> valid;
    valid.reserve(n_e);
    for (int c = 0; c < n_e; ++c) {
        if (Z.column_valid[c]) {
            valid.push_back(c);
        }
    }

    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n_e);
    if (valid.empty()) {
        return alpha; // degenerate fit: the model predicts 0
    }

    const int m = static_cast<int>(valid.size());
    Matrix V(Z.num_rows(), m);
    for (int c = 0; c < m; ++c) {
        V.col(c) = Z.values.col(valid[c]);
    }

    Eigen::VectorXd beta;
    Eigen::ColPivHouseholderQR<Matrix> qr(V);
    if (qr.rank() == m) {
        beta = qr.solve(y);
    } else {
        // Ridge on the normal equations; columns are equilibrated to unit
        // norm first so huge-magnitude zoetropes cannot overflow V^T V.
        Eigen::VectorXd scale(m);
        for (int c = 0; c < m; ++c) {
            const double norm = V.col(c).norm();
            scale[c] = norm > 0.0 ? norm : 1.0;
        }
        Matrix U = V.array().rowwise() / scale.transpose().array();
        Matrix G = U.transpose() * U;
        G.diagonal().array() += kRidgeLambda;
        beta = G.ldlt().solve(U.transpose() * y);
        beta.array() /= scale.array();
    }

    for (int c = 0; c < m; ++c) {
        alpha[valid[c]] = std::isfinite(beta[c]) ? beta[c] : 0.0;
    }
    return alpha;
}

Eigen::VectorXd combine_predictions(const Matrix& zoetrope_values,
    const Eigen::VectorXd& alpha, double fallback)
{
    if (zoetrope_values.cols() != alpha.size()) {
        throw std::invalid_argument("combine_predictions: weight length mismatch");
    }
    std::vector<int> used;
    for (int c = 0; c < alpha.size(); ++c) {
        if (alpha[c] != 0.0) {
            used.push_back(c);
        }
    }

    Eigen::VectorXd pred = Eigen::VectorXd::Zero(zoetrope_values.rows());
    for (Eigen::Index r = 0; r < zoetrope_values.rows(); ++r) {
        double acc = 0.0;
        for (int c : used) {
            acc += alpha[c] * zoetrope_values(r, c);
        }
        pred[r] = std::isfinite(acc) ? acc : fallback;
    }
    return pred;
}

Eigen::VectorXd FittedModel::predict(const Eigen::MatrixXd& X) const
{
    if (X.cols() != static_cast<Eigen::Index>(feature_names.size())) {
        throw std::invalid_argument("predict: input has " + std::to_string(X.cols())
            + " features, model expects " + std::to_string(feature_names.size()));
    }
    const Matrix X_std = scaler.transform_features(X);
    const ZoetropeMatrix Z = mature(genotype, X_std, schedule());
    // In standardized space the training-target mean is zero.
    const Eigen::VectorXd pred_std = combine_predictions(Z.values, alpha, 0.0);
    return scaler.inverse_target(pred_std);
}

std::string FittedModel::formula(int digits) const
{
    std::vector<std::string> leaves;
    leaves.reserve(feature_names.size());
    for (std::size_t k = 0; k < feature_names.size(); ++k) {
        const double mu = scaler.feature_mean[static_cast<Eigen::Index>(k)];
        const double sd = scaler.feature_std[static_cast<Eigen::Index>(k)];
        if (mu == 0.0 && sd == 1.0) {
            leaves.push_back(feature_names[k]);
        } else {
            // Scaling renders as a multiplication so the re-parsed formula
            // never hits the protected-division fallback.
            leaves.push_back("((" + feature_names[k] + " - " + format_double(mu, digits)
                + ")*" + format_double(1.0 / sd, digits) + ")");
        }
    }

    const std::string core = render_formula(genotype, schedule(), alpha, leaves, digits);
    if (scaler.target_mean == 0.0 && scaler.target_std == 1.0) {
        return core;
    }
    if (core == "0") {
        return format_double(scaler.target_mean, digits);
    }
    return format_double(scaler.target_mean, digits) + " + "
        + format_double(scaler.target_std, digits) + "*(" + core + ")";
}

} // namespace zgp
