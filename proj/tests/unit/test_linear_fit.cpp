// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "dense_solver.hpp"
#include "zgp/linear_fit.hpp"
#include "zgp/metrics.hpp"
#include "zgp/random.hpp"

using namespace zgp;

namespace {

ZoetropeMatrix make_z(const Matrix& values)
{
    ZoetropeMatrix z;
    z.values = values;
    z.column_valid.assign(values.cols(), true);
    for (int c = 0; c < values.cols(); ++c) {
        z.column_valid[c] = values.col(c).allFinite();
    }
    return z;
}

} // namespace

TEST_SUITE_BEGIN("linear_fit");

TEST_CASE("exact recovery with a dead column")
{
    RandomStream rng(31);
    Matrix Z(20, 2);
    for (int r = 0; r < 20; ++r) {
        Z(r, 0) = rng.uniform(-2, 2);
        Z(r, 1) = 0.0;
    }
    const Eigen::VectorXd y = 3.0 * Z.col(0);
    const Eigen::VectorXd alpha = fit_weights(make_z(Z), y);
    CHECK(alpha[0] == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(alpha[1] == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("duplicate columns split the weight under the ridge fallback")
{
    RandomStream rng(32);
    Matrix Z(30, 2);
    for (int r = 0; r < 30; ++r) {
        Z(r, 0) = rng.uniform(-2, 2);
        Z(r, 1) = Z(r, 0);
    }
    const Eigen::VectorXd alpha = fit_weights(make_z(Z), Z.col(0));
    CHECK(alpha[0] + alpha[1] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(alpha[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(alpha[1] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("agrees with the normal-equations oracle on well-conditioned systems")
{
    RandomStream rng(33);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix Z(100, 7);
        Eigen::VectorXd y(100);
        for (int r = 0; r < 100; ++r) {
            for (int c = 0; c < 7; ++c) {
                Z(r, c) = rng.gaussian();
            }
            y[r] = rng.gaussian();
        }
        const Eigen::VectorXd alpha = fit_weights(make_z(Z), y);
        const Eigen::VectorXd oracle = zgp_tests::normal_equations_solve(Z, y);
        CHECK((alpha - oracle).norm() <= 1e-8 * std::max(1.0, oracle.norm()));
    }
}

TEST_CASE("invalid columns are forced to zero weight")
{
    RandomStream rng(34);
    Matrix Z(15, 3);
    for (int r = 0; r < 15; ++r) {
        Z(r, 0) = rng.uniform(-1, 1);
        Z(r, 1) = rng.uniform(-1, 1);
        Z(r, 2) = rng.uniform(-1, 1);
    }
    Z(4, 1) = std::numeric_limits<double>::quiet_NaN();
    const Eigen::VectorXd y = 2.0 * Z.col(0) - Z.col(2);

    const ZoetropeMatrix z = make_z(Z);
    REQUIRE_FALSE(z.column_valid[1]);
    const Eigen::VectorXd alpha = fit_weights(z, y);
    CHECK(alpha[1] == 0.0);
    CHECK(alpha[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(alpha[2] == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("no valid columns degenerates to the zero model")
{
    Matrix Z(5, 2);
    Z.setConstant(std::numeric_limits<double>::quiet_NaN());
    const Eigen::VectorXd alpha = fit_weights(make_z(Z), Eigen::VectorXd::Ones(5));
    CHECK(alpha.isZero(0.0));
}

TEST_CASE("fitted weights are first-order optimal")
{
    RandomStream rng(35);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix Z(60, 5);
        Eigen::VectorXd y(60);
        for (int r = 0; r < 60; ++r) {
            for (int c = 0; c < 5; ++c) {
                Z(r, c) = rng.gaussian();
            }
            y[r] = rng.gaussian();
        }
        const ZoetropeMatrix z = make_z(Z);
        const Eigen::VectorXd alpha = fit_weights(z, y);
        const double base = mean_squared_error(y, Z * alpha);

        for (int k = 0; k < 5; ++k) {
            Eigen::VectorXd delta(5);
            for (int c = 0; c < 5; ++c) {
                delta[c] = rng.gaussian();
            }
            delta *= 1e-3 / delta.norm();
            const double perturbed = mean_squared_error(y, Z * (alpha + delta));
            CHECK(perturbed >= base - 1e-10);
        }
    }
}

TEST_CASE("r2 equals 1 - N*mse/ss_tot")
{
    RandomStream rng(36);
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXd y(9), p(9);
        for (int k = 0; k < 9; ++k) {
            y[k] = rng.uniform(-4, 4);
            p[k] = rng.uniform(-4, 4);
        }
        const double ss_tot = (y.array() - y.mean()).square().sum();
        const double expect = 1.0 - 9.0 * mean_squared_error(y, p) / ss_tot;
        CHECK(r2_score(y, p) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("prediction fallback replaces non-finite rows")
{
    Matrix Z(3, 2);
    Z << 1.0, 2.0,
        std::numeric_limits<double>::infinity(), 1.0,
        2.0, 0.5;
    Eigen::VectorXd alpha(2);
    alpha << 1.0, 1.0;
    const Eigen::VectorXd pred = combine_predictions(Z, alpha, -7.5);
    CHECK(pred[0] == 3.0);
    CHECK(pred[1] == -7.5);
    CHECK(pred[2] == 2.5);

    // zero-weight columns cannot poison a row
    alpha << 1.0, 0.0;
    Matrix Z2(2, 2);
    Z2 << 1.0, std::numeric_limits<double>::quiet_NaN(),
        2.0, 3.0;
    const Eigen::VectorXd pred2 = combine_predictions(Z2, alpha, 0.0);
    CHECK(pred2[0] == 1.0);
    CHECK(pred2[1] == 2.0);
}

TEST_SUITE_END();
