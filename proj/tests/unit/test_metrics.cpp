// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include "zgp/metrics.hpp"
#include "zgp/random.hpp"

using namespace zgp;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) {
        v[i++] = x;
    }
    return v;
}

} // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("mse basics")
{
    CHECK(mean_squared_error(vec({ 1, 2 }), vec({ 1, 2 })) == 0.0);
    CHECK(mean_squared_error(vec({ 0, 2 }), vec({ 1, 1 })) == 1.0);
    CHECK_THROWS_AS(mean_squared_error(Eigen::VectorXd(), Eigen::VectorXd()),
        std::invalid_argument);
    CHECK_THROWS_AS(mean_squared_error(vec({ 1 }), vec({ 1, 2 })), std::invalid_argument);

    RandomStream rng(4);
    for (int i = 0; i < 1000; ++i) {
        Eigen::VectorXd a(5), b(5);
        for (int k = 0; k < 5; ++k) {
            a[k] = rng.uniform(-10, 10);
            b[k] = rng.uniform(-10, 10);
        }
        CHECK(mean_squared_error(a, b) >= 0.0);
    }
}

TEST_CASE("r2 basics")
{
    CHECK(r2_score(vec({ 1, 2, 3 }), vec({ 1, 2, 3 })) == 1.0);

    // predicting the mean scores exactly zero
    const auto y = vec({ 1, 2, 3, 6 });
    const double mean = y.mean();
    CHECK(r2_score(y, Eigen::VectorXd::Constant(4, mean)) == 0.0);

    CHECK(r2_score(vec({ 0, 2 }), vec({ 1, 1 })) == 0.0);
}

TEST_CASE("r2 convention for a constant target")
{
    CHECK(r2_score(vec({ 5, 5, 5 }), vec({ 5, 5, 5 })) == 1.0);
    CHECK(r2_score(vec({ 5, 5, 5 }), vec({ 5, 5, 4 })) == 0.0);
}

TEST_CASE("nrmse basics")
{
    CHECK(nrmse(vec({ 0, 2 }), vec({ 1, 1 })) == 0.5);
    CHECK(nrmse(vec({ 0, 2, 1 }), vec({ 0, 2, 1 })) == 0.0);
    CHECK_THROWS_AS(nrmse(vec({ 3, 3 }), vec({ 1, 2 })), std::domain_error);
}

TEST_CASE("nrmse is invariant under positive scaling")
{
    RandomStream rng(9);
    for (int i = 0; i < 50; ++i) {
        Eigen::VectorXd y(6), p(6);
        for (int k = 0; k < 6; ++k) {
            y[k] = rng.uniform(-5, 5);
            p[k] = rng.uniform(-5, 5);
        }
        if (y.maxCoeff() == y.minCoeff()) {
            continue;
        }
        const double c = rng.uniform(0.1, 10.0);
        CHECK(nrmse(y, p) == doctest::Approx(nrmse((c * y).eval(), (c * p).eval())).epsilon(1e-12));
    }
}

TEST_SUITE_END();
