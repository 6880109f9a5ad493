// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "zgp/evaluate.hpp"
#include "zgp/random.hpp"

using namespace zgp;

TEST_SUITE_BEGIN("evaluate");

TEST_CASE("protected operator semantics")
{
    CHECK(apply_binary(Op::div, 4.0, 0.0) == 1.0);
    CHECK(apply_binary(Op::div, 4.0, 5e-13) == 1.0);
    CHECK(apply_binary(Op::div, 6.0, 2.0) == 3.0);
    CHECK(apply_binary(Op::mod, 5.0, 0.0) == 0.0);
    CHECK(apply_binary(Op::mod, 7.0, 3.0) == 1.0);
    CHECK(apply_binary(Op::mod, -7.0, 3.0) == -1.0);
    CHECK(apply_unary(Op::sqrt, -4.0) == 2.0);
    CHECK(apply_unary(Op::trunc, -2.7) == -2.0);
    CHECK(apply_unary(Op::trunc, 2.7) == 2.0);
    CHECK(apply_unary(Op::floor, -2.5) == -3.0);
    CHECK(apply_unary(Op::ceil, 2.1) == 3.0);
    CHECK(apply_unary(Op::abs, -9.0) == 9.0);
}

TEST_CASE("operator outputs are clamped")
{
    CHECK(apply_binary(Op::mul, 1e150, 1e150) == 1e150);
    CHECK(apply_binary(Op::mul, -1e150, 1e150) == -1e150);
    CHECK(apply_binary(Op::div, 1e150, 1e-12 * 1.0001) == 1e150);
    CHECK(apply_binary(Op::add, 1e150, 1e150) == 1e150);
}

namespace {

    FusionGene make_gene(Op op1, Op op2, std::uint32_t r_bits, bool keep_first)
    {
        FusionGene g;
        g.op1 = op1;
        g.op2 = op2;
        g.r_bits = r_bits;
        g.keep_first = keep_first;
        return g;
    }

} // namespace

TEST_CASE("fusion of a single pair follows the mixing rule")
{
    Vector e_i(1);
    e_i << 2.0;
    Vector e_j(1);
    e_j << 3.0;

    // r ~ 0.5: f = 0.5*(2+3) + 0.5*(2*3) = 5.5
    const auto [first, second] = fuse_values(e_i, e_j, make_gene(Op::add, Op::mul, 1u << 31, false));
    CHECK(first[0] == doctest::Approx(5.5).epsilon(1e-8));
    CHECK(second[0] == 3.0);
}

TEST_CASE("keep_first returns the first input untouched")
{
    RandomStream rng(5);
    for (int i = 0; i < 100; ++i) {
        Vector a(4), b(4);
        for (int k = 0; k < 4; ++k) {
            a[k] = rng.uniform(-10, 10);
            b[k] = rng.uniform(-10, 10);
        }
        const auto gene = make_gene(Op::sub, Op::div, rng.next_u32(), true);
        const auto [first, second] = fuse_values(a, b, gene);
        for (int k = 0; k < 4; ++k) {
            CHECK(first[k] == a[k]); // bitwise pass-through
        }
    }
}

TEST_CASE("r at the interval ends degenerates to a single operator")
{
    RandomStream rng(6);
    Vector a(8), b(8);
    for (int k = 0; k < 8; ++k) {
        a[k] = rng.uniform(-5, 5);
        b[k] = rng.uniform(-5, 5);
    }

    const auto [one, keep_b] = fuse_values(a, b, make_gene(Op::add, Op::mul, FusionGene::fraction_bits_max(), false));
    const auto [zero, keep_b2] = fuse_values(a, b, make_gene(Op::add, Op::mul, 0, false));
    for (int k = 0; k < 8; ++k) {
        CHECK(one[k] == apply_binary(Op::add, a[k], b[k]));
        CHECK(zero[k] == apply_binary(Op::mul, a[k], b[k]));
    }
}

TEST_CASE("protected division inside a fusion")
{
    Vector e_i(1);
    e_i << 4.0;
    Vector e_j(1);
    e_j << 0.0;
    // r = 1 leaves only op1 = div, and div by zero yields 1
    const auto [first, second] = fuse_values(e_i, e_j,
        make_gene(Op::div, Op::sqrt, FusionGene::fraction_bits_max(), false));
    CHECK(first[0] == 1.0);
    CHECK(second[0] == 0.0);
}

TEST_CASE("maturing the smallest template")
{
    Genotype g;
    g.elements = { Terminal::variable(0), Terminal::variable(1) };
    // r = 1 exactly: f = 1*(x0+x1) + 0*(x0+x1) = x0+x1, and keep_first
    // passes x0 through.
    g.fusions = { make_gene(Op::add, Op::add, FusionGene::fraction_bits_max(), true) };

    const auto schedule = build_schedule(2, 1);
    Matrix X(3, 2);
    X << 1.0, 10.0,
        2.0, 20.0,
        3.0, 30.0;

    const ZoetropeMatrix Z = mature(g, X, schedule);
    REQUIRE(Z.num_columns() == 2);
    for (int r = 0; r < 3; ++r) {
        CHECK(Z.values(r, 0) == X(r, 0));
        CHECK(Z.values(r, 1) == X(r, 0) + X(r, 1));
    }
    CHECK(Z.column_valid[0]);
    CHECK(Z.column_valid[1]);
}

TEST_CASE("all-constant genotypes yield constant columns")
{
    RunConfig config;
    config.num_elements = 4;
    config.num_stages = 2;
    Genotype g;
    g.elements = { Terminal::constant(1.5), Terminal::constant(-2.0),
        Terminal::constant(0.25), Terminal::constant(3.0) };
    RandomStream rng(8);
    for (int f = 0; f < fusion_count(4, 2); ++f) {
        g.fusions.push_back(make_gene(
            config.operators[rng.uniform_index(config.operators.size())],
            config.operators[rng.uniform_index(config.operators.size())],
            rng.next_u32(), rng.coin()));
    }

    Matrix X = Matrix::Random(10, 3);
    const ZoetropeMatrix Z = mature(g, X, build_schedule(4, 2));
    for (int c = 0; c < 4; ++c) {
        for (int r = 1; r < 10; ++r) {
            CHECK(Z.values(r, c) == Z.values(0, c));
        }
    }
}

TEST_CASE("mature is pure")
{
    RunConfig config;
    RandomStream rng(11);
    const Genotype g = random_genotype(rng, config, 4);
    const auto schedule = build_schedule(config.num_elements, config.num_stages);
    Matrix X = Matrix::Random(32, 4);

    const ZoetropeMatrix a = mature(g, X, schedule);
    const ZoetropeMatrix b = mature(g, X, schedule);
    CHECK(a.values == b.values);
    CHECK(a.column_valid == b.column_valid);
}

TEST_CASE("variable index outside the dataset is a dimension error")
{
    Genotype g;
    g.elements = { Terminal::variable(0), Terminal::variable(3) };
    g.fusions = { make_gene(Op::add, Op::add, 0, false) };
    Matrix X = Matrix::Random(4, 2);
    CHECK_THROWS_AS(mature(g, X, build_schedule(2, 1)), std::out_of_range);
}

TEST_CASE("fused vectors must agree in length")
{
    Vector a(3), b(2);
    a.setZero();
    b.setZero();
    CHECK_THROWS_AS(fuse_values(a, b, FusionGene {}), std::invalid_argument);
}

TEST_SUITE_END();
