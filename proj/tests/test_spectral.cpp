#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"

using Catch::Approx;
using namespace ctl;
using namespace helpers;

TEST_CASE("real spectrum of simple matrices", "[spectral]")
{
    const RealSpectrum diag_spec = real_spectrum(diag({0.9, 0.4}));
    REQUIRE(diag_spec.eigenvalues.size() == 2);
    CHECK(diag_spec.eigenvalues(0) == Approx(0.4).margin(1e-12));
    CHECK(diag_spec.eigenvalues(1) == Approx(0.9).margin(1e-12));
    CHECK(diag_spec.imag_residual <= kDefaultComplexTol);

    const RealSpectrum triangular = real_spectrum(mat2(0.9, 1, 0, 0.9));
    CHECK(triangular.eigenvalues(0) == Approx(0.9).margin(1e-9));
    CHECK(triangular.eigenvalues(1) == Approx(0.9).margin(1e-9));
}

TEST_CASE("rotation has a complex spectrum", "[spectral]")
{
    try {
        real_spectrum(mat2(0, 1, -1, 0));
        FAIL("expected ComplexSpectrum");
    } catch (const Error& e) {
        CHECK(e.code() == errc::complex_spectrum);
    }
}

TEST_CASE("spectrum is similarity invariant", "[spectral][property]")
{
    std::mt19937 rng(911);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + trial % 4;
        const auto eigs = random_spectrum(rng, n, 0.05, 0.9, 0.03);
        Matrix d = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i)
            d(i, i) = eigs[static_cast<size_t>(i)];
        const Matrix t = random_similarity(rng, n);
        const RealSpectrum spec = real_spectrum(t * d * inverse(t));

        auto sorted = eigs;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i)
            CHECK(spec.eigenvalues(i) == Approx(sorted[static_cast<size_t>(i)]).margin(1e-7));
    }
}

TEST_CASE("jordan structure of canonical inputs", "[spectral]")
{
    SECTION("already in Jordan form")
    {
        const JordanStructure js = jordan_structure(mat2(0.9, 1, 0, 0.9));
        REQUIRE(js.blocks.size() == 1);
        CHECK(js.blocks[0].lambda == Approx(0.9).margin(1e-9));
        CHECK(js.blocks[0].size == 2);
        CHECK(js.P.isApprox(Matrix::Identity(2, 2), 1e-9));
    }

    SECTION("diagonal")
    {
        const JordanStructure js = jordan_structure(diag({0.4, 0.9}));
        REQUIRE(js.blocks.size() == 2);
        CHECK(js.blocks[0].lambda == Approx(0.4).margin(1e-12));
        CHECK(js.blocks[0].size == 1);
        CHECK(js.blocks[1].lambda == Approx(0.9).margin(1e-12));
        CHECK(js.blocks[1].size == 1);
        CHECK(js.P.isApprox(Matrix::Identity(2, 2), 1e-9));
    }

    SECTION("block diagonal with one chain")
    {
        Matrix a = Matrix::Zero(3, 3);
        a(0, 0) = 0.3;
        a.block(1, 1, 2, 2) = jordan_block(0.6, 2);
        const JordanStructure js = jordan_structure(a);
        REQUIRE(js.blocks.size() == 2);
        CHECK(js.blocks[0].lambda == Approx(0.3).margin(1e-9));
        CHECK(js.blocks[0].size == 1);
        CHECK(js.blocks[1].lambda == Approx(0.6).margin(1e-9));
        CHECK(js.blocks[1].size == 2);
        CHECK(js.P.isApprox(Matrix::Identity(3, 3), 1e-9));
    }

    SECTION("repeated eigenvalue without a chain gives two blocks")
    {
        const JordanStructure js = jordan_structure(diag({0.5, 0.5}));
        REQUIRE(js.blocks.size() == 2);
        CHECK(js.blocks[0].size == 1);
        CHECK(js.blocks[1].size == 1);
        CHECK(js.blocks[0].lambda == js.blocks[1].lambda);
    }
}

TEST_CASE("jordan structure under similarity", "[spectral][property]")
{
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 8; ++trial) {
        Matrix j = Matrix::Zero(4, 4);
        j(0, 0) = 0.2;
        j.block(1, 1, 3, 3) = jordan_block(0.7, 3);
        const Matrix t = random_similarity(rng, 4);
        const Matrix a = t * j * inverse(t);

        // A defective triple scatters its eigenvalues on the eps^{1/3} scale,
        // so detection needs a widened cluster tolerance here.
        const JordanStructure js = jordan_structure(a, 1e-4);
        REQUIRE(js.blocks.size() == 2);
        CHECK(js.blocks[0].lambda == Approx(0.2).margin(1e-7));
        CHECK(js.blocks[0].size == 1);
        CHECK(js.blocks[1].lambda == Approx(0.7).margin(1e-7));
        CHECK(js.blocks[1].size == 3);

        // Left and right bases invert each other.
        CHECK((js.Q * js.P - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);

        // P restores the block-diagonal Jordan matrix.
        const Matrix restored = js.Q * a * js.P;
        CHECK((restored - jordan_matrix(js.blocks)).cwiseAbs().maxCoeff() < 1e-7);

        // (A - lambda I)^m annihilates each block's chain columns, one power
        // less does not.
        for (size_t i = 0; i < js.blocks.size(); ++i) {
            const auto& blk = js.blocks[i];
            const Matrix m = a - blk.lambda * Matrix::Identity(4, 4);
            const Matrix cols = js.P.middleCols(js.block_offset(static_cast<int>(i)), blk.size);
            CHECK((mat_power(m, blk.size) * cols).cwiseAbs().maxCoeff() < 1e-8);
            if (blk.size > 1)
                CHECK((mat_power(m, blk.size - 1) * cols).cwiseAbs().maxCoeff() > 1e-4);
        }
    }
}

TEST_CASE("declared jordan structure", "[spectral]")
{
    const Matrix a = jordan_block(0.9, 2);

    SECTION("valid declaration passes and normalizes order")
    {
        Matrix a3 = Matrix::Zero(3, 3);
        a3(0, 0) = 0.6;
        a3.block(1, 1, 2, 2) = jordan_block(0.3, 2);
        Matrix p = Matrix::Identity(3, 3);
        // Declared with the chain first; blocks come back ascending and the
        // basis columns move with their block.
        Matrix p_declared(3, 3);
        p_declared.col(0) = p.col(1);
        p_declared.col(1) = p.col(2);
        p_declared.col(2) = p.col(0);
        const JordanStructure js = jordan_from_blocks(a3, {{0.3, 2}, {0.6, 1}}, p_declared);
        CHECK(js.blocks[0].lambda == 0.3);
        CHECK(js.blocks[0].size == 2);
        CHECK(js.blocks[1].lambda == 0.6);
        CHECK(js.P.col(0).isApprox(p.col(1)));
        CHECK(js.P.col(2).isApprox(p.col(0)));
    }

    SECTION("basis that does not reproduce A is rejected")
    {
        try {
            jordan_from_blocks(a, {{0.5, 2}}, Matrix::Identity(2, 2));
            FAIL("expected IllConditioned");
        } catch (const Error& e) {
            CHECK(e.code() == errc::ill_conditioned);
        }
    }

    SECTION("singular basis is rejected")
    {
        Matrix p(2, 2);
        p << 1, 1, 1, 1;
        CHECK_THROWS_AS(jordan_from_blocks(a, {{0.9, 2}}, p), Error);
    }

    SECTION("sizes must sum to the order")
    {
        try {
            jordan_from_blocks(a, {{0.9, 1}}, Matrix::Identity(2, 2));
            FAIL("expected DimensionMismatch");
        } catch (const Error& e) {
            CHECK(e.code() == errc::dimension_mismatch);
        }
    }
}

TEST_CASE("perturbed single-block system", "[spectral]")
{
    const LdtSystem sys = perturbed_jordan_system(0.5, 2, 0.1, col({0, 1}));
    CHECK(sys.A()(0, 0) == 0.5);
    CHECK(sys.A()(0, 1) == 1.0);
    CHECK(sys.A()(1, 0) == 0.0);
    CHECK(sys.A()(1, 1) == Approx(0.6));

    const LdtSystem sys3 = perturbed_jordan_system(0.9, 3, 0.01, col({0, 0, 1}));
    CHECK(sys3.A()(0, 0) == Approx(0.9));
    CHECK(sys3.A()(1, 1) == Approx(0.91));
    CHECK(sys3.A()(2, 2) == Approx(0.92));

    try {
        perturbed_jordan_system(0.9, 2, 0.2, col({0, 1}));
        FAIL("expected EigenvalueOutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == errc::eigenvalue_out_of_range);
    }
}

namespace {

// Independent route: solve the upper-triangular system P beta = (0,...,0,b_n)
// by back substitution, with p_1j = 1 and p_ij = (j-1)!/(j-i)! delta^{i-1}.
std::vector<double> solve_triangular_coefficients(int n, double delta, double b_n)
{
    auto factorial = [](int m) {
        double f = 1.0;
        for (int i = 2; i <= m; ++i)
            f *= i;
        return f;
    };
    ctl::Matrix p = ctl::Matrix::Zero(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            p(i - 1, j - 1) = i == 1 ? 1.0
                                     : factorial(j - 1) / factorial(j - i) * std::pow(delta, i - 1);
    std::vector<double> beta(static_cast<size_t>(n), 0.0);
    for (int i = n; i >= 1; --i) {
        double rhs = (i == n) ? b_n : 0.0;
        for (int j = i + 1; j <= n; ++j)
            rhs -= p(i - 1, j - 1) * beta[static_cast<size_t>(j) - 1];
        beta[static_cast<size_t>(i) - 1] = rhs / p(i - 1, i - 1);
    }
    return beta;
}

} // namespace

TEST_CASE("chain coefficients", "[spectral]")
{
    const auto beta2 = chain_coefficients(2, 0.1, 1.0);
    CHECK(beta2[0] == Approx(-10.0));
    CHECK(beta2[1] == Approx(10.0));

    const auto beta3 = chain_coefficients(3, 0.1, 1.0);
    CHECK(beta3[0] == Approx(50.0));
    CHECK(beta3[1] == Approx(-100.0));
    CHECK(beta3[2] == Approx(50.0));
}

TEST_CASE("chain coefficients solve the triangular system", "[spectral][property]")
{
    for (int n = 1; n <= 8; ++n) {
        for (double delta : {1e-3, 0.05, 0.37}) {
            for (double b_n : {1.0, -0.25}) {
                const auto direct = chain_coefficients(n, delta, b_n);
                const auto solved = solve_triangular_coefficients(n, delta, b_n);
                for (int i = 0; i < n; ++i) {
                    const double scale = std::abs(solved[static_cast<size_t>(i)]);
                    CHECK(std::abs(direct[static_cast<size_t>(i)] - solved[static_cast<size_t>(i)])
                          <= 1e-9 * std::max(1.0, scale));
                }
            }
        }
    }
}
