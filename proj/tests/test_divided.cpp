#include <gtest/gtest.h>

#include "gammaext/divided.hpp"
#include "gammaext/errors.hpp"
#include "gammaext/schur.hpp"

using namespace gammaext;

TEST(Divided, MultisetCounts)
{
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t d = 0; d <= 4; ++d)
            EXPECT_EQ((long long)multisets(n, d).size(), binomial(n + d - 1, d));
    EXPECT_EQ(orbit({0, 0, 1}).size(), 3u);
    EXPECT_EQ(orbit({0, 1, 2}).size(), 6u);
}

TEST(Divided, PolynomialGammaProduct)
{
    // Gamma^2(k[x]/x^3): gamma(x^a x^b) products follow the multinomial rule in k[x].
    auto a = truncated_polynomial(5, 3);
    a.check_associative();
    auto g = gamma_algebra(a, 2);
    g.check_associative();
    g.check_unit();
    g.check_degrees();
}

TEST(Divided, GammaOfMatrixAlgebraIsSchur)
{
    // Generic Gamma^d(End k^n) agrees with the dedicated Schur algebra tables.
    for (int p : {2, 3}) {
        for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
            auto g = gamma_algebra(matrix_algebra(p, n), d);
            auto s = SchurAlgebra::classical(p, n, d);
            ASSERT_EQ(g.dim(), s->dim());
            for (std::size_t i = 0; i < s->dim(); ++i)
                for (std::size_t j = 0; j < s->dim(); ++j)
                    ASSERT_EQ(g.product(i, j), s->product(i, j)) << i << " " << j;
        }
    }
}

TEST(Divided, GammaOfAffineBaseIsAffineSchur)
{
    auto base = tensor_algebra(matrix_algebra(2, 2), truncated_polynomial(2, 2));
    auto g = gamma_algebra(base, 2);
    auto s = SchurAlgebra::affine(2, 2, 2);
    ASSERT_EQ(g.dim(), s->dim());
    for (std::size_t i = 0; i < s->dim(); ++i)
        for (std::size_t j = 0; j < s->dim(); ++j)
            ASSERT_EQ(g.product(i, j), s->product(i, j));
}

TEST(Divided, Comultiply)
{
    auto parts = comultiply({0, 0, 1}, 1, 2);
    EXPECT_EQ(parts.size(), 2u);
    EXPECT_THROW(comultiply({0, 1}, 2, 1), InputError);
}

TEST(Divided, Frobenius)
{
    auto f = frobenius_map(2, 1, 2);
    // Gamma^2(k^2) -> Gamma^1: {0,0} -> {0}, {0,1} -> 0, {1,1} -> {1}.
    EXPECT_EQ(f.rows(), 2u);
    EXPECT_EQ(f.cols(), 3u);
    EXPECT_EQ(f.at(0, 0), 1);
    EXPECT_EQ(f.at(1, 2), 1);
    EXPECT_EQ(f.at(0, 1) + f.at(1, 1), 0);
}
