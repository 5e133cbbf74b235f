#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gammaext/errors.hpp"
#include "gammaext/linalg.hpp"

using namespace gammaext;

namespace {

Matrix random_matrix(int p, std::size_t r, std::size_t c, std::mt19937& rng)
{
    Matrix m(p, r, c);
    std::uniform_int_distribution<int> dist(0, p - 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m.at(i, j) = Scalar(dist(rng));
    return m;
}

// Rank by counting the image size of all vectors: |im| = p^rank.
std::size_t brute_rank(const Matrix& m)
{
    const int p = m.p();
    std::set<Vec> images;
    Vec x(m.cols(), 0);
    while (true) {
        images.insert(gammaext::apply(m, x));
        std::size_t i = 0;
        while (i < x.size() && x[i] == p - 1)
            x[i++] = 0;
        if (i == x.size())
            break;
        ++x[i];
    }
    std::size_t r = 0;
    for (std::size_t s = 1; s < images.size(); s *= p)
        ++r;
    return r;
}

}  // namespace

TEST(Field, InverseAndPrimality)
{
    EXPECT_THROW(Field(4), InputError);
    for (int p : {2, 3, 5, 7, 251}) {
        Field f(p);
        for (int a = 1; a < p; ++a)
            EXPECT_EQ(f.mul(Scalar(a), f.inv(Scalar(a))), 1);
        EXPECT_EQ(f.from_int(-1), p - 1);
    }
}

TEST(Linalg, RankMatchesImageCount)
{
    std::mt19937 rng(7);
    for (int p : {2, 3}) {
        for (int trial = 0; trial < 30; ++trial) {
            auto m = random_matrix(p, 1 + trial % 4, 1 + (trial * 7) % 5, rng);
            EXPECT_EQ(rank(m), brute_rank(m));
        }
    }
}

TEST(Linalg, KernelAndImage)
{
    std::mt19937 rng(11);
    for (int p : {2, 3, 5}) {
        for (int trial = 0; trial < 20; ++trial) {
            auto m = random_matrix(p, 3 + trial % 5, 4 + trial % 6, rng);
            auto rr = rref(m);
            EXPECT_EQ(rr.rank + rr.kernel_basis.cols(), m.cols());
            EXPECT_TRUE(multiply(m, rr.kernel_basis).is_zero());
            EXPECT_EQ(rank(rr.kernel_basis), rr.kernel_basis.cols());
            EXPECT_EQ(rank(rr.image_basis), rr.rank);
            auto k = kernel_rows(m);
            for (std::size_t i = 0; i < k.rows(); ++i) {
                auto v = gammaext::apply(m, k.row_span(i));
                for (auto x : v)
                    EXPECT_EQ(x, 0);
            }
        }
    }
}

TEST(Linalg, SolveRoundTrip)
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_matrix(3, 4, 6, rng);
        Vec x(6);
        for (auto& v : x)
            v = Scalar(rng() % 3);
        auto b = gammaext::apply(m, x);
        auto s = solve(m, b);
        ASSERT_TRUE(s.has_value());
        EXPECT_EQ(gammaext::apply(m, *s), b);
    }
    auto z = Matrix::from_rows(2, {{1, 0}, {1, 0}});
    EXPECT_FALSE(solve(z, Vec{1, 0}).has_value());
    EXPECT_THROW(solve(z, Vec{1}), InputError);
}

TEST(Linalg, QuotientProjection)
{
    auto rel = Matrix::from_rows(3, {{1, 1, 0, 0}, {0, 0, 1, 2}});
    Quotient q(3, 4, rel);
    EXPECT_EQ(q.dim(), 2u);
    auto a = q.project(Vec{1, 0, 0, 0});
    auto b = q.project(Vec{0, 2, 0, 0});
    EXPECT_EQ(a, q.project(Vec{0, 2, 0, 0}));
    EXPECT_EQ(a, b);
    auto zero = q.project(Vec{0, 0, 1, 2});
    EXPECT_EQ(zero, Vec(2, 0));
}

TEST(Linalg, SubspaceBasis)
{
    SubspaceBasis s(2, 3);
    EXPECT_TRUE(s.insert(Vec{1, 1, 0}));
    EXPECT_TRUE(s.insert(Vec{0, 1, 1}));
    EXPECT_FALSE(s.insert(Vec{1, 0, 1}));
    EXPECT_TRUE(s.contains(Vec{1, 0, 1}));
    EXPECT_FALSE(s.contains(Vec{1, 0, 0}));
}
