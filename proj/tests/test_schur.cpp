#include <gtest/gtest.h>

#include "gammaext/errors.hpp"
#include "gammaext/schur.hpp"

using namespace gammaext;

TEST(Schur, Dimensions)
{
    EXPECT_EQ(SchurAlgebra::classical(2, 2, 2)->dim(), 10u);
    EXPECT_EQ(SchurAlgebra::classical(2, 3, 3)->dim(), 165u);
    EXPECT_EQ(SchurAlgebra::affine(3, 2, 2)->dim(), 78u);
    EXPECT_EQ(SchurAlgebra::classical(3, 2, 4)->weights().size(), 5u);
}

TEST(Schur, AxiomsSmall)
{
    for (int p : {2, 3}) {
        auto s = SchurAlgebra::classical(p, 2, 3);
        auto pres = s->presentation();
        pres.check_associative();
        pres.check_unit();
        auto a = SchurAlgebra::affine(p, 2, 2);
        auto pa = a->presentation();
        pa.check_associative();
        pa.check_unit();
        pa.check_degrees();
    }
}

TEST(Schur, GeneratorsGenerate)
{
    for (auto [p, n, d] : std::vector<std::tuple<int, int, int>>{{2, 3, 3}, {2, 4, 3}, {3, 3, 3}, {2, 2, 4}}) {
        auto s = SchurAlgebra::classical(p, n, d);
        EXPECT_EQ(generated_dimension(*s, s->generators()), s->dim()) << p << n << d;
    }
}

TEST(Schur, TransposeIsAntiAutomorphism)
{
    auto s = SchurAlgebra::classical(3, 2, 3);
    for (std::size_t a = 0; a < s->dim(); ++a) {
        for (std::size_t b = 0; b < s->dim(); ++b) {
            SparseVec lhs;
            for (auto [c, v] : s->product(a, b))
                lhs.emplace_back(s->transpose(c), v);
            std::sort(lhs.begin(), lhs.end());
            EXPECT_EQ(lhs, s->product(s->transpose(b), s->transpose(a)));
        }
    }
}

TEST(Schur, Frobenius)
{
    auto big = SchurAlgebra::classical(2, 2, 4);
    auto small = SchurAlgebra::classical(2, 2, 2);
    auto f = frobenius_algebra_map(*big, *small);
    for (std::size_t a = 0; a < big->dim(); ++a) {
        for (std::size_t b = 0; b < big->dim(); ++b) {
            SparseAccumulator lhs;
            for (auto [c, v] : big->product(a, b))
                if (f[c] >= 0)
                    lhs.add(std::uint32_t(f[c]), v);
            Field fl(2);
            SparseVec rhs;
            if (f[a] >= 0 && f[b] >= 0)
                rhs = small->product(f[a], f[b]);
            EXPECT_EQ(lhs.finish(fl), rhs);
        }
    }
}

TEST(Schur, CeilingRaisesInfeasible)
{
    setenv("GAMMAEXT_MAX_ALGEBRA_DIM", "100", 1);
    try {
        SchurAlgebra::classical(2, 3, 3);
        FAIL();
    } catch (const InfeasibleError& e) {
        EXPECT_EQ(e.required(), 165);
    }
    unsetenv("GAMMAEXT_MAX_ALGEBRA_DIM");
}

TEST(Schur, TransportElements)
{
    for (auto s : {SchurAlgebra::classical(2, 3, 3), SchurAlgebra::affine(2, 2, 2)}) {
        for (std::size_t w = 0; w < s->weights().size(); ++w) {
            auto [into, back] = s->transport(int(w));
            EXPECT_EQ(s->row(into), s->dominant_of(int(w)));
            EXPECT_EQ(s->col(into), int(w));
            SparseVec id{{s->idempotent(int(w)), Scalar(1)}};
            EXPECT_EQ(s->product(back, into), id);
        }
    }
}
