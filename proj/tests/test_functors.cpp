#include <gtest/gtest.h>

#include "gammaext/errors.hpp"
#include "gammaext/functors.hpp"

using namespace gammaext;

namespace {

PoincareSeries shifted(const PoincareSeries& s, int n) { return translate(s, -n); }

std::size_t total(const PoincareSeries& s)
{
    std::size_t t = 0;
    for (auto& [d, n] : s)
        t += n;
    return t;
}

}  // namespace

TEST(Functors, StandardDimensions)
{
    EXPECT_EQ(std_functor(StdKind::sym, 2, 2, 2)->dim(), 3u);
    EXPECT_EQ(std_functor(StdKind::ext, 2, 2, 2)->dim(), 1u);
    EXPECT_EQ(std_functor(StdKind::gamma, 2, 2, 2)->dim(), 3u);
    EXPECT_EQ(std_functor(StdKind::tensor, 2, 2, 2)->dim(), 4u);
    for (auto k : {StdKind::sym, StdKind::ext, StdKind::gamma, StdKind::tensor})
        EXPECT_EQ(std_functor(k, 3, 1, 3)->dim(), 3u);
    EXPECT_EQ(std_functor(StdKind::ext, 3, 3, 4)->dim(), 4u);
}

TEST(Functors, ModuleAxioms)
{
    for (int p : {2, 3})
        for (auto k : {StdKind::sym, StdKind::ext, StdKind::gamma, StdKind::tensor})
            for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}, {3, 3}})
                EXPECT_NO_THROW(check_module_axioms(*std_functor(k, p, d, n))) << kind_name(k) << n << d;
    for (int p : {2, 3}) {
        for (int j = 0; j < p; ++j)
            check_module_axioms(*chi(j, 2, p));
        check_module_axioms(*representable(p, 2, 1, 2, true));
        check_module_axioms(*corepresentable(p, 2, 1, 2, true));
        check_module_axioms(*kuhn_dual(representable(p, 2, 2, 2, true)));
    }
}

TEST(Functors, TwistOfIdentityIsPthPowers)
{
    auto twisted = frobenius_twist(std_functor(StdKind::tensor, 2, 1, 2));
    check_module_axioms(*twisted);
    auto sym = std_functor(StdKind::sym, 2, 2, 2);
    // basis of S^2(k^2): {0,0}, {0,1}, {1,1}; p-th powers are positions 0 and 2
    auto powers = submodule(sym, {SparseVec{{0, 1}}, SparseVec{{2, 1}}});
    EXPECT_EQ(powers->dim(), 2u);
    EXPECT_TRUE(find_isomorphism(twisted, powers).has_value());
    EXPECT_EQ(twisted->dim(), 2u);
}

TEST(Functors, TwistIsExact)
{
    // Lambda^2 -> tensor^2 -> S^2 at p = 2: dims 1 + 3 = 4 before and after twisting, and Hom dims agree.
    auto ext = frobenius_twist(std_functor(StdKind::ext, 2, 2, 4));
    auto ten = frobenius_twist(std_functor(StdKind::tensor, 2, 2, 4));
    auto sym = frobenius_twist(std_functor(StdKind::sym, 2, 2, 4));
    EXPECT_EQ(ext->dim() + sym->dim(), ten->dim());
    EXPECT_EQ(total(hom_dims(ext, ten)), 1u);
    EXPECT_EQ(total(hom_dims(ten, sym)), 1u);
}

TEST(Functors, Reevaluate)
{
    auto s22 = std_functor(StdKind::sym, 3, 2, 2);
    auto s23 = reevaluate(s22, 3);
    check_module_axioms(*s23);
    EXPECT_EQ(s23->dim(), 6u);
    EXPECT_TRUE(find_isomorphism(s23, std_functor(StdKind::sym, 3, 2, 3)).has_value());
    for (auto k : {StdKind::sym, StdKind::ext, StdKind::gamma, StdKind::tensor}) {
        auto m = std_functor(k, 2, 2, 2);
        EXPECT_TRUE(find_isomorphism(reevaluate(m, 2), m).has_value());
    }
    EXPECT_THROW(reevaluate(s22, 1), InputError);
}

TEST(Functors, ZStar)
{
    auto z = z_star(std_functor(StdKind::sym, 2, 2, 2));
    check_module_axioms(*z);
    EXPECT_EQ(z->poincare(), (PoincareSeries{{0, 3}, {2, 4}, {4, 3}}));
    auto z1 = z_star(std_functor(StdKind::tensor, 3, 1, 2));
    EXPECT_EQ(z1->poincare(), (PoincareSeries{{0, 2}, {2, 2}, {4, 2}}));
    // z* of a classical representable is the affine representable
    for (int p : {2, 3}) {
        auto zr = z_star(representable(p, 2, 1, 2, false));
        EXPECT_TRUE(find_isomorphism(zr, representable(p, 2, 1, 2, true)).has_value());
    }
    EXPECT_THROW(z_star(std_functor(StdKind::sym, 2, 2, 1)), InputError);
    // S^2(k (x) A) at p = 2: evaluate z*S^2 back at rank one
    EXPECT_EQ(induce(z, 1)->poincare(), (PoincareSeries{{0, 1}, {2, 1}, {4, 1}}));
}

TEST(Functors, TStarOfZStarIsGradedExtension)
{
    for (int p : {2, 3}) {
        auto g = std_functor(StdKind::ext, p, 2, 2);
        auto lhs = t_star(z_star(g), 2);
        auto rhs = graded_extension(g, twisted_algebra_degrees(p, 1));
        check_module_axioms(*rhs);
        EXPECT_EQ(lhs->poincare(), rhs->poincare());
        EXPECT_TRUE(find_isomorphism(lhs, rhs).has_value());
    }
    auto z1 = t_star(z_star(std_functor(StdKind::tensor, 2, 1, 1)), 1);
    EXPECT_EQ(z1->poincare(), (PoincareSeries{{0, 1}, {2, 1}}));
}

TEST(Functors, TwistedAlgebraDegrees)
{
    EXPECT_EQ(twisted_algebra_degrees(2, 1), (std::vector<int>{0, 2}));
    EXPECT_EQ(twisted_algebra_degrees(2, 2), (std::vector<int>{0, 4, 2, 6}));
    EXPECT_EQ(twisted_algebra_degrees(3, 1), (std::vector<int>{0, 2, 4}));
}

TEST(Functors, KuhnDuality)
{
    for (int p : {2, 3}) {
        for (int j = 0; j < p; ++j) {
            auto d = kuhn_dual(chi(j, 2, p));
            EXPECT_TRUE(find_isomorphism(d, chi(p - 1 - j, 2, p)).has_value());
        }
    }
    // (h^{U (x) A})^# and c*_{U (x) A}[-2(p-1)d] share a Poincare series
    const int p = 2, d = 2, n = 2;
    auto h = representable(p, d, 2, n, true);
    auto c = corepresentable(p, d, 2, n, true);
    EXPECT_EQ(kuhn_dual(h)->poincare(), shifted(c->poincare(), -2 * (p - 1) * d));
    EXPECT_TRUE(find_isomorphism(kuhn_dual(h), shift_module(c, -2 * (p - 1) * d)).has_value());
    // z*(F^#) = (z*F)^#
    for (auto k : {StdKind::sym, StdKind::ext, StdKind::gamma, StdKind::tensor}) {
        auto f = std_functor(k, p, d, n);
        EXPECT_EQ(z_star(kuhn_dual(f))->poincare(), kuhn_dual(z_star(f))->poincare());
        EXPECT_EQ(kuhn_dual(kuhn_dual(f))->poincare(), f->poincare());
    }
    // h* = t*[2(p-1)d]
    for (auto f : {representable(p, d, 1, n, true), z_star(std_functor(StdKind::sym, p, d, n)), chi(1, 2, 2)}) {
        const int dd = f->algebra()->d();
        EXPECT_EQ(h_star(f, 2)->poincare(), shifted(t_star(f, 2)->poincare(), 2 * (p - 1) * dd));
    }
    // classical: (S^2)^# = Gamma^2 on k^2
    EXPECT_TRUE(find_isomorphism(kuhn_dual(std_functor(StdKind::sym, 2, 2, 2)), std_functor(StdKind::gamma, 2, 2, 2))
                    .has_value());
    EXPECT_FALSE(find_isomorphism(std_functor(StdKind::sym, 2, 2, 2), std_functor(StdKind::gamma, 2, 2, 2))
                     .has_value());
}

TEST(Functors, Yoneda)
{
    const int p = 2, d = 2, n = 2;
    auto hA = representable(p, d, n, n, true);
    auto alg = SchurAlgebra::affine(p, n, d);
    EXPECT_EQ(hom_dims(hA, hA), alg->presentation().basis().poincare());
    // Hom(h^{U (x) A}, F) = F(U (x) A)
    for (auto f : {chi(0, 2, 2), chi(1, 2, 2)}) {
        auto h1 = representable(p, 1, 1, 2, true);
        EXPECT_EQ(hom_dims(h1, f), induce(f, 1)->poincare());
    }
    auto f = z_star(std_functor(StdKind::ext, p, d, n));
    auto h1 = representable(p, d, 1, n, true);
    EXPECT_EQ(hom_dims(h1, f), induce(f, 1)->poincare());
}

TEST(Functors, Adjunction)
{
    // Hom(z*F, G) = Hom(F, t*G)
    const int p = 2, d = 2, n = 2;
    for (auto F : {representable(p, d, 1, n, false), std_functor(StdKind::sym, p, d, n)}) {
        for (auto G : {representable(p, d, 1, n, true), corepresentable(p, d, 1, n, true)}) {
            EXPECT_EQ(hom_dims(z_star(F), G), hom_dims(F, t_star(G, n)));
        }
    }
}

TEST(Functors, ChiRange)
{
    EXPECT_THROW(chi(2, 1, 2), InputError);
    EXPECT_EQ(chi(2, 1, 3)->poincare(), (PoincareSeries{{4, 1}}));
}
