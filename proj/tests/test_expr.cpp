#include <gtest/gtest.h>

#include "gammaext/expr.hpp"
#include "gammaext/functors.hpp"

using namespace gammaext;

TEST(Expr, DegreeBookkeeping)
{
    auto t = check_expr(*parse_expr("tw(gamma:2)"), 2, 2);
    EXPECT_EQ(t.degree, 4);
    EXPECT_FALSE(t.affine);
    t = check_expr(*parse_expr("zstar(sym:2)"), 3, 2);
    EXPECT_EQ(t.degree, 2);
    EXPECT_TRUE(t.affine);
    EXPECT_EQ(check_expr(*parse_expr("tw(tw(tensor:1))"), 3, 1).degree, 9);
    EXPECT_EQ(check_expr(*parse_expr(" tstar( dual(h:2) ) "), 2, 2).degree, 2);
    EXPECT_EQ(to_string(*parse_expr(" tw ( ext:3 )")), "tw(ext:3)");
}

TEST(Expr, PositionedErrors)
{
    try {
        parse_expr("tw(foo:1)");
        FAIL();
    } catch (const ExprError& e) {
        EXPECT_EQ(e.begin(), 3u);
        EXPECT_EQ(e.end(), 6u);
    }
    EXPECT_THROW(parse_expr("tw(sym:2"), ExprError);
    EXPECT_THROW(parse_expr("sym:"), ExprError);
    EXPECT_THROW(parse_expr("sym:2 x"), ExprError);
    try {
        check_expr(*parse_expr("tw(zstar(sym:2))"), 2, 2);
        FAIL();
    } catch (const ExprError& e) {
        EXPECT_EQ(e.begin(), 0u);
    }
    try {
        check_expr(*parse_expr("dual(sym:3)"), 2, 2);
        FAIL();
    } catch (const ExprError& e) {
        EXPECT_EQ(e.begin(), 5u);
        EXPECT_EQ(e.end(), 10u);
    }
    EXPECT_THROW(check_expr(*parse_expr("chi:2"), 2, 1), ExprError);
    EXPECT_THROW(check_expr(*parse_expr("tstar(sym:1)"), 2, 1), ExprError);
}

TEST(Expr, Evaluation)
{
    auto m = eval_expr(*parse_expr("tw(tensor:1)"), 2, 1, 2);
    EXPECT_EQ(m->algebra()->d(), 2);
    EXPECT_TRUE(find_isomorphism(m, frobenius_twist(std_functor(StdKind::tensor, 2, 1, 2))).has_value());
    auto z = eval_expr(*parse_expr("tstar(zstar(sym:2))"), 2, 2, 2);
    EXPECT_FALSE(z->algebra()->is_affine());
    EXPECT_EQ(eval_expr(*parse_expr("chi:1"), 3, 1, 2)->bottom(), 2);
}
