#include "gammaext/expr.hpp"

#include <cctype>

#include "gammaext/functors.hpp"

namespace gammaext {

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;

    void skip()
    {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }

    std::string word()
    {
        skip();
        std::size_t b = i;
        while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i])))
            ++i;
        return s.substr(b, i - b);
    }

    int number()
    {
        skip();
        std::size_t b = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (b == i)
            throw ExprError("expected a number", b, b + 1);
        if (i - b > 6)
            throw ExprError("number too large", b, i);
        return std::stoi(s.substr(b, i - b));
    }

    void expect(char c)
    {
        skip();
        if (i >= s.size() || s[i] != c)
            throw ExprError(std::string("expected '") + c + "'", i, i + 1);
        ++i;
    }

    std::unique_ptr<Expr> expr()
    {
        skip();
        auto e = std::make_unique<Expr>();
        e->begin = i;
        std::string head = word();
        if (head.empty())
            throw ExprError("expected a functor name", e->begin, e->begin + 1);
        static const std::pair<const char*, Expr::Op> atoms[] = {{"gamma", Expr::Op::gamma}, {"sym", Expr::Op::sym},
                                                                 {"ext", Expr::Op::ext},     {"tensor", Expr::Op::tensor},
                                                                 {"chi", Expr::Op::chi},     {"h", Expr::Op::h}};
        static const std::pair<const char*, Expr::Op> heads[] = {
            {"tw", Expr::Op::tw}, {"zstar", Expr::Op::zstar}, {"tstar", Expr::Op::tstar}, {"dual", Expr::Op::dual}};
        for (auto& [name, op] : atoms)
            if (head == name) {
                e->op = op;
                expect(':');
                e->arg = number();
                e->end = i;
                return e;
            }
        for (auto& [name, op] : heads)
            if (head == name) {
                e->op = op;
                expect('(');
                e->child = expr();
                expect(')');
                e->end = i;
                return e;
            }
        throw ExprError("unknown functor '" + head + "'", e->begin, i);
    }
};

}  // namespace

std::unique_ptr<Expr> parse_expr(const std::string& text)
{
    Parser ps{text};
    auto e = ps.expr();
    ps.skip();
    if (ps.i != text.size())
        throw ExprError("trailing input", ps.i, text.size());
    return e;
}

ExprType check_expr(const Expr& e, int p, int d)
{
    switch (e.op) {
    case Expr::Op::gamma:
    case Expr::Op::sym:
    case Expr::Op::ext:
    case Expr::Op::tensor:
        if (e.arg != d)
            throw ExprError("degree " + std::to_string(e.arg) + " does not match d=" + std::to_string(d), e.begin, e.end);
        return {d, false};
    case Expr::Op::chi:
        if (d != 1)
            throw ExprError("chi has degree 1, but d=" + std::to_string(d), e.begin, e.end);
        if (e.arg >= p)
            throw ExprError("chi:J needs J < p", e.begin, e.end);
        return {1, true};
    case Expr::Op::h:
        if (e.arg < 1)
            throw ExprError("h:U needs U >= 1", e.begin, e.end);
        return {d, true};
    case Expr::Op::tw: {
        auto c = check_expr(*e.child, p, d);
        if (c.affine)
            throw ExprError("tw needs a classical argument", e.begin, e.end);
        return {c.degree * p, false};
    }
    case Expr::Op::zstar: {
        auto c = check_expr(*e.child, p, d);
        if (c.affine)
            throw ExprError("zstar needs a classical argument", e.begin, e.end);
        return {c.degree, true};
    }
    case Expr::Op::tstar: {
        auto c = check_expr(*e.child, p, d);
        if (!c.affine)
            throw ExprError("tstar needs an affine argument", e.begin, e.end);
        return {c.degree, false};
    }
    case Expr::Op::dual:
        return check_expr(*e.child, p, d);
    }
    throw ExprError("bad expression", e.begin, e.end);
}

ModulePtr eval_expr(const Expr& e, int p, int d, int n)
{
    switch (e.op) {
    case Expr::Op::gamma:
        return std_functor(StdKind::gamma, p, e.arg, n);
    case Expr::Op::sym:
        return std_functor(StdKind::sym, p, e.arg, n);
    case Expr::Op::ext:
        return std_functor(StdKind::ext, p, e.arg, n);
    case Expr::Op::tensor:
        return std_functor(StdKind::tensor, p, e.arg, n);
    case Expr::Op::chi:
        return chi(e.arg, n, p);
    case Expr::Op::h:
        return representable(p, d, e.arg, n, true);
    case Expr::Op::tw:
        return frobenius_twist(eval_expr(*e.child, p, d, n));
    case Expr::Op::zstar:
        return z_star(eval_expr(*e.child, p, d, n));
    case Expr::Op::tstar:
        return t_star(eval_expr(*e.child, p, d, n), n);
    case Expr::Op::dual:
        return kuhn_dual(eval_expr(*e.child, p, d, n));
    }
    throw ExprError("bad expression", e.begin, e.end);
}

std::string to_string(const Expr& e)
{
    static const char* names[] = {"gamma", "sym", "ext", "tensor", "chi", "h", "tw", "zstar", "tstar", "dual"};
    const std::string name = names[int(e.op)];
    if (e.child)
        return name + "(" + to_string(*e.child) + ")";
    return name + ":" + std::to_string(e.arg);
}

}  // namespace gammaext
