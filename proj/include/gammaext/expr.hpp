#pragma once

#include <memory>
#include <string>

#include "gammaext/errors.hpp"
#include "gammaext/module.hpp"

namespace gammaext {

/// Functor expressions:
///
///     expr := kind ':' INT | 'chi' ':' INT | 'h' ':' INT | head '(' expr ')'
///     kind := gamma | sym | ext | tensor
///     head := tw | zstar | tstar | dual
///
/// Every atom has the base degree d (chi has degree 1; h:U takes d from the context). tw multiplies the
/// degree by p and needs a classical argument; zstar goes classical -> affine, tstar affine -> classical.
struct Expr {
    enum class Op { gamma, sym, ext, tensor, chi, h, tw, zstar, tstar, dual };
    Op op;
    int arg = 0;
    std::unique_ptr<Expr> child;
    std::size_t begin = 0, end = 0;  // source span
};

class ExprError : public InputError {
public:
    ExprError(const std::string& what, std::size_t begin, std::size_t end)
        : InputError(what + " at " + std::to_string(begin + 1) + "-" + std::to_string(end)), begin_(begin), end_(end) {}
    std::size_t begin() const { return begin_; }
    std::size_t end() const { return end_; }

private:
    std::size_t begin_, end_;
};

struct ExprType {
    int degree = 0;
    bool affine = false;
};

std::unique_ptr<Expr> parse_expr(const std::string& text);
/// Degree bookkeeping against base degree d; throws ExprError with the offending span.
ExprType check_expr(const Expr& e, int p, int d);
/// The module at evaluation rank n (after check_expr).
ModulePtr eval_expr(const Expr& e, int p, int d, int n);
std::string to_string(const Expr& e);

}  // namespace gammaext
