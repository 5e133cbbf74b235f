#pragma once

#include <string>
#include <vector>

#include "gammaext/module.hpp"

namespace gammaext {

enum class StdKind { tensor, sym, ext, gamma };

StdKind parse_kind(const std::string& s);
std::string kind_name(StdKind k);

/// V^{(x)d}, S^d V, Lambda^d V, Gamma^d V evaluated at k^n, as S(n,d)-modules in degree 0.
ModulePtr std_functor(StdKind kind, int p, int d, int n);

/// Restriction along S(n, pd) -> S(n, d).
ModulePtr frobenius_twist(ModulePtr m);

/// Phi(M) evaluated at k^N (classical or affine, by the algebra of M).
ModulePtr reevaluate(ModulePtr m, int big_n);

/// F(V (x) W) for a graded space W with basis degrees w, as a graded S(n,d)-module.
ModulePtr graded_extension(ModulePtr m, const std::vector<int>& w);

/// Basis degrees of A_i = A (x) A^(1) (x) ... (x) A^(i-1).
std::vector<int> twisted_algebra_degrees(int p, int i);

/// F -> F(V (x) A) as a graded S^af_{d,n}-module; requires n >= d.
ModulePtr z_star(ModulePtr m);
/// F -> F(k^m (x) A) as a graded S(m,d)-module.
ModulePtr t_star(ModulePtr f, int m);
/// r^* F: a classical module regarded as an affine one, positive degrees acting by zero.
ModulePtr inflate(ModulePtr f);
/// h^* = # o t^* o #.
ModulePtr h_star(ModulePtr f, int m);

ModulePtr chi(int j, int n, int p);

/// Kuhn dual; affine modules are regraded by t -> 2(p-1)d - t.
ModulePtr kuhn_dual(ModulePtr f);

/// h^{U (x) A} with dim U = u over S^af_{d,n} (affine) or Gamma^{d,U} over S(n,d).
ModulePtr representable(int p, int d, int u, int n, bool affine);
/// c*_{U (x) A} (affine) or the classical co-representable.
ModulePtr corepresentable(int p, int d, int u, int n, bool affine);

}  // namespace gammaext
