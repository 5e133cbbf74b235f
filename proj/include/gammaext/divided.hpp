#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "gammaext/graded.hpp"
#include "gammaext/sparse.hpp"

namespace gammaext {

/// Sorted sequence of basis indices (repetitions allowed); the index order is the label order.
using Multiset = std::vector<std::uint32_t>;
using Word = std::vector<std::uint32_t>;

/// All size-d multisets over {0..base_dim-1}, lexicographic.
std::vector<Multiset> multisets(std::size_t base_dim, std::size_t d);

/// Distinct rearrangements of mu; gamma_mu is their sum, each with coefficient 1.
std::vector<Word> orbit(const Multiset& mu);

struct GammaSpace {
    GradedSpace base;
    std::size_t d = 0;
    std::vector<Multiset> multisets;
    GradedSpace space;  // labels are the multisets
    std::map<Multiset, std::size_t> index;
};

GammaSpace gamma_space(const GradedSpace& base, std::size_t d);

/// gamma_mu as a vector in Y^{tensor d}: word -> coefficient.
std::map<Word, Scalar> embed_in_tensor(const Multiset& mu);

/// Delta(gamma_mu) component in Gamma^a (x) Gamma^b: each splitting mu = mu1 + mu2 once.
std::vector<std::pair<Multiset, Multiset>> comultiply(const Multiset& mu, std::size_t a, std::size_t b);

/// Graded algebra with a labeled basis and a full structure-constant table.
class AlgebraPresentation {
public:
    AlgebraPresentation(GradedSpace basis, std::vector<std::vector<SparseVec>> table, Vec unit);

    int p() const { return basis_.p(); }
    std::size_t dim() const { return basis_.dim(); }
    const GradedSpace& basis() const { return basis_; }
    const SparseVec& product(std::size_t i, std::size_t j) const { return table_[i][j]; }
    const Vec& unit() const { return unit_; }
    Vec multiply(const Vec& a, const Vec& b) const;

    /// Exhaustive checks; throw InvariantError naming the offending triple.
    void check_associative() const;
    void check_unit() const;
    void check_degrees() const;

private:
    GradedSpace basis_;
    std::vector<std::vector<SparseVec>> table_;
    Vec unit_;
};

/// k[x]/x^h with |x| = 2.
AlgebraPresentation truncated_polynomial(int p, int h);
/// End(k^n) with matrix units e_ab at index a*n+b, degree 0.
AlgebraPresentation matrix_algebra(int p, std::size_t n);
AlgebraPresentation tensor_algebra(const AlgebraPresentation& a, const AlgebraPresentation& b);

/// Gamma^d(B), product of orbit sums computed factorwise in B^{tensor d}.
AlgebraPresentation gamma_algebra(const AlgebraPresentation& b, std::size_t d);

/// Map Gamma^{pd}(Y) -> Gamma^d(Y): gamma_mu -> gamma_nu if mu = p nu, else 0.
/// Columns index Gamma^{pd} multisets, rows Gamma^d multisets.
Matrix frobenius_map(std::size_t base_dim, std::size_t d, int p);

/// Target space of frobenius_map with degrees multiplied by p.
GammaSpace frobenius_target(const GradedSpace& base, std::size_t d);

}  // namespace gammaext
