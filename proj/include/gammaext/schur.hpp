#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "gammaext/divided.hpp"

namespace gammaext {

/// Basis of Hom(k^cols, k^rows) (x) k[x]/x^depth: unit (r, c, k) = e_rc (x) x^k at index (r*cols + c)*depth + k.
struct UnitShape {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::uint32_t depth = 1;

    std::uint32_t count() const { return rows * cols * depth; }
    std::uint32_t index(std::uint32_t r, std::uint32_t c, std::uint32_t k) const { return (r * cols + c) * depth + k; }
    std::uint32_t row(std::uint32_t u) const { return u / (cols * depth); }
    std::uint32_t col(std::uint32_t u) const { return (u / depth) % cols; }
    std::uint32_t power(std::uint32_t u) const { return u % depth; }
};

/// Lookup table from multisets of a fixed shape to basis positions.
class MultisetIndex {
public:
    MultisetIndex() = default;
    MultisetIndex(std::uint32_t unit_count, const std::vector<Multiset>& basis);
    long find(const Multiset& m) const;

private:
    std::uint64_t pack(const Multiset& m) const;
    std::uint64_t radix_ = 1;
    std::unordered_map<std::uint64_t, std::uint32_t> map_;
};

/// Size-d multisets of units of `shape`, with row/column weights and degrees.
struct GammaHomBasis {
    UnitShape shape;
    std::size_t d = 0;
    std::vector<Multiset> elements;
    MultisetIndex index;
    std::vector<std::vector<int>> row_weight;  // per element, length shape.rows
    std::vector<std::vector<int>> col_weight;  // per element, length shape.cols
    std::vector<int> degree;                   // 2 * total x-power

    static GammaHomBasis build(UnitShape shape, std::size_t d);
};

/// Integer coefficients of gamma_lhs o gamma_rhs (composition in Gamma^d of Hom spaces),
/// keyed by the sorted product word. Units compose as e_rm x^k . e_mc x^l = e_rc x^{k+l}.
void compose_counts(const std::vector<Word>& lhs_orbit, const std::vector<Word>& rhs_orbit, UnitShape lhs,
                    UnitShape rhs, std::map<Multiset, long long>& out);

/// Gamma^d(f)(gamma_mu) for a linear map f given on units; result keyed by sorted target word.
std::map<Multiset, long long> gamma_of_map(const Multiset& mu,
                                           const std::function<std::vector<std::pair<std::uint32_t, int>>(std::uint32_t)>& f);

/// Compositions of d into n parts, lexicographic.
std::vector<std::vector<int>> compositions(int d, int n);

/// S(n,d) = Gamma^d(End k^n) (depth 1) or S^af_{d,n} = Gamma^d(End k^n (x) k[x]/x^p) (depth p).
class SchurAlgebra {
public:
    static std::shared_ptr<const SchurAlgebra> classical(int p, int n, int d);
    static std::shared_ptr<const SchurAlgebra> affine(int p, int n, int d);

    int p() const { return p_; }
    int n() const { return n_; }
    int d() const { return d_; }
    bool is_affine() const { return depth_ > 1; }
    std::uint32_t depth() const { return std::uint32_t(depth_); }
    const UnitShape& shape() const { return basis_.shape; }

    std::size_t dim() const { return basis_.elements.size(); }
    const Multiset& element(std::size_t i) const { return basis_.elements[i]; }
    const GammaHomBasis& hom_basis() const { return basis_; }
    long find(const Multiset& m) const { return basis_.index.find(m); }
    int degree(std::size_t i) const { return basis_.degree[i]; }
    int row(std::size_t i) const { return row_[i]; }
    int col(std::size_t i) const { return col_[i]; }

    const std::vector<std::vector<int>>& weights() const { return weights_; }
    int weight_index(const std::vector<int>& w) const;

    /// Basis elements with the given column weight (any row, any degree).
    const std::vector<std::uint32_t>& with_col(int w) const { return by_col_[w]; }
    const std::vector<std::uint32_t>& with_row(int w) const { return by_row_[w]; }
    /// Weakly decreasing weights; xi_mu S is isomorphic to xi_sort(mu) S, so these suffice for resolutions.
    bool is_dominant(int w) const { return dominant_[w] == w; }
    int dominant_of(int w) const { return dominant_[w]; }
    /// (into, back) with into in xi_dom S xi_w, back in xi_w S xi_dom and back * into = xi_w.
    std::pair<std::uint32_t, std::uint32_t> transport(int w) const { return transport_[w]; }
    /// Basis elements of e S e, e the sum of dominant xi_lambda.
    const std::vector<std::uint32_t>& dominant_elements() const { return dominant_elements_; }
    /// Position of b among with_row(row(b)).
    std::uint32_t row_rank(std::size_t b) const { return row_rank_[b]; }

    /// gamma_a * gamma_b; zero unless col(a) == row(b).
    const SparseVec& product(std::size_t a, std::size_t b) const;
    SparseVec multiply(const SparseVec& x, const SparseVec& y) const;

    /// xi_lambda: the diagonal multiset with e_ii repeated lambda_i times.
    std::uint32_t idempotent(int w) const;
    Vec unit() const;

    /// A generating set of the algebra (indices of basis elements).
    const std::vector<std::uint32_t>& generators() const { return generators_; }

    /// Transpose anti-automorphism Gamma^d(transpose (x) id_A), as a basis permutation.
    std::uint32_t transpose(std::size_t i) const { return transpose_[i]; }

    /// Orbit (distinct arrangements) of basis element i.
    const std::vector<Word>& orbit_of(std::size_t i) const { return orbits_[i]; }

    AlgebraPresentation presentation() const;

private:
    SchurAlgebra(int p, int n, int d, int depth);
    static std::shared_ptr<const SchurAlgebra> intern(int p, int n, int d, int depth);
    void compute_products(std::size_t a) const;

    int p_, n_, d_, depth_;
    Field field_;
    GammaHomBasis basis_;
    std::vector<std::vector<Word>> orbits_;
    std::vector<int> row_, col_;
    std::vector<std::vector<int>> weights_;
    std::map<std::vector<int>, int> weight_lookup_;
    std::vector<std::vector<std::uint32_t>> by_col_, by_row_;
    std::vector<std::uint32_t> row_rank_;
    std::vector<std::uint32_t> generators_;
    std::vector<std::uint32_t> transpose_;
    std::vector<int> dominant_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> transport_;
    std::vector<std::uint32_t> dominant_elements_;

    mutable std::vector<std::vector<SparseVec>> table_;
    mutable std::unique_ptr<std::once_flag[]> table_once_;
};

using AlgebraPtr = std::shared_ptr<const SchurAlgebra>;

/// Basis-index map r: S^af_{d,n} -> S(n,d) onto the degree-zero part (-1 for positive degree).
std::vector<long> degree_zero_projection(const SchurAlgebra& affine, const SchurAlgebra& classical);
/// Basis indices of the augmentation ideal ker r (the positive-degree part).
std::vector<std::uint32_t> augmentation_ideal(const SchurAlgebra& affine);
/// Classical basis index -> affine basis index of the degree-zero copy.
std::vector<std::uint32_t> degree_zero_embedding(const SchurAlgebra& classical, const SchurAlgebra& affine);

/// (lambda, xi_lambda as a coefficient vector), lambda in lexicographic order.
std::vector<std::pair<std::vector<int>, Vec>> weight_idempotents(const SchurAlgebra& s);

/// Frobenius algebra map S(n, pd) -> S(n, d): index in S(n,d) or -1.
std::vector<long> frobenius_algebra_map(const SchurAlgebra& big, const SchurAlgebra& small);

/// Dimension of the subalgebra generated by gens (closure of the unit under left multiplication).
std::size_t generated_dimension(const SchurAlgebra& s, const std::vector<std::uint32_t>& gens);

long long binomial(long long n, long long k);

}  // namespace gammaext
