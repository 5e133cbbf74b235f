#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "gammaext/graded.hpp"
#include "gammaext/schur.hpp"

namespace gammaext {

struct ModuleElement {
    Label label;
    int degree = 0;
    int weight = 0;  // index into the algebra's weight list
};

/// Key of a homogeneous block: (degree, weight index).
using BlockKey = std::pair<int, int>;

/// Graded module over a Schur algebra, stored blockwise by (degree, weight).
/// The action of a basis element is computed on first use and cached.
class GradedModule {
public:
    /// For algebra basis element a: images of the positions with_weight(col(a)), in that order.
    using ActFn = std::function<std::vector<SparseVec>(std::uint32_t a)>;

    GradedModule(AlgebraPtr algebra, std::vector<ModuleElement> basis, ActFn act);

    const AlgebraPtr& algebra() const { return alg_; }
    int p() const { return alg_->p(); }
    std::size_t dim() const { return basis_.size(); }
    bool empty() const { return basis_.empty(); }
    const ModuleElement& element(std::size_t i) const { return basis_[i]; }
    const std::vector<ModuleElement>& elements() const { return basis_; }

    const std::map<BlockKey, std::vector<std::uint32_t>>& blocks() const { return blocks_; }
    const std::vector<std::uint32_t>& block(int degree, int weight) const;
    std::size_t block_dim(int degree, int weight) const { return block(degree, weight).size(); }
    std::uint32_t block_rank(std::size_t pos) const { return block_rank_[pos]; }
    const std::vector<std::uint32_t>& with_weight(int w) const { return by_weight_[w]; }

    const SparseVec& act(std::uint32_t a, std::uint32_t pos) const;
    SparseVec act(std::uint32_t a, const SparseVec& v) const;
    /// Matrix of a from block (degree, col(a)) to block (degree + deg a, row(a)).
    Matrix action_block(std::uint32_t a, int degree) const;

    GradedSpace space() const;
    PoincareSeries poincare() const;
    int bottom() const;
    int top() const;

private:
    AlgebraPtr alg_;
    std::vector<ModuleElement> basis_;
    ActFn act_fn_;
    std::map<BlockKey, std::vector<std::uint32_t>> blocks_;
    std::vector<std::uint32_t> block_rank_;
    std::vector<std::vector<std::uint32_t>> by_weight_;
    std::vector<std::uint32_t> weight_rank_;
    mutable std::vector<std::vector<SparseVec>> cache_;
    mutable std::unique_ptr<std::once_flag[]> once_;
};

using ModulePtr = std::shared_ptr<const GradedModule>;

/// Module map of a fixed degree shift; blocks keyed by source (degree, weight).
struct ModuleMap {
    ModulePtr source;
    ModulePtr target;
    int shift = 0;
    std::map<BlockKey, Matrix> blocks;  // target block (deg + shift, w) x source block (deg, w)

    SparseVec apply(const SparseVec& v) const;
    bool is_zero() const;
};

ModulePtr zero_module(AlgebraPtr alg);

/// Free module S xi_lambda with its generator in degree gen_degree.
ModulePtr free_module(AlgebraPtr alg, const std::vector<std::pair<int, int>>& gens /* (weight, degree) */);

/// Restriction along an algebra map phi: B -> (algebra of m). regrade maps an old weight to
/// (new weight, degree offset).
ModulePtr restrict_module(ModulePtr m, AlgebraPtr b, std::function<SparseVec(std::uint32_t)> phi,
                          std::function<std::pair<int, int>(int)> regrade);

/// Gamma^d(Hom(k^n, k^N) (x) k[x]/x^h) (x)_{S} M for M over S = S(n,d) (depth h), a module over
/// the Schur algebra of rank N and the same depth. Computed as a coequalizer.
ModulePtr induce(ModulePtr m, int big_n);

/// Shift of the grading: M[n]^i = M^{n+i}.
ModulePtr shift_module(ModulePtr m, int n);

ModulePtr direct_sum(ModulePtr a, ModulePtr b);

/// Submodule spanned by the given vectors (must be closed under the action; checked).
ModulePtr submodule(ModulePtr m, const std::vector<SparseVec>& span);

/// Exhaustive check of unit and associativity; throws InvariantError.
void check_module_axioms(const GradedModule& m);
bool check_map(const ModuleMap& f);

/// Basis of degree-t module maps F -> G (t = map degree).
std::vector<ModuleMap> hom_space(ModulePtr f, ModulePtr g, int t);
/// Graded dims of Hom(F, G) over all degrees where it can be nonzero.
PoincareSeries hom_dims(ModulePtr f, ModulePtr g);

/// Degree-0 isomorphism if one is found (deterministic random search over the hom space).
std::optional<ModuleMap> find_isomorphism(ModulePtr f, ModulePtr g, int attempts = 400);

/// Extends a map given on dominant-weight blocks to every block, using transport elements.
void extend_from_dominant(ModuleMap& f);

ModuleMap identity_map(ModulePtr m);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);

}  // namespace gammaext
