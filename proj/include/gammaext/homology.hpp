#pragma once

#include <climits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gammaext/module.hpp"

namespace gammaext {

/// Cohomologically indexed complex of graded modules; differentials raise s by one.
struct ChainComplex {
    std::map<int, ModulePtr> terms;
    std::map<int, ModuleMap> differentials;  // s -> (terms[s] -> terms[s+1])

    /// d o d = 0 and every differential is a module map; throws InvariantError.
    void check() const;
    /// (s, internal degree) -> dim H^s in that degree.
    std::map<std::pair<int, int>, std::size_t> cohomology() const;
    /// C[n]: term s of the shift is term s+n.
    ChainComplex shifted(int n) const;
};

/// (s, t) -> dim, t the internal degree of the map; Ext^0 = Hom.
struct ExtTable {
    int s_max = 0;
    int t_max = 0;
    bool clipped = false;
    std::map<std::pair<int, int>, std::size_t> entries;

    std::size_t at(int s, int t) const;
    /// Series in s (summing over t).
    PoincareSeries by_s() const;
    /// Series in the total degree s + t.
    PoincareSeries by_total() const;
    std::string json() const;
};

/// Free resolution by sums of xi_lambda S[shift] over dominant lambda, built blockwise.
class FreeResolution {
public:
    struct Generator {
        int weight;
        int degree;
        SparseVec image;  // in M (stage 0) or in the previous free term
    };

    /// Computes terms F_0..F_{s_max+1}; generators above degree_cap are not searched.
    /// With stop_at_projective the construction ends early once a syzygy is seen to be projective;
    /// the truncated sequence is then only good for Ext, not as a complex.
    FreeResolution(ModulePtr m, int s_max, int degree_cap, bool stop_at_projective = true);

    const ModulePtr& module() const { return m_; }
    int s_max() const { return s_max_; }
    int cap() const { return cap_; }
    std::size_t length() const { return gens_.size(); }
    const std::vector<Generator>& generators(std::size_t k) const { return gens_.at(k); }
    ModulePtr term(std::size_t k) const { return terms_.at(k); }
    /// Ambient module of stage k: M for k = 0, else F_{k-1}.
    ModulePtr ambient(std::size_t k) const { return k == 0 ? m_ : terms_.at(k - 1); }
    /// Smallest generator degree of F_k, or INT_MAX.
    int bottom(std::size_t k) const;
    /// k with the k-th syzygy projective (so Ext^{>k} = 0), or -1.
    int projective_stage() const { return proj_stage_; }
    bool truncated() const { return truncated_; }

    /// Matrix of F_k -> ambient(k) on the dominant block (degree, weight).
    Matrix cover_block(std::size_t k, int degree, int weight) const;
    /// x in F_k with image v (a vector of ambient(k) in one dominant block), if any.
    std::optional<SparseVec> lift(std::size_t k, const SparseVec& v) const;

    /// F_s in degree -s with the augmentation to M in degree 1 when augmented.
    ChainComplex complex(bool augmented) const;

private:
    void build();
    bool splits(std::size_t k, const std::map<BlockKey, Matrix>& omega) const;

    ModulePtr m_;
    int s_max_;
    int cap_;
    std::vector<std::vector<Generator>> gens_;
    std::vector<ModulePtr> terms_;
    bool stop_at_projective_;
    int proj_stage_ = -1;
    bool truncated_ = false;
};

using ResolutionPtr = std::shared_ptr<const FreeResolution>;

/// Degree cap sufficient for Ext(M, N) in |t| <= t_max.
ResolutionPtr resolve_for(ModulePtr m, ModulePtr n, int s_max, int t_max);

/// Cochains Hom(F_s, N) in internal degree t: blocks per generator.
struct CochainSpace {
    std::vector<std::size_t> offset;  // per generator of F_s
    std::size_t dim = 0;
};
CochainSpace cochains(const FreeResolution& r, std::size_t s, const GradedModule& n, int t);
/// delta: C^s_t -> C^{s+1}_t, (delta f)(e) = f(d e).
Matrix coboundary(const FreeResolution& r, std::size_t s, const GradedModule& n, int t);

ExtTable ext_table(const FreeResolution& r, ModulePtr n, int s_max, int t_max);
ExtTable ext_table(ModulePtr m, ModulePtr n, int s_max, int t_max);

/// Cohomology of Hom(P, C) for a resolution P of M and a bounded complex C.
ExtTable hyper_ext(ModulePtr m, const ChainComplex& c, int s_max, int t_max);

/// Ext computed from an arbitrary left resolution (terms at s <= 0, augmentation excluded),
/// using Hom spaces of the terms; valid when the terms are projective.
ExtTable ext_from_complex(const ChainComplex& res, ModulePtr n, int s_max, int t_max);

/// Basis of Ext^s_t(M, N) as cocycle representatives, with coordinates of any cocycle.
class ExtBasis {
public:
    ExtBasis(ResolutionPtr r, ModulePtr n, int s, int t);
    std::size_t dim() const { return reps_.size(); }
    const Vec& representative(std::size_t i) const { return reps_[i]; }
    /// Coordinates of a cocycle modulo coboundaries.
    Vec coordinates(const Vec& cocycle) const;
    int s() const { return s_; }
    int t() const { return t_; }
    const ResolutionPtr& resolution() const { return r_; }
    const ModulePtr& target() const { return n_; }

private:
    ResolutionPtr r_;
    ModulePtr n_;
    int s_, t_;
    std::vector<Vec> reps_;
    Matrix solver_;  // columns: representatives then coboundary basis
    std::size_t cocycle_dim_ = 0;
};

/// Lift of a cocycle f in Hom(F_s(src), M') of degree t to chain maps F_{s+k}(src) -> F_k(tgt), k <= upto;
/// tgt resolves M'. Result[k][i] = image of generator i of F_{s+k}(src).
std::vector<std::vector<SparseVec>> lift_cocycle(const FreeResolution& src, std::size_t s, int t, const Vec& f,
                                                 const FreeResolution& tgt, std::size_t upto);

/// g o f: f in Ext^s_t(M, M') (on src), g in Ext^k_u(M', N) (on tgt); a cocycle in C^{s+k}_{t+u}(src; N).
Vec yoneda_product(const FreeResolution& src, std::size_t s, int t, const Vec& f, const FreeResolution& tgt,
                   std::size_t k, int u, const Vec& g, const GradedModule& n);

/// Relative normalized bar resolution of M over S^af relative to its degree-zero subalgebra:
/// term -j is S^af (x)_S (S~)^{(x)_S j} (x)_S M; augmented by M in degree 1 when requested.
ChainComplex bar_resolution_relative(ModulePtr m, int j_max, bool augmented);

}  // namespace gammaext
