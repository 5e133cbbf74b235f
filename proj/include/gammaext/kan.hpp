#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gammaext/homology.hpp"

namespace gammaext {

/// The modules E_m = Gamma^d(k^N (x) (k^m)^*) twisted, over S(N, pd), with their multiset bases.
class TwistFamily {
public:
    TwistFamily(int p, int d, int big_n);

    int p() const { return p_; }
    int d() const { return d_; }
    int big_n() const { return big_n_; }
    const AlgebraPtr& algebra() const { return alg_; }

    ModulePtr member(int m) const;
    /// Basis of Gamma^d(Hom(k^m, k^N)), in the order of member(m).
    const GammaHomBasis& basis(int m) const;

private:
    struct Entry {
        ModulePtr module;
        std::shared_ptr<GammaHomBasis> basis;
    };
    const Entry& entry(int m) const;

    int p_, d_, big_n_;
    AlgebraPtr alg_;
    mutable std::mutex mutex_;
    mutable std::map<int, Entry> members_;
};

using FamilyPtr = std::shared_ptr<const TwistFamily>;

/// Requires N >= pd; members 0..m_max are built eagerly.
FamilyPtr build_twist_family(int p, int d, int m_max, int big_n);

/// alpha(xi): E_{m2} -> E_m, y -> y o xi, for xi in Gamma^d(Hom(k^m, k^{m2})) given over
/// GammaHomBasis::build({m2, m, 1}, d).
ModuleMap alpha(const TwistFamily& fam, int m, int m2, const SparseVec& xi);

/// Ext^*(E_m, F) for F over S(N, pd).
ExtTable k_r(const TwistFamily& fam, ModulePtr f, int m, int s_max);

struct KanValue {
    int m = 0;
    ExtTable table;
    /// Basis of the Yoneda algebra Ext^*(E_m, E_m): (u, index) per class.
    std::vector<std::pair<int, std::size_t>> algebra_basis;
    /// (class, s) -> matrix of x -> x o class, from Ext^s(E_m, F) to Ext^{s+u}(E_m, F).
    std::map<std::pair<std::size_t, int>, Matrix> action;
    std::string json() const;
};

/// K^af(F)(A^m): the k_r table with the right Yoneda action of Ext^*(E_m, E_m), for s + u <= s_max.
KanValue k_af(const TwistFamily& fam, ModulePtr f, int m, int s_max, bool with_action = true);

/// A complex of free modules over S^af_{d,n}: stage k generators (weight, degree), and for k >= 1 the
/// image of each generator in the free module of stage k - 1.
struct FreePresentation {
    AlgebraPtr algebra;
    std::vector<std::vector<std::pair<int, int>>> gens;
    std::vector<std::vector<SparseVec>> images;
};

/// Stages 0..length-1 of the free resolution of g.
FreePresentation presentation_of(ModulePtr g, int s_max);
/// h^{A^m} over S^af_{d,n} (m <= n) as a sum of S^af xi_(mu,0) in degree 0.
FreePresentation representable_presentation(int p, int d, int m, int n);

/// C^af on a presentation whose differentials have degree-zero coefficients: S^af xi_lambda[deg] at stage k
/// goes to E_n xi_lambda in complex degree deg - k. Other presentations are unsupported.
ChainComplex c_af(const TwistFamily& fam, const FreePresentation& pres);

struct CollapseReport {
    int p = 0, d = 0, i = 0, big_n = 0;
    ExtTable lhs;  // Ext over S(N, p^i d) of the i-fold twists
    ExtTable rhs;  // Ext over S(n, d) of F against G_{A_i}
    PoincareSeries lhs_series;
    PoincareSeries rhs_series;  // by total degree
    std::string verdict;        // equal, unequal or clipped
    std::string json() const;
};

/// Compares Ext(F^(i), G^(i)) with Ext(F, G_{A_i}); big_n = 0 selects N = p^i d.
CollapseReport collapsing_check(ModulePtr f, ModulePtr g, int i, int s_max, int big_n = 0);

}  // namespace gammaext
