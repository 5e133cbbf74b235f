#include <algorithm>
#include <unordered_map>

#include "gammaext/errors.hpp"
#include "gammaext/homology.hpp"

namespace gammaext {

namespace {

// L (x)_S Y for L a set of basis elements of S^af closed under two-sided multiplication, Y a left S^af-module,
// S the degree-zero subalgebra. A left S^af-module via multiplication on L.
struct Tensor {
    AlgebraPtr alg;
    ModulePtr y;
    std::vector<char> in_left;
    std::map<BlockKey, std::vector<std::pair<std::uint32_t, std::uint32_t>>> ambient;
    std::unordered_map<std::uint64_t, std::pair<BlockKey, std::uint32_t>> index;
    std::map<BlockKey, std::unique_ptr<Quotient>> quotients;
    std::map<BlockKey, std::uint32_t> offset;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> reps;
    std::vector<std::vector<std::uint32_t>> by_weight;

    static std::uint64_t key(std::uint32_t a, std::uint32_t q) { return (std::uint64_t(a) << 32) | q; }

    // ambient vectors per block of sum c e [a (x) q]
    std::map<BlockKey, Vec> ambient_of(const SparseVec& a, const SparseVec& v) const
    {
        Field f(alg->p());
        std::map<BlockKey, Vec> out;
        for (auto [x, c] : a)
            for (auto [q, e] : v) {
                auto it = index.find(key(x, q));
                if (it == index.end())
                    continue;
                auto& [k, slot] = it->second;
                auto& vec = out[k];
                if (vec.empty())
                    vec.assign(ambient.at(k).size(), 0);
                vec[slot] = f.add(vec[slot], f.mul(c, e));
            }
        return out;
    }

    SparseVec embed(const SparseVec& a, const SparseVec& v) const
    {
        SparseVec out;
        for (auto& [k, vec] : ambient_of(a, v)) {
            auto coords = quotients.at(k)->project(std::move(vec));
            const auto off = offset.at(k);
            for (std::size_t i = 0; i < coords.size(); ++i)
                if (coords[i])
                    out.emplace_back(off + std::uint32_t(i), coords[i]);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

std::pair<std::shared_ptr<const Tensor>, ModulePtr> tensor_over_degree_zero(ModulePtr y, bool positive_only)
{
    auto t = std::make_shared<Tensor>();
    t->alg = y->algebra();
    t->y = y;
    const auto& A = *t->alg;
    const int p = A.p();
    auto S = SchurAlgebra::classical(p, A.n(), A.d());
    auto emb = degree_zero_embedding(*S, A);
    t->in_left.assign(A.dim(), positive_only ? 0 : 1);
    if (positive_only)
        for (auto a : augmentation_ideal(A))
            t->in_left[a] = 1;
    for (std::uint32_t a = 0; a < A.dim(); ++a) {
        if (!t->in_left[a])
            continue;
        for (auto q : y->with_weight(A.col(a))) {
            BlockKey k{A.degree(a) + y->element(q).degree, A.row(a)};
            auto& amb = t->ambient[k];
            t->index.emplace(Tensor::key(a, q), std::make_pair(k, std::uint32_t(amb.size())));
            amb.emplace_back(a, q);
        }
    }
    const Field f(p);
    std::map<BlockKey, Matrix> rels;
    for (auto& [k, amb] : t->ambient)
        rels.emplace(k, Matrix(p, 0, amb.size()));
    for (auto s0 : S->generators()) {
        const auto s = emb[s0];
        for (std::uint32_t a = 0; a < A.dim(); ++a) {
            if (!t->in_left[a] || A.col(a) != A.row(s))
                continue;
            const auto& as = A.product(a, s);
            for (auto q : y->with_weight(A.col(s))) {
                auto lhs = t->ambient_of(as, SparseVec{{q, 1}});
                auto rhs = t->ambient_of(SparseVec{{a, 1}}, y->act(s, q));
                for (auto& [k, vec] : rhs)
                    for (auto& x : vec)
                        x = f.neg(x);
                for (auto& [k, vec] : rhs) {
                    auto& l = lhs[k];
                    if (l.empty())
                        l.assign(vec.size(), 0);
                    for (std::size_t i = 0; i < vec.size(); ++i)
                        l[i] = f.add(l[i], vec[i]);
                }
                for (auto& [k, vec] : lhs)
                    if (std::any_of(vec.begin(), vec.end(), [](Scalar x) { return x != 0; }))
                        rels.at(k).append_row(vec);
            }
        }
    }
    std::vector<ModuleElement> basis;
    t->by_weight.assign(A.weights().size(), {});
    for (auto& [k, amb] : t->ambient) {
        auto q = std::make_unique<Quotient>(p, amb.size(), rels.at(k));
        t->offset[k] = std::uint32_t(basis.size());
        for (std::size_t i = 0; i < q->dim(); ++i) {
            auto [a, pos] = amb[q->representative(i)];
            t->by_weight[k.second].push_back(std::uint32_t(basis.size()));
            basis.push_back({Label::pair(Label{{int(a)}}, y->element(pos).label), k.first, k.second});
            t->reps.emplace_back(a, pos);
        }
        t->quotients.emplace(k, std::move(q));
    }
    std::shared_ptr<const Tensor> raw = t;
    auto module = std::make_shared<GradedModule>(t->alg, std::move(basis), [raw](std::uint32_t b) {
        std::vector<SparseVec> out;
        for (auto pos : raw->by_weight[raw->alg->col(b)]) {
            auto [a, q] = raw->reps[pos];
            out.push_back(raw->embed(raw->alg->product(b, a), SparseVec{{q, 1}}));
        }
        return out;
    });
    return {raw, module};
}

}  // namespace

ChainComplex bar_resolution_relative(ModulePtr m, int j_max, bool augmented)
{
    const auto& A = m->algebra();
    if (!A->is_affine())
        throw InputError("relative bar resolution needs a module over an affine Schur algebra");
    if (j_max < 0)
        throw InputError("bar length must be non-negative");
    const int p = A->p();
    const Field f(p);
    // ys[i] = A+ (x)_S ys[i-1], ys[0] = M; bars[j] = S^af (x)_S ys[j]
    std::vector<std::shared_ptr<const Tensor>> ys(std::size_t(j_max) + 1), bars;
    std::vector<ModulePtr> y_mod{m}, bar_mod;
    for (int i = 1; i <= j_max; ++i) {
        auto [t, mod] = tensor_over_degree_zero(y_mod.back(), true);
        ys[i] = t;
        y_mod.push_back(mod);
    }
    for (int j = 0; j <= j_max; ++j) {
        auto [t, mod] = tensor_over_degree_zero(y_mod[j], false);
        bars.push_back(t);
        bar_mod.push_back(mod);
    }

    // elementary tensor a_0 (x) ... (x) a_j (x) m of a basis element of bars[j]
    auto unwind = [&](int j, std::uint32_t pos) {
        std::vector<std::uint32_t> factors;
        auto [a0, y] = bars[j]->reps[pos];
        factors.push_back(a0);
        for (int i = j; i >= 1; --i) {
            auto [a, q] = ys[i]->reps[y];
            factors.push_back(a);
            y = q;
        }
        return std::make_pair(factors, y);
    };
    // class in bars[j] of c_0 (x) ... (x) c_j (x) v
    auto evaluate = [&](int j, const std::vector<SparseVec>& c, const SparseVec& v) {
        SparseVec cur = v;
        for (int i = 1; i <= j && !cur.empty(); ++i)
            cur = ys[i]->embed(c[j - i + 1], cur);
        if (cur.empty())
            return cur;
        return bars[j]->embed(c[0], cur);
    };

    ChainComplex out;
    for (int j = 0; j <= j_max; ++j)
        out.terms[-j] = bar_mod[j];
    if (augmented)
        out.terms[1] = m;
    for (int j = augmented ? 0 : 1; j <= j_max; ++j) {
        const auto& src = bar_mod[j];
        const ModulePtr tgt = j == 0 ? m : bar_mod[j - 1];
        ModuleMap d{src, tgt, 0, {}};
        for (auto& [key, pos] : src->blocks()) {
            Matrix blk(p, tgt->block_dim(key.first, key.second), pos.size());
            for (std::size_t col = 0; col < pos.size(); ++col) {
                auto [factors, mpos] = unwind(j, pos[col]);
                SparseAccumulator acc;
                auto add = [&](const SparseVec& v, Scalar sign) {
                    for (auto [q, c] : v)
                        acc.add(q, f.mul(c, sign));
                };
                if (j == 0) {
                    add(m->act(factors[0], mpos), 1);
                } else {
                    for (int i = 0; i < j; ++i) {
                        std::vector<SparseVec> c;
                        for (int l = 0; l < i; ++l)
                            c.push_back({{factors[l], 1}});
                        c.push_back(A->product(factors[i], factors[i + 1]));
                        for (int l = i + 2; l <= j; ++l)
                            c.push_back({{factors[l], 1}});
                        add(evaluate(j - 1, c, SparseVec{{mpos, 1}}), i % 2 ? Scalar(p - 1) : Scalar(1));
                    }
                    std::vector<SparseVec> c;
                    for (int l = 0; l < j; ++l)
                        c.push_back({{factors[l], 1}});
                    add(evaluate(j - 1, c, m->act(factors[j], mpos)), j % 2 ? Scalar(p - 1) : Scalar(1));
                }
                for (auto [q, x] : acc.finish(f))
                    blk.at(tgt->block_rank(q), col) = x;
            }
            d.blocks.emplace(key, std::move(blk));
        }
        out.differentials.emplace(-j, std::move(d));
    }
    return out;
}

}  // namespace gammaext
