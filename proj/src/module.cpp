#include "gammaext/module.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "gammaext/errors.hpp"

namespace gammaext {

GradedModule::GradedModule(AlgebraPtr algebra, std::vector<ModuleElement> basis, ActFn act)
    : alg_(std::move(algebra)), basis_(std::move(basis)), act_fn_(std::move(act))
{
    const int nw = int(alg_->weights().size());
    by_weight_.assign(nw, {});
    block_rank_.assign(basis_.size(), 0);
    weight_rank_.assign(basis_.size(), 0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const auto& e = basis_[i];
        if (e.weight < 0 || e.weight >= nw)
            throw InputError("module basis element has an invalid weight");
        auto& blk = blocks_[{e.degree, e.weight}];
        block_rank_[i] = std::uint32_t(blk.size());
        blk.push_back(std::uint32_t(i));
        weight_rank_[i] = std::uint32_t(by_weight_[e.weight].size());
        by_weight_[e.weight].push_back(std::uint32_t(i));
    }
    cache_.assign(alg_->dim(), {});
    once_ = std::make_unique<std::once_flag[]>(alg_->dim());
}

const std::vector<std::uint32_t>& GradedModule::block(int degree, int weight) const
{
    static const std::vector<std::uint32_t> none;
    auto it = blocks_.find({degree, weight});
    return it == blocks_.end() ? none : it->second;
}

const SparseVec& GradedModule::act(std::uint32_t a, std::uint32_t pos) const
{
    static const SparseVec zero;
    const int w = alg_->col(a);
    if (basis_[pos].weight != w)
        return zero;
    std::call_once(once_[a], [&] {
        auto v = act_fn_(a);
        if (v.size() != by_weight_[w].size())
            throw InvariantError("action builder returned the wrong number of images");
        cache_[a] = std::move(v);
    });
    return cache_[a][weight_rank_[pos]];
}

SparseVec GradedModule::act(std::uint32_t a, const SparseVec& v) const
{
    SparseAccumulator acc;
    for (auto [pos, c] : v)
        for (auto [q, e] : act(a, pos))
            acc.add(q, (long long)c * e);
    return acc.finish(Field(p()));
}

Matrix GradedModule::action_block(std::uint32_t a, int degree) const
{
    const auto& src = block(degree, alg_->col(a));
    const auto& tgt = block(degree + alg_->degree(a), alg_->row(a));
    Matrix m(p(), tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (auto [q, c] : act(a, src[j]))
            m.at(block_rank_[q], j) = c;
    return m;
}

GradedSpace GradedModule::space() const
{
    std::vector<BasisElement> b;
    for (auto& e : basis_)
        b.push_back({e.label, e.degree});
    return GradedSpace(p(), std::move(b));
}

PoincareSeries GradedModule::poincare() const
{
    std::map<int, std::size_t> dims;
    for (auto& e : basis_)
        ++dims[e.degree];
    return PoincareSeries(dims.begin(), dims.end());
}

int GradedModule::bottom() const
{
    if (basis_.empty())
        throw InputError("bottom degree of the zero module");
    return blocks_.begin()->first.first;
}

int GradedModule::top() const
{
    if (basis_.empty())
        throw InputError("top degree of the zero module");
    return blocks_.rbegin()->first.first;
}

SparseVec ModuleMap::apply(const SparseVec& v) const
{
    SparseAccumulator acc;
    for (auto [pos, c] : v) {
        const auto& e = source->element(pos);
        auto it = blocks.find({e.degree, e.weight});
        if (it == blocks.end())
            continue;
        const auto& tgt = target->block(e.degree + shift, e.weight);
        const std::uint32_t col = source->block_rank(pos);
        for (std::size_t r = 0; r < tgt.size(); ++r)
            if (Scalar x = it->second.at(r, col))
                acc.add(tgt[r], (long long)x * c);
    }
    return acc.finish(Field(source->p()));
}

bool ModuleMap::is_zero() const
{
    for (auto& [k, m] : blocks)
        if (!m.is_zero())
            return false;
    return true;
}

ModulePtr zero_module(AlgebraPtr alg)
{
    return std::make_shared<GradedModule>(std::move(alg), std::vector<ModuleElement>{},
                                          [](std::uint32_t) { return std::vector<SparseVec>{}; });
}

ModulePtr free_module(AlgebraPtr alg, const std::vector<std::pair<int, int>>& gens)
{
    std::vector<ModuleElement> basis;
    auto index = std::make_shared<std::vector<std::vector<std::int32_t>>>();
    for (std::size_t j = 0; j < gens.size(); ++j) {
        auto [w, g] = gens[j];
        index->emplace_back(alg->dim(), -1);
        for (auto a : alg->with_col(w)) {
            (*index)[j][a] = std::int32_t(basis.size());
            basis.push_back({Label{{int(j), int(a)}}, alg->degree(a) + g, alg->row(a)});
        }
    }
    auto labels = std::make_shared<std::vector<std::pair<std::uint32_t, std::uint32_t>>>();
    for (auto& e : basis)
        labels->emplace_back(std::uint32_t(e.label.parts[0]), std::uint32_t(e.label.parts[1]));
    const AlgebraPtr a = alg;
    // positions of each weight, in order, as the module will enumerate them
    auto by_weight = std::make_shared<std::vector<std::vector<std::uint32_t>>>(alg->weights().size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        (*by_weight)[basis[i].weight].push_back(std::uint32_t(i));
    return std::make_shared<GradedModule>(alg, std::move(basis), [a, index, labels, by_weight](std::uint32_t b) {
        std::vector<SparseVec> out;
        for (auto pos : (*by_weight)[a->col(b)]) {
            auto [j, x] = (*labels)[pos];
            SparseVec v;
            for (auto [c, coeff] : a->product(b, x))
                v.emplace_back(std::uint32_t((*index)[j][c]), coeff);
            std::sort(v.begin(), v.end());
            out.push_back(std::move(v));
        }
        return out;
    });
}

ModulePtr restrict_module(ModulePtr m, AlgebraPtr b, std::function<SparseVec(std::uint32_t)> phi,
                          std::function<std::pair<int, int>(int)> regrade)
{
    std::vector<ModuleElement> basis;
    for (auto& e : m->elements()) {
        auto [w, off] = regrade(e.weight);
        basis.push_back({e.label, e.degree + off, w});
    }
    auto by_weight = std::make_shared<std::vector<std::vector<std::uint32_t>>>(b->weights().size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        (*by_weight)[basis[i].weight].push_back(std::uint32_t(i));
    const AlgebraPtr alg = b;
    return std::make_shared<GradedModule>(b, std::move(basis), [m, alg, phi, by_weight](std::uint32_t x) {
        SparseVec image = phi(x);
        Field f(alg->p());
        std::vector<SparseVec> out;
        for (auto pos : (*by_weight)[alg->col(x)]) {
            SparseAccumulator acc;
            for (auto [c, coeff] : image)
                for (auto [q, e] : m->act(c, pos))
                    acc.add(q, (long long)coeff * e);
            out.push_back(acc.finish(f));
        }
        return out;
    });
}

namespace {

struct InducedData {
    AlgebraPtr big;
    ModulePtr inner;
    UnitShape tshape;
    GammaHomBasis tbasis;
    std::vector<std::vector<Word>> torbits;
    std::unordered_map<std::uint64_t, std::pair<BlockKey, std::uint32_t>> ambient_index;  // (tau, m) -> block slot
    std::map<BlockKey, std::vector<std::pair<std::uint32_t, std::uint32_t>>> ambient;
    std::map<BlockKey, std::unique_ptr<Quotient>> quotients;
    std::map<BlockKey, std::uint32_t> offset;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> reps;  // per new position
    std::vector<std::vector<std::uint32_t>> by_weight;

    std::uint64_t key(std::uint32_t tau, std::uint32_t m) const { return std::uint64_t(tau) * inner->dim() + m; }
};

}  // namespace

ModulePtr induce(ModulePtr m, int big_n)
{
    const auto& S = m->algebra();
    if (big_n < 1)
        throw InputError("induce needs a positive rank");
    const int p = S->p(), d = S->d();
    auto data = std::make_shared<InducedData>();
    data->big = S->is_affine() ? SchurAlgebra::affine(p, big_n, d) : SchurAlgebra::classical(p, big_n, d);
    data->inner = m;
    data->tshape = UnitShape{std::uint32_t(big_n), std::uint32_t(S->n()), S->depth()};
    data->tbasis = GammaHomBasis::build(data->tshape, d);
    const auto& T = data->tbasis;
    std::vector<int> trow, tcol;
    std::vector<std::vector<std::uint32_t>> t_by_col(S->weights().size());
    for (std::size_t i = 0; i < T.elements.size(); ++i) {
        data->torbits.push_back(orbit(T.elements[i]));
        trow.push_back(data->big->weight_index(T.row_weight[i]));
        tcol.push_back(S->weight_index(T.col_weight[i]));
        t_by_col[tcol.back()].push_back(std::uint32_t(i));
    }
    for (std::size_t tau = 0; tau < T.elements.size(); ++tau) {
        for (auto pos : m->with_weight(tcol[tau])) {
            BlockKey k{T.degree[tau] + m->element(pos).degree, trow[tau]};
            auto& amb = data->ambient[k];
            data->ambient_index.emplace(data->key(std::uint32_t(tau), pos), std::make_pair(k, std::uint32_t(amb.size())));
            amb.emplace_back(std::uint32_t(tau), pos);
        }
    }
    const Field f(p);
    std::map<BlockKey, Matrix> rels;
    for (auto& [k, amb] : data->ambient)
        rels.emplace(k, Matrix(p, 0, amb.size()));
    std::map<Multiset, long long> counts;
    for (auto a : S->generators()) {
        for (auto tau : t_by_col[S->row(a)]) {
            counts.clear();
            compose_counts(data->torbits[tau], S->orbit_of(a), data->tshape, S->shape(), counts);
            std::vector<std::pair<std::uint32_t, long long>> ta;
            for (auto& [ms, c] : counts)
                if (c % p != 0)
                    ta.emplace_back(std::uint32_t(T.index.find(ms)), c);
            for (auto pos : m->with_weight(S->col(a))) {
                const auto& am = m->act(a, pos);
                if (ta.empty() && am.empty())
                    continue;
                BlockKey k{T.degree[tau] + S->degree(a) + m->element(pos).degree, trow[tau]};
                Vec row(data->ambient.at(k).size(), 0);
                for (auto [t2, c] : ta) {
                    auto slot = data->ambient_index.at(data->key(t2, pos)).second;
                    row[slot] = f.add(row[slot], f.from_int(c));
                }
                for (auto [q, c] : am) {
                    auto slot = data->ambient_index.at(data->key(tau, q)).second;
                    row[slot] = f.sub(row[slot], c);
                }
                rels.at(k).append_row(row);
            }
        }
    }
    std::vector<ModuleElement> basis;
    data->by_weight.assign(data->big->weights().size(), {});
    for (auto& [k, amb] : data->ambient) {
        auto q = std::make_unique<Quotient>(p, amb.size(), rels.at(k));
        data->offset[k] = std::uint32_t(basis.size());
        for (std::size_t i = 0; i < q->dim(); ++i) {
            auto [tau, pos] = amb[q->representative(i)];
            const auto& ms = T.elements[tau];
            data->by_weight[k.second].push_back(std::uint32_t(basis.size()));
            basis.push_back({Label::pair(Label{std::vector<int>(ms.begin(), ms.end())}, m->element(pos).label), k.first,
                             k.second});
            data->reps.emplace_back(tau, pos);
        }
        data->quotients.emplace(k, std::move(q));
    }
    return std::make_shared<GradedModule>(data->big, std::move(basis), [data](std::uint32_t b) {
        const auto& big = data->big;
        const auto& T = data->tbasis;
        Field f(big->p());
        std::vector<SparseVec> out;
        std::map<Multiset, long long> counts;
        for (auto pos : data->by_weight[big->col(b)]) {
            auto [tau, mpos] = data->reps[pos];
            counts.clear();
            compose_counts(big->orbit_of(b), data->torbits[tau], big->shape(), data->tshape, counts);
            BlockKey k{T.degree[tau] + big->degree(b) + data->inner->element(mpos).degree, big->row(b)};
            SparseVec v;
            auto qit = data->quotients.find(k);
            if (qit != data->quotients.end() && !counts.empty()) {
                Vec amb(data->ambient.at(k).size(), 0);
                bool any = false;
                for (auto& [ms, c] : counts) {
                    if (c % big->p() == 0)
                        continue;
                    auto slot = data->ambient_index.at(data->key(std::uint32_t(T.index.find(ms)), mpos)).second;
                    amb[slot] = f.add(amb[slot], f.from_int(c));
                    any = true;
                }
                if (any) {
                    auto coords = qit->second->project(std::move(amb));
                    const auto off = data->offset.at(k);
                    for (std::size_t i = 0; i < coords.size(); ++i)
                        if (coords[i])
                            v.emplace_back(off + std::uint32_t(i), coords[i]);
                }
            }
            out.push_back(std::move(v));
        }
        return out;
    });
}

ModulePtr shift_module(ModulePtr m, int n)
{
    std::vector<ModuleElement> basis = m->elements();
    for (auto& e : basis)
        e.degree -= n;
    return std::make_shared<GradedModule>(m->algebra(), std::move(basis), [m](std::uint32_t a) {
        std::vector<SparseVec> out;
        for (auto pos : m->with_weight(m->algebra()->col(a)))
            out.push_back(m->act(a, pos));
        return out;
    });
}

ModulePtr direct_sum(ModulePtr a, ModulePtr b)
{
    if (a->algebra() != b->algebra())
        throw InputError("direct sum of modules over different algebras");
    std::vector<ModuleElement> basis;
    for (auto& e : a->elements()) {
        auto l = e.label;
        l.parts.insert(l.parts.begin(), 0);
        basis.push_back({l, e.degree, e.weight});
    }
    for (auto& e : b->elements()) {
        auto l = e.label;
        l.parts.insert(l.parts.begin(), 1);
        basis.push_back({l, e.degree, e.weight});
    }
    const std::uint32_t off = std::uint32_t(a->dim());
    return std::make_shared<GradedModule>(a->algebra(), std::move(basis), [a, b, off](std::uint32_t x) {
        std::vector<SparseVec> out;
        const int w = a->algebra()->col(x);
        for (auto pos : a->with_weight(w))
            out.push_back(a->act(x, pos));
        for (auto pos : b->with_weight(w)) {
            SparseVec v = b->act(x, pos);
            for (auto& [q, c] : v)
                q += off;
            out.push_back(std::move(v));
        }
        return out;
    });
}

ModulePtr submodule(ModulePtr m, const std::vector<SparseVec>& span)
{
    const auto& alg = m->algebra();
    const int p = m->p();
    std::map<BlockKey, std::pair<SubspaceBasis, Matrix>> sub;  // closure test, accepted rows
    std::vector<SparseVec> frontier;
    auto add = [&](const SparseVec& v) {
        if (v.empty())
            return;
        const auto& e = m->element(v.front().first);
        BlockKey k{e.degree, e.weight};
        const auto& pos = m->block(k.first, k.second);
        Vec x(pos.size(), 0);
        for (auto [q, c] : v) {
            const auto& g = m->element(q);
            if (g.degree != k.first || g.weight != k.second)
                throw InputError("submodule spanning vectors must be homogeneous");
            x[m->block_rank(q)] = c;
        }
        auto it = sub.find(k);
        if (it == sub.end())
            it = sub.emplace(k, std::make_pair(SubspaceBasis(p, pos.size()), Matrix(p, 0, pos.size()))).first;
        if (it->second.first.insert(x)) {
            it->second.second.append_row(x);
            frontier.push_back(v);
        }
    };
    for (auto& v : span)
        add(v);
    while (!frontier.empty()) {
        auto cur = std::move(frontier);
        frontier.clear();
        for (auto& v : cur)
            for (auto g : alg->generators())
                add(m->act(g, v));
    }
    // reduced echelon rows per block; a member vector's coordinates are its pivot entries
    struct Blk {
        Echelon ech;
        std::uint32_t offset;
    };
    auto blocks = std::make_shared<std::map<BlockKey, Blk>>();
    std::vector<ModuleElement> basis;
    auto rows = std::make_shared<std::vector<SparseVec>>();
    for (auto& [k, entry] : sub) {
        Blk b{echelon(entry.second), std::uint32_t(basis.size())};
        const auto& pos = m->block(k.first, k.second);
        for (std::size_t r = 0; r < b.ech.rank(); ++r) {
            SparseVec v;
            for (std::size_t c = 0; c < pos.size(); ++c)
                if (Scalar x = b.ech.reduced.at(r, c))
                    v.emplace_back(pos[c], x);
            std::sort(v.begin(), v.end());
            rows->push_back(std::move(v));
            basis.push_back({Label{{k.first, k.second, int(r)}}, k.first, k.second});
        }
        blocks->emplace(k, std::move(b));
    }
    auto by_weight = std::make_shared<std::vector<std::vector<std::uint32_t>>>(alg->weights().size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        (*by_weight)[basis[i].weight].push_back(std::uint32_t(i));
    return std::make_shared<GradedModule>(alg, std::move(basis), [m, blocks, rows, by_weight](std::uint32_t a) {
        const auto& alg = *m->algebra();
        std::vector<SparseVec> out;
        for (auto i : (*by_weight)[alg.col(a)]) {
            SparseVec img = m->act(a, (*rows)[i]);
            SparseVec v;
            if (!img.empty()) {
                const auto& e = m->element(img.front().first);
                const auto& b = blocks->at({e.degree, e.weight});
                const auto& pos = m->block(e.degree, e.weight);
                Vec x(pos.size(), 0);
                for (auto [q, c] : img)
                    x[m->block_rank(q)] = c;
                for (std::size_t r = 0; r < b.ech.rank(); ++r)
                    if (Scalar c = x[b.ech.pivots[r]])
                        v.emplace_back(b.offset + std::uint32_t(r), c);
            }
            out.push_back(std::move(v));
        }
        return out;
    });
}

void check_module_axioms(const GradedModule& m)
{
    const auto& alg = *m.algebra();
    const Field f(m.p());
    for (std::size_t pos = 0; pos < m.dim(); ++pos) {
        const auto& e = m.element(pos);
        SparseVec id{{std::uint32_t(pos), Scalar(1)}};
        if (m.act(alg.idempotent(e.weight), std::uint32_t(pos)) != id)
            throw InvariantError("weight idempotent does not act as identity on " + e.label.str());
    }
    for (std::size_t a = 0; a < alg.dim(); ++a) {
        for (auto pos : m.with_weight(alg.col(a))) {
            const auto& v = m.act(std::uint32_t(a), pos);
            const auto& src = m.element(pos);
            for (auto [q, c] : v) {
                const auto& t = m.element(q);
                if (t.degree != src.degree + alg.degree(a) || t.weight != alg.row(a))
                    throw InvariantError("action is not homogeneous");
            }
            for (auto b : alg.with_col(alg.row(a))) {
                SparseVec lhs = m.act(b, v);
                SparseAccumulator acc;
                for (auto [c, coeff] : alg.product(b, a))
                    for (auto [q, x] : m.act(c, pos))
                        acc.add(q, (long long)coeff * x);
                if (lhs != acc.finish(f))
                    throw InvariantError("action is not associative");
            }
        }
    }
}

bool check_map(const ModuleMap& fm)
{
    const auto& alg = *fm.source->algebra();
    for (auto a : alg.generators()) {
        for (auto pos : fm.source->with_weight(alg.col(a))) {
            SparseVec v{{pos, Scalar(1)}};
            if (fm.apply(fm.source->act(a, v)) != fm.target->act(a, fm.apply(v)))
                return false;
        }
    }
    return true;
}

namespace {

struct HomSystem {
    std::vector<std::pair<BlockKey, std::size_t>> layout;  // dominant source block -> unknown offset
    std::size_t unknowns = 0;
    Matrix equations;
};

HomSystem hom_system(const GradedModule& F, const GradedModule& G, int t)
{
    const auto& alg = *F.algebra();
    const int p = F.p();
    const Field f(p);
    HomSystem h;
    std::map<BlockKey, std::size_t> off;
    for (auto& [k, pos] : F.blocks()) {
        if (!alg.is_dominant(k.second))
            continue;
        std::size_t tdim = G.block_dim(k.first + t, k.second);
        if (tdim == 0)
            continue;
        off[k] = h.unknowns;
        h.layout.emplace_back(k, h.unknowns);
        h.unknowns += tdim * pos.size();
    }
    h.equations = Matrix(p, 0, h.unknowns);
    if (h.unknowns == 0)
        return h;
    for (auto a : alg.dominant_elements()) {
        const int e = alg.degree(a);
        for (auto& [k, src] : F.blocks()) {
            if (k.second != alg.col(a))
                continue;
            BlockKey k1{k.first + e, alg.row(a)};
            auto it0 = off.find(k);
            auto it1 = off.find(k1);
            const auto& g0 = G.block(k.first + t, k.second);
            const auto& g1 = G.block(k1.first + t, k1.second);
            if (g1.empty())
                continue;
            if (it0 == off.end() && it1 == off.end())
                continue;
            Matrix AF = F.action_block(a, k.first);
            Matrix AG = G.action_block(a, k.first + t);
            const std::size_t s0 = src.size(), s1 = F.block_dim(k1.first, k1.second);
            for (std::size_t i = 0; i < g1.size(); ++i) {
                for (std::size_t j = 0; j < s0; ++j) {
                    Vec row(h.unknowns, 0);
                    bool any = false;
                    if (it1 != off.end())
                        for (std::size_t kk = 0; kk < s1; ++kk)
                            if (Scalar x = AF.at(kk, j)) {
                                row[it1->second + i * s1 + kk] = f.add(row[it1->second + i * s1 + kk], x);
                                any = true;
                            }
                    if (it0 != off.end())
                        for (std::size_t kk = 0; kk < g0.size(); ++kk)
                            if (Scalar x = AG.at(i, kk)) {
                                row[it0->second + kk * s0 + j] = f.sub(row[it0->second + kk * s0 + j], x);
                                any = true;
                            }
                    if (any)
                        h.equations.append_row(row);
                }
            }
        }
    }
    return h;
}

}  // namespace

void extend_from_dominant(ModuleMap& fm)
{
    const auto& alg = *fm.source->algebra();
    for (auto& [k, pos] : fm.source->blocks()) {
        if (alg.is_dominant(k.second))
            continue;
        const int lam = alg.dominant_of(k.second);
        auto it = fm.blocks.find({k.first, lam});
        const std::size_t tdim = fm.target->block_dim(k.first + fm.shift, k.second);
        if (it == fm.blocks.end() || tdim == 0) {
            fm.blocks[k] = Matrix(fm.source->p(), tdim, pos.size());
            continue;
        }
        auto [into, back] = alg.transport(k.second);
        Matrix a = fm.source->action_block(into, k.first);
        Matrix b = fm.target->action_block(back, k.first + fm.shift);
        fm.blocks[k] = multiply(b, multiply(it->second, a));
    }
}

std::vector<ModuleMap> hom_space(ModulePtr F, ModulePtr G, int t)
{
    if (F->algebra() != G->algebra())
        throw InputError("hom_space: modules over different algebras");
    auto h = hom_system(*F, *G, t);
    std::vector<ModuleMap> out;
    if (h.unknowns == 0)
        return out;
    Matrix ker = kernel_rows(h.equations);
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        ModuleMap m{F, G, t, {}};
        for (auto& [k, o] : h.layout) {
            const std::size_t s = F->block_dim(k.first, k.second);
            const std::size_t g = G->block_dim(k.first + t, k.second);
            Matrix blk(F->p(), g, s);
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < s; ++j)
                    blk.at(i, j) = ker.at(r, o + i * s + j);
            m.blocks.emplace(k, std::move(blk));
        }
        for (auto& [k, pos] : F->blocks())
            if (F->algebra()->is_dominant(k.second) && !m.blocks.count(k))
                m.blocks.emplace(k, Matrix(F->p(), G->block_dim(k.first + t, k.second), pos.size()));
        extend_from_dominant(m);
        out.push_back(std::move(m));
    }
    return out;
}

PoincareSeries hom_dims(ModulePtr F, ModulePtr G)
{
    PoincareSeries out;
    if (F->empty() || G->empty())
        return out;
    for (int t = G->bottom() - F->top(); t <= G->top() - F->bottom(); ++t) {
        auto h = hom_system(*F, *G, t);
        std::size_t dim = h.unknowns - (h.unknowns ? rank(h.equations) : 0);
        if (dim)
            out.emplace_back(t, dim);
    }
    return out;
}

ModuleMap identity_map(ModulePtr m)
{
    ModuleMap id{m, m, 0, {}};
    for (auto& [k, pos] : m->blocks())
        id.blocks.emplace(k, Matrix::identity(m->p(), pos.size()));
    return id;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f)
{
    if (f.target != g.source)
        throw InputError("compose: maps are not composable");
    ModuleMap h{f.source, g.target, f.shift + g.shift, {}};
    for (auto& [k, m] : f.blocks) {
        auto it = g.blocks.find({k.first + f.shift, k.second});
        const std::size_t tdim = g.target->block_dim(k.first + h.shift, k.second);
        if (it == g.blocks.end())
            h.blocks.emplace(k, Matrix(f.source->p(), tdim, m.cols()));
        else
            h.blocks.emplace(k, multiply(it->second, m));
    }
    return h;
}

std::optional<ModuleMap> find_isomorphism(ModulePtr F, ModulePtr G, int attempts)
{
    if (F->poincare() != G->poincare())
        return std::nullopt;
    for (auto& [k, pos] : F->blocks())
        if (G->block_dim(k.first, k.second) != pos.size())
            return std::nullopt;
    if (F->empty())
        return ModuleMap{F, G, 0, {}};
    auto basis = hom_space(F, G, 0);
    if (basis.empty())
        return std::nullopt;
    std::mt19937 rng(20240611);
    const Field f(F->p());
    for (int trial = 0; trial < attempts; ++trial) {
        ModuleMap m{F, G, 0, {}};
        for (auto& [k, pos] : F->blocks())
            m.blocks.emplace(k, Matrix(F->p(), pos.size(), pos.size()));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Scalar c = trial == 0 && basis.size() == 1 ? 1 : Scalar(rng() % F->p());
            if (!c)
                continue;
            for (auto& [k, blk] : basis[i].blocks) {
                auto& dst = m.blocks.at(k);
                for (std::size_t r = 0; r < blk.rows(); ++r)
                    f.axpy(dst.row(r), blk.row(r), c, blk.cols());
            }
        }
        bool ok = true;
        for (auto& [k, blk] : m.blocks)
            if (F->algebra()->is_dominant(k.second) && rank(blk) != blk.rows()) {
                ok = false;
                break;
            }
        if (ok)
            return m;
    }
    return std::nullopt;
}

}  // namespace gammaext
