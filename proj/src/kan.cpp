#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "gammaext/errors.hpp"
#include "gammaext/functors.hpp"
#include "gammaext/kan.hpp"

namespace gammaext {

namespace {

int power(int p, int i)
{
    int q = 1;
    while (i-- > 0)
        q *= p;
    return q;
}

nlohmann::ordered_json entries_json(const ExtTable& e)
{
    auto arr = nlohmann::ordered_json::array();
    for (auto& [k, v] : e.entries)
        arr.push_back({{"s", k.first}, {"t", k.second}, {"dim", v}});
    return arr;
}

nlohmann::ordered_json series_json(const PoincareSeries& s)
{
    auto arr = nlohmann::ordered_json::array();
    for (auto& [deg, dim] : s)
        arr.push_back({{"degree", deg}, {"dim", dim}});
    return arr;
}

}  // namespace

TwistFamily::TwistFamily(int p, int d, int big_n) : p_(p), d_(d), big_n_(big_n)
{
    if (d < 1)
        throw InputError("twist family needs d >= 1");
    if (big_n < p * d)
        throw InputError("twist family needs N >= pd");
    alg_ = SchurAlgebra::classical(p, big_n, p * d);
}

const TwistFamily::Entry& TwistFamily::entry(int m) const
{
    if (m < 0)
        throw InputError("negative rank in the twist family");
    std::lock_guard lock(mutex_);
    auto it = members_.find(m);
    if (it != members_.end())
        return it->second;
    Entry e;
    e.basis = std::make_shared<GammaHomBasis>(
        GammaHomBasis::build(UnitShape{std::uint32_t(big_n_), std::uint32_t(m), 1}, std::size_t(d_)));
    e.module = m == 0 ? zero_module(alg_) : frobenius_twist(representable(p_, d_, m, big_n_, false));
    if (e.module->algebra() != alg_)
        throw InvariantError("twist family member over the wrong algebra");
    return members_.emplace(m, std::move(e)).first->second;
}

ModulePtr TwistFamily::member(int m) const { return entry(m).module; }

const GammaHomBasis& TwistFamily::basis(int m) const { return *entry(m).basis; }

FamilyPtr build_twist_family(int p, int d, int m_max, int big_n)
{
    auto fam = std::make_shared<TwistFamily>(p, d, big_n);
    for (int m = 0; m <= m_max; ++m)
        fam->member(m);
    return fam;
}

ModuleMap alpha(const TwistFamily& fam, int m, int m2, const SparseVec& xi)
{
    const auto src = fam.member(m2);
    const auto tgt = fam.member(m);
    const auto& ysh = fam.basis(m2);
    const auto& tb = fam.basis(m);
    UnitShape xshape{std::uint32_t(m2), std::uint32_t(m), 1};
    auto xb = GammaHomBasis::build(xshape, std::size_t(fam.d()));
    const Field f(fam.p());
    std::vector<std::vector<Word>> xorb;
    for (auto [x, c] : xi) {
        if (x >= xb.elements.size())
            throw InputError("alpha: element outside Gamma^d(Hom(k^m, k^m'))");
        xorb.push_back(orbit(xb.elements[x]));
    }
    ModuleMap out{src, tgt, 0, {}};
    for (auto& [key, pos] : src->blocks())
        out.blocks.emplace(key, Matrix(fam.p(), tgt->block_dim(key.first, key.second), pos.size()));
    std::map<Multiset, long long> counts;
    for (std::size_t y = 0; y < ysh.elements.size(); ++y) {
        auto yorb = orbit(ysh.elements[y]);
        const auto& e = src->element(y);
        auto& blk = out.blocks.at({e.degree, e.weight});
        for (std::size_t k = 0; k < xi.size(); ++k) {
            counts.clear();
            compose_counts(yorb, xorb[k], ysh.shape, xshape, counts);
            for (auto& [ms, c] : counts) {
                auto v = f.mul(f.from_int(c), xi[k].second);
                if (!v)
                    continue;
                auto q = std::uint32_t(tb.index.find(ms));
                auto& cell = blk.at(tgt->block_rank(q), src->block_rank(y));
                cell = f.add(cell, v);
            }
        }
    }
    return out;
}

ExtTable k_r(const TwistFamily& fam, ModulePtr f, int m, int s_max)
{
    if (f->algebra() != fam.algebra())
        throw InputError("K^r needs a module over S(N, pd)");
    return ext_table(fam.member(m), f, s_max, 0);
}

KanValue k_af(const TwistFamily& fam, ModulePtr f, int m, int s_max, bool with_action)
{
    KanValue out;
    out.m = m;
    out.table = k_r(fam, f, m, s_max);
    if (!with_action)
        return out;
    auto e = fam.member(m);
    auto r = std::make_shared<FreeResolution>(e, s_max, 0, false);
    std::vector<ExtBasis> alg, val;
    for (int s = 0; s <= s_max; ++s) {
        alg.emplace_back(r, e, s, 0);
        val.emplace_back(r, f, s, 0);
        if (val.back().dim() != out.table.at(s, 0))
            throw InvariantError("Ext bases disagree with the table at s=" + std::to_string(s));
    }
    for (int u = 0; u <= s_max; ++u)
        for (std::size_t i = 0; i < alg[u].dim(); ++i)
            out.algebra_basis.emplace_back(u, i);
    const int last = int(r->length()) - 1;  // F_last exists; products need s + u < last
    for (std::size_t c = 0; c < out.algebra_basis.size(); ++c) {
        auto [u, idx] = out.algebra_basis[c];
        for (int s = 0; s + u <= s_max; ++s) {
            Matrix mat(fam.p(), val[s + u].dim(), val[s].dim());
            if (mat.rows() && mat.cols() && s + u < last) {
                for (std::size_t x = 0; x < val[s].dim(); ++x) {
                    auto prod = yoneda_product(*r, std::size_t(u), 0, alg[u].representative(idx), *r, std::size_t(s), 0,
                                               val[s].representative(x), *f);
                    mat.set_column(x, val[s + u].coordinates(prod));
                }
            }
            out.action.emplace(std::make_pair(c, s), std::move(mat));
        }
    }
    return out;
}

std::string KanValue::json() const
{
    nlohmann::ordered_json j;
    j["m"] = m;
    j["s_max"] = table.s_max;
    j["clipped"] = table.clipped;
    j["entries"] = entries_json(table);
    auto basis = nlohmann::ordered_json::array();
    for (auto& [u, i] : algebra_basis)
        basis.push_back({{"s", u}, {"index", i}});
    j["algebra_basis"] = basis;
    auto acts = nlohmann::ordered_json::array();
    for (auto& [key, mat] : action) {
        auto rows = nlohmann::ordered_json::array();
        for (std::size_t r = 0; r < mat.rows(); ++r) {
            auto row = nlohmann::ordered_json::array();
            for (std::size_t c = 0; c < mat.cols(); ++c)
                row.push_back(int(mat.at(r, c)));
            rows.push_back(row);
        }
        acts.push_back({{"class", key.first}, {"s", key.second}, {"matrix", rows}});
    }
    j["action"] = acts;
    return j.dump();
}

FreePresentation presentation_of(ModulePtr g, int s_max)
{
    FreeResolution r(g, s_max, std::max(g->empty() ? 0 : g->top(), 0) + 2 * (g->p() - 1) * g->algebra()->d() * (s_max + 2),
                     false);
    FreePresentation out;
    out.algebra = g->algebra();
    for (std::size_t k = 0; k < r.length(); ++k) {
        std::vector<std::pair<int, int>> gens;
        std::vector<SparseVec> images;
        for (auto& x : r.generators(k)) {
            gens.emplace_back(x.weight, x.degree);
            images.push_back(x.image);
        }
        out.gens.push_back(std::move(gens));
        out.images.push_back(k == 0 ? std::vector<SparseVec>{} : std::move(images));
    }
    return out;
}

FreePresentation representable_presentation(int p, int d, int m, int n)
{
    if (m > n)
        throw InputError("representable presentation needs m <= n");
    auto alg = SchurAlgebra::affine(p, n, d);
    FreePresentation out;
    out.algebra = alg;
    out.gens.emplace_back();
    out.images.emplace_back();
    for (auto& mu : compositions(d, m)) {
        std::vector<int> lam(mu.begin(), mu.end());
        lam.resize(std::size_t(n), 0);
        out.gens[0].emplace_back(alg->weight_index(lam), 0);
    }
    return out;
}

ChainComplex c_af(const TwistFamily& fam, const FreePresentation& pres)
{
    const auto& alg = pres.algebra;
    if (!alg->is_affine() || alg->p() != fam.p() || alg->d() != fam.d())
        throw InputError("C^af needs a presentation over S^af_{d,n} matching the twist family");
    const int n = alg->n();
    const auto e = fam.member(n);
    const auto& eb = fam.basis(n);
    auto classical = SchurAlgebra::classical(alg->p(), n, alg->d());
    auto to_classical = degree_zero_projection(*alg, *classical);
    const Field f(alg->p());

    // pieces: (stage, generator) -> positions of E_n with column weight lambda
    struct Piece {
        std::size_t stage, gen;
        std::vector<std::uint32_t> positions;
        std::map<std::uint32_t, std::uint32_t> local;
    };
    std::map<int, std::vector<Piece>> by_index;
    std::map<std::pair<std::size_t, std::size_t>, std::pair<int, std::size_t>> where;
    for (std::size_t k = 0; k < pres.gens.size(); ++k)
        for (std::size_t j = 0; j < pres.gens[k].size(); ++j) {
            auto [w, deg] = pres.gens[k][j];
            const auto& lam = alg->weights()[w];
            Piece pc{k, j, {}, {}};
            for (std::uint32_t y = 0; y < eb.elements.size(); ++y)
                if (eb.col_weight[y] == lam) {
                    pc.local.emplace(y, std::uint32_t(pc.positions.size()));
                    pc.positions.push_back(y);
                }
            const int q = deg - int(k);
            where[{k, j}] = {q, by_index[q].size()};
            by_index[q].push_back(std::move(pc));
        }

    ChainComplex out;
    std::map<int, std::vector<std::uint32_t>> piece_offset;
    for (auto& [q, pieces] : by_index) {
        std::vector<ModuleElement> basis;
        auto owner = std::make_shared<std::vector<std::pair<std::uint32_t, std::uint32_t>>>();  // (piece, local)
        auto lookup = std::make_shared<std::vector<std::map<std::uint32_t, std::uint32_t>>>();
        auto& offs = piece_offset[q];
        for (std::uint32_t i = 0; i < pieces.size(); ++i) {
            offs.push_back(std::uint32_t(basis.size()));
            std::map<std::uint32_t, std::uint32_t> glob;
            for (auto y : pieces[i].positions) {
                glob.emplace(y, std::uint32_t(basis.size()));
                const auto& el = e->element(y);
                basis.push_back({Label::pair(Label{{int(pieces[i].stage), int(pieces[i].gen)}}, el.label), el.degree,
                                 el.weight});
                owner->emplace_back(i, y);
            }
            lookup->push_back(std::move(glob));
        }
        auto by_weight = std::make_shared<std::vector<std::vector<std::uint32_t>>>(fam.algebra()->weights().size());
        for (std::uint32_t i = 0; i < basis.size(); ++i)
            (*by_weight)[basis[i].weight].push_back(i);
        const AlgebraPtr big = fam.algebra();
        out.terms[q] = std::make_shared<GradedModule>(big, std::move(basis), [=](std::uint32_t a) {
            std::vector<SparseVec> res;
            for (auto pos : (*by_weight)[big->col(a)]) {
                auto [piece, y] = (*owner)[pos];
                SparseVec v;
                for (auto [z, c] : e->act(a, y))
                    v.emplace_back((*lookup)[piece].at(z), c);
                std::sort(v.begin(), v.end());
                res.push_back(std::move(v));
            }
            return res;
        });
    }

    // differentials: stage k -> stage k-1, y -> sum c y o a
    std::map<int, std::vector<SparseVec>> images;  // source index q -> image per basis element of term q
    for (auto& [q, pieces] : by_index)
        images[q].assign(out.terms[q]->dim(), {});
    std::map<Multiset, long long> counts;
    for (std::size_t k = 1; k < pres.gens.size(); ++k) {
        auto prev = free_module(alg, pres.gens[k - 1]);
        for (std::size_t i = 0; i < pres.gens[k].size(); ++i) {
            auto [q, pi] = where.at({k, i});
            const auto& src_piece = by_index[q][pi];
            const auto src_off = piece_offset[q][pi];
            for (auto [pos, c] : pres.images[k][i]) {
                const auto& lab = prev->element(pos).label.parts;
                const auto jp = std::size_t(lab[0]);
                const auto a = std::uint32_t(lab[1]);
                if (alg->degree(a) != 0)
                    throw UnsupportedError("C^af of a presentation with positive-degree differentials");
                auto [q2, pj] = where.at({k - 1, jp});
                if (q2 != q + 1)
                    throw InvariantError("C^af differential changes the complex degree by more than one");
                const auto& dst_piece = by_index[q2][pj];
                const auto dst_off = piece_offset[q2][pj];
                auto aorb = classical->orbit_of(std::uint32_t(to_classical[a]));
                for (std::size_t l = 0; l < src_piece.positions.size(); ++l) {
                    counts.clear();
                    compose_counts(orbit(eb.elements[src_piece.positions[l]]), aorb, eb.shape, classical->shape(), counts);
                    auto& img = images[q][src_off + l];
                    for (auto& [ms, cnt] : counts) {
                        auto v = f.mul(f.from_int(cnt), c);
                        if (!v)
                            continue;
                        auto z = std::uint32_t(eb.index.find(ms));
                        img.emplace_back(dst_off + dst_piece.local.at(z), v);
                    }
                }
            }
        }
    }
    for (auto& [q, imgs] : images) {
        auto nx = out.terms.find(q + 1);
        if (nx == out.terms.end())
            continue;
        const auto& src = out.terms[q];
        const auto& tgt = nx->second;
        ModuleMap d{src, tgt, 0, {}};
        for (auto& [key, pos] : src->blocks()) {
            Matrix blk(f.p(), tgt->block_dim(key.first, key.second), pos.size());
            for (std::size_t col = 0; col < pos.size(); ++col)
                for (auto [z, v] : imgs[pos[col]]) {
                    auto& cell = blk.at(tgt->block_rank(z), col);
                    cell = f.add(cell, v);
                }
            d.blocks.emplace(key, std::move(blk));
        }
        out.differentials.emplace(q, std::move(d));
    }
    return out;
}

CollapseReport collapsing_check(ModulePtr f, ModulePtr g, int i, int s_max, int big_n)
{
    const auto& s = f->algebra();
    if (g->algebra() != s)
        throw InputError("collapse: F and G must be modules over the same Schur algebra");
    if (s->is_affine())
        throw InputError("collapse: F and G must be classical");
    if (i < 1)
        throw InputError("collapse: i must be at least 1");
    const int p = s->p(), d = s->d(), q = power(p, i);
    if (big_n == 0)
        big_n = q * d;
    if (big_n < q * d)
        throw InputError("collapse: N must be at least p^i d");
    if (big_n < s->n())
        throw InputError("collapse: N must be at least the rank of F and G");
    CollapseReport out;
    out.p = p;
    out.d = d;
    out.i = i;
    out.big_n = big_n;
    // feasibility first: the largest algebra involved
    SchurAlgebra::classical(p, big_n, q * d);
    auto fl = big_n == s->n() ? f : reevaluate(f, big_n);
    auto gl = big_n == s->n() ? g : reevaluate(g, big_n);
    for (int k = 0; k < i; ++k) {
        fl = frobenius_twist(fl);
        gl = frobenius_twist(gl);
    }
    out.lhs = ext_table(fl, gl, s_max, 0);
    auto ga = graded_extension(g, twisted_algebra_degrees(p, i));
    int t_max = 0;
    if (!ga->empty())
        t_max = std::max(std::abs(ga->top()), std::abs(ga->bottom()));
    out.rhs = ext_table(f, ga, s_max, t_max);
    out.lhs_series = out.lhs.by_s();
    out.rhs_series = out.rhs.by_total();
    if (out.lhs.clipped || out.rhs.clipped)
        out.verdict = "clipped";
    else
        out.verdict = out.lhs_series == out.rhs_series ? "equal" : "unequal";
    return out;
}

std::string CollapseReport::json() const
{
    nlohmann::ordered_json j;
    j["p"] = p;
    j["d"] = d;
    j["i"] = i;
    j["N"] = big_n;
    j["verdict"] = verdict;
    j["lhs_series"] = series_json(lhs_series);
    j["rhs_series"] = series_json(rhs_series);
    j["lhs"] = {{"clipped", lhs.clipped}, {"entries", entries_json(lhs)}};
    j["rhs"] = {{"clipped", rhs.clipped}, {"entries", entries_json(rhs)}};
    return j.dump();
}

}  // namespace gammaext
