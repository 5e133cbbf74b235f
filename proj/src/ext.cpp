#include <algorithm>
#include <set>

#include "json.hpp"

#include "gammaext/errors.hpp"
#include "gammaext/homology.hpp"

namespace gammaext {

namespace {

void add_block(Matrix& dst, std::size_t r0, std::size_t c0, const Matrix& src, Scalar c, const Field& f)
{
    for (std::size_t i = 0; i < src.rows(); ++i)
        for (std::size_t j = 0; j < src.cols(); ++j)
            if (auto x = src.at(i, j)) {
                auto& cell = dst.at(r0 + i, c0 + j);
                cell = f.add(cell, f.mul(x, c));
            }
}

// span of possibly nonzero t for Hom(F_s, N)
std::pair<int, int> t_range(const FreeResolution& r, std::size_t s, const GradedModule& n)
{
    if (s >= r.length() || r.generators(s).empty() || n.empty())
        return {1, 0};
    int lo = INT_MAX, hi = INT_MIN;
    for (auto& g : r.generators(s)) {
        lo = std::min(lo, g.degree);
        hi = std::max(hi, g.degree);
    }
    return {n.bottom() - hi, n.top() - lo};
}

}  // namespace

std::size_t ExtTable::at(int s, int t) const
{
    auto it = entries.find({s, t});
    return it == entries.end() ? 0 : it->second;
}

PoincareSeries ExtTable::by_s() const
{
    std::map<int, std::size_t> acc;
    for (auto& [k, v] : entries)
        acc[k.first] += v;
    return {acc.begin(), acc.end()};
}

PoincareSeries ExtTable::by_total() const
{
    std::map<int, std::size_t> acc;
    for (auto& [k, v] : entries)
        acc[k.first + k.second] += v;
    return {acc.begin(), acc.end()};
}

std::string ExtTable::json() const
{
    nlohmann::ordered_json j;
    j["s_max"] = s_max;
    j["t_max"] = t_max;
    j["clipped"] = clipped;
    auto arr = nlohmann::ordered_json::array();
    for (auto& [k, v] : entries)
        arr.push_back({{"s", k.first}, {"t", k.second}, {"dim", v}});
    j["entries"] = arr;
    return j.dump();
}

CochainSpace cochains(const FreeResolution& r, std::size_t s, const GradedModule& n, int t)
{
    CochainSpace c;
    if (s >= r.length())
        return c;
    for (auto& g : r.generators(s)) {
        c.offset.push_back(c.dim);
        c.dim += n.block_dim(g.degree + t, g.weight);
    }
    return c;
}

Matrix coboundary(const FreeResolution& r, std::size_t s, const GradedModule& n, int t)
{
    auto src = cochains(r, s, n, t);
    auto dst = cochains(r, s + 1, n, t);
    Matrix d(n.p(), dst.dim, src.dim);
    if (s + 1 >= r.length())
        return d;
    const Field f(n.p());
    const auto& F = *r.term(s);
    const auto& gs = r.generators(s);
    const auto& gn = r.generators(s + 1);
    for (std::size_t i = 0; i < gn.size(); ++i) {
        for (auto [pos, c] : gn[i].image) {
            const auto& lab = F.element(pos).label.parts;
            const auto j = std::size_t(lab[0]);
            const auto a = std::uint32_t(lab[1]);
            if (!n.block_dim(gs[j].degree + t, gs[j].weight))
                continue;
            add_block(d, dst.offset[i], src.offset[j], n.action_block(a, gs[j].degree + t), c, f);
        }
    }
    return d;
}

ExtTable ext_table(const FreeResolution& r, ModulePtr n, int s_max, int t_max)
{
    ExtTable out;
    out.s_max = s_max;
    out.t_max = t_max;
    if (n->empty() || r.module()->empty())
        return out;
    bool outside = false;
    for (int s = 0; s <= s_max && std::size_t(s) < r.length(); ++s) {
        if (r.projective_stage() >= 0 && s > r.projective_stage())
            break;
        if (std::size_t(s) + 1 >= r.length())
            throw InvariantError("resolution too short for Ext^" + std::to_string(s));
        auto [lo, hi] = t_range(r, s, *n);
        for (int t = lo; t <= hi; ++t) {
            auto dim = cochains(r, s, *n, t).dim;
            if (!dim)
                continue;
            std::size_t h = dim - rank(coboundary(r, s, *n, t));
            if (s > 0)
                h -= rank(coboundary(r, s - 1, *n, t));
            if (!h)
                continue;
            if (std::abs(t) > t_max)
                outside = true;
            else
                out.entries[{s, t}] = h;
        }
    }
    // complete only when the resolution ends inside the window and nothing was cut in t
    out.clipped = outside || r.projective_stage() < 0;
    return out;
}

ExtTable ext_table(ModulePtr m, ModulePtr n, int s_max, int t_max)
{
    if (m->algebra() != n->algebra())
        throw InputError("Ext between modules over different algebras");
    if (m->empty() || n->empty()) {
        ExtTable out;
        out.s_max = s_max;
        out.t_max = t_max;
        return out;
    }
    auto r = resolve_for(m, n, s_max, t_max);
    return ext_table(*r, n, s_max, t_max);
}

ExtTable hyper_ext(ModulePtr m, const ChainComplex& c, int s_max, int t_max)
{
    ExtTable out;
    out.s_max = s_max;
    out.t_max = t_max;
    if (c.terms.empty() || m->empty())
        return out;
    for (auto& [q, d] : c.differentials)
        if (d.shift != 0)
            throw UnsupportedError("hyper-Ext needs degree-preserving differentials");
    const int q_lo = c.terms.begin()->first;
    const int q_hi = c.terms.rbegin()->first;
    int top = INT_MIN;
    for (auto& [q, x] : c.terms)
        if (!x->empty())
            top = std::max(top, x->top());
    if (top == INT_MIN)
        return out;
    const int depth = std::max(0, s_max - q_lo);
    auto r = std::make_shared<FreeResolution>(m, depth, std::max(top + t_max, m->bottom()), false);
    const Field f(m->p());
    auto stages = int(r->length()) - 1;  // F_0..F_{stages}
    // total degree n = s + q; Ext^n needs s <= n - q_lo and s+1 <= stages
    std::set<int> ts;
    for (int s = 0; s <= stages; ++s)
        for (auto& [q, x] : c.terms) {
            auto [lo, hi] = t_range(*r, s, *x);
            for (int t = lo; t <= hi; ++t)
                ts.insert(t);
        }
    bool outside = false;
    for (int t : ts) {
        // layout of total degree n: list of (s, q) with block offsets
        auto layout = [&](int n) {
            std::vector<std::tuple<int, int, std::size_t>> parts;
            std::size_t dim = 0;
            for (int q = q_lo; q <= q_hi; ++q) {
                int s = n - q;
                if (s < 0 || s > stages || !c.terms.count(q))
                    continue;
                parts.emplace_back(s, q, dim);
                dim += cochains(*r, s, *c.terms.at(q), t).dim;
            }
            return std::make_pair(parts, dim);
        };
        auto total_d = [&](int n) {
            auto [src, sd] = layout(n);
            auto [dst, dd] = layout(n + 1);
            Matrix D(m->p(), dd, sd);
            auto find_dst = [&](int s, int q) -> std::optional<std::size_t> {
                for (auto& [s2, q2, off] : dst)
                    if (s2 == s && q2 == q)
                        return off;
                return std::nullopt;
            };
            for (auto& [s, q, off] : src) {
                const auto& X = *c.terms.at(q);
                if (auto o = find_dst(s + 1, q))
                    add_block(D, *o, off, coboundary(*r, s, X, t), 1, f);
                auto dit = c.differentials.find(q);
                auto o2 = find_dst(s, q + 1);
                if (dit == c.differentials.end() || !o2)
                    continue;
                const Scalar sign = (s % 2) ? Scalar(m->p() - 1) : Scalar(1);
                auto cs = cochains(*r, s, X, t);
                auto ct = cochains(*r, s, *c.terms.at(q + 1), t);
                const auto& gens = r->generators(s);
                for (std::size_t j = 0; j < gens.size(); ++j) {
                    auto b = dit->second.blocks.find({gens[j].degree + t, gens[j].weight});
                    if (b == dit->second.blocks.end())
                        continue;
                    add_block(D, *o2 + ct.offset[j], off + cs.offset[j], b->second, sign, f);
                }
            }
            return D;
        };
        for (int n = q_lo; n <= s_max; ++n) {
            auto [parts, dim] = layout(n);
            if (!dim)
                continue;
            // complete only if every s <= n - q_lo has its F_{s+1}
            std::size_t h = dim - rank(total_d(n));
            if (n > q_lo)
                h -= rank(total_d(n - 1));
            if (!h)
                continue;
            if (std::abs(t) > t_max)
                outside = true;
            else
                out.entries[{n, t}] = h;
        }
    }
    out.clipped = outside || r->projective_stage() < 0 || r->projective_stage() > depth;
    return out;
}

ExtTable ext_from_complex(const ChainComplex& res, ModulePtr n, int s_max, int t_max)
{
    ExtTable out;
    out.s_max = s_max;
    out.t_max = t_max;
    if (n->empty())
        return out;
    const int p = n->p();
    // flatten a map into coordinates over all its blocks in a fixed order
    auto flatten = [&](const ModuleMap& g, const GradedModule& src, int t) {
        Vec v;
        for (auto& [key, pos] : src.blocks()) {
            const std::size_t rows = n->block_dim(key.first + t, key.second);
            auto it = g.blocks.find(key);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < pos.size(); ++j)
                    v.push_back(it == g.blocks.end() ? 0 : it->second.at(i, j));
        }
        return v;
    };
    // certified only if the given resolution visibly stops
    bool ends = false;
    for (auto& [s, x] : res.terms)
        if (s <= 0 && -s <= s_max + 1 && x->empty())
            ends = true;
    out.clipped = !ends;
    for (int s = 0; s <= s_max; ++s) {
        auto term = res.terms.find(-s);
        if (term == res.terms.end()) {
            out.clipped = true;
            break;
        }
        auto next = res.terms.find(-s - 1);
        if (next == res.terms.end()) {
            out.clipped = true;
            break;
        }
        const auto& P = term->second;
        if (P->empty())
            continue;
        for (int t = n->bottom() - P->top(); t <= n->top() - P->bottom(); ++t) {
            auto basis = hom_space(P, n, t);
            if (basis.empty())
                continue;
            auto coboundary_of = [&](int s_src) -> std::size_t {
                // rank of Hom(P_{s_src}) -> Hom(P_{s_src+1}) by precomposition
                auto src = res.terms.at(-s_src);
                auto dst = res.terms.at(-s_src - 1);
                auto b = s_src == s ? basis : hom_space(src, n, t);
                const auto& d = res.differentials.at(-s_src - 1);
                std::vector<Vec> cols;
                for (auto& g : b)
                    cols.push_back(flatten(compose(g, d), *dst, t));
                if (cols.empty() || cols[0].empty())
                    return 0;
                Matrix m(p, cols[0].size(), cols.size());
                for (std::size_t j = 0; j < cols.size(); ++j)
                    m.set_column(j, cols[j]);
                return rank(m);
            };
            std::size_t h = basis.size() - coboundary_of(s);
            if (s > 0)
                h -= coboundary_of(s - 1);
            if (!h)
                continue;
            if (std::abs(t) > t_max)
                out.clipped = true;
            else
                out.entries[{s, t}] = h;
        }
    }
    return out;
}

ExtBasis::ExtBasis(ResolutionPtr r, ModulePtr n, int s, int t) : r_(std::move(r)), n_(std::move(n)), s_(s), t_(t)
{
    if (std::size_t(s) + 1 >= r_->length() && !(r_->projective_stage() >= 0 && s > r_->projective_stage()))
        throw InvariantError("resolution too short for an Ext basis");
    const int p = n_->p();
    const auto dim = cochains(*r_, s, *n_, t).dim;
    cocycle_dim_ = dim;
    Matrix z = kernel_rows(coboundary(*r_, s, *n_, t));
    std::vector<Vec> bdry;
    if (s > 0) {
        auto rr = rref(coboundary(*r_, s - 1, *n_, t));
        for (std::size_t j = 0; j < rr.image_basis.cols(); ++j)
            bdry.push_back(rr.image_basis.column(j));
    }
    SubspaceBasis span(p, dim);
    for (auto& b : bdry)
        span.insert(b);
    for (std::size_t i = 0; i < z.rows(); ++i) {
        Vec v(z.row(i), z.row(i) + z.cols());
        if (span.insert(v))
            reps_.push_back(v);
    }
    solver_ = Matrix(p, dim, reps_.size() + bdry.size());
    for (std::size_t j = 0; j < reps_.size(); ++j)
        solver_.set_column(j, reps_[j]);
    for (std::size_t j = 0; j < bdry.size(); ++j)
        solver_.set_column(reps_.size() + j, bdry[j]);
}

Vec ExtBasis::coordinates(const Vec& cocycle) const
{
    auto x = solve(solver_, cocycle);
    if (!x)
        throw InvariantError("not a cocycle");
    return Vec(x->begin(), x->begin() + reps_.size());
}

namespace {

SparseVec slice_to_module(const GradedModule& n, int degree, int weight, const Vec& f, std::size_t off)
{
    const auto& pos = n.block(degree, weight);
    SparseVec v;
    for (std::size_t i = 0; i < pos.size(); ++i)
        if (f[off + i])
            v.emplace_back(pos[i], f[off + i]);
    std::sort(v.begin(), v.end());
    return v;
}

// sum_c c * a . images[j] over the terms (j, a) of x in a free module F
SparseVec push_through(const GradedModule& F, const SparseVec& x, const std::vector<SparseVec>& images,
                       const GradedModule& target)
{
    SparseAccumulator acc;
    for (auto [pos, c] : x) {
        const auto& lab = F.element(pos).label.parts;
        const auto& img = images[std::size_t(lab[0])];
        if (img.empty())
            continue;
        for (auto [q, y] : target.act(std::uint32_t(lab[1]), img))
            acc.add(q, Field(target.p()).mul(c, y));
    }
    return acc.finish(Field(target.p()));
}

}  // namespace

std::vector<std::vector<SparseVec>> lift_cocycle(const FreeResolution& src, std::size_t s, int t, const Vec& f,
                                                 const FreeResolution& tgt, std::size_t upto)
{
    const auto& target = *tgt.module();
    if (s + upto >= src.length() || upto >= tgt.length())
        throw InvariantError("resolutions too short to lift a cocycle");
    auto cs = cochains(src, s, target, t);
    if (f.size() != cs.dim)
        throw InputError("cocycle has the wrong size");
    std::vector<std::vector<SparseVec>> out;
    std::vector<SparseVec> prev;
    const auto& g0 = src.generators(s);
    for (std::size_t i = 0; i < g0.size(); ++i)
        prev.push_back(slice_to_module(target, g0[i].degree + t, g0[i].weight, f, cs.offset[i]));
    for (std::size_t k = 0; k <= upto; ++k) {
        std::vector<SparseVec> cur;
        const auto& gens = src.generators(s + k);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            SparseVec y;
            if (k == 0)
                y = prev[i];
            else
                y = push_through(*src.term(s + k - 1), gens[i].image, prev, *tgt.ambient(k));
            auto x = tgt.lift(k, y);
            if (!x)
                throw InvariantError("cocycle does not lift; the target resolution is incomplete in this degree");
            cur.push_back(std::move(*x));
        }
        out.push_back(cur);
        prev = std::move(cur);
    }
    return out;
}

Vec yoneda_product(const FreeResolution& src, std::size_t s, int t, const Vec& f, const FreeResolution& tgt,
                   std::size_t k, int u, const Vec& g, const GradedModule& n)
{
    auto lifts = lift_cocycle(src, s, t, f, tgt, k);
    auto cg = cochains(tgt, k, n, u);
    if (g.size() != cg.dim)
        throw InputError("cocycle has the wrong size");
    std::vector<SparseVec> gimg;
    const auto& gt = tgt.generators(k);
    for (std::size_t j = 0; j < gt.size(); ++j)
        gimg.push_back(slice_to_module(n, gt[j].degree + u, gt[j].weight, g, cg.offset[j]));
    auto out_space = cochains(src, s + k, n, t + u);
    Vec out(out_space.dim, 0);
    const auto& gs = src.generators(s + k);
    for (std::size_t i = 0; i < gs.size(); ++i) {
        auto v = push_through(*tgt.term(k), lifts[k][i], gimg, n);
        for (auto [q, c] : v) {
            const auto& e = n.element(q);
            if (e.degree != gs[i].degree + t + u || e.weight != gs[i].weight)
                throw InvariantError("Yoneda product leaves its block");
            out[out_space.offset[i] + n.block_rank(q)] = c;
        }
    }
    return out;
}

}  // namespace gammaext
