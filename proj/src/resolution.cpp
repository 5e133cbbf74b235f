#include <algorithm>

#include "gammaext/errors.hpp"
#include "gammaext/homology.hpp"

namespace gammaext {

namespace {

SparseVec globalize(const GradedModule& m, int degree, int weight, std::span<const Scalar> local)
{
    const auto& pos = m.block(degree, weight);
    SparseVec v;
    for (std::size_t i = 0; i < pos.size(); ++i)
        if (local[i])
            v.emplace_back(pos[i], local[i]);
    std::sort(v.begin(), v.end());
    return v;
}

Vec localize(const GradedModule& m, int degree, int weight, const SparseVec& v)
{
    Vec x(m.block_dim(degree, weight), 0);
    for (auto [q, c] : v) {
        const auto& e = m.element(q);
        if (e.degree != degree || e.weight != weight)
            throw InvariantError("vector leaves its block");
        x[m.block_rank(q)] = c;
    }
    return x;
}

BlockKey block_of(const GradedModule& m, const SparseVec& v)
{
    const auto& e = m.element(v.front().first);
    return {e.degree, e.weight};
}

}  // namespace

FreeResolution::FreeResolution(ModulePtr m, int s_max, int degree_cap, bool stop_at_projective)
    : m_(std::move(m)), s_max_(s_max), cap_(degree_cap), stop_at_projective_(stop_at_projective)
{
    if (s_max < 0)
        throw InputError("resolution length must be non-negative");
    if (!m_->empty() && degree_cap < m_->bottom())
        throw InputError("resolution window does not reach the bottom of the module");
    build();
}

int FreeResolution::bottom(std::size_t k) const
{
    if (k >= gens_.size())
        return INT_MAX;
    int b = INT_MAX;
    for (auto& g : gens_[k])
        b = std::min(b, g.degree);
    return b;
}

Matrix FreeResolution::cover_block(std::size_t k, int degree, int weight) const
{
    const auto& F = *terms_.at(k);
    const auto& A = *ambient(k);
    const auto& cols = F.block(degree, weight);
    Matrix c(m_->p(), A.block_dim(degree, weight), cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
        const auto& lab = F.element(cols[i]).label.parts;
        const auto& g = gens_[k][lab[0]];
        auto img = A.act(std::uint32_t(lab[1]), g.image);
        for (auto [q, x] : img)
            c.at(A.block_rank(q), i) = x;
    }
    return c;
}

std::optional<SparseVec> FreeResolution::lift(std::size_t k, const SparseVec& v) const
{
    if (v.empty())
        return SparseVec{};
    const auto& A = *ambient(k);
    auto [deg, w] = block_of(A, v);
    auto x = solve(cover_block(k, deg, w), localize(A, deg, w, v));
    if (!x)
        return std::nullopt;
    return globalize(*terms_.at(k), deg, w, *x);
}

void FreeResolution::build()
{
    const auto& alg = m_->algebra();
    const int p = m_->p();
    auto weight_order = [&](const BlockKey& a, const BlockKey& b) {
        if (a.first != b.first)
            return a.first < b.first;
        return alg->weights()[a.second] > alg->weights()[b.second];
    };
    // stage 0: Omega_0 = M on dominant blocks
    std::map<BlockKey, Matrix> omega;
    for (auto& [k, pos] : m_->blocks()) {
        if (!alg->is_dominant(k.second))
            continue;
        if (k.first > cap_) {
            truncated_ = true;
            continue;
        }
        omega.emplace(k, Matrix::identity(p, pos.size()));
    }
    std::vector<std::map<BlockKey, Matrix>> omegas;
    for (std::size_t k = 0;; ++k) {
        omegas.push_back(omega);
        const auto& A = *ambient(k);
        std::vector<BlockKey> keys;
        for (auto& [key, rows] : omega)
            keys.push_back(key);
        std::sort(keys.begin(), keys.end(), weight_order);
        std::map<BlockKey, SubspaceBasis> span;
        std::vector<Generator> gens;
        for (auto& key : keys) {
            const Matrix& rows = omega.at(key);
            for (std::size_t r = 0; r < rows.rows(); ++r) {
                auto it = span.find(key);
                Vec v(rows.row(r), rows.row(r) + rows.cols());
                if (it != span.end() && it->second.contains(v))
                    continue;
                Generator g{key.second, key.first, globalize(A, key.first, key.second, v)};
                for (auto a : alg->with_col(key.second)) {
                    if (!alg->is_dominant(alg->row(a)) || key.first + alg->degree(a) > cap_)
                        continue;
                    auto img = A.act(a, g.image);
                    if (img.empty())
                        continue;
                    BlockKey tk{key.first + alg->degree(a), alg->row(a)};
                    auto sit = span.find(tk);
                    if (sit == span.end())
                        sit = span.emplace(tk, SubspaceBasis(p, A.block_dim(tk.first, tk.second))).first;
                    sit->second.insert(localize(A, tk.first, tk.second, img));
                }
                gens.push_back(std::move(g));
            }
        }
        std::vector<std::pair<int, int>> shape;
        for (auto& g : gens)
            shape.emplace_back(g.weight, g.degree);
        gens_.push_back(std::move(gens));
        terms_.push_back(free_module(alg, shape));
        if (stop_at_projective_ && k >= 1 && !truncated_ && splits(k, omegas[k])) {
            proj_stage_ = int(k) - 1;
            break;
        }
        if (int(k) == s_max_ + 1)
            break;
        // Omega_{k+1} = kernel of the cover, blockwise
        std::map<BlockKey, Matrix> next;
        const auto& F = *terms_.back();
        for (auto& [key, pos] : F.blocks()) {
            if (!alg->is_dominant(key.second))
                continue;
            if (key.first > cap_) {
                truncated_ = true;
                continue;
            }
            Matrix ker = kernel_rows(cover_block(k, key.first, key.second));
            if (ker.rows() > 0)
                next.emplace(key, std::move(ker));
        }
        if (next.empty() && !truncated_) {
            proj_stage_ = int(k);
            gens_.emplace_back();
            terms_.push_back(free_module(alg, {}));
            break;
        }
        omega = std::move(next);
    }
}

bool FreeResolution::splits(std::size_t k, const std::map<BlockKey, Matrix>& omega) const
{
    // Omega_k in F_{k-1} is a summand iff some module map rho: F_{k-1} -> Omega_k fixes the generators of
    // Omega_k; rho is fixed by rho(e_i) = z_i in Omega_k(deg_i, w_i).
    const auto& F = *terms_.at(k - 1);
    const auto& gens_prev = gens_.at(k - 1);
    const auto& gens_cur = gens_.at(k);
    const int p = m_->p();
    const Field f(p);
    std::vector<std::size_t> off;
    std::size_t unknowns = 0;
    for (auto& g : gens_prev) {
        off.push_back(unknowns);
        auto it = omega.find({g.degree, g.weight});
        unknowns += it == omega.end() ? 0 : it->second.rows();
    }
    std::size_t eqs = 0;
    std::vector<std::size_t> eq_off;
    for (auto& g : gens_cur) {
        eq_off.push_back(eqs);
        eqs += F.block_dim(g.degree, g.weight);
    }
    if (gens_cur.empty())
        return true;
    Matrix sys(p, eqs, unknowns);
    Vec rhs(eqs, 0);
    for (std::size_t j = 0; j < gens_cur.size(); ++j) {
        const auto& g = gens_cur[j];
        auto target = localize(F, g.degree, g.weight, g.image);
        for (std::size_t r = 0; r < target.size(); ++r)
            rhs[eq_off[j] + r] = target[r];
        for (auto [pos, c] : g.image) {
            const auto& lab = F.element(pos).label.parts;
            const std::size_t i = std::size_t(lab[0]);
            const auto a = std::uint32_t(lab[1]);
            const auto& gi = gens_prev[i];
            auto it = omega.find({gi.degree, gi.weight});
            if (it == omega.end())
                continue;
            for (std::size_t l = 0; l < it->second.rows(); ++l) {
                auto w = globalize(F, gi.degree, gi.weight, it->second.row_span(l));
                for (auto [q, x] : F.act(a, w)) {
                    auto& cell = sys.at(eq_off[j] + F.block_rank(q), off[i] + l);
                    cell = f.add(cell, f.mul(x, c));
                }
            }
        }
    }
    return solve(sys, rhs).has_value();
}

ChainComplex FreeResolution::complex(bool augmented) const
{
    ChainComplex c;
    for (std::size_t s = 0; s < terms_.size(); ++s)
        c.terms[-int(s)] = terms_[s];
    if (augmented)
        c.terms[1] = m_;
    for (std::size_t s = 0; s < terms_.size(); ++s) {
        if (s == 0 && !augmented)
            continue;
        const auto& F = terms_[s];
        const auto& A = ambient(s);
        ModuleMap d{F, A, 0, {}};
        for (auto& [key, pos] : F->blocks()) {
            Matrix blk(m_->p(), A->block_dim(key.first, key.second), pos.size());
            for (std::size_t i = 0; i < pos.size(); ++i) {
                const auto& lab = F->element(pos[i]).label.parts;
                for (auto [q, x] : A->act(std::uint32_t(lab[1]), gens_[s][lab[0]].image))
                    blk.at(A->block_rank(q), i) = x;
            }
            d.blocks.emplace(key, std::move(blk));
        }
        c.differentials.emplace(-int(s), std::move(d));
    }
    return c;
}

ResolutionPtr resolve_for(ModulePtr m, ModulePtr n, int s_max, int t_max)
{
    int cap = m->empty() ? 0 : m->bottom();
    if (!n->empty())
        cap = std::max(cap, n->top() + t_max);
    return std::make_shared<FreeResolution>(m, s_max, cap);
}

void ChainComplex::check() const
{
    for (auto& [s, d] : differentials) {
        if (!check_map(d))
            throw InvariantError("differential at " + std::to_string(s) + " is not a module map");
        auto it = differentials.find(s + 1);
        if (it == differentials.end())
            continue;
        if (!compose(it->second, d).is_zero())
            throw InvariantError("d o d != 0 at " + std::to_string(s));
    }
}

std::map<std::pair<int, int>, std::size_t> ChainComplex::cohomology() const
{
    std::map<std::pair<int, int>, std::size_t> out;
    auto rank_of = [&](int s, const BlockKey& key) -> std::size_t {
        auto it = differentials.find(s);
        if (it == differentials.end())
            return 0;
        auto b = it->second.blocks.find(key);
        return b == it->second.blocks.end() ? 0 : rank(b->second);
    };
    for (auto& [s, m] : terms) {
        for (auto& [key, pos] : m->blocks()) {
            std::size_t h = pos.size() - rank_of(s, key);
            // incoming differential: from block key of term s-1 (shift 0)
            auto it = differentials.find(s - 1);
            if (it != differentials.end()) {
                auto b = it->second.blocks.find(key);
                if (b != it->second.blocks.end())
                    h -= rank(b->second);
            }
            if (h)
                out[{s, key.first}] += h;
        }
    }
    return out;
}

ChainComplex ChainComplex::shifted(int n) const
{
    ChainComplex c;
    for (auto& [s, m] : terms)
        c.terms[s - n] = m;
    for (auto& [s, d] : differentials)
        c.differentials.emplace(s - n, d);
    return c;
}

}  // namespace gammaext
