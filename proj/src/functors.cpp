#include "gammaext/functors.hpp"

#include <algorithm>
#include <numeric>

#include "gammaext/errors.hpp"

namespace gammaext {

StdKind parse_kind(const std::string& s)
{
    if (s == "tensor")
        return StdKind::tensor;
    if (s == "sym")
        return StdKind::sym;
    if (s == "ext")
        return StdKind::ext;
    if (s == "gamma")
        return StdKind::gamma;
    throw InputError("unknown functor kind '" + s + "'");
}

std::string kind_name(StdKind k)
{
    switch (k) {
    case StdKind::tensor:
        return "tensor";
    case StdKind::sym:
        return "sym";
    case StdKind::ext:
        return "ext";
    case StdKind::gamma:
        return "gamma";
    }
    return "?";
}

namespace {

std::vector<Word> all_words(int n, int d)
{
    std::vector<Word> out;
    Word w(d, 0);
    while (true) {
        out.push_back(w);
        int i = d;
        while (i > 0 && int(w[i - 1]) == n - 1)
            w[--i] = 0;
        if (i == 0)
            break;
        ++w[i - 1];
    }
    return out;
}

std::vector<int> content(const Word& w, int n)
{
    std::vector<int> c(n, 0);
    for (auto x : w)
        ++c[x];
    return c;
}

// Sign of the sort of w (0 if w has a repeated letter).
int sort_sign(Word w)
{
    int sign = 1;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            if (w[i] == w[j])
                return 0;
            if (w[i] > w[j])
                sign = -sign;
        }
    return sign;
}

// gamma_mu acting on the word e_w of V^{(x)d}: sum over arrangements v of mu with col(v_i) = w_i.
void act_on_word(const SchurAlgebra& s, std::uint32_t a, const Word& w, std::map<Word, long long>& out, long long c)
{
    const auto& sh = s.shape();
    Word img(w.size());
    for (auto& v : s.orbit_of(a)) {
        bool ok = true;
        for (std::size_t i = 0; i < w.size() && ok; ++i) {
            if (sh.col(v[i]) != w[i])
                ok = false;
            img[i] = sh.row(v[i]);
        }
        if (ok)
            out[img] += c;
    }
}

}  // namespace

ModulePtr std_functor(StdKind kind, int p, int d, int n)
{
    if (n < 1 || d < 0)
        throw InputError("std_functor needs n >= 1 and d >= 0");
    auto s = SchurAlgebra::classical(p, n, d);
    if (kind == StdKind::gamma)
        return representable(p, d, 1, n, false);
    std::vector<Word> basis_words;
    if (kind == StdKind::tensor)
        basis_words = all_words(n, d);
    else
        for (auto& m : multisets(std::size_t(n), std::size_t(d)))
            if (kind == StdKind::sym || sort_sign(m) != 0)
                basis_words.push_back(m);
    std::map<Word, std::uint32_t> index;
    std::vector<ModuleElement> basis;
    for (auto& w : basis_words) {
        index.emplace(w, std::uint32_t(basis.size()));
        basis.push_back({Label{std::vector<int>(w.begin(), w.end())}, 0, s->weight_index(content(w, n))});
    }
    auto by_weight = std::make_shared<std::vector<std::vector<std::uint32_t>>>(s->weights().size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        (*by_weight)[basis[i].weight].push_back(std::uint32_t(i));
    auto words = std::make_shared<std::vector<Word>>(basis_words);
    auto idx = std::make_shared<std::map<Word, std::uint32_t>>(std::move(index));
    const AlgebraPtr alg = s;
    return std::make_shared<GradedModule>(s, std::move(basis), [alg, kind, words, idx, by_weight](std::uint32_t a) {
        Field f(alg->p());
        std::vector<SparseVec> out;
        std::map<Word, long long> img;
        for (auto pos : (*by_weight)[alg->col(a)]) {
            img.clear();
            act_on_word(*alg, a, (*words)[pos], img, 1);
            SparseAccumulator acc;
            for (auto& [w, c] : img) {
                if (kind == StdKind::tensor) {
                    acc.add(idx->at(w), c);
                } else {
                    Word sorted = w;
                    std::sort(sorted.begin(), sorted.end());
                    if (kind == StdKind::sym) {
                        acc.add(idx->at(sorted), c);
                    } else if (int sg = sort_sign(w)) {
                        acc.add(idx->at(sorted), sg * c);
                    }
                }
            }
            out.push_back(acc.finish(f));
        }
        return out;
    });
}

ModulePtr frobenius_twist(ModulePtr m)
{
    const auto& small = m->algebra();
    if (small->is_affine())
        throw UnsupportedError("Frobenius twist of an affine module");
    const int p = small->p();
    auto big = SchurAlgebra::classical(p, small->n(), p * small->d());
    auto fmap = std::make_shared<std::vector<long>>(frobenius_algebra_map(*big, *small));
    const AlgebraPtr sm = small, bg = big;
    return restrict_module(
        m, big,
        [fmap](std::uint32_t b) {
            SparseVec v;
            if ((*fmap)[b] >= 0)
                v.emplace_back(std::uint32_t((*fmap)[b]), Scalar(1));
            return v;
        },
        [sm, bg, p](int w) {
            auto lam = sm->weights()[w];
            for (auto& x : lam)
                x *= p;
            return std::make_pair(bg->weight_index(lam), 0);
        });
}

ModulePtr reevaluate(ModulePtr m, int big_n)
{
    if (big_n < m->algebra()->n())
        throw InputError("reevaluate: the new rank must be at least the old one");
    return induce(m, big_n);
}

namespace {

// Restriction of an S(nq,d)-module (of the same depth-1 type) along Gamma^d of a unit map, regraded by
// weight: unit index (a, j) = a*q + j has degree w[j] and lands in the coarse weight a.
ModulePtr regrade_by_blocks(ModulePtr big_mod, AlgebraPtr target, int q, const std::vector<int>& w,
                            std::function<std::vector<std::pair<std::uint32_t, int>>(std::uint32_t)> unit_map)
{
    const AlgebraPtr big = big_mod->algebra();
    const int n = target->n();
    auto cache = std::make_shared<std::vector<SparseVec>>();
    return restrict_module(
        big_mod, target,
        [big, target, unit_map](std::uint32_t b) {
            auto counts = gamma_of_map(target->element(b), unit_map);
            SparseAccumulator acc;
            for (auto& [ms, c] : counts) {
                long idx = big->find(ms);
                if (idx < 0)
                    throw InvariantError("embedding left the Schur algebra basis");
                acc.add(std::uint32_t(idx), c);
            }
            return acc.finish(Field(big->p()));
        },
        [big, target, q, w, n](int bw) {
            const auto& lam = big->weights()[bw];
            std::vector<int> coarse(n, 0);
            int deg = 0;
            for (int a = 0; a < n; ++a)
                for (int j = 0; j < q; ++j) {
                    coarse[a] += lam[a * q + j];
                    deg += w[j] * lam[a * q + j];
                }
            return std::make_pair(target->weight_index(coarse), deg);
        });
}

}  // namespace

ModulePtr graded_extension(ModulePtr m, const std::vector<int>& w)
{
    const auto& s = m->algebra();
    if (s->is_affine())
        throw UnsupportedError("graded extension of an affine module");
    const int n = s->n(), q = int(w.size());
    if (q == 0)
        throw InputError("graded extension by the zero space");
    auto big_mod = reevaluate(m, n * q);
    const UnitShape bsh = big_mod->algebra()->shape();
    const UnitShape ssh = s->shape();
    return regrade_by_blocks(big_mod, s, q, w, [bsh, ssh, q](std::uint32_t u) {
        std::vector<std::pair<std::uint32_t, int>> img;
        const std::uint32_t a = ssh.row(u), b = ssh.col(u);
        for (int j = 0; j < q; ++j)
            img.emplace_back(bsh.index(a * q + j, b * q + j, 0), 1);
        return img;
    });
}

std::vector<int> twisted_algebra_degrees(int p, int i)
{
    std::vector<int> degs{0};
    int scale = 1;
    for (int k = 0; k < i; ++k) {
        std::vector<int> next;
        for (int a : degs)
            for (int j = 0; j < p; ++j)
                next.push_back(a + 2 * j * scale);
        degs = std::move(next);
        scale *= p;
    }
    return degs;
}

ModulePtr z_star(ModulePtr m)
{
    const auto& s = m->algebra();
    if (s->is_affine())
        throw InputError("z_star takes a classical module");
    const int n = s->n(), d = s->d(), p = s->p();
    if (n < d)
        throw InputError("z_star needs n >= d");
    auto big_mod = reevaluate(m, n * p);
    auto af = SchurAlgebra::affine(p, n, d);
    const UnitShape bsh = big_mod->algebra()->shape();
    const UnitShape ash = af->shape();
    std::vector<int> w;
    for (int j = 0; j < p; ++j)
        w.push_back(2 * j);
    return regrade_by_blocks(big_mod, af, p, w, [bsh, ash, p](std::uint32_t u) {
        std::vector<std::pair<std::uint32_t, int>> img;
        const std::uint32_t a = ash.row(u), b = ash.col(u), k = ash.power(u);
        for (std::uint32_t l = 0; l + k < std::uint32_t(p); ++l)
            img.emplace_back(bsh.index(a * p + k + l, b * p + l, 0), 1);
        return img;
    });
}

ModulePtr t_star(ModulePtr f, int m)
{
    const auto& s = f->algebra();
    if (!s->is_affine())
        throw InputError("t_star takes an affine module");
    auto big = induce(f, m);
    auto cl = SchurAlgebra::classical(s->p(), m, s->d());
    auto emb = std::make_shared<std::vector<std::uint32_t>>(degree_zero_embedding(*cl, *big->algebra()));
    const AlgebraPtr af = big->algebra(), c = cl;
    return restrict_module(
        big, cl, [emb](std::uint32_t b) { return SparseVec{{(*emb)[b], Scalar(1)}}; },
        [af, c](int w) { return std::make_pair(c->weight_index(af->weights()[w]), 0); });
}

ModulePtr inflate(ModulePtr f)
{
    const auto& s = f->algebra();
    if (s->is_affine())
        throw InputError("inflate takes a classical module");
    auto af = SchurAlgebra::affine(s->p(), s->n(), s->d());
    auto proj = std::make_shared<std::vector<long>>(degree_zero_projection(*af, *s));
    const AlgebraPtr a = af, c = s;
    return restrict_module(
        f, af,
        [proj](std::uint32_t b) {
            SparseVec v;
            if ((*proj)[b] >= 0)
                v.emplace_back(std::uint32_t((*proj)[b]), Scalar(1));
            return v;
        },
        [a, c](int w) { return std::make_pair(a->weight_index(c->weights()[w]), 0); });
}

ModulePtr h_star(ModulePtr f, int m)
{
    return kuhn_dual(t_star(kuhn_dual(f), m));
}

ModulePtr chi(int j, int n, int p)
{
    if (j < 0 || j >= p)
        throw InputError("chi_j needs 0 <= j <= p-1");
    auto s = SchurAlgebra::affine(p, n, 1);
    std::vector<ModuleElement> basis;
    for (int a = 0; a < n; ++a) {
        std::vector<int> wt(n, 0);
        wt[a] = 1;
        basis.push_back({Label{{a}}, 2 * j, s->weight_index(wt)});
    }
    const AlgebraPtr alg = s;
    return std::make_shared<GradedModule>(s, std::move(basis), [alg](std::uint32_t x) {
        const auto& sh = alg->shape();
        const std::uint32_t u = alg->element(x)[0];
        std::vector<SparseVec> out(1);
        if (sh.power(u) == 0)
            out[0].emplace_back(sh.row(u), Scalar(1));
        return out;
    });
}

ModulePtr kuhn_dual(ModulePtr f)
{
    const auto& s = f->algebra();
    const int top = s->is_affine() ? 2 * (s->p() - 1) * s->d() : 0;
    std::vector<ModuleElement> basis;
    for (auto& e : f->elements())
        basis.push_back({e.label, top - e.degree, e.weight});
    const AlgebraPtr alg = s;
    return std::make_shared<GradedModule>(s, std::move(basis), [f, alg](std::uint32_t a) {
        // (a.phi_v)(u) = phi_v(tau(a) u): coefficient of v in tau(a) u, u of weight row(a)
        const std::uint32_t ta = alg->transpose(a);
        const auto& targets = f->with_weight(alg->col(a));
        std::map<std::uint32_t, std::size_t> slot;
        for (std::size_t i = 0; i < targets.size(); ++i)
            slot.emplace(targets[i], i);
        std::vector<SparseVec> out(targets.size());
        for (auto u : f->with_weight(alg->row(a)))
            for (auto [v, c] : f->act(ta, u))
                out[slot.at(v)].emplace_back(u, c);
        for (auto& v : out)
            std::sort(v.begin(), v.end());
        return out;
    });
}

ModulePtr representable(int p, int d, int u, int n, bool affine)
{
    auto s = affine ? SchurAlgebra::affine(p, n, d) : SchurAlgebra::classical(p, n, d);
    UnitShape sh{std::uint32_t(n), std::uint32_t(u), s->depth()};
    auto hb = std::make_shared<GammaHomBasis>(GammaHomBasis::build(sh, d));
    auto orbits = std::make_shared<std::vector<std::vector<Word>>>();
    std::vector<ModuleElement> basis;
    for (std::size_t i = 0; i < hb->elements.size(); ++i) {
        const auto& m = hb->elements[i];
        orbits->push_back(orbit(m));
        basis.push_back({Label{std::vector<int>(m.begin(), m.end())}, hb->degree[i], s->weight_index(hb->row_weight[i])});
    }
    auto by_weight = std::make_shared<std::vector<std::vector<std::uint32_t>>>(s->weights().size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        (*by_weight)[basis[i].weight].push_back(std::uint32_t(i));
    const AlgebraPtr alg = s;
    return std::make_shared<GradedModule>(s, std::move(basis), [alg, hb, orbits, by_weight](std::uint32_t a) {
        Field f(alg->p());
        std::vector<SparseVec> out;
        std::map<Multiset, long long> counts;
        for (auto pos : (*by_weight)[alg->col(a)]) {
            counts.clear();
            compose_counts(alg->orbit_of(a), (*orbits)[pos], alg->shape(), hb->shape, counts);
            SparseAccumulator acc;
            for (auto& [ms, c] : counts)
                acc.add(std::uint32_t(hb->index.find(ms)), c);
            out.push_back(acc.finish(f));
        }
        return out;
    });
}

ModulePtr corepresentable(int p, int d, int u, int n, bool affine)
{
    // V (x) A -> Gamma^d(Hom(V, U) (x) A)^*, the dual of the right regular action.
    auto s = affine ? SchurAlgebra::affine(p, n, d) : SchurAlgebra::classical(p, n, d);
    UnitShape sh{std::uint32_t(u), std::uint32_t(n), s->depth()};
    auto hb = std::make_shared<GammaHomBasis>(GammaHomBasis::build(sh, d));
    auto orbits = std::make_shared<std::vector<std::vector<Word>>>();
    std::vector<ModuleElement> basis;
    for (std::size_t i = 0; i < hb->elements.size(); ++i) {
        const auto& m = hb->elements[i];
        orbits->push_back(orbit(m));
        basis.push_back({Label{std::vector<int>(m.begin(), m.end())}, -hb->degree[i], s->weight_index(hb->col_weight[i])});
    }
    auto by_weight = std::make_shared<std::vector<std::vector<std::uint32_t>>>(s->weights().size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        (*by_weight)[basis[i].weight].push_back(std::uint32_t(i));
    const AlgebraPtr alg = s;
    return std::make_shared<GradedModule>(s, std::move(basis), [alg, hb, orbits, by_weight](std::uint32_t a) {
        // (a.f_psi)(phi) = f_psi(phi o a): a.f_psi = sum over phi of [psi in phi o a] f_phi
        const auto& targets = (*by_weight)[alg->col(a)];
        std::map<std::uint32_t, std::size_t> slot;
        for (std::size_t i = 0; i < targets.size(); ++i)
            slot.emplace(targets[i], i);
        std::vector<SparseAccumulator> acc(targets.size());
        std::map<Multiset, long long> counts;
        for (auto phi : (*by_weight)[alg->row(a)]) {
            counts.clear();
            compose_counts((*orbits)[phi], alg->orbit_of(a), hb->shape, alg->shape(), counts);
            for (auto& [ms, c] : counts)
                acc[slot.at(std::uint32_t(hb->index.find(ms)))].add(phi, c);
        }
        Field f(alg->p());
        std::vector<SparseVec> out;
        for (auto& x : acc)
            out.push_back(x.finish(f));
        return out;
    });
}

}  // namespace gammaext
