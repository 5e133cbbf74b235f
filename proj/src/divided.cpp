#include "gammaext/divided.hpp"

#include <algorithm>

#include "gammaext/errors.hpp"

namespace gammaext {

std::vector<Multiset> multisets(std::size_t base_dim, std::size_t d)
{
    std::vector<Multiset> out;
    if (d == 0) {
        out.emplace_back();
        return out;
    }
    if (base_dim == 0)
        return out;
    Multiset cur(d, 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = d;
        while (i > 0 && cur[i - 1] == base_dim - 1)
            --i;
        if (i == 0)
            break;
        std::uint32_t v = cur[i - 1] + 1;
        for (std::size_t j = i - 1; j < d; ++j)
            cur[j] = v;
    }
    return out;
}

std::vector<Word> orbit(const Multiset& mu)
{
    std::vector<Word> out;
    Word w = mu;
    do {
        out.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

GammaSpace gamma_space(const GradedSpace& base, std::size_t d)
{
    GammaSpace g;
    g.base = base;
    g.d = d;
    g.multisets = multisets(base.dim(), d);
    std::vector<BasisElement> b;
    for (std::size_t i = 0; i < g.multisets.size(); ++i) {
        const auto& mu = g.multisets[i];
        int deg = 0;
        for (auto x : mu)
            deg += base.basis()[x].degree;
        b.push_back({Label{std::vector<int>(mu.begin(), mu.end())}, deg});
        g.index.emplace(mu, i);
    }
    g.space = GradedSpace(base.p(), std::move(b));
    return g;
}

std::map<Word, Scalar> embed_in_tensor(const Multiset& mu)
{
    std::map<Word, Scalar> out;
    for (auto& w : orbit(mu))
        out.emplace(w, Scalar(1));
    return out;
}

std::vector<std::pair<Multiset, Multiset>> comultiply(const Multiset& mu, std::size_t a, std::size_t b)
{
    if (a + b != mu.size())
        throw InputError("comultiply: a + b must equal the multiset size");
    // Distinct values with multiplicities; each choice of sub-multiplicities is one splitting.
    std::vector<std::pair<std::uint32_t, std::size_t>> runs;
    for (auto x : mu) {
        if (runs.empty() || runs.back().first != x)
            runs.emplace_back(x, 0);
        ++runs.back().second;
    }
    std::vector<std::pair<Multiset, Multiset>> out;
    std::vector<std::size_t> take(runs.size(), 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i == runs.size()) {
            if (left != 0)
                return;
            Multiset m1, m2;
            for (std::size_t k = 0; k < runs.size(); ++k) {
                m1.insert(m1.end(), take[k], runs[k].first);
                m2.insert(m2.end(), runs[k].second - take[k], runs[k].first);
            }
            out.emplace_back(std::move(m1), std::move(m2));
            return;
        }
        for (std::size_t t = 0; t <= std::min(left, runs[i].second); ++t) {
            take[i] = t;
            rec(i + 1, left - t);
        }
    };
    rec(0, a);
    return out;
}

AlgebraPresentation::AlgebraPresentation(GradedSpace basis, std::vector<std::vector<SparseVec>> table, Vec unit)
    : basis_(std::move(basis)), table_(std::move(table)), unit_(std::move(unit))
{
    if (table_.size() != basis_.dim() || unit_.size() != basis_.dim())
        throw InputError("AlgebraPresentation: table shape mismatch");
}

Vec AlgebraPresentation::multiply(const Vec& a, const Vec& b) const
{
    Field f(p());
    Vec out(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!a[i])
            continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (!b[j])
                continue;
            Scalar c = f.mul(a[i], b[j]);
            for (auto [k, v] : table_[i][j])
                out[k] = f.add(out[k], f.mul(c, v));
        }
    }
    return out;
}

void AlgebraPresentation::check_associative() const
{
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec ei(n, 0), ej(n, 0), ek(n, 0);
                ei[i] = ej[j] = ek[k] = 1;
                if (multiply(multiply(ei, ej), ek) != multiply(ei, multiply(ej, ek)))
                    throw InvariantError("associativity fails on basis triple " + std::to_string(i) + "," +
                                         std::to_string(j) + "," + std::to_string(k));
            }
}

void AlgebraPresentation::check_unit() const
{
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) {
        Vec ei(n, 0);
        ei[i] = 1;
        if (multiply(unit_, ei) != ei || multiply(ei, unit_) != ei)
            throw InvariantError("unit law fails on basis element " + std::to_string(i));
    }
}

void AlgebraPresentation::check_degrees() const
{
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            for (auto [k, v] : table_[i][j])
                if (basis_.basis()[k].degree != basis_.basis()[i].degree + basis_.basis()[j].degree)
                    throw InvariantError("structure constants are not degree-additive");
}

AlgebraPresentation truncated_polynomial(int p, int h)
{
    std::vector<BasisElement> b;
    for (int k = 0; k < h; ++k)
        b.push_back({Label{{k}}, 2 * k});
    std::vector<std::vector<SparseVec>> t(h, std::vector<SparseVec>(h));
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j)
            if (i + j < h)
                t[i][j] = {{std::uint32_t(i + j), Scalar(1)}};
    Vec unit(h, 0);
    unit[0] = 1;
    return AlgebraPresentation(GradedSpace(p, std::move(b)), std::move(t), std::move(unit));
}

AlgebraPresentation matrix_algebra(int p, std::size_t n)
{
    std::vector<BasisElement> b;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c)
            b.push_back({Label{{int(a), int(c)}}, 0});
    std::vector<std::vector<SparseVec>> t(n * n, std::vector<SparseVec>(n * n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t e = 0; e < n; ++e)
                t[a * n + c][c * n + e] = {{std::uint32_t(a * n + e), Scalar(1)}};
    Vec unit(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
        unit[a * n + a] = 1;
    return AlgebraPresentation(GradedSpace(p, std::move(b)), std::move(t), std::move(unit));
}

AlgebraPresentation tensor_algebra(const AlgebraPresentation& a, const AlgebraPresentation& b)
{
    if (a.p() != b.p())
        throw InputError("tensor_algebra: characteristic mismatch");
    Field f(a.p());
    const std::size_t na = a.dim(), nb = b.dim();
    std::vector<BasisElement> basis;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            Label l = a.basis().basis()[i].label;
            const auto& r = b.basis().basis()[j].label.parts;
            l.parts.insert(l.parts.end(), r.begin(), r.end());
            basis.push_back({l, a.basis().basis()[i].degree + b.basis().basis()[j].degree});
        }
    std::vector<std::vector<SparseVec>> t(na * nb, std::vector<SparseVec>(na * nb));
    for (std::size_t i1 = 0; i1 < na; ++i1)
        for (std::size_t j1 = 0; j1 < nb; ++j1)
            for (std::size_t i2 = 0; i2 < na; ++i2)
                for (std::size_t j2 = 0; j2 < nb; ++j2) {
                    SparseAccumulator acc;
                    for (auto [x, cx] : a.product(i1, i2))
                        for (auto [y, cy] : b.product(j1, j2))
                            acc.add(std::uint32_t(x * nb + y), f.mul(cx, cy));
                    t[i1 * nb + j1][i2 * nb + j2] = acc.finish(f);
                }
    Vec unit(na * nb, 0);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            unit[i * nb + j] = f.mul(a.unit()[i], b.unit()[j]);
    return AlgebraPresentation(GradedSpace(a.p(), std::move(basis)), std::move(t), std::move(unit));
}

AlgebraPresentation gamma_algebra(const AlgebraPresentation& b, std::size_t d)
{
    Field f(b.p());
    GammaSpace g = gamma_space(b.basis(), d);
    const std::size_t n = g.multisets.size();
    std::vector<std::vector<Word>> orbits(n);
    for (std::size_t i = 0; i < n; ++i)
        orbits[i] = orbit(g.multisets[i]);

    std::vector<std::vector<SparseVec>> table(n, std::vector<SparseVec>(n));
    Word prod(d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // Coefficient of gamma_pi = number of (w, w') whose factorwise product hits the
            // sorted word of pi, with multiplicities from the base structure constants.
            std::map<Word, long long> hits;
            for (const auto& w : orbits[i])
                for (const auto& w2 : orbits[j]) {
                    std::function<void(std::size_t, long long)> expand = [&](std::size_t pos, long long coeff) {
                        if (pos == d) {
                            if (std::is_sorted(prod.begin(), prod.end()))
                                hits[prod] += coeff;
                            return;
                        }
                        for (auto [k, c] : b.product(w[pos], w2[pos])) {
                            prod[pos] = k;
                            expand(pos + 1, coeff * c);
                        }
                    };
                    expand(0, 1);
                }
            SparseAccumulator acc;
            for (auto& [word, c] : hits)
                acc.add(std::uint32_t(g.index.at(word)), c);
            table[i][j] = acc.finish(f);
        }

    // Unit: the multiset made of the base unit, expanded multilinearly.
    Vec unit(n, 0);
    {
        std::map<Word, long long> hits;
        Word w(d);
        std::function<void(std::size_t, long long)> expand = [&](std::size_t pos, long long coeff) {
            if (pos == d) {
                if (std::is_sorted(w.begin(), w.end()))
                    hits[w] += coeff;
                return;
            }
            for (std::size_t k = 0; k < b.dim(); ++k)
                if (b.unit()[k]) {
                    w[pos] = std::uint32_t(k);
                    expand(pos + 1, coeff * b.unit()[k]);
                }
        };
        expand(0, 1);
        for (auto& [word, c] : hits)
            unit[g.index.at(word)] = f.from_int(c);
    }
    return AlgebraPresentation(g.space, std::move(table), std::move(unit));
}

Matrix frobenius_map(std::size_t base_dim, std::size_t d, int p)
{
    auto src = multisets(base_dim, std::size_t(p) * d);
    auto dst = multisets(base_dim, d);
    std::map<Multiset, std::size_t> dst_index;
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst_index.emplace(dst[i], i);
    Matrix m(p, dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        const auto& mu = src[j];
        Multiset nu;
        bool divisible = true;
        for (std::size_t i = 0; i < mu.size();) {
            std::size_t k = i;
            while (k < mu.size() && mu[k] == mu[i])
                ++k;
            if ((k - i) % std::size_t(p) != 0) {
                divisible = false;
                break;
            }
            nu.insert(nu.end(), (k - i) / std::size_t(p), mu[i]);
            i = k;
        }
        if (divisible)
            m.at(dst_index.at(nu), j) = 1;
    }
    return m;
}

GammaSpace frobenius_target(const GradedSpace& base, std::size_t d)
{
    auto b = base.basis();
    for (auto& e : b)
        e.degree *= base.p();
    return gamma_space(GradedSpace(base.p(), std::move(b)), d);
}

}  // namespace gammaext
