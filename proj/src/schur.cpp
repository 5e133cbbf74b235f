#include "gammaext/schur.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>

#include "gammaext/errors.hpp"

namespace gammaext {

long long binomial(long long n, long long k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

MultisetIndex::MultisetIndex(std::uint32_t unit_count, const std::vector<Multiset>& basis)
    : radix_(std::max<std::uint32_t>(unit_count, 1))
{
    map_.reserve(basis.size() * 2);
    for (std::size_t i = 0; i < basis.size(); ++i)
        map_.emplace(pack(basis[i]), std::uint32_t(i));
}

std::uint64_t MultisetIndex::pack(const Multiset& m) const
{
    std::uint64_t v = 0;
    for (auto x : m)
        v = v * radix_ + x;
    return v;
}

long MultisetIndex::find(const Multiset& m) const
{
    auto it = map_.find(pack(m));
    return it == map_.end() ? -1 : long(it->second);
}

GammaHomBasis GammaHomBasis::build(UnitShape shape, std::size_t d)
{
    GammaHomBasis b;
    b.shape = shape;
    b.d = d;
    long double size = 1;
    for (std::size_t i = 0; i < d; ++i)
        size *= shape.count();
    if (size > 1.8e19L)
        throw InfeasibleError("multiset index does not fit in 64 bits", -1);
    b.elements = multisets(shape.count(), d);
    b.index = MultisetIndex(shape.count(), b.elements);
    for (auto& m : b.elements) {
        std::vector<int> rw(shape.rows, 0), cw(shape.cols, 0);
        int deg = 0;
        for (auto u : m) {
            ++rw[shape.row(u)];
            ++cw[shape.col(u)];
            deg += 2 * int(shape.power(u));
        }
        b.row_weight.push_back(std::move(rw));
        b.col_weight.push_back(std::move(cw));
        b.degree.push_back(deg);
    }
    return b;
}

void compose_counts(const std::vector<Word>& lhs_orbit, const std::vector<Word>& rhs_orbit, UnitShape lhs,
                    UnitShape rhs, std::map<Multiset, long long>& out)
{
    UnitShape res{lhs.rows, rhs.cols, lhs.depth};
    Word prod;
    for (auto& w : lhs_orbit) {
        const std::size_t d = w.size();
        prod.assign(d, 0);
        for (auto& v : rhs_orbit) {
            bool ok = true;
            for (std::size_t i = 0; i < d && ok; ++i) {
                std::uint32_t k = lhs.power(w[i]) + rhs.power(v[i]);
                if (lhs.col(w[i]) != rhs.row(v[i]) || k >= res.depth) {
                    ok = false;
                    break;
                }
                prod[i] = res.index(lhs.row(w[i]), rhs.col(v[i]), k);
                if (i > 0 && prod[i] < prod[i - 1])
                    ok = false;
            }
            if (ok)
                ++out[prod];
        }
    }
}

std::map<Multiset, long long> gamma_of_map(
    const Multiset& mu, const std::function<std::vector<std::pair<std::uint32_t, int>>(std::uint32_t)>& f)
{
    // Gamma^d(f)(gamma_mu) = sum over words w in orbit(mu) of f(w_1) (x) ... (x) f(w_d); the result is
    // symmetric, so the coefficient of gamma_nu is the coefficient of the sorted word nu.
    std::map<Multiset, long long> out;
    std::vector<std::vector<std::pair<std::uint32_t, int>>> images;
    for (auto& w : orbit(mu)) {
        images.clear();
        for (auto u : w)
            images.push_back(f(u));
        const std::size_t d = w.size();
        std::vector<std::size_t> pos(d, 0);
        bool empty = false;
        for (auto& im : images)
            empty = empty || im.empty();
        if (empty)
            continue;
        Word cur(d);
        while (true) {
            bool sorted = true;
            long long coeff = 1;
            for (std::size_t i = 0; i < d; ++i) {
                cur[i] = images[i][pos[i]].first;
                coeff *= images[i][pos[i]].second;
                if (i > 0 && cur[i] < cur[i - 1])
                    sorted = false;
            }
            if (sorted && coeff != 0)
                out[cur] += coeff;
            std::size_t i = d;
            while (i > 0 && pos[i - 1] + 1 == images[i - 1].size()) {
                pos[i - 1] = 0;
                --i;
            }
            if (i == 0)
                break;
            ++pos[i - 1];
        }
    }
    return out;
}

std::vector<std::vector<int>> compositions(int d, int n)
{
    std::vector<std::vector<int>> out;
    if (n <= 0)
        return out;
    std::vector<int> cur(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n - 1) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int v = left; v >= 0; --v) {
            cur[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, d);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

long long algebra_limit()
{
    if (const char* s = std::getenv("GAMMAEXT_MAX_ALGEBRA_DIM"))
        return std::atoll(s);
    return 5000;
}

}  // namespace

std::shared_ptr<const SchurAlgebra> SchurAlgebra::intern(int p, int n, int d, int depth)
{
    // one instance per parameter set, so modules can compare algebras by pointer and share tables
    if (n < 1 || d < 0)
        throw InputError("Schur algebra needs n >= 1 and d >= 0");
    const long long dim = binomial((long long)n * n * depth + d - 1, d);
    if (dim > algebra_limit())
        throw InfeasibleError("Schur algebra of dimension " + std::to_string(dim) + " exceeds the ceiling", dim);
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int>, std::shared_ptr<const SchurAlgebra>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, n, d, depth);
    auto it = registry.find(key);
    if (it != registry.end())
        return it->second;
    std::shared_ptr<const SchurAlgebra> s(new SchurAlgebra(p, n, d, depth));
    registry.emplace(key, s);
    return s;
}

std::shared_ptr<const SchurAlgebra> SchurAlgebra::classical(int p, int n, int d)
{
    return intern(p, n, d, 1);
}

std::shared_ptr<const SchurAlgebra> SchurAlgebra::affine(int p, int n, int d)
{
    return intern(p, n, d, p);
}

SchurAlgebra::SchurAlgebra(int p, int n, int d, int depth) : p_(p), n_(n), d_(d), depth_(depth), field_(p)
{
    basis_ = GammaHomBasis::build(UnitShape{std::uint32_t(n), std::uint32_t(n), std::uint32_t(depth)}, d);
    weights_ = compositions(d, n);
    for (std::size_t i = 0; i < weights_.size(); ++i)
        weight_lookup_.emplace(weights_[i], int(i));
    const std::size_t N = basis_.elements.size();
    by_col_.assign(weights_.size(), {});
    by_row_.assign(weights_.size(), {});
    row_rank_.assign(N, 0);
    for (std::size_t i = 0; i < N; ++i) {
        row_.push_back(weight_lookup_.at(basis_.row_weight[i]));
        col_.push_back(weight_lookup_.at(basis_.col_weight[i]));
        row_rank_[i] = std::uint32_t(by_row_[row_[i]].size());
        by_row_[row_[i]].push_back(std::uint32_t(i));
        by_col_[col_[i]].push_back(std::uint32_t(i));
        orbits_.push_back(orbit(basis_.elements[i]));
    }
    const auto& sh = basis_.shape;
    for (std::size_t i = 0; i < N; ++i) {
        Multiset t;
        for (auto u : basis_.elements[i])
            t.push_back(sh.index(sh.col(u), sh.row(u), sh.power(u)));
        std::sort(t.begin(), t.end());
        transpose_.push_back(std::uint32_t(basis_.index.find(t)));
    }
    for (std::size_t w = 0; w < weights_.size(); ++w) {
        const auto& mu = weights_[w];
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i)
            order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return mu[a] > mu[b]; });
        std::vector<int> lam(n), pos(n);
        for (int k = 0; k < n; ++k) {
            lam[k] = mu[order[k]];
            pos[order[k]] = k;
        }
        int dom = weight_lookup_.at(lam);
        dominant_.push_back(dom);
        Multiset into, back;
        for (int i = 0; i < n; ++i) {
            into.insert(into.end(), mu[i], sh.index(pos[i], i, 0));
            back.insert(back.end(), mu[i], sh.index(i, pos[i], 0));
        }
        std::sort(into.begin(), into.end());
        std::sort(back.begin(), back.end());
        transport_.emplace_back(std::uint32_t(basis_.index.find(into)), std::uint32_t(basis_.index.find(back)));
    }
    for (std::size_t i = 0; i < N; ++i)
        if (dominant_[row_[i]] == row_[i] && dominant_[col_[i]] == col_[i])
            dominant_elements_.push_back(std::uint32_t(i));
    table_.assign(N, {});
    table_once_ = std::make_unique<std::once_flag[]>(N);

    if (depth > 1 || N <= 400) {
        for (std::size_t i = 0; i < N; ++i)
            generators_.push_back(std::uint32_t(i));
    } else {
        // xi_lambda and the divided powers E_i^(r) xi, F_i^(r) xi.
        for (std::size_t w = 0; w < weights_.size(); ++w)
            generators_.push_back(idempotent(int(w)));
        for (int i = 0; i + 1 < n; ++i) {
            for (int r = 1; r <= d; ++r) {
                for (auto& diag : compositions(d - r, n)) {
                    for (int dir = 0; dir < 2; ++dir) {
                        Multiset m;
                        for (int j = 0; j < n; ++j)
                            m.insert(m.end(), diag[j], sh.index(j, j, 0));
                        std::uint32_t e = dir == 0 ? sh.index(i, i + 1, 0) : sh.index(i + 1, i, 0);
                        m.insert(m.end(), r, e);
                        std::sort(m.begin(), m.end());
                        generators_.push_back(std::uint32_t(basis_.index.find(m)));
                    }
                }
            }
        }
        std::sort(generators_.begin(), generators_.end());
        generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
    }
}

int SchurAlgebra::weight_index(const std::vector<int>& w) const
{
    auto it = weight_lookup_.find(w);
    if (it == weight_lookup_.end())
        throw InputError("not a weight of this Schur algebra");
    return it->second;
}

void SchurAlgebra::compute_products(std::size_t a) const
{
    const auto& partners = by_row_[col_[a]];
    std::vector<SparseVec> row(partners.size());
    std::map<Multiset, long long> counts;
    for (std::size_t j = 0; j < partners.size(); ++j) {
        counts.clear();
        compose_counts(orbits_[a], orbits_[partners[j]], basis_.shape, basis_.shape, counts);
        SparseAccumulator acc;
        for (auto& [m, c] : counts) {
            long idx = basis_.index.find(m);
            if (idx < 0)
                throw InvariantError("product left the Schur algebra basis");
            acc.add(std::uint32_t(idx), c);
        }
        row[j] = acc.finish(field_);
    }
    table_[a] = std::move(row);
}

const SparseVec& SchurAlgebra::product(std::size_t a, std::size_t b) const
{
    static const SparseVec zero;
    if (col_[a] != row_[b])
        return zero;
    std::call_once(table_once_[a], [&] { compute_products(a); });
    return table_[a][row_rank_[b]];
}

SparseVec SchurAlgebra::multiply(const SparseVec& x, const SparseVec& y) const
{
    SparseAccumulator acc;
    for (auto [a, ca] : x)
        for (auto [b, cb] : y)
            for (auto [c, cc] : product(a, b))
                acc.add(c, (long long)ca * cb * cc);
    return acc.finish(field_);
}

std::uint32_t SchurAlgebra::idempotent(int w) const
{
    const auto& lam = weights_.at(w);
    Multiset m;
    for (int j = 0; j < n_; ++j)
        m.insert(m.end(), lam[j], basis_.shape.index(j, j, 0));
    return std::uint32_t(basis_.index.find(m));
}

Vec SchurAlgebra::unit() const
{
    Vec u(dim(), 0);
    for (std::size_t w = 0; w < weights_.size(); ++w)
        u[idempotent(int(w))] = 1;
    return u;
}

AlgebraPresentation SchurAlgebra::presentation() const
{
    std::vector<BasisElement> b;
    for (std::size_t i = 0; i < dim(); ++i) {
        const auto& m = basis_.elements[i];
        b.push_back({Label{std::vector<int>(m.begin(), m.end())}, basis_.degree[i]});
    }
    std::vector<std::vector<SparseVec>> table(dim(), std::vector<SparseVec>(dim()));
    for (std::size_t a = 0; a < dim(); ++a)
        for (std::size_t c = 0; c < dim(); ++c)
            table[a][c] = product(a, c);
    return AlgebraPresentation(GradedSpace(p_, std::move(b)), std::move(table), unit());
}

std::vector<long> degree_zero_projection(const SchurAlgebra& affine, const SchurAlgebra& classical)
{
    std::vector<long> out(affine.dim(), -1);
    const auto& sh = affine.shape();
    for (std::size_t i = 0; i < affine.dim(); ++i) {
        if (affine.degree(i) != 0)
            continue;
        Multiset m;
        for (auto u : affine.element(i))
            m.push_back(u / sh.depth);
        out[i] = classical.find(m);
    }
    return out;
}

std::vector<std::uint32_t> augmentation_ideal(const SchurAlgebra& affine)
{
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < affine.dim(); ++i)
        if (affine.degree(i) > 0)
            out.push_back(std::uint32_t(i));
    return out;
}

std::vector<std::uint32_t> degree_zero_embedding(const SchurAlgebra& classical, const SchurAlgebra& affine)
{
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < classical.dim(); ++i) {
        Multiset m;
        for (auto u : classical.element(i))
            m.push_back(u * affine.depth());
        out.push_back(std::uint32_t(affine.find(m)));
    }
    return out;
}

std::vector<std::pair<std::vector<int>, Vec>> weight_idempotents(const SchurAlgebra& s)
{
    std::vector<std::pair<std::vector<int>, Vec>> out;
    for (std::size_t w = 0; w < s.weights().size(); ++w) {
        Vec v(s.dim(), 0);
        v[s.idempotent(int(w))] = 1;
        out.emplace_back(s.weights()[w], std::move(v));
    }
    return out;
}

std::vector<long> frobenius_algebra_map(const SchurAlgebra& big, const SchurAlgebra& small)
{
    const int p = small.p();
    if (big.d() != p * small.d() || big.n() != small.n() || big.depth() != small.depth())
        throw InputError("Frobenius map needs S(n, pd) -> S(n, d)");
    std::vector<long> out(big.dim(), -1);
    for (std::size_t i = 0; i < big.dim(); ++i) {
        const auto& m = big.element(i);
        Multiset q;
        bool ok = true;
        std::size_t j = 0;
        while (j < m.size() && ok) {
            std::size_t k = j;
            while (k < m.size() && m[k] == m[j])
                ++k;
            if ((k - j) % p != 0)
                ok = false;
            else
                q.insert(q.end(), (k - j) / p, m[j]);
            j = k;
        }
        if (ok)
            out[i] = small.find(q);
    }
    return out;
}

std::size_t generated_dimension(const SchurAlgebra& s, const std::vector<std::uint32_t>& gens)
{
    Field f(s.p());
    SubspaceBasis span(s.p(), s.dim());
    std::vector<SparseVec> frontier{to_sparse(s.unit())};
    span.insert(s.unit());
    while (!frontier.empty()) {
        std::vector<SparseVec> next;
        for (auto& v : frontier) {
            for (auto g : gens) {
                SparseVec w = s.multiply(SparseVec{{g, Scalar(1)}}, v);
                if (w.empty())
                    continue;
                if (span.insert(to_dense(w, s.dim())))
                    next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
    }
    return span.size();
}

}  // namespace gammaext
