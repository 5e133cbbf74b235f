#include "gammaext/sparse.hpp"

#include <algorithm>

namespace gammaext {

SparseVec SparseAccumulator::finish(const Field& f)
{
    std::sort(terms_.begin(), terms_.end());
    SparseVec out;
    for (std::size_t i = 0; i < terms_.size();) {
        std::size_t j = i;
        long long sum = 0;
        while (j < terms_.size() && terms_[j].first == terms_[i].first)
            sum += terms_[j++].second;
        Scalar s = f.from_int(sum);
        if (s)
            out.emplace_back(terms_[i].first, s);
        i = j;
    }
    terms_.clear();
    return out;
}

Vec to_dense(const SparseVec& v, std::size_t dim)
{
    Vec d(dim, 0);
    for (auto [i, c] : v)
        d[i] = c;
    return d;
}

SparseVec to_sparse(const Vec& v)
{
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i])
            s.emplace_back(std::uint32_t(i), v[i]);
    return s;
}

}  // namespace gammaext
