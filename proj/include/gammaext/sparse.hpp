#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gammaext/linalg.hpp"

namespace gammaext {

/// Sparse coefficient vector: (index, nonzero coefficient), sorted by index.
using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;

/// Accumulates integer coefficients then reduces mod p into a SparseVec.
class SparseAccumulator {
public:
    void add(std::uint32_t idx, long long c) { terms_.emplace_back(idx, c); }
    SparseVec finish(const Field& f);

private:
    std::vector<std::pair<std::uint32_t, long long>> terms_;
};

Vec to_dense(const SparseVec& v, std::size_t dim);
SparseVec to_sparse(const Vec& v);

}  // namespace gammaext
