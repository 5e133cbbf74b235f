#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gammaext/linalg.hpp"

namespace gammaext {

/// Structured basis label; compared lexicographically.
/// A pair label (from a tensor product) is the length-prefixed concatenation of its parts.
struct Label {
    std::vector<int> parts;

    auto operator<=>(const Label&) const = default;
    bool operator==(const Label&) const = default;

    static Label pair(const Label& a, const Label& b);
    std::string str() const;
};

struct BasisElement {
    Label label;
    int degree = 0;
};

/// (degree, dim) pairs sorted by degree, zero dims omitted.
using PoincareSeries = std::vector<std::pair<int, std::size_t>>;

std::string poincare_json(const PoincareSeries& s);
PoincareSeries translate(const PoincareSeries& s, int by);
PoincareSeries convolve(const PoincareSeries& a, const PoincareSeries& b);

/// Bounded-below Z-graded F_p-space with a labeled basis, finite in each degree.
/// Shift convention: M[n]^i = M^{n+i}.
class GradedSpace {
public:
    GradedSpace() = default;
    GradedSpace(int p, std::vector<BasisElement> basis);

    static GradedSpace concentrated(int p, int degree, std::size_t dim);

    int p() const { return p_; }
    std::size_t dim() const { return basis_.size(); }
    std::size_t dim(int degree) const;
    const std::vector<BasisElement>& basis() const { return basis_; }
    const std::vector<std::size_t>& positions(int degree) const;
    std::vector<int> degrees() const;
    bool empty() const { return basis_.empty(); }
    int bottom() const;
    int top() const;

    PoincareSeries poincare() const;

private:
    int p_ = 2;
    std::vector<BasisElement> basis_;
    std::map<int, std::vector<std::size_t>> index_;
};

GradedSpace shift(const GradedSpace& m, int n);
GradedSpace dual(const GradedSpace& m);
GradedSpace tensor(const GradedSpace& m, const GradedSpace& n);
GradedSpace direct_sum(const GradedSpace& m, const GradedSpace& n);
inline PoincareSeries poincare(const GradedSpace& m) { return m.poincare(); }

/// Degree-preserving linear map of a fixed degree shift, stored blockwise.
struct GradedMap {
    GradedSpace source;
    GradedSpace target;
    int shift = 0;
    std::map<int, Matrix> blocks;  // source degree i -> (dim target_{i+shift}) x (dim source_i)
};

}  // namespace gammaext
