#include "gammaext/graded.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gammaext/errors.hpp"

namespace gammaext {

Label Label::pair(const Label& a, const Label& b)
{
    Label l;
    l.parts.reserve(a.parts.size() + b.parts.size() + 1);
    l.parts.push_back(int(a.parts.size()));
    l.parts.insert(l.parts.end(), a.parts.begin(), a.parts.end());
    l.parts.insert(l.parts.end(), b.parts.begin(), b.parts.end());
    return l;
}

std::string Label::str() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts.size(); ++i)
        os << (i ? "," : "") << parts[i];
    os << ')';
    return os.str();
}

std::string poincare_json(const PoincareSeries& s)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < s.size(); ++i)
        os << (i ? "," : "") << '[' << s[i].first << ',' << s[i].second << ']';
    os << ']';
    return os.str();
}

PoincareSeries translate(const PoincareSeries& s, int by)
{
    PoincareSeries out = s;
    for (auto& [deg, dim] : out)
        deg += by;
    return out;
}

PoincareSeries convolve(const PoincareSeries& a, const PoincareSeries& b)
{
    std::map<int, std::size_t> acc;
    for (auto [da, na] : a)
        for (auto [db, nb] : b)
            acc[da + db] += na * nb;
    PoincareSeries out;
    for (auto [d, n] : acc)
        if (n)
            out.emplace_back(d, n);
    return out;
}

GradedSpace::GradedSpace(int p, std::vector<BasisElement> basis) : p_(p), basis_(std::move(basis))
{
    std::set<Label> seen;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (!seen.insert(basis_[i].label).second)
            throw InputError("duplicate basis label " + basis_[i].label.str());
        index_[basis_[i].degree].push_back(i);
    }
}

GradedSpace GradedSpace::concentrated(int p, int degree, std::size_t dim)
{
    std::vector<BasisElement> b;
    for (std::size_t i = 0; i < dim; ++i)
        b.push_back({Label{{int(i)}}, degree});
    return GradedSpace(p, std::move(b));
}

std::size_t GradedSpace::dim(int degree) const
{
    auto it = index_.find(degree);
    return it == index_.end() ? 0 : it->second.size();
}

const std::vector<std::size_t>& GradedSpace::positions(int degree) const
{
    static const std::vector<std::size_t> none;
    auto it = index_.find(degree);
    return it == index_.end() ? none : it->second;
}

std::vector<int> GradedSpace::degrees() const
{
    std::vector<int> out;
    for (auto& [d, v] : index_)
        out.push_back(d);
    return out;
}

int GradedSpace::bottom() const
{
    if (index_.empty())
        throw InputError("bottom degree of the zero space");
    return index_.begin()->first;
}

int GradedSpace::top() const
{
    if (index_.empty())
        throw InputError("top degree of the zero space");
    return index_.rbegin()->first;
}

PoincareSeries GradedSpace::poincare() const
{
    PoincareSeries s;
    for (auto& [d, v] : index_)
        s.emplace_back(d, v.size());
    return s;
}

GradedSpace shift(const GradedSpace& m, int n)
{
    auto b = m.basis();
    for (auto& e : b)
        e.degree -= n;
    return GradedSpace(m.p(), std::move(b));
}

GradedSpace dual(const GradedSpace& m)
{
    auto b = m.basis();
    for (auto& e : b)
        e.degree = -e.degree;
    return GradedSpace(m.p(), std::move(b));
}

GradedSpace tensor(const GradedSpace& m, const GradedSpace& n)
{
    if (m.p() != n.p())
        throw InputError("tensor: characteristic mismatch");
    std::vector<BasisElement> b;
    b.reserve(m.dim() * n.dim());
    for (auto& x : m.basis())
        for (auto& y : n.basis())
            b.push_back({Label::pair(x.label, y.label), x.degree + y.degree});
    return GradedSpace(m.p(), std::move(b));
}

GradedSpace direct_sum(const GradedSpace& m, const GradedSpace& n)
{
    std::vector<BasisElement> b;
    for (auto& x : m.basis())
        b.push_back({Label::pair(Label{{0}}, x.label), x.degree});
    for (auto& y : n.basis())
        b.push_back({Label::pair(Label{{1}}, y.label), y.degree});
    return GradedSpace(m.p(), std::move(b));
}

}  // namespace gammaext
