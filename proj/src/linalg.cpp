#include "gammaext/linalg.hpp"

#include <algorithm>

#include "gammaext/errors.hpp"

namespace gammaext {

bool is_prime(int p)
{
    if (p < 2)
        return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0)
            return false;
    return true;
}

Field::Field(int p) : p_(p)
{
    if (p != 2 && p != 3 && (!is_prime(p) || p > 251))
        throw InputError("characteristic must be a prime below 256, got " + std::to_string(p));
}

Scalar Field::inv(Scalar a) const
{
    if (a == 0)
        throw InvariantError("inverse of zero in F_p");
    int result = 1, base = a, e = p_ - 2;
    while (e > 0) {
        if (e & 1)
            result = result * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return Scalar(result);
}

Scalar Field::from_int(long long v) const
{
    long long r = v % p_;
    if (r < 0)
        r += p_;
    return Scalar(r);
}

void Field::axpy(Scalar* dst, const Scalar* src, Scalar factor, std::size_t n) const
{
    if (factor == 0)
        return;
    if (p_ == 2) {
        for (std::size_t i = 0; i < n; ++i)
            dst[i] ^= src[i];
        return;
    }
    const unsigned p = unsigned(p_);
    const unsigned f = factor;
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = Scalar((dst[i] + f * src[i]) % p);
}

void Field::scale(Scalar* dst, Scalar factor, std::size_t n) const
{
    if (factor == 1)
        return;
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = mul(dst[i], factor);
}

Matrix::Matrix(int p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0)
{
}

Matrix Matrix::identity(int p, std::size_t n)
{
    Matrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(int p, const std::vector<std::vector<int>>& rows)
{
    Field f(p);
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(p, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c)
            throw InputError("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j)
            m.at(i, j) = f.from_int(rows[i][j]);
    }
    return m;
}

Vec Matrix::column(std::size_t c) const
{
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = at(r, c);
    return v;
}

void Matrix::set_column(std::size_t c, std::span<const Scalar> v)
{
    for (std::size_t r = 0; r < rows_; ++r)
        at(r, c) = v[r];
}

void Matrix::append_row(std::span<const Scalar> v)
{
    if (rows_ == 0 && cols_ == 0)
        cols_ = v.size();
    if (v.size() != cols_)
        throw InputError("append_row: length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
}

bool Matrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s == 0; });
}

static void check_char(const Matrix& a, const Matrix& b)
{
    if (a.p() != b.p())
        throw InputError("characteristic mismatch");
}

Matrix multiply(const Matrix& a, const Matrix& b)
{
    check_char(a, b);
    if (a.cols() != b.rows())
        throw InputError("multiply: dimension mismatch");
    Field f(a.p());
    Matrix c(a.p(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            f.axpy(c.row(i), b.row(k), a.at(i, k), b.cols());
    return c;
}

Vec apply(const Matrix& m, std::span<const Scalar> x)
{
    if (x.size() != m.cols())
        throw InputError("apply: dimension mismatch");
    Field f(m.p());
    Vec y(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        unsigned acc = 0;
        const Scalar* r = m.row(i);
        for (std::size_t j = 0; j < m.cols(); ++j)
            acc += unsigned(r[j]) * x[j];
        y[i] = Scalar(acc % unsigned(m.p()));
    }
    return y;
}

Matrix transpose(const Matrix& m)
{
    Matrix t(m.p(), m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            t.at(j, i) = m.at(i, j);
    return t;
}

Matrix add(const Matrix& a, const Matrix& b)
{
    check_char(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InputError("add: shape mismatch");
    Field f(a.p());
    Matrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        f.axpy(c.row(i), b.row(i), 1, a.cols());
    return c;
}

Matrix kron(const Matrix& a, const Matrix& b)
{
    check_char(a, b);
    Field f(a.p());
    Matrix c(a.p(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Scalar s = a.at(i, j);
            if (s == 0)
                continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c.at(i * b.rows() + k, j * b.cols() + l) = f.mul(s, b.at(k, l));
        }
    return c;
}

Matrix dsum(const Matrix& a, const Matrix& b)
{
    check_char(a, b);
    Matrix c(a.p(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            c.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return c;
}

Echelon echelon(Matrix m)
{
    Field f(m.p());
    Echelon e;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m.at(piv, c) == 0)
            ++piv;
        if (piv == rows)
            continue;
        if (piv != r)
            std::swap_ranges(m.row(piv), m.row(piv) + cols, m.row(r));
        f.scale(m.row(r) + c, f.inv(m.at(r, c)), cols - c);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c) == 0)
                continue;
            f.axpy(m.row(i) + c, m.row(r) + c, f.neg(m.at(i, c)), cols - c);
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.reduced = std::move(m);
    return e;
}

Matrix kernel_rows(const Matrix& m)
{
    Echelon e = echelon(m);
    Field f(m.p());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    Matrix k(m.p(), 0, m.cols());
    Vec v(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c])
            continue;
        std::fill(v.begin(), v.end(), 0);
        v[c] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = f.neg(e.reduced.at(i, c));
        k.append_row(v);
    }
    return k;
}

RowReduction rref(const Matrix& m)
{
    RowReduction out;
    Echelon e = echelon(m);
    out.rank = e.rank();
    out.kernel_basis = transpose(kernel_rows(m));
    if (out.kernel_basis.rows() == 0)
        out.kernel_basis = Matrix(m.p(), m.cols(), 0);
    out.image_basis = Matrix(m.p(), m.rows(), e.rank());
    for (std::size_t i = 0; i < e.rank(); ++i)
        out.image_basis.set_column(i, m.column(e.pivots[i]));
    return out;
}

std::size_t rank(const Matrix& m)
{
    return echelon(m).rank();
}

std::optional<Vec> solve(const Matrix& m, std::span<const Scalar> b)
{
    if (b.size() != m.rows())
        throw InputError("solve: right-hand side has wrong length");
    Matrix aug(m.p(), m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::copy(m.row(i), m.row(i) + m.cols(), aug.row(i));
        aug.at(i, m.cols()) = b[i];
    }
    Echelon e = echelon(std::move(aug));
    Vec x(m.cols(), 0);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == m.cols())
            return std::nullopt;
        x[e.pivots[i]] = e.reduced.at(i, m.cols());
    }
    return x;
}

Vec SubspaceBasis::reduce(Vec v) const
{
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Scalar c = v[pivots_[i]];
        if (c != 0)
            field_.axpy(v.data(), rows_[i].data(), field_.neg(c), dim_);
    }
    return v;
}

bool SubspaceBasis::contains(Vec v) const
{
    v = reduce(std::move(v));
    return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

bool SubspaceBasis::insert(Vec v)
{
    if (v.size() != dim_)
        throw InputError("SubspaceBasis: vector length mismatch");
    v = reduce(std::move(v));
    auto it = std::find_if(v.begin(), v.end(), [](Scalar s) { return s != 0; });
    if (it == v.end())
        return false;
    std::size_t piv = std::size_t(it - v.begin());
    field_.scale(v.data(), field_.inv(v[piv]), dim_);
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
}

Quotient::Quotient(int p, std::size_t ambient_dim, const Matrix& relations)
    : field_(p), ambient_(ambient_dim)
{
    if (relations.rows() > 0 && relations.cols() != ambient_dim)
        throw InputError("Quotient: relation width mismatch");
    Matrix rel = relations.rows() > 0 ? relations : Matrix(p, 0, ambient_dim);
    ech_ = echelon(rel);
    std::vector<bool> is_pivot(ambient_dim, false);
    for (auto c : ech_.pivots)
        is_pivot[c] = true;
    free_index_.assign(ambient_dim, -1);
    for (std::size_t c = 0; c < ambient_dim; ++c)
        if (!is_pivot[c]) {
            free_index_[c] = long(free_cols_.size());
            free_cols_.push_back(c);
        }
}

Vec Quotient::project(Vec v) const
{
    for (std::size_t i = 0; i < ech_.pivots.size(); ++i) {
        Scalar c = v[ech_.pivots[i]];
        if (c != 0)
            field_.axpy(v.data(), ech_.reduced.row(i), field_.neg(c), ambient_);
    }
    Vec q(free_cols_.size());
    for (std::size_t i = 0; i < free_cols_.size(); ++i)
        q[i] = v[free_cols_[i]];
    return q;
}

}  // namespace gammaext
