#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gammaext {

using Scalar = std::uint8_t;
using Vec = std::vector<Scalar>;

/// Arithmetic in the prime field F_p, p < 256.
class Field {
public:
    explicit Field(int p);

    int p() const { return p_; }
    Scalar add(Scalar a, Scalar b) const { return reduce(int(a) + int(b)); }
    Scalar sub(Scalar a, Scalar b) const { return reduce(int(a) + p_ - int(b)); }
    Scalar mul(Scalar a, Scalar b) const { return reduce(int(a) * int(b)); }
    Scalar neg(Scalar a) const { return a == 0 ? 0 : Scalar(p_ - a); }
    Scalar inv(Scalar a) const;
    Scalar from_int(long long v) const;
    Scalar reduce(int v) const { return Scalar(v % p_); }

    /// dst += factor * src, entrywise.
    void axpy(Scalar* dst, const Scalar* src, Scalar factor, std::size_t n) const;
    void scale(Scalar* dst, Scalar factor, std::size_t n) const;

private:
    int p_;
};

bool is_prime(int p);

/// Dense row-major matrix over F_p.
class Matrix {
public:
    Matrix() = default;
    Matrix(int p, std::size_t rows, std::size_t cols);

    static Matrix identity(int p, std::size_t n);
    static Matrix from_rows(int p, const std::vector<std::vector<int>>& rows);

    int p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Scalar at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Scalar* row(std::size_t r) { return data_.data() + r * cols_; }
    const Scalar* row(std::size_t r) const { return data_.data() + r * cols_; }
    std::span<const Scalar> row_span(std::size_t r) const { return {row(r), cols_}; }

    Vec column(std::size_t c) const;
    void set_column(std::size_t c, std::span<const Scalar> v);
    void append_row(std::span<const Scalar> v);

    bool is_zero() const;
    bool operator==(const Matrix& o) const = default;

private:
    int p_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Vec apply(const Matrix& m, std::span<const Scalar> x);
Matrix transpose(const Matrix& m);
Matrix add(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix dsum(const Matrix& a, const Matrix& b);

/// Reduced row echelon form with leftmost-nonzero pivoting.
struct Echelon {
    Matrix reduced;                   // same shape as input, rows past rank are zero
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
    std::size_t rank() const { return pivots.size(); }
};

Echelon echelon(Matrix m);

struct RowReduction {
    std::size_t rank = 0;
    Matrix kernel_basis;  // cols x k, columns span ker(m)
    Matrix image_basis;   // rows x rank, columns span im(m)
};

RowReduction rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Rows spanning the right kernel {x : m x = 0}.
Matrix kernel_rows(const Matrix& m);

/// Some x with m x = b, or nullopt.
std::optional<Vec> solve(const Matrix& m, std::span<const Scalar> b);

/// Incrementally built basis of a subspace, kept in semi-echelon form.
class SubspaceBasis {
public:
    SubspaceBasis() = default;
    SubspaceBasis(int p, std::size_t dim) : field_(p), dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return rows_.size(); }

    /// Reduces v against the stored rows; returns true if v was independent (and stores it).
    bool insert(Vec v);
    bool contains(Vec v) const;
    Vec reduce(Vec v) const;

private:
    Field field_{2};
    std::size_t dim_ = 0;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

/// V / R for a subspace R given by spanning rows; quotient coordinates are the non-pivot columns.
class Quotient {
public:
    Quotient(int p, std::size_t ambient_dim, const Matrix& relations);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return free_cols_.size(); }
    /// Ambient coordinate represented by quotient basis vector i.
    std::size_t representative(std::size_t i) const { return free_cols_[i]; }
    Vec project(Vec v) const;

private:
    Field field_;
    std::size_t ambient_;
    Echelon ech_;
    std::vector<std::size_t> free_cols_;
    std::vector<long> free_index_;
};

}  // namespace gammaext
