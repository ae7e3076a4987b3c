#pragma once

#include "hhm/prime_field.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace hhm {

using Vec = std::vector<Elem>;

/// Accumulates F_p linear combinations in 64-bit lanes and reduces only when the
/// field's lazy budget is exhausted.
class LazyRow {
public:
    LazyRow(const PrimeField& field, std::size_t n) : field_(field), acc_(n, 0) {}

    std::size_t size() const noexcept { return acc_.size(); }
    void clear() noexcept;
    void add(std::size_t i, Elem v) noexcept { acc_[i] += v; }
    /// acc[begin..] += a * x[begin..]
    void axpy(Elem a, std::span<const Elem> x, std::size_t begin = 0) noexcept;
    Elem get(std::size_t i) const noexcept { return field_.reduce(acc_[i]); }
    void normalize() noexcept;
    Vec finish() const;

private:
    void charge() noexcept {
        if (used_ >= field_.lazy_budget()) normalize();
        ++used_;
    }

    PrimeField field_;
    std::vector<std::uint64_t> acc_;
    std::uint64_t used_ = 0;
};

/// Dense row-major matrix over F_p.
class Matrix {
public:
    Matrix() = default;
    Matrix(PrimeField field, std::size_t rows, std::size_t cols);

    static Matrix identity(PrimeField field, std::size_t n);
    static Matrix from_ints(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows);
    static Matrix from_rows(PrimeField field, std::size_t cols, const std::vector<Vec>& rows);
    static Matrix from_columns(PrimeField field, std::size_t rows, const std::vector<Vec>& cols);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

    std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<Elem> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    Vec column(std::size_t c) const;
    const std::vector<Elem>& data() const noexcept { return data_; }

    Matrix transpose() const;
    Vec apply(std::span<const Elem> v) const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(Elem a) const;

    bool is_zero() const noexcept;
    bool is_identity() const noexcept;

    std::vector<std::vector<std::int64_t>> to_ints() const;

    friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    PrimeField field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

namespace vec {

Vec unit(std::size_t n, std::size_t i);
bool is_zero(std::span<const Elem> v) noexcept;
Vec add(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b);
Vec sub(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b);
Vec scale(const PrimeField& f, Elem a, std::span<const Elem> v);
/// y += a * x
void axpy(const PrimeField& f, std::span<Elem> y, Elem a, std::span<const Elem> x);
Elem dot(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b);
/// Coordinates of a (x) b in the lexicographic basis e_i (x) e_j -> i * |b| + j.
Vec kron(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b);
Vec from_ints(const PrimeField& f, const std::vector<std::int64_t>& v);
std::vector<std::int64_t> to_ints(std::span<const Elem> v);

} // namespace vec

} // namespace hhm
