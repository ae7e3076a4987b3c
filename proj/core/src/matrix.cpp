#include "hhm/matrix.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace hhm {

void LazyRow::clear() noexcept {
    std::fill(acc_.begin(), acc_.end(), 0);
    used_ = 0;
}

void LazyRow::axpy(Elem a, std::span<const Elem> x, std::size_t begin) noexcept {
    if (a == 0) return;
    charge();
    const std::uint64_t f = a;
    std::uint64_t* acc = acc_.data();
    const Elem* src = x.data();
    const std::size_t n = x.size();
    for (std::size_t i = begin; i < n; ++i) acc[i] += f * src[i];
}

void LazyRow::normalize() noexcept {
    const std::uint64_t p = field_.p();
    for (auto& v : acc_) v %= p;
    used_ = 0;
}

Vec LazyRow::finish() const {
    Vec out(acc_.size());
    for (std::size_t i = 0; i < acc_.size(); ++i) out[i] = field_.reduce(acc_[i]);
    return out;
}

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_ints(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("Matrix::from_ints: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = field.from_int(rows[r][c]);
    }
    return m;
}

Matrix Matrix::from_rows(PrimeField field, std::size_t cols, const std::vector<Vec>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("Matrix::from_rows: length mismatch");
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

Matrix Matrix::from_columns(PrimeField field, std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(field, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw std::invalid_argument("Matrix::from_columns: length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Vec Matrix::column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vec Matrix::apply(std::span<const Elem> v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix::apply: dimension mismatch");
    Vec out(rows_, 0);
    const std::uint64_t p = field_.p();
    const std::uint64_t budget = field_.lazy_budget();
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        std::uint64_t used = 0;
        const Elem* a = data_.data() + r * cols_;
        for (std::size_t c = 0; c < cols_; ++c) {
            if (a[c] == 0 || v[c] == 0) continue;
            acc += static_cast<std::uint64_t>(a[c]) * v[c];
            if (++used >= budget) {
                acc %= p;
                used = 0;
            }
        }
        out[r] = static_cast<Elem>(acc % p);
    }
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_ || !(field_ == rhs.field_))
        throw std::invalid_argument("Matrix::operator*: dimension or field mismatch");
    Matrix out(field_, rows_, rhs.cols_);
    LazyRow acc(field_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        acc.clear();
        for (std::size_t k = 0; k < cols_; ++k) acc.axpy((*this)(i, k), rhs.row(k));
        const Vec r = acc.finish();
        std::copy(r.begin(), r.end(), out.row(i).begin());
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("Matrix::operator+: shape mismatch");
    Matrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], rhs.data_[i]);
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("Matrix::operator-: shape mismatch");
    Matrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.sub(data_[i], rhs.data_[i]);
    return out;
}

Matrix Matrix::scaled(Elem a) const {
    Matrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.mul(a, data_[i]);
    return out;
}

bool Matrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

bool Matrix::is_identity() const noexcept {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(r, c) != (r == c ? 1u : 0u)) return false;
    return true;
}

std::vector<std::vector<std::int64_t>> Matrix::to_ints() const {
    std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) os << ", ";
        os << '[';
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) os << ',';
            os << m(r, c);
        }
        os << ']';
    }
    return os << ']';
}

namespace vec {

Vec unit(std::size_t n, std::size_t i) {
    Vec v(n, 0);
    v.at(i) = 1;
    return v;
}

bool is_zero(std::span<const Elem> v) noexcept {
    return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

Vec add(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec::add: length mismatch");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
    return out;
}

Vec sub(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec::sub: length mismatch");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
    return out;
}

Vec scale(const PrimeField& f, Elem a, std::span<const Elem> v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.mul(a, v[i]);
    return out;
}

void axpy(const PrimeField& f, std::span<Elem> y, Elem a, std::span<const Elem> x) {
    if (y.size() != x.size()) throw std::invalid_argument("vec::axpy: length mismatch");
    if (a == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x[i] != 0) y[i] = f.add(y[i], f.mul(a, x[i]));
}

Elem dot(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec::dot: length mismatch");
    std::uint64_t acc = 0;
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0 || b[i] == 0) continue;
        acc += static_cast<std::uint64_t>(a[i]) * b[i];
        if (++used >= f.lazy_budget()) {
            acc = f.reduce(acc);
            used = 0;
        }
    }
    return f.reduce(acc);
}

Vec kron(const PrimeField& f, std::span<const Elem> a, std::span<const Elem> b) {
    Vec out(a.size() * b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = f.mul(a[i], b[j]);
    }
    return out;
}

Vec from_ints(const PrimeField& f, const std::vector<std::int64_t>& v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.from_int(v[i]);
    return out;
}

std::vector<std::int64_t> to_ints(std::span<const Elem> v) { return {v.begin(), v.end()}; }

} // namespace vec

} // namespace hhm
