#include "hhm/linalg.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace hhm {

namespace {

constexpr std::size_t kWordBits = 64;

std::uint64_t bits_above(unsigned b) noexcept {
    // all bits strictly above position b
    return ~((std::uint64_t{2} << b) - 1);
}

} // namespace

// ---------------------------------------------------------------------------------------------
// RowReducer

RowReducer::RowReducer(PrimeField field, std::size_t cols)
    : field_(field), cols_(cols), packed_(field.p() == 2), pivot_row_(cols, -1) {
    if (packed_) {
        words_ = (cols + kWordBits - 1) / kWordBits;
        work_.assign(words_, 0);
    } else {
        work_.assign(cols, 0);
    }
}

std::size_t RowReducer::storage_bytes(const PrimeField& field, std::size_t rank, std::size_t cols) noexcept {
    if (field.p() == 2) return rank * ((cols + kWordBits - 1) / kWordBits) * sizeof(std::uint64_t);
    return rank * cols * sizeof(Elem);
}

bool RowReducer::insert(std::span<const Elem> row) {
    if (row.size() != cols_) throw std::invalid_argument("RowReducer::insert: row length mismatch");
    if (rank() == cols_) return false;
    return packed_ ? insert_packed(row) : insert_dense(row);
}

bool RowReducer::insert_dense(std::span<const Elem> row) {
    const std::uint64_t p = field_.p();
    const std::uint64_t budget = field_.lazy_budget();
    std::uint64_t* w = work_.data();
    for (std::size_t k = 0; k < cols_; ++k) w[k] = row[k];
    std::uint64_t used = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
        const std::uint64_t v = w[j] % p;
        if (v == 0) continue;
        const std::int64_t r = pivot_row_[j];
        if (r < 0) {
            const Elem inv = field_.inv(static_cast<Elem>(v));
            const std::size_t base = dense_.size();
            dense_.resize(base + cols_, 0);
            Elem* out = dense_.data() + base;
            for (std::size_t k = j; k < cols_; ++k) out[k] = field_.mul(field_.reduce(w[k]), inv);
            pivot_row_[j] = static_cast<std::int64_t>(pivot_cols_.size());
            pivot_cols_.push_back(j);
            return true;
        }
        if (used >= budget) {
            for (std::size_t k = j + 1; k < cols_; ++k) w[k] %= p;
            used = 0;
        }
        ++used;
        const std::uint64_t f = p - v;
        const Elem* pr = dense_.data() + static_cast<std::size_t>(r) * cols_;
        for (std::size_t k = j + 1; k < cols_; ++k) w[k] += f * pr[k];
    }
    return false;
}

bool RowReducer::insert_packed(std::span<const Elem> row) {
    std::uint64_t* w = work_.data();
    std::fill(work_.begin(), work_.end(), 0);
    for (std::size_t k = 0; k < cols_; ++k)
        if (row[k] & 1u) w[k / kWordBits] |= std::uint64_t{1} << (k % kWordBits);
    for (std::size_t wi = 0; wi < words_; ++wi) {
        while (w[wi] != 0) {
            const std::size_t j = wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w[wi]));
            const std::int64_t r = pivot_row_[j];
            if (r < 0) {
                bits_.insert(bits_.end(), work_.begin(), work_.end());
                pivot_row_[j] = static_cast<std::int64_t>(pivot_cols_.size());
                pivot_cols_.push_back(j);
                return true;
            }
            const std::uint64_t* pr = bits_.data() + static_cast<std::size_t>(r) * words_;
            for (std::size_t k = wi; k < words_; ++k) w[k] ^= pr[k];
        }
    }
    return false;
}

void RowReducer::back_substitute_dense() {
    const std::uint64_t p = field_.p();
    const std::uint64_t budget = field_.lazy_budget();
    std::uint64_t* w = work_.data();
    for (std::size_t i = 0; i < rank(); ++i) {
        Elem* rowi = dense_.data() + i * cols_;
        const std::size_t pc = pivot_cols_[i];
        bool touched = false;
        for (std::size_t k = 0; k < cols_; ++k) w[k] = rowi[k];
        std::uint64_t used = 0;
        for (std::size_t j = pc + 1; j < cols_; ++j) {
            const std::int64_t r = pivot_row_[j];
            if (r < 0) continue;
            const std::uint64_t v = w[j] % p;
            w[j] = 0;
            if (v == 0) continue;
            touched = true;
            if (used >= budget) {
                for (std::size_t k = j + 1; k < cols_; ++k) w[k] %= p;
                used = 0;
            }
            ++used;
            const std::uint64_t f = p - v;
            const Elem* pr = dense_.data() + static_cast<std::size_t>(r) * cols_;
            for (std::size_t k = j + 1; k < cols_; ++k) w[k] += f * pr[k];
        }
        if (touched)
            for (std::size_t k = pc; k < cols_; ++k) rowi[k] = static_cast<Elem>(w[k] % p);
    }
}

void RowReducer::back_substitute_packed() {
    for (std::size_t i = 0; i < rank(); ++i) {
        std::uint64_t* rowi = bits_.data() + i * words_;
        const std::size_t pc = pivot_cols_[i];
        for (std::size_t wi = pc / kWordBits; wi < words_; ++wi) {
            std::uint64_t pending = rowi[wi];
            if (wi == pc / kWordBits) pending &= bits_above(static_cast<unsigned>(pc % kWordBits));
            while (pending != 0) {
                const auto b = static_cast<unsigned>(std::countr_zero(pending));
                const std::size_t j = wi * kWordBits + b;
                const std::int64_t r = pivot_row_[j];
                if (r >= 0) {
                    const std::uint64_t* pr = bits_.data() + static_cast<std::size_t>(r) * words_;
                    for (std::size_t k = wi; k < words_; ++k) rowi[k] ^= pr[k];
                }
                pending = rowi[wi] & bits_above(b);
            }
        }
    }
}

Subspace RowReducer::finish() && {
    if (packed_) back_substitute_packed();
    else back_substitute_dense();

    std::vector<std::size_t> order(rank());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pivot_cols_[a] < pivot_cols_[b]; });

    Matrix basis(field_, rank(), cols_);
    std::vector<std::size_t> pivots(rank());
    for (std::size_t out = 0; out < order.size(); ++out) {
        const std::size_t i = order[out];
        pivots[out] = pivot_cols_[i];
        auto dst = basis.row(out);
        if (packed_) {
            const std::uint64_t* src = bits_.data() + i * words_;
            for (std::size_t k = 0; k < cols_; ++k)
                dst[k] = static_cast<Elem>((src[k / kWordBits] >> (k % kWordBits)) & 1u);
        } else {
            const Elem* src = dense_.data() + i * cols_;
            std::copy(src, src + cols_, dst.begin());
        }
    }
    return Subspace::from_rref(std::move(basis), std::move(pivots));
}

// ---------------------------------------------------------------------------------------------
// Subspace

Subspace::Subspace(PrimeField field, std::size_t ambient) : ambient_(ambient), basis_(field, 0, ambient) {}

Subspace Subspace::from_rref(Matrix basis, std::vector<std::size_t> pivots) {
    if (basis.rows() != pivots.size()) throw std::invalid_argument("Subspace::from_rref: pivot count mismatch");
    Subspace s;
    s.ambient_ = basis.cols();
    s.basis_ = std::move(basis);
    s.pivots_ = std::move(pivots);
    return s;
}

Subspace Subspace::span(PrimeField field, std::size_t ambient, const std::vector<Vec>& vectors) {
    RowReducer reducer(field, ambient);
    for (const auto& v : vectors) reducer.insert(v);
    return std::move(reducer).finish();
}

Subspace Subspace::full(PrimeField field, std::size_t ambient) {
    std::vector<std::size_t> pivots(ambient);
    std::iota(pivots.begin(), pivots.end(), 0);
    return from_rref(Matrix::identity(field, ambient), std::move(pivots));
}

std::vector<std::size_t> Subspace::free_columns() const {
    std::vector<std::size_t> out;
    out.reserve(ambient_ - dim());
    std::size_t next = 0;
    for (std::size_t c = 0; c < ambient_; ++c) {
        if (next < pivots_.size() && pivots_[next] == c) {
            ++next;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

Vec Subspace::reduce(std::span<const Elem> v) const {
    if (v.size() != ambient_) throw std::invalid_argument("Subspace::reduce: dimension mismatch");
    const PrimeField& f = field();
    LazyRow acc(f, ambient_);
    for (std::size_t k = 0; k < ambient_; ++k) acc.add(k, v[k]);
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const Elem c = v[pivots_[i]];
        if (c != 0) acc.axpy(f.neg(c), basis_.row(i), pivots_[i]);
    }
    return acc.finish();
}

bool Subspace::contains(std::span<const Elem> v) const { return vec::is_zero(reduce(v)); }

std::optional<Vec> Subspace::coordinates(std::span<const Elem> v) const {
    if (!contains(v)) return std::nullopt;
    Vec c(pivots_.size());
    for (std::size_t i = 0; i < pivots_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) return false;
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis().row(i))) return false;
    return true;
}

// ---------------------------------------------------------------------------------------------
// Quotients

Vec QuotientPresentation::project(std::span<const Elem> v) const {
    const Vec r = sub.reduce(v);
    Vec q(transversal_columns.size());
    for (std::size_t i = 0; i < transversal_columns.size(); ++i) q[i] = r[transversal_columns[i]];
    return q;
}

Vec QuotientPresentation::lift(std::span<const Elem> q) const {
    if (q.size() != transversal_columns.size()) throw std::invalid_argument("QuotientPresentation::lift: dimension mismatch");
    Vec v(ambient_dim, 0);
    for (std::size_t i = 0; i < q.size(); ++i) v[transversal_columns[i]] = q[i];
    return v;
}

QuotientPresentation quotient(const Subspace& sub) {
    const PrimeField& f = sub.field();
    QuotientPresentation qp;
    qp.ambient_dim = sub.ambient_dim();
    qp.sub = sub;
    qp.transversal_columns = sub.free_columns();
    const std::size_t n = sub.ambient_dim();
    const std::size_t q = qp.transversal_columns.size();
    qp.transversal = Matrix(f, q, n);
    qp.section = Matrix(f, n, q);
    qp.projection = Matrix(f, q, n);
    std::vector<std::int64_t> slot(n, -1);
    for (std::size_t i = 0; i < q; ++i) {
        const std::size_t c = qp.transversal_columns[i];
        slot[c] = static_cast<std::int64_t>(i);
        qp.transversal(i, c) = 1;
        qp.section(c, i) = 1;
        qp.projection(i, c) = 1;
    }
    // e_{pivot_i} reduces to -(row_i restricted to the free columns)
    for (std::size_t i = 0; i < sub.dim(); ++i) {
        const std::size_t pc = sub.pivots()[i];
        const auto row = sub.basis().row(i);
        for (std::size_t c = 0; c < n; ++c) {
            if (slot[c] < 0 || row[c] == 0) continue;
            qp.projection(static_cast<std::size_t>(slot[c]), pc) = f.neg(row[c]);
        }
    }
    return qp;
}

// ---------------------------------------------------------------------------------------------
// Whole-matrix operations

RrefResult rref(const Matrix& m) {
    RowReducer reducer(m.field(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) reducer.insert(m.row(r));
    Subspace s = std::move(reducer).finish();
    Matrix out(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const auto src = s.basis().row(i);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return {std::move(out), s.pivots()};
}

std::size_t rank(const Matrix& m) {
    RowReducer reducer(m.field(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) reducer.insert(m.row(r));
    return reducer.rank();
}

Subspace kernel_of_rref(const Matrix& r, const std::vector<std::size_t>& pivots) {
    const PrimeField& f = r.field();
    const std::size_t n = r.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    RowReducer reducer(f, n);
    Vec v(n);
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::fill(v.begin(), v.end(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(r(i, free));
        reducer.insert(v);
    }
    return std::move(reducer).finish();
}

Subspace kernel(const Matrix& m) {
    auto [r, pivots] = rref(m);
    return kernel_of_rref(r, pivots);
}

Subspace image(const Matrix& m) {
    RowReducer reducer(m.field(), m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) reducer.insert(m.column(c));
    return std::move(reducer).finish();
}

std::optional<Vec> solve(const Matrix& m, std::span<const Elem> b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
    const std::size_t n = m.cols();
    Matrix aug(m.field(), m.rows(), n + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto src = m.row(r);
        std::copy(src.begin(), src.end(), aug.row(r).begin());
        aug(r, n) = b[r];
    }
    RowReducer reducer(m.field(), n + 1);
    for (std::size_t r = 0; r < aug.rows(); ++r) reducer.insert(aug.row(r));
    const Subspace s = std::move(reducer).finish();
    Vec x(n, 0);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const std::size_t pc = s.pivots()[i];
        if (pc == n) return std::nullopt;
        x[pc] = s.basis()(i, n);
    }
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    RowReducer reducer(m.field(), 2 * n);
    Vec row(2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        std::fill(row.begin(), row.end(), 0);
        const auto src = m.row(r);
        std::copy(src.begin(), src.end(), row.begin());
        row[n + r] = 1;
        reducer.insert(row);
    }
    const Subspace s = std::move(reducer).finish();
    if (s.dim() != n) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        if (s.pivots()[i] != i) return std::nullopt;
    Matrix inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = s.basis()(i, n + j);
    return inv;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    const PrimeField& f = a.field();
    Matrix out(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Elem x = a(i, j);
            if (x == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = f.mul(x, b(k, l));
        }
    return out;
}

} // namespace hhm
