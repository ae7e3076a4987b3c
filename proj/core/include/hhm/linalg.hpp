#pragma once

#include "hhm/matrix.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hhm {

class Subspace;

/// Incremental Gaussian elimination: rows are streamed in and kept in echelon form,
/// `finish()` produces the reduced row-echelon basis of their span.
///
/// Over F_2 rows are bit-packed; otherwise entries are accumulated lazily in 64 bits.
/// Both paths produce identical results.
class RowReducer {
public:
    RowReducer(PrimeField field, std::size_t cols);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t rank() const noexcept { return pivot_cols_.size(); }
    bool packed() const noexcept { return packed_; }

    /// Returns true iff `row` was independent of the rows inserted so far.
    bool insert(std::span<const Elem> row);

    /// Reduced row-echelon basis, rows sorted by pivot column.
    Subspace finish() &&;

    /// Bytes needed to hold `rank` rows of `cols` entries.
    static std::size_t storage_bytes(const PrimeField& field, std::size_t rank, std::size_t cols) noexcept;

private:
    bool insert_dense(std::span<const Elem> row);
    bool insert_packed(std::span<const Elem> row);
    void back_substitute_dense();
    void back_substitute_packed();

    PrimeField field_;
    std::size_t cols_;
    bool packed_;
    std::size_t words_ = 0;
    std::vector<std::int64_t> pivot_row_;     // column -> row index or -1
    std::vector<std::size_t> pivot_cols_;     // row index -> pivot column
    std::vector<Elem> dense_;                 // rank x cols
    std::vector<std::uint64_t> bits_;         // rank x words
    std::vector<std::uint64_t> work_;
};

/// A subspace of F_p^n stored as its reduced row-echelon basis.
class Subspace {
public:
    Subspace() = default;
    /// The zero subspace of F_p^ambient.
    Subspace(PrimeField field, std::size_t ambient);

    /// Trusts that `basis` is in RREF with the given pivots.
    static Subspace from_rref(Matrix basis, std::vector<std::size_t> pivots);
    static Subspace span(PrimeField field, std::size_t ambient, const std::vector<Vec>& vectors);
    static Subspace full(PrimeField field, std::size_t ambient);

    const PrimeField& field() const noexcept { return basis_.field(); }
    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return pivots_.size(); }
    const Matrix& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    std::vector<std::size_t> free_columns() const;

    /// v minus its component along the basis; zero iff v lies in the subspace.
    Vec reduce(std::span<const Elem> v) const;
    bool contains(std::span<const Elem> v) const;
    /// Coefficients c with v = sum c_i basis_i, or nullopt when v is outside.
    std::optional<Vec> coordinates(std::span<const Elem> v) const;
    bool contains(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b) noexcept {
        return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_ = 0;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

/// F_p^n / sub with the non-pivot standard coordinates as transversal.
struct QuotientPresentation {
    std::size_t ambient_dim = 0;
    Subspace sub;
    std::vector<std::size_t> transversal_columns;
    Matrix transversal;  ///< rows complete `sub` to a basis
    Matrix projection;   ///< quotient_dim x ambient_dim, annihilates sub
    Matrix section;      ///< ambient_dim x quotient_dim, projection * section = I

    std::size_t dim() const noexcept { return transversal_columns.size(); }
    Vec project(std::span<const Elem> v) const;
    Vec lift(std::span<const Elem> q) const;
};

struct RrefResult {
    Matrix matrix;
    std::vector<std::size_t> pivots;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
Subspace kernel(const Matrix& m);
/// Null space of an RREF matrix with the given pivots and column count.
Subspace kernel_of_rref(const Matrix& r, const std::vector<std::size_t>& pivots);
/// Column space of m.
Subspace image(const Matrix& m);
/// RREF-canonical particular solution (free variables 0), or nullopt when inconsistent.
std::optional<Vec> solve(const Matrix& m, std::span<const Elem> b);
std::optional<Matrix> inverse(const Matrix& m);
QuotientPresentation quotient(const Subspace& sub);
Matrix kronecker(const Matrix& a, const Matrix& b);

} // namespace hhm
