#pragma once

#include "hhm/bimod.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hhm {

/// Upper bound on the bytes a single computation may allocate.
class MemoryBudget {
public:
    explicit MemoryBudget(std::size_t megabytes = 2048) : bytes_(megabytes << 20) {}
    std::size_t bytes() const noexcept { return bytes_; }
    /// Throws BudgetError when `need` exceeds the budget.
    void check(std::size_t need, const std::string& what) const;

private:
    std::size_t bytes_;
};

/// d^n with overflow detection (throws BudgetError).
std::size_t tuple_count(std::size_t d, std::size_t n);

/// Hom_k(A^{(x)n}, A) with the Hochschild differential. A cochain of degree n is a vector of
/// length d^n * d; entry t * d + c is the c-th coordinate of f(e_{a_1}, ..., e_{a_n}) where t
/// indexes the tuple lexicographically (a_1 most significant).
class CochainComplex {
public:
    explicit CochainComplex(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

    const Algebra& algebra() const noexcept { return *algebra_; }
    std::size_t dim(std::size_t n) const { return tuple_count(algebra_->dim(), n) * algebra_->dim(); }
    /// delta^n f
    Vec apply(std::size_t n, std::span<const Elem> f) const;
    /// Dense delta^n, dim(n+1) x dim(n).
    Matrix differential(std::size_t n, const MemoryBudget& budget = MemoryBudget()) const;
    /// Row (t, c) of delta^n written into `row` (length dim(n)); returns touched indices.
    void row(std::size_t n, std::size_t t, std::size_t c, Vec& row, std::vector<std::size_t>& touched) const;

private:
    AlgebraPtr algebra_;
};

/// Bar_n(A) = A^{(x)(n+2)} with d_n = sum_{i=0}^{n} (-1)^i (multiply factors i and i+1).
class BarComplex {
public:
    BarComplex(AlgebraPtr algebra, std::size_t max_degree, const MemoryBudget& budget = MemoryBudget());

    std::size_t max_degree() const noexcept { return max_degree_; }
    /// Free rank of Bar_n as an A-A bimodule.
    std::size_t rank(std::size_t n) const { return tuple_count(algebra_->dim(), n); }
    std::size_t dim(std::size_t n) const { return tuple_count(algebra_->dim(), n + 2); }
    /// d_n : Bar_n -> Bar_{n-1}, for 1 <= n <= max_degree.
    const Matrix& differential(std::size_t n) const { return differentials_.at(n - 1); }
    /// Multiplication Bar_0 -> A.
    const Matrix& augmentation() const noexcept { return augmentation_; }
    /// Bar_n with the outer actions.
    Bimodule module(std::size_t n) const;

private:
    AlgebraPtr algebra_;
    std::size_t max_degree_;
    std::vector<Matrix> differentials_;
    Matrix augmentation_;
};

/// HH^n(A) = ker delta^n / im delta^(n-1) with canonical representatives.
///
/// Classes are coordinatized by the non-pivot coordinates of the coboundary space: a cocycle
/// reduced modulo coboundaries is determined by those coordinates, and the representatives are
/// the reduced cocycles of an RREF basis of the resulting subspace.
class HHClasses {
public:
    HHClasses(AlgebraPtr algebra, std::size_t degree, const MemoryBudget& budget = MemoryBudget());

    const Algebra& algebra() const noexcept { return *algebra_; }
    const AlgebraPtr& algebra_ptr() const noexcept { return algebra_; }
    std::size_t degree() const noexcept { return degree_; }
    std::size_t dim() const noexcept { return classes_.dim(); }
    std::size_t cocycle_dim() const noexcept { return cocycle_dim_; }
    const Subspace& coboundaries() const noexcept { return coboundaries_; }
    const std::vector<Vec>& representatives() const noexcept { return representatives_; }

    bool is_cocycle(std::span<const Elem> f) const;
    /// Coordinates of the class of f; nullopt when f is not a cocycle.
    std::optional<Vec> try_class_of(std::span<const Elem> f) const;
    /// Like try_class_of but throws InternalError for non-cocycles.
    Vec class_of(std::span<const Elem> f) const;

private:
    AlgebraPtr algebra_;
    std::size_t degree_;
    std::size_t cocycle_dim_ = 0;
    Subspace coboundaries_;
    std::vector<std::size_t> free_;
    Subspace classes_;  ///< in the coordinates `free_`
    std::vector<Vec> representatives_;
};

HHClasses cohomology(const AlgebraPtr& algebra, std::size_t n, const MemoryBudget& budget = MemoryBudget());

enum class LiftMethod {
    Homotopy,  ///< contracting homotopy built from the left dual basis of M^*
    Solve,     ///< RREF-canonical solution of d_X x = rhs, one factorization per degree
};

struct TransferOptions {
    LiftMethod method = LiftMethod::Homotopy;
    /// Permutation of the free-cover generators used for the right dual basis.
    std::vector<std::size_t> generator_order;
};

struct TransferInvariants {
    bool dual_basis = false;        ///< m = sum m_i phi_i(m)
    bool casimir_central = false;   ///< a eta(1) = eta(1) a in M (x)_B M^*
    bool counit_balanced = false;   ///< eps(m b (x) f) = eps(m (x) b f)
    bool counit_bimodule = false;   ///< eps(a m (x) f a') = a eps(m (x) f) a'
    bool chain_map = false;         ///< d lift_n = lift_{n-1} d and the degree-0 augmentation square
    bool pass() const noexcept {
        return dual_basis && casimir_central && counit_balanced && counit_bimodule && chain_map;
    }
};

/// Everything needed to evaluate t_M : HH^*(B) -> HH^*(A) for an A-B bimodule M that is
/// projective on both sides, with symmetrizing forms s_A and s_B.
///
/// X_n = M (x) B^{(x)n} (x) M^* with coordinate index ((m * dB^n + t) * dM + f). The chain lift
/// of the unit A -> M (x)_B M^* is stored per free generator of Bar_n(A).
class TransferData {
public:
    TransferData(BimodulePtr m, Vec form_a, Vec form_b, std::size_t max_degree,
                 const MemoryBudget& budget = MemoryBudget(), TransferOptions options = {});

    const Bimodule& module() const noexcept { return *module_; }
    std::size_t max_degree() const noexcept { return max_degree_; }
    const DualBasis& dual_basis() const noexcept { return dual_basis_; }
    /// Functionals f_i = s_B o phi_i.
    const std::vector<Vec>& dual_functionals() const noexcept { return functionals_; }
    /// Casimir lift sum_i e_{g_i} (x) f_i in M (x)_k M^*, index m * dM + f.
    const Vec& casimir() const noexcept { return casimir_; }
    /// eps(e_m (x) e*_f) in A.
    const Vec& counit(std::size_t m, std::size_t f) const noexcept { return counit_[m * module_->dim() + f]; }
    std::size_t x_dim(std::size_t n) const;
    /// Lift of the free generator 1 (x) e_t (x) 1 of Bar_n(A), a vector in X_n.
    std::span<const Elem> lift(std::size_t n, std::size_t t) const;
    /// Dense d_X : X_n -> X_{n-1}.
    Matrix x_differential(std::size_t n) const;
    /// Image cochain in C^n(A) of a cochain zeta in C^n(B).
    Vec transfer_cochain(std::size_t n, std::span<const Elem> zeta) const;
    TransferInvariants check_invariants() const;

private:
    void build_counit(const Vec& form_a);
    void build_homotopy(const Vec& form_b);
    void lift_homotopy();
    void lift_solve();
    /// eta_{n-1}(d(1 (x) e_t (x) 1)) in X_{n-1}.
    Vec lift_boundary(std::size_t n, std::size_t t) const;
    void apply_x_differential(std::size_t n, std::span<const Elem> x, Vec& out) const;

    BimodulePtr module_;
    std::size_t max_degree_;
    MemoryBudget budget_;
    TransferOptions options_;
    DualBasis dual_basis_;
    std::vector<Vec> functionals_;
    Vec casimir_;
    std::vector<Vec> counit_;
    /// Per dual coordinate f: sum_j beta_j(e*_f) (x) f_j as (b, f', coeff) triples.
    std::vector<std::vector<std::tuple<std::size_t, std::size_t, Elem>>> homotopy_;
    std::vector<std::vector<Elem>> lifts_;  ///< lifts_[n] = rank(n) * x_dim(n) entries
};

/// Matrix of t_M on class coordinates, HH^n(B) -> HH^n(A).
Matrix transfer_matrix(const TransferData& data, const HHClasses& source, const HHClasses& target);

struct ComposeReport {
    bool pass = false;
    Matrix lhs;  ///< t_M * t_N'
    Matrix rhs;  ///< t_{M (x)_B N'}
};

/// t_M o t_N' = t_{M (x)_B N'} at degree n.
ComposeReport compose_check(const BimodulePtr& m, const BimodulePtr& n_prime, const Vec& form_a, const Vec& form_b,
                            const Vec& form_c, std::size_t n, const MemoryBudget& budget = MemoryBudget());

} // namespace hhm
