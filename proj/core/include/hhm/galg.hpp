#pragma once

#include "hhm/groups.hpp"
#include "hhm/linalg.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hhm {

/// Nonzero coordinate of a product of basis elements.
struct Term {
    std::size_t index;
    Elem coeff;
};

/// Finite-dimensional unital associative algebra given by structure constants:
/// e_i e_j = sum_k c[i][j][k] e_k.
class Algebra {
public:
    Algebra() = default;
    /// `structure` has dim^3 entries laid out as (i * dim + j) * dim + k.
    Algebra(PrimeField field, std::size_t dim, std::vector<Elem> structure, Vec unit);

    static Algebra ground_field(PrimeField field);
    /// M_n(k) with basis E_ij, row-major (index i * n + j).
    static Algebra matrix_ring(PrimeField field, std::size_t n);
    /// k[x]/(x^m) with basis 1, x, ..., x^(m-1).
    static Algebra truncated_polynomial(PrimeField field, std::size_t m);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t dim() const noexcept { return dim_; }
    const Vec& unit() const noexcept { return unit_; }

    Elem structure(std::size_t i, std::size_t j, std::size_t k) const noexcept {
        return structure_[(i * dim_ + j) * dim_ + k];
    }
    std::span<const Elem> product(std::size_t i, std::size_t j) const noexcept {
        return {structure_.data() + (i * dim_ + j) * dim_, dim_};
    }
    /// Sparse form of product(i, j).
    const std::vector<Term>& product_terms(std::size_t i, std::size_t j) const noexcept {
        return terms_[i * dim_ + j];
    }

    Vec multiply(std::span<const Elem> a, std::span<const Elem> b) const;
    /// Matrix of x -> e_i x (column j holds e_i e_j).
    const Matrix& left_mult(std::size_t i) const noexcept { return left_[i]; }
    /// Matrix of x -> x e_i.
    const Matrix& right_mult(std::size_t i) const noexcept { return right_[i]; }
    Matrix left_mult(std::span<const Elem> a) const;
    Matrix right_mult(std::span<const Elem> a) const;

    /// Throws ValidationError when associativity or the unit law fails.
    void validate() const;
    /// Z(A), solved from z e_i = e_i z for every basis element.
    Subspace center() const;
    /// The algebra spanned by a subset of the basis (must be closed and contain the unit).
    Algebra restrict_to(std::span<const std::size_t> basis) const;

    friend bool operator==(const Algebra& a, const Algebra& b) noexcept {
        return a.field_ == b.field_ && a.dim_ == b.dim_ && a.structure_ == b.structure_ && a.unit_ == b.unit_;
    }

private:
    PrimeField field_;
    std::size_t dim_ = 0;
    std::vector<Elem> structure_;
    Vec unit_;
    std::vector<std::vector<Term>> terms_;
    std::vector<Matrix> left_;
    std::vector<Matrix> right_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// A G-graded algebra whose basis is homogeneous, ordered group-element-major.
///
/// Component subalgebras R_H keep the parent group and record `support` = H together with
/// the positions of their basis vectors inside the ambient algebra R_G.
class GradedAlgebra {
public:
    GradedAlgebra(AlgebraPtr algebra, GroupPtr group, Subgroup support, std::vector<std::size_t> grading,
                  std::vector<std::size_t> ambient_index, std::optional<Vec> canonical_form, std::string name);

    const Algebra& algebra() const noexcept { return *algebra_; }
    const AlgebraPtr& algebra_ptr() const noexcept { return algebra_; }
    const GroupPtr& group() const noexcept { return group_; }
    const Subgroup& support() const noexcept { return support_; }
    const std::string& name() const noexcept { return name_; }
    std::size_t dim() const noexcept { return algebra_->dim(); }
    std::size_t degree(std::size_t basis_index) const noexcept { return grading_[basis_index]; }
    const std::vector<std::size_t>& grading() const noexcept { return grading_; }
    /// Basis indices of R_g (empty when g lies outside the support).
    const std::vector<std::size_t>& component(std::size_t g) const noexcept { return components_[g]; }
    /// Basis indices of R_X = sum over x in X of R_x, ascending.
    std::vector<std::size_t> slice(std::span<const std::size_t> elements) const;
    /// Position of each basis vector in the ambient R_G.
    const std::vector<std::size_t>& ambient_index() const noexcept { return ambient_index_; }
    /// s_1 o proj_{R_1} when the construction supplies one (group algebras, Example-type crossed products).
    const std::optional<Vec>& canonical_form() const noexcept { return canonical_form_; }

    /// Associativity, unit in R_1 and R_g R_h in R_gh for all basis pairs.
    void validate() const;

private:
    AlgebraPtr algebra_;
    GroupPtr group_;
    Subgroup support_;
    std::vector<std::size_t> grading_;
    std::vector<std::size_t> ambient_index_;
    std::vector<std::vector<std::size_t>> components_;
    std::optional<Vec> canonical_form_;
    std::string name_;
};

using GradedAlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// Base algebra for crossed products together with its symmetrizing form on R_1.
struct BaseAlgebra {
    Algebra algebra;
    Vec form;
    std::string name;
};

BaseAlgebra field_base(PrimeField field);
/// M_n(k) with the trace form.
BaseAlgebra matrix_base(PrimeField field, std::size_t n);

GradedAlgebra group_algebra(const GroupPtr& group, PrimeField field);

/// R = base (x) kG with (a (x) g)(b (x) h) = a alpha_g(b) tau(g,h) (x) gh.
/// `action[g]` is the matrix of alpha_g on the base basis (column j = alpha_g(e_j));
/// `cocycle[g][h]` is tau(g,h) in base coordinates. Empty inputs mean trivial action / cocycle.
GradedAlgebra crossed_product(const GroupPtr& group, const BaseAlgebra& base, std::vector<Matrix> action,
                              std::vector<std::vector<Vec>> cocycle);

struct FullyGradedReport {
    bool containment = true;
    std::vector<std::pair<std::size_t, std::size_t>> failures;  ///< (g, h) with R_g R_h != R_gh
    bool pass() const noexcept { return containment && failures.empty(); }
};

/// Checks R_g R_h = R_gh as subspaces for all g, h in the support.
FullyGradedReport check_fully_graded(const GradedAlgebra& a);

/// R_H = sum over h in H of R_h with the induced structure.
GradedAlgebra component_subalgebra(const GradedAlgebra& a, const Subgroup& h);

struct SymmetrizingForm {
    Vec functional;
    bool canonical = true;  ///< false when found by the fallback search
};

bool is_symmetrizing(const Algebra& a, std::span<const Elem> s);
/// Gram matrix G[i][j] = s(e_i e_j).
Matrix gram_matrix(const Algebra& a, std::span<const Elem> s);

/// Canonical s_1 o proj_{R_1}; otherwise searches the symmetric functionals (RREF basis
/// scan, then 64 seeded random combinations). Throws ValidationError when none is found.
SymmetrizingForm symmetrizing_form(const GradedAlgebra& a, std::uint64_t seed = 0);

struct UnitDecomposition {
    std::size_t degree = 0;
    std::vector<std::pair<Vec, Vec>> pairs;  ///< (a_i in R_g, b_i in R_{g^-1}), sum a_i b_i = 1
};

/// RREF-canonical solution of sum a_i b_i = 1 with a_i in R_g and b_i in R_{g^-1}.
UnitDecomposition unit_decomposition(const GradedAlgebra& a, std::size_t g);
/// A second decomposition (canonical solution plus the first kernel direction), if the
/// solution space has positive dimension.
std::optional<UnitDecomposition> alternative_unit_decomposition(const GradedAlgebra& a, std::size_t g);
bool verify_unit_decomposition(const GradedAlgebra& a, const UnitDecomposition& u);

} // namespace hhm
