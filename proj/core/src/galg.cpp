#include "hhm/galg.hpp"

#include "hhm/error.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace hhm {

Algebra::Algebra(PrimeField field, std::size_t dim, std::vector<Elem> constants, Vec unit)
    : field_(field), dim_(dim), structure_(std::move(constants)), unit_(std::move(unit)) {
    if (structure_.size() != dim_ * dim_ * dim_)
        throw ValidationError("structure constants must have dim^3 entries");
    if (unit_.size() != dim_) throw ValidationError("unit vector has wrong length");
    for (Elem& c : structure_) c = field_.reduce(c);
    for (Elem& c : unit_) c = field_.reduce(c);

    terms_.resize(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k)
                if (Elem c = structure(i, j, k)) terms_[i * dim_ + j].push_back({k, c});

    left_.assign(dim_, Matrix(field_, dim_, dim_));
    right_.assign(dim_, Matrix(field_, dim_, dim_));
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            for (const Term& t : product_terms(i, j)) {
                left_[i](t.index, j) = t.coeff;
                right_[j](t.index, i) = t.coeff;
            }
}

Algebra Algebra::ground_field(PrimeField field) { return Algebra(field, 1, {1}, {1}); }

Algebra Algebra::matrix_ring(PrimeField field, std::size_t n) {
    const std::size_t d = n * n;
    std::vector<Elem> c(d * d * d, 0);
    Vec unit(d, 0);
    for (std::size_t i = 0; i < n; ++i) {
        unit[i * n + i] = 1;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                c[((i * n + j) * d + (j * n + l)) * d + (i * n + l)] = 1;
    }
    return Algebra(field, d, std::move(c), std::move(unit));
}

Algebra Algebra::truncated_polynomial(PrimeField field, std::size_t m) {
    std::vector<Elem> c(m * m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; i + j < m; ++j) c[(i * m + j) * m + i + j] = 1;
    return Algebra(field, m, std::move(c), vec::unit(m, 0));
}

Vec Algebra::multiply(std::span<const Elem> a, std::span<const Elem> b) const {
    LazyRow acc(field_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (!b[j]) continue;
            const Elem ab = field_.mul(a[i], b[j]);
            acc.axpy(ab, product(i, j));
        }
    }
    return acc.finish();
}

Matrix Algebra::left_mult(std::span<const Elem> a) const {
    Matrix m(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        if (a[i]) m = m + left_[i].scaled(a[i]);
    return m;
}

Matrix Algebra::right_mult(std::span<const Elem> a) const {
    Matrix m(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        if (a[i]) m = m + right_[i].scaled(a[i]);
    return m;
}

void Algebra::validate() const {
    for (std::size_t i = 0; i < dim_; ++i) {
        const Vec e = vec::unit(dim_, i);
        if (multiply(unit_, e) != e || multiply(e, unit_) != e)
            throw ValidationError("unit law fails at basis element " + std::to_string(i));
    }
    // (e_i e_j) e_l = e_i (e_j e_l), compared column by column as R_l L_i = L_i R_l.
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t l = 0; l < dim_; ++l) {
            const Matrix lhs = right_[l] * left_[i];
            const Matrix rhs = left_[i] * right_[l];
            if (lhs == rhs) continue;
            for (std::size_t j = 0; j < dim_; ++j)
                if (lhs.column(j) != rhs.column(j)) {
                    std::ostringstream os;
                    os << "not associative at basis triple (" << i << ", " << j << ", " << l << ")";
                    throw ValidationError(os.str());
                }
        }
}

Subspace Algebra::center() const {
    Matrix m(field_, dim_ * dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        const Matrix diff = right_[i] - left_[i];
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) m(i * dim_ + r, c) = diff(r, c);
    }
    return kernel(m);
}

Algebra Algebra::restrict_to(std::span<const std::size_t> basis) const {
    const std::size_t d = basis.size();
    std::vector<std::int64_t> pos(dim_, -1);
    for (std::size_t a = 0; a < d; ++a) pos[basis[a]] = static_cast<std::int64_t>(a);
    std::vector<Elem> c(d * d * d, 0);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (const Term& t : product_terms(basis[a], basis[b])) {
                if (pos[t.index] < 0) throw ValidationError("basis subset is not closed under multiplication");
                c[(a * d + b) * d + static_cast<std::size_t>(pos[t.index])] = t.coeff;
            }
    Vec unit(d, 0);
    for (std::size_t k = 0; k < dim_; ++k) {
        if (!unit_[k]) continue;
        if (pos[k] < 0) throw ValidationError("basis subset does not contain the unit");
        unit[static_cast<std::size_t>(pos[k])] = unit_[k];
    }
    return Algebra(field_, d, std::move(c), std::move(unit));
}

GradedAlgebra::GradedAlgebra(AlgebraPtr algebra, GroupPtr group, Subgroup support, std::vector<std::size_t> grading,
                             std::vector<std::size_t> ambient_index, std::optional<Vec> canonical_form,
                             std::string name)
    : algebra_(std::move(algebra)),
      group_(std::move(group)),
      support_(std::move(support)),
      grading_(std::move(grading)),
      ambient_index_(std::move(ambient_index)),
      canonical_form_(std::move(canonical_form)),
      name_(std::move(name)) {
    if (grading_.size() != algebra_->dim()) throw ValidationError("grading length differs from algebra dimension");
    if (ambient_index_.empty()) {
        ambient_index_.resize(grading_.size());
        for (std::size_t i = 0; i < grading_.size(); ++i) ambient_index_[i] = i;
    }
    components_.assign(group_->order(), {});
    for (std::size_t i = 0; i < grading_.size(); ++i) {
        if (grading_[i] >= group_->order() || !support_.contains(grading_[i]))
            throw ValidationError("basis element " + std::to_string(i) + " graded outside the support");
        components_[grading_[i]].push_back(i);
    }
}

std::vector<std::size_t> GradedAlgebra::slice(std::span<const std::size_t> elements) const {
    std::vector<std::size_t> out;
    for (std::size_t x : elements) out.insert(out.end(), components_[x].begin(), components_[x].end());
    std::sort(out.begin(), out.end());
    return out;
}

void GradedAlgebra::validate() const {
    const Algebra& a = *algebra_;
    a.validate();
    for (std::size_t k = 0; k < a.dim(); ++k)
        if (a.unit()[k] && grading_[k] != group_->identity())
            throw ValidationError("unit is not homogeneous of degree 1");
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const std::size_t gh = group_->mul(grading_[i], grading_[j]);
            for (const Term& t : a.product_terms(i, j))
                if (grading_[t.index] != gh) {
                    std::ostringstream os;
                    os << "grading violated: product of basis elements " << i << " and " << j
                       << " leaves R_" << group_->label(gh);
                    throw ValidationError(os.str());
                }
        }
}

BaseAlgebra field_base(PrimeField field) { return {Algebra::ground_field(field), Vec{1}, "k"}; }

BaseAlgebra matrix_base(PrimeField field, std::size_t n) {
    Vec trace(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) trace[i * n + i] = 1;
    return {Algebra::matrix_ring(field, n), std::move(trace), "M" + std::to_string(n)};
}

GradedAlgebra group_algebra(const GroupPtr& group, PrimeField field) {
    const std::size_t n = group->order();
    std::vector<Elem> c(n * n * n, 0);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) c[(g * n + h) * n + group->mul(g, h)] = 1;
    auto alg = std::make_shared<const Algebra>(field, n, std::move(c), vec::unit(n, 0));
    std::vector<std::size_t> grading(n);
    for (std::size_t g = 0; g < n; ++g) grading[g] = g;
    return GradedAlgebra(std::move(alg), group, Subgroup::whole(group), std::move(grading), {}, vec::unit(n, 0),
                         "F" + std::to_string(field.p()) + "[" + group->name() + "]");
}

namespace {

bool is_unit(const Algebra& a, std::span<const Elem> x) {
    return inverse(a.left_mult(x)).has_value();
}

} // namespace

GradedAlgebra crossed_product(const GroupPtr& group, const BaseAlgebra& base, std::vector<Matrix> action,
                              std::vector<std::vector<Vec>> cocycle) {
    const Algebra& b = base.algebra;
    const PrimeField& f = b.field();
    const std::size_t n = group->order();
    const std::size_t d = b.dim();

    if (action.empty()) action.assign(n, Matrix::identity(f, d));
    if (cocycle.empty()) cocycle.assign(n, std::vector<Vec>(n, b.unit()));
    if (action.size() != n) throw ValidationError("action must list one matrix per group element");
    if (cocycle.size() != n) throw ValidationError("cocycle must have one row per group element");
    for (auto& row : cocycle) {
        if (row.size() != n) throw ValidationError("cocycle must have one entry per group element pair");
        for (Vec& v : row) {
            if (v.size() != d) throw ValidationError("cocycle value has wrong length");
            for (Elem& x : v) x = f.reduce(x);
        }
    }

    for (std::size_t g = 0; g < n; ++g) {
        const Matrix& m = action[g];
        if (m.rows() != d || m.cols() != d) throw ValidationError("action matrix has wrong shape");
        if (!inverse(m)) throw ValidationError("action of " + group->label(g) + " is not invertible");
        if (m.apply(b.unit()) != b.unit())
            throw ValidationError("action of " + group->label(g) + " does not fix the unit");
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const Vec lhs = m.apply(b.product(i, j));
                const Vec rhs = b.multiply(m.column(i), m.column(j));
                if (lhs != rhs)
                    throw ValidationError("action of " + group->label(g) + " is not an algebra automorphism");
            }
    }
    if (!action[0].is_identity()) throw ValidationError("action of the identity is not the identity");

    for (std::size_t g = 0; g < n; ++g) {
        if (cocycle[0][g] != b.unit() || cocycle[g][0] != b.unit())
            throw ValidationError("cocycle is not normalized at " + group->label(g));
        for (std::size_t h = 0; h < n; ++h)
            if (!is_unit(b, cocycle[g][h]))
                throw ValidationError("cocycle value at (" + group->label(g) + ", " + group->label(h) +
                                      ") is not a unit");
    }
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t l = 0; l < n; ++l) {
                const Vec lhs = b.multiply(action[g].apply(cocycle[h][l]), cocycle[g][group->mul(h, l)]);
                const Vec rhs = b.multiply(cocycle[g][h], cocycle[group->mul(g, h)][l]);
                if (lhs != rhs) {
                    std::ostringstream os;
                    os << "cocycle condition fails at (" << group->label(g) << ", " << group->label(h) << ", "
                       << group->label(l) << ")";
                    throw ValidationError(os.str());
                }
            }

    // (e_i (x) g)(e_j (x) h) = e_i alpha_g(e_j) tau(g,h) (x) gh; basis index g * d + i.
    const std::size_t dim = n * d;
    std::vector<Elem> c(dim * dim * dim, 0);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t gh = group->mul(g, h);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    const Vec v = b.multiply(b.multiply(vec::unit(d, i), action[g].column(j)), cocycle[g][h]);
                    for (std::size_t k = 0; k < d; ++k)
                        c[((g * d + i) * dim + (h * d + j)) * dim + gh * d + k] = v[k];
                }
        }
    Vec unit(dim, 0);
    std::copy(b.unit().begin(), b.unit().end(), unit.begin());
    Vec form(dim, 0);
    std::copy(base.form.begin(), base.form.end(), form.begin());
    std::vector<std::size_t> grading(dim);
    for (std::size_t k = 0; k < dim; ++k) grading[k] = k / d;

    auto alg = std::make_shared<const Algebra>(f, dim, std::move(c), std::move(unit));
    GradedAlgebra out(std::move(alg), group, Subgroup::whole(group), std::move(grading), {}, std::move(form),
                      base.name + "*" + group->name());
    out.validate();
    return out;
}

FullyGradedReport check_fully_graded(const GradedAlgebra& a) {
    FullyGradedReport report;
    const Algebra& alg = a.algebra();
    const FiniteGroup& g = *a.group();
    for (std::size_t x : a.support().elements())
        for (std::size_t y : a.support().elements()) {
            const std::size_t xy = g.mul(x, y);
            RowReducer r(alg.field(), alg.dim());
            for (std::size_t i : a.component(x))
                for (std::size_t j : a.component(y)) {
                    for (const Term& t : alg.product_terms(i, j))
                        if (a.degree(t.index) != xy) report.containment = false;
                    r.insert(alg.product(i, j));
                }
            if (r.rank() != a.component(xy).size()) report.failures.emplace_back(x, y);
        }
    return report;
}

GradedAlgebra component_subalgebra(const GradedAlgebra& a, const Subgroup& h) {
    if (h.parent() != a.group()) throw ValidationError("subgroup belongs to a different group");
    if (!h.is_subgroup_of(a.support())) throw ValidationError("subgroup is not contained in the support");
    const std::vector<std::size_t> basis = a.slice(h.elements());
    auto alg = std::make_shared<const Algebra>(a.algebra().restrict_to(basis));
    std::vector<std::size_t> grading(basis.size());
    std::vector<std::size_t> ambient(basis.size());
    std::optional<Vec> form;
    if (a.canonical_form()) form = Vec(basis.size(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        grading[i] = a.degree(basis[i]);
        ambient[i] = a.ambient_index()[basis[i]];
        if (form) (*form)[i] = (*a.canonical_form())[basis[i]];
    }
    return GradedAlgebra(std::move(alg), a.group(), h, std::move(grading), std::move(ambient), std::move(form),
                         a.name() + "|" + h.describe());
}

Matrix gram_matrix(const Algebra& a, std::span<const Elem> s) {
    Matrix m(a.field(), a.dim(), a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = vec::dot(a.field(), s, a.product(i, j));
    return m;
}

bool is_symmetrizing(const Algebra& a, std::span<const Elem> s) {
    const Matrix g = gram_matrix(a, s);
    if (g.transpose() != g) return false;
    return rank(g) == a.dim();
}

SymmetrizingForm symmetrizing_form(const GradedAlgebra& a, std::uint64_t seed) {
    const Algebra& alg = a.algebra();
    if (a.canonical_form() && is_symmetrizing(alg, *a.canonical_form())) return {*a.canonical_form(), true};

    // Symmetric functionals: s(e_i e_j - e_j e_i) = 0.
    const std::size_t d = alg.dim();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            Vec r = vec::sub(alg.field(), alg.product(i, j), alg.product(j, i));
            if (!vec::is_zero(r)) rows.push_back(std::move(r));
        }
    const Subspace sym = rows.empty() ? Subspace::full(alg.field(), d) : kernel(Matrix::from_rows(alg.field(), d, rows));
    for (std::size_t k = 0; k < sym.dim(); ++k) {
        const auto row = sym.basis().row(k);
        if (is_symmetrizing(alg, row)) return {Vec(row.begin(), row.end()), false};
    }
    if (sym.dim() > 0) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::uint32_t> coeff(0, alg.field().p() - 1);
        for (int attempt = 0; attempt < 64; ++attempt) {
            Vec s(d, 0);
            for (std::size_t k = 0; k < sym.dim(); ++k) vec::axpy(alg.field(), s, coeff(rng), sym.basis().row(k));
            if (is_symmetrizing(alg, s)) return {std::move(s), false};
        }
    }
    throw ValidationError("not symmetric (within search budget)");
}

namespace {

struct UnitSystem {
    std::vector<std::size_t> left;   // basis of R_g
    std::vector<std::size_t> right;  // basis of R_{g^-1}
    Matrix m;                        // column (i, j) = e_i e_j
};

UnitSystem unit_system(const GradedAlgebra& a, std::size_t g) {
    const Algebra& alg = a.algebra();
    UnitSystem s{a.component(g), a.component(a.group()->inv(g)), {}};
    s.m = Matrix(alg.field(), alg.dim(), s.left.size() * s.right.size());
    for (std::size_t i = 0; i < s.left.size(); ++i)
        for (std::size_t j = 0; j < s.right.size(); ++j)
            for (const Term& t : alg.product_terms(s.left[i], s.right[j]))
                s.m(t.index, i * s.right.size() + j) = t.coeff;
    return s;
}

UnitDecomposition repack(const GradedAlgebra& a, std::size_t g, const UnitSystem& s, const Vec& x) {
    const std::size_t d = a.dim();
    UnitDecomposition u;
    u.degree = g;
    for (std::size_t i = 0; i < s.left.size(); ++i) {
        Vec b(d, 0);
        for (std::size_t j = 0; j < s.right.size(); ++j) b[s.right[j]] = x[i * s.right.size() + j];
        if (vec::is_zero(b)) continue;
        u.pairs.emplace_back(vec::unit(d, s.left[i]), std::move(b));
    }
    return u;
}

} // namespace

UnitDecomposition unit_decomposition(const GradedAlgebra& a, std::size_t g) {
    const UnitSystem s = unit_system(a, g);
    const auto x = solve(s.m, a.algebra().unit());
    if (!x) throw ValidationError("no unit decomposition at " + a.group()->label(g) + ": algebra is not fully graded");
    return repack(a, g, s, *x);
}

std::optional<UnitDecomposition> alternative_unit_decomposition(const GradedAlgebra& a, std::size_t g) {
    const UnitSystem s = unit_system(a, g);
    const auto x = solve(s.m, a.algebra().unit());
    if (!x) throw ValidationError("no unit decomposition at " + a.group()->label(g) + ": algebra is not fully graded");
    const Subspace ker = kernel(s.m);
    if (ker.dim() == 0) return std::nullopt;
    const Vec y = vec::add(a.algebra().field(), *x, ker.basis().row(0));
    return repack(a, g, s, y);
}

bool verify_unit_decomposition(const GradedAlgebra& a, const UnitDecomposition& u) {
    const Algebra& alg = a.algebra();
    const std::size_t ginv = a.group()->inv(u.degree);
    Vec sum(alg.dim(), 0);
    for (const auto& [x, y] : u.pairs) {
        for (std::size_t k = 0; k < alg.dim(); ++k) {
            if (x[k] && a.degree(k) != u.degree) return false;
            if (y[k] && a.degree(k) != ginv) return false;
        }
        sum = vec::add(alg.field(), sum, alg.multiply(x, y));
    }
    return sum == alg.unit();
}

} // namespace hhm
