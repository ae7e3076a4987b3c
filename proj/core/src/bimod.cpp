#include "hhm/bimod.hpp"

#include "hhm/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace hhm {

Bimodule::Bimodule(AlgebraPtr left, AlgebraPtr right, std::size_t dim, std::vector<Matrix> left_action,
                   std::vector<Matrix> right_action, std::vector<std::size_t> ambient, std::string name)
    : left_(std::move(left)),
      right_(std::move(right)),
      dim_(dim),
      left_action_(std::move(left_action)),
      right_action_(std::move(right_action)),
      ambient_(std::move(ambient)),
      name_(std::move(name)) {
    if (left_action_.size() != left_->dim() || right_action_.size() != right_->dim())
        throw ValidationError("bimodule: one action matrix per algebra basis element is required");
    for (const auto* acts : {&left_action_, &right_action_})
        for (const Matrix& m : *acts)
            if (m.rows() != dim_ || m.cols() != dim_) throw ValidationError("bimodule: action matrix has wrong shape");
}

Matrix Bimodule::left_action(std::span<const Elem> a) const {
    Matrix m(field(), dim_, dim_);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i]) m = m + left_action_[i].scaled(a[i]);
    return m;
}

Matrix Bimodule::right_action(std::span<const Elem> b) const {
    Matrix m(field(), dim_, dim_);
    for (std::size_t j = 0; j < b.size(); ++j)
        if (b[j]) m = m + right_action_[j].scaled(b[j]);
    return m;
}

void Bimodule::validate() const {
    const Algebra& a = *left_;
    const Algebra& b = *right_;
    if (!left_action(a.unit()).is_identity()) throw ValidationError("bimodule: left unit does not act as identity");
    if (!right_action(b.unit()).is_identity()) throw ValidationError("bimodule: right unit does not act as identity");
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (left_action_[i] * left_action_[j] != left_action(a.product(i, j)))
                throw ValidationError("bimodule: left action is not multiplicative");
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            if (right_action_[j] * right_action_[i] != right_action(b.product(i, j)))
                throw ValidationError("bimodule: right action is not multiplicative");
    for (const Matrix& l : left_action_)
        for (const Matrix& r : right_action_)
            if (l * r != r * l) throw ValidationError("bimodule: left and right actions do not commute");
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) noexcept { return a == b || *a == *b; }

bool is_bimodule_map(const Bimodule& source, const Bimodule& target, const Matrix& m) {
    if (!same_algebra(source.left_ptr(), target.left_ptr()) || !same_algebra(source.right_ptr(), target.right_ptr()))
        return false;
    if (m.rows() != target.dim() || m.cols() != source.dim()) return false;
    for (std::size_t i = 0; i < source.left_algebra().dim(); ++i)
        if (m * source.left_action(i) != target.left_action(i) * m) return false;
    for (std::size_t j = 0; j < source.right_algebra().dim(); ++j)
        if (m * source.right_action(j) != target.right_action(j) * m) return false;
    return true;
}

Bimodule regular(const AlgebraPtr& a) {
    std::vector<Matrix> l, r;
    for (std::size_t i = 0; i < a->dim(); ++i) {
        l.push_back(a->left_mult(i));
        r.push_back(a->right_mult(i));
    }
    return Bimodule(a, a, a->dim(), std::move(l), std::move(r), {}, "regular");
}

Bimodule truncation(const GradedAlgebra& ambient, const GradedAlgebra& left, std::span<const std::size_t> carrier,
                    const GradedAlgebra& right) {
    const Algebra& r = ambient.algebra();
    const std::vector<std::size_t> basis = ambient.slice(carrier);
    const std::size_t d = basis.size();
    std::vector<std::int64_t> pos(r.dim(), -1);
    for (std::size_t i = 0; i < d; ++i) pos[basis[i]] = static_cast<std::int64_t>(i);

    auto act = [&](const GradedAlgebra& alg, bool on_left) {
        std::vector<Matrix> out;
        for (std::size_t a = 0; a < alg.dim(); ++a) {
            const std::size_t x = alg.ambient_index()[a];
            Matrix m(r.field(), d, d);
            for (std::size_t c = 0; c < d; ++c) {
                const auto& terms = on_left ? r.product_terms(x, basis[c]) : r.product_terms(basis[c], x);
                for (const Term& t : terms) {
                    if (pos[t.index] < 0) throw ValidationError("truncation: carrier is not stable under the action");
                    m(static_cast<std::size_t>(pos[t.index]), c) = t.coeff;
                }
            }
            out.push_back(std::move(m));
        }
        return out;
    };
    return Bimodule(left.algebra_ptr(), right.algebra_ptr(), d, act(left, true), act(right, false), basis,
                    "R[" + std::to_string(carrier.size()) + "]");
}

Vec TensorPresentation::element(std::span<const Elem> m, std::span<const Elem> n) const {
    return quotient.project(vec::kron(quotient.sub.field(), m, n));
}

Vec TensorPresentation::basis_element(std::size_t i, std::size_t j) const {
    return quotient.projection.column(i * right_dim + j);
}

std::pair<std::size_t, std::size_t> TensorPresentation::basis_pair(std::size_t q) const {
    const std::size_t c = quotient.transversal_columns[q];
    return {c / right_dim, c % right_dim};
}

TensorProduct tensor_over(const Bimodule& m, const Bimodule& n) {
    if (!same_algebra(m.right_ptr(), n.left_ptr())) throw ValidationError("tensor_over: inner algebras differ");
    const PrimeField& f = m.field();
    const std::size_t dm = m.dim();
    const std::size_t dn = n.dim();
    const std::size_t amb = dm * dn;

    // m b (x) e_j - e_i (x) b n for basis triples.
    RowReducer rel(f, amb);
    Vec row(amb);
    for (std::size_t b = 0; b < m.right_algebra().dim(); ++b) {
        const Matrix& rb = m.right_action(b);
        const Matrix& lb = n.left_action(b);
        for (std::size_t i = 0; i < dm; ++i)
            for (std::size_t j = 0; j < dn; ++j) {
                std::fill(row.begin(), row.end(), 0);
                for (std::size_t k = 0; k < dm; ++k)
                    if (Elem c = rb(k, i)) row[k * dn + j] = c;
                for (std::size_t l = 0; l < dn; ++l)
                    if (Elem c = lb(l, j)) row[i * dn + l] = f.sub(row[i * dn + l], c);
                rel.insert(row);
            }
    }
    TensorPresentation pres{dm, dn, quotient(std::move(rel).finish())};
    const std::size_t q = pres.quotient.dim();

    auto induced = [&](const Matrix& on_m, const Matrix& on_n) {
        Matrix out(f, q, q);
        for (std::size_t col = 0; col < q; ++col) {
            const auto [i, j] = pres.basis_pair(col);
            Vec v(amb, 0);
            for (std::size_t k = 0; k < dm; ++k) {
                const Elem a = on_m(k, i);
                if (!a) continue;
                for (std::size_t l = 0; l < dn; ++l)
                    if (Elem b = on_n(l, j)) v[k * dn + l] = f.add(v[k * dn + l], f.mul(a, b));
            }
            const Vec img = pres.quotient.project(v);
            for (std::size_t r = 0; r < q; ++r) out(r, col) = img[r];
        }
        return out;
    };
    const Matrix id_m = Matrix::identity(f, dm);
    const Matrix id_n = Matrix::identity(f, dn);
    std::vector<Matrix> left, right;
    for (std::size_t a = 0; a < m.left_algebra().dim(); ++a) left.push_back(induced(m.left_action(a), id_n));
    for (std::size_t c = 0; c < n.right_algebra().dim(); ++c) right.push_back(induced(id_m, n.right_action(c)));
    Bimodule out(m.left_ptr(), n.right_ptr(), q, std::move(left), std::move(right), {},
                 m.name() + "(x)" + n.name());
    return {std::move(out), std::move(pres)};
}

Bimodule dual(const Bimodule& m) {
    std::vector<Matrix> left, right;
    for (std::size_t b = 0; b < m.right_algebra().dim(); ++b) left.push_back(m.right_action(b).transpose());
    for (std::size_t a = 0; a < m.left_algebra().dim(); ++a) right.push_back(m.left_action(a).transpose());
    return Bimodule(m.right_ptr(), m.left_ptr(), m.dim(), std::move(left), std::move(right), {}, m.name() + "^*");
}

Bimodule direct_sum(const Bimodule& x, const Bimodule& y) {
    if (!same_algebra(x.left_ptr(), y.left_ptr()) || !same_algebra(x.right_ptr(), y.right_ptr()))
        throw ValidationError("direct_sum: algebras differ");
    const std::size_t d = x.dim() + y.dim();
    auto block = [&](const Matrix& a, const Matrix& b) {
        Matrix out(x.field(), d, d);
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) out(x.dim() + r, x.dim() + c) = b(r, c);
        return out;
    };
    std::vector<Matrix> left, right;
    for (std::size_t a = 0; a < x.left_algebra().dim(); ++a) left.push_back(block(x.left_action(a), y.left_action(a)));
    for (std::size_t b = 0; b < x.right_algebra().dim(); ++b)
        right.push_back(block(x.right_action(b), y.right_action(b)));
    return Bimodule(x.left_ptr(), x.right_ptr(), d, std::move(left), std::move(right), {},
                    x.name() + "+" + y.name());
}

namespace {

/// Basis of {X : T_k X = X S_k for all k}, X of shape rows x cols.
std::vector<Matrix> intertwiners(const PrimeField& f, std::size_t rows, std::size_t cols,
                                 const std::vector<std::pair<const Matrix*, const Matrix*>>& pairs) {
    const std::size_t n = rows * cols;
    RowReducer red(f, n);
    Vec eq(n);
    for (const auto& [t, s] : pairs) {
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                if (red.rank() == n) break;
                std::fill(eq.begin(), eq.end(), 0);
                for (std::size_t k = 0; k < rows; ++k)
                    if (Elem v = (*t)(r, k)) eq[k * cols + c] = f.add(eq[k * cols + c], v);
                for (std::size_t k = 0; k < cols; ++k)
                    if (Elem v = (*s)(k, c)) eq[r * cols + k] = f.sub(eq[r * cols + k], v);
                if (!vec::is_zero(eq)) red.insert(eq);
            }
    }
    const Subspace eqs = std::move(red).finish();
    const Subspace sol = kernel_of_rref(eqs.basis(), eqs.pivots());
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < sol.dim(); ++k) {
        Matrix x(f, rows, cols);
        const auto v = sol.basis().row(k);
        std::copy(v.begin(), v.end(), x.row(0).data());
        out.push_back(std::move(x));
    }
    return out;
}

} // namespace

std::vector<Matrix> hom_space(const Bimodule& m, const Bimodule& n) {
    if (!same_algebra(m.left_ptr(), n.left_ptr()) || !same_algebra(m.right_ptr(), n.right_ptr()))
        throw ValidationError("hom_space: algebras differ");
    std::vector<std::pair<const Matrix*, const Matrix*>> pairs;
    for (std::size_t a = 0; a < m.left_algebra().dim(); ++a) pairs.emplace_back(&n.left_action(a), &m.left_action(a));
    for (std::size_t b = 0; b < m.right_algebra().dim(); ++b)
        pairs.emplace_back(&n.right_action(b), &m.right_action(b));
    return intertwiners(m.field(), n.dim(), m.dim(), pairs);
}

IsoResult find_isomorphism(const Bimodule& m, const Bimodule& n, std::uint64_t seed) {
    if (m.dim() != n.dim()) return {IsoVerdict::NotIsomorphic, std::nullopt, "dimensions differ"};
    const std::vector<Matrix> homs = hom_space(m, n);
    if (homs.empty()) return {IsoVerdict::NotIsomorphic, std::nullopt, "hom space is zero"};
    for (const Matrix& h : homs)
        if (inverse(h)) return {IsoVerdict::Isomorphic, h, "basis homomorphism is invertible"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> coeff(0, m.field().p() - 1);
    for (int attempt = 0; attempt < 128; ++attempt) {
        Matrix h(m.field(), n.dim(), m.dim());
        for (const Matrix& b : homs) h = h + b.scaled(coeff(rng));
        if (inverse(h)) return {IsoVerdict::Isomorphic, h, "random combination is invertible"};
    }
    return {IsoVerdict::Inconclusive, std::nullopt, "no invertible homomorphism found within budget"};
}

std::vector<Matrix> hom_to_algebra(const Bimodule& m, Side side) {
    const Algebra& alg = side == Side::Left ? m.left_algebra() : m.right_algebra();
    std::vector<Matrix> alg_act;
    std::vector<std::pair<const Matrix*, const Matrix*>> pairs;
    alg_act.reserve(alg.dim());
    for (std::size_t a = 0; a < alg.dim(); ++a) alg_act.push_back(side == Side::Left ? alg.left_mult(a) : alg.right_mult(a));
    for (std::size_t a = 0; a < alg.dim(); ++a)
        pairs.emplace_back(&alg_act[a], side == Side::Left ? &m.left_action(a) : &m.right_action(a));
    return intertwiners(m.field(), alg.dim(), m.dim(), pairs);
}

ProjectivityResult is_projective(const Bimodule& m, Side side, std::span<const std::size_t> generator_order) {
    const PrimeField& f = m.field();
    const std::size_t d = m.dim();
    std::vector<std::size_t> gens(d);
    if (generator_order.empty()) {
        std::iota(gens.begin(), gens.end(), 0);
    } else {
        if (generator_order.size() != d) throw ValidationError("is_projective: generator order has wrong length");
        gens.assign(generator_order.begin(), generator_order.end());
    }
    if (d == 0) return {true, DualBasis{side, {}, {}}};

    const std::vector<Matrix> homs = hom_to_algebra(m, side);
    const std::size_t r = homs.size();
    if (r == 0) return {false, std::nullopt};
    const Algebra& alg = side == Side::Left ? m.left_algebra() : m.right_algebra();

    // Unknown c[i][k] with sigma_i = sum_k c[i][k] psi_k; equation sum_i e_{g_i} sigma_i(e_m) = e_m
    // (right side) or sum_i sigma_i(e_m) e_{g_i} = e_m (left side), coordinates (m, out).
    Matrix sys(f, d * d, d * r);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t mm = 0; mm < d; ++mm) {
            const Vec w = homs[k].column(mm);
            for (std::size_t a = 0; a < alg.dim(); ++a) {
                if (!w[a]) continue;
                const Matrix& act = side == Side::Left ? m.left_action(a) : m.right_action(a);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t out = 0; out < d; ++out)
                        if (Elem v = act(out, gens[i]))
                            sys(mm * d + out, i * r + k) = f.add(sys(mm * d + out, i * r + k), f.mul(w[a], v));
            }
        }
    Vec rhs(d * d, 0);
    for (std::size_t mm = 0; mm < d; ++mm) rhs[mm * d + mm] = 1;
    const auto c = solve(sys, rhs);
    if (!c) return {false, std::nullopt};

    DualBasis db{side, {}, {}};
    for (std::size_t i = 0; i < d; ++i) {
        Matrix sigma(f, alg.dim(), d);
        for (std::size_t k = 0; k < r; ++k)
            if (Elem v = (*c)[i * r + k]) sigma = sigma + homs[k].scaled(v);
        if (sigma.is_zero()) continue;
        db.generators.push_back(gens[i]);
        db.maps.push_back(std::move(sigma));
    }
    return {true, std::move(db)};
}

bool verify_dual_basis(const Bimodule& m, const DualBasis& db) {
    const PrimeField& f = m.field();
    const std::size_t d = m.dim();
    const bool left = db.side == Side::Left;
    const Algebra& alg = left ? m.left_algebra() : m.right_algebra();
    Matrix sum(f, d, d);
    for (std::size_t i = 0; i < db.maps.size(); ++i) {
        const Matrix& s = db.maps[i];
        for (std::size_t a = 0; a < alg.dim(); ++a) {
            const Matrix& ma = left ? m.left_action(a) : m.right_action(a);
            const Matrix aa = left ? alg.left_mult(a) : alg.right_mult(a);
            if (s * ma != aa * s) return false;
        }
        for (std::size_t mm = 0; mm < d; ++mm) {
            const Vec w = s.column(mm);
            const Vec img = (left ? m.left_action(w) : m.right_action(w)).column(db.generators[i]);
            for (std::size_t out = 0; out < d; ++out) sum(out, mm) = f.add(sum(out, mm), img[out]);
        }
    }
    return sum.is_identity();
}

std::vector<DoubleCosetSummand> decompose_by_double_cosets(const GradedAlgebra& ambient, const GradedAlgebra& k,
                                                           const GradedAlgebra& h) {
    const auto& all = ambient.support().elements();
    auto whole = std::make_shared<const Bimodule>(truncation(ambient, k, all, h));
    std::vector<DoubleCosetSummand> out;
    for (std::size_t g : double_coset_reps(k.support(), h.support())) {
        const auto coset = double_coset(k.support(), g, h.support());
        auto part = std::make_shared<const Bimodule>(truncation(ambient, k, coset, h));
        Matrix inc(ambient.algebra().field(), whole->dim(), part->dim());
        for (std::size_t i = 0; i < part->dim(); ++i) {
            const auto it = std::lower_bound(whole->ambient().begin(), whole->ambient().end(), part->ambient()[i]);
            inc(static_cast<std::size_t>(it - whole->ambient().begin()), i) = 1;
        }
        out.push_back({g, part, BimoduleMap{part, whole, std::move(inc)}});
    }
    return out;
}

namespace {

/// Coordinates of an ambient vector inside a carrier (sorted ambient indices).
Vec restrict_to_carrier(std::span<const Elem> v, const std::vector<std::size_t>& carrier) {
    Vec out(carrier.size(), 0);
    std::size_t found = 0;
    for (std::size_t i = 0; i < carrier.size(); ++i) {
        out[i] = v[carrier[i]];
        if (out[i]) ++found;
    }
    std::size_t nonzero = 0;
    for (Elem x : v)
        if (x) ++nonzero;
    if (nonzero != found) throw InternalError("vector leaves the carrier");
    return out;
}

/// Fills tensor/target/presentation/phi; psi is supplied by the caller.
Lemma2Maps multiplication_side(const GradedAlgebra& ambient, const Bimodule& left, const Bimodule& right,
                               Bimodule target) {
    const Algebra& r = ambient.algebra();
    const PrimeField& f = r.field();
    TensorProduct tp = tensor_over(left, right);
    Lemma2Maps out;
    out.tensor = std::make_shared<const Bimodule>(std::move(tp.module));
    out.target = std::make_shared<const Bimodule>(std::move(target));
    out.presentation = std::move(tp.presentation);

    const std::size_t dn = right.dim();
    auto mult = [&](std::size_t amb_index) {
        return restrict_to_carrier(r.product(left.ambient()[amb_index / dn], right.ambient()[amb_index % dn]),
                                   out.target->ambient());
    };
    Matrix phi(f, out.target->dim(), out.tensor->dim());
    for (std::size_t q = 0; q < out.tensor->dim(); ++q) {
        const Vec v = mult(out.presentation.quotient.transversal_columns[q]);
        for (std::size_t k = 0; k < v.size(); ++k) phi(k, q) = v[k];
    }
    out.phi = BimoduleMap{out.tensor, out.target, std::move(phi)};

    out.phi_well_defined = true;
    const Subspace& rel = out.presentation.quotient.sub;
    for (std::size_t i = 0; i < rel.dim() && out.phi_well_defined; ++i) {
        Vec acc(out.target->dim(), 0);
        const auto row = rel.basis().row(i);
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c]) vec::axpy(f, acc, row[c], mult(c));
        out.phi_well_defined = vec::is_zero(acc);
    }
    return out;
}

/// Psi(e_x) = sum_i a_i (x) b_i e_x with the unit decomposition chosen by `pick(x)`.
template <class Pick>
Matrix build_psi(const GradedAlgebra& ambient, const Lemma2Maps& maps, const Bimodule& left, const Bimodule& right,
                 Pick pick) {
    const Algebra& r = ambient.algebra();
    const PrimeField& f = r.field();
    Matrix psi(f, maps.tensor->dim(), maps.target->dim());
    for (std::size_t y = 0; y < maps.target->dim(); ++y) {
        const std::size_t x = maps.target->ambient()[y];
        const UnitDecomposition& u = pick(ambient.degree(x));
        Vec acc(maps.tensor->dim(), 0);
        for (const auto& [a, b] : u.pairs) {
            const Vec bx = r.multiply(b, vec::unit(r.dim(), x));
            const Vec img = maps.presentation.element(restrict_to_carrier(a, left.ambient()),
                                                      restrict_to_carrier(bx, right.ambient()));
            acc = vec::add(f, acc, img);
        }
        for (std::size_t k = 0; k < acc.size(); ++k) psi(k, y) = acc[k];
    }
    return psi;
}

UnitDecomposition decomposition(const GradedAlgebra& a, std::size_t g, bool alternative) {
    if (alternative)
        if (auto alt = alternative_unit_decomposition(a, g)) return *alt;
    return unit_decomposition(a, g);
}

} // namespace

Lemma2Maps lemma2_case_c(const GradedAlgebra& ambient, std::size_t g, std::size_t h, const Subgroup& hsub,
                         bool alternative) {
    const FiniteGroup& grp = *ambient.group();
    const std::size_t gh = grp.mul(g, h);
    const Subgroup h_conj = conjugate_subgroup(h, hsub);
    const Subgroup gh_conj = conjugate_subgroup(gh, hsub);
    const GradedAlgebra r_h = component_subalgebra(ambient, hsub);
    const GradedAlgebra r_hconj = component_subalgebra(ambient, h_conj);
    const GradedAlgebra r_ghconj = component_subalgebra(ambient, gh_conj);

    const Bimodule z = truncation(ambient, r_ghconj, left_coset(g, h_conj), r_hconj);
    const Bimodule u = truncation(ambient, r_hconj, left_coset(h, hsub), r_h);
    Bimodule y = truncation(ambient, r_ghconj, left_coset(gh, hsub), r_h);

    Lemma2Maps out = multiplication_side(ambient, z, u, std::move(y));
    const UnitDecomposition dec = decomposition(ambient, g, alternative);
    out.psi = BimoduleMap{out.target, out.tensor,
                          build_psi(ambient, out, z, u, [&](std::size_t) -> const UnitDecomposition& { return dec; })};
    return out;
}

Lemma2Maps lemma2_case_b(const GradedAlgebra& ambient, const Subgroup& k, std::size_t g, const Subgroup& hsub,
                         bool alternative) {
    const FiniteGroup& grp = *ambient.group();
    const Subgroup meet = intersect(k, conjugate_subgroup(g, hsub));
    const GradedAlgebra r_k = component_subalgebra(ambient, k);
    const GradedAlgebra r_meet = component_subalgebra(ambient, meet);
    const GradedAlgebra r_h = component_subalgebra(ambient, hsub);

    const Bimodule c = truncation(ambient, r_k, k.elements(), r_meet);
    const Bimodule p = truncation(ambient, r_meet, left_coset(g, hsub), r_h);
    Bimodule d = truncation(ambient, r_k, double_coset(k, g, hsub), r_h);

    Lemma2Maps out = multiplication_side(ambient, c, p, std::move(d));

    // For x in KgH use the minimal t in K with t^-1 x in gH.
    const auto gcoset = left_coset(g, hsub);
    std::map<std::size_t, UnitDecomposition> cache;
    auto pick = [&](std::size_t x) -> const UnitDecomposition& {
        for (std::size_t t : k.elements()) {
            if (!std::binary_search(gcoset.begin(), gcoset.end(), grp.mul(grp.inv(t), x))) continue;
            auto it = cache.find(t);
            if (it == cache.end()) it = cache.emplace(t, decomposition(ambient, t, alternative)).first;
            return it->second;
        }
        throw InternalError("inverse pair: element outside the double coset");
    };
    out.psi = BimoduleMap{out.target, out.tensor, build_psi(ambient, out, c, p, pick)};
    return out;
}

Lemma2Check check_lemma2(const Lemma2Maps& maps, const std::optional<Lemma2Maps>& alternative) {
    Lemma2Check c;
    c.phi_is_map = maps.phi_well_defined && is_bimodule_map(*maps.tensor, *maps.target, maps.phi.matrix);
    c.psi_is_map = is_bimodule_map(*maps.target, *maps.tensor, maps.psi.matrix);
    c.phi_psi_identity = maps.tensor->dim() == maps.target->dim() && (maps.phi.matrix * maps.psi.matrix).is_identity();
    c.psi_phi_identity = maps.tensor->dim() == maps.target->dim() && (maps.psi.matrix * maps.phi.matrix).is_identity();
    if (alternative) c.psi_choice_independent = alternative->psi.matrix == maps.psi.matrix;
    return c;
}

} // namespace hhm
