#include "hhm/hh.hpp"

#include "hhm/error.hpp"

#include <algorithm>
#include <sstream>

namespace hhm {

void MemoryBudget::check(std::size_t need, const std::string& what) const {
    if (need <= bytes_) return;
    std::ostringstream os;
    os << "memory budget exceeded: " << what << " needs " << ((need + (1u << 20) - 1) >> 20) << " MB, budget is "
       << (bytes_ >> 20) << " MB";
    throw BudgetError(os.str());
}

std::size_t tuple_count(std::size_t d, std::size_t n) {
    constexpr std::size_t kLimit = std::size_t{1} << 40;
    std::size_t out = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (d != 0 && out > kLimit / d) throw BudgetError("tensor power dimension overflows");
        out *= d;
    }
    return out;
}

namespace {

std::vector<std::size_t> powers(std::size_t d, std::size_t n) {
    std::vector<std::size_t> pw(n + 1, 1);
    for (std::size_t i = 1; i <= n; ++i) pw[i] = pw[i - 1] * d;
    return pw;
}

/// Digit i (0 = most significant) of a tuple index with `len` factors.
inline std::size_t digit(std::size_t t, std::size_t i, std::size_t d, const std::vector<std::size_t>& pw,
                         std::size_t len) {
    return (t / pw[len - 1 - i]) % d;
}

/// Index of the (len-1)-tuple obtained by replacing digits j, j+1 of t with k.
inline std::size_t merge_index(std::size_t t, std::size_t j, std::size_t k, std::size_t d,
                               const std::vector<std::size_t>& pw, std::size_t len) {
    const std::size_t high = t / pw[len - j];
    const std::size_t low = t % pw[len - j - 2];
    return (high * d + k) * pw[len - j - 2] + low;
}

inline Elem sign_of(const PrimeField& f, std::size_t exponent) { return exponent % 2 ? f.neg(1) : 1; }

} // namespace

// ---------------------------------------------------------------------------------------------
// Cochains

Vec CochainComplex::apply(std::size_t n, std::span<const Elem> f) const {
    const Algebra& a = *algebra_;
    const PrimeField& fld = a.field();
    const std::size_t d = a.dim();
    if (f.size() != dim(n)) throw std::invalid_argument("CochainComplex::apply: cochain has wrong length");
    const std::vector<std::size_t> pw = powers(d, n + 1);
    const std::size_t tuples = pw[n + 1];
    const Elem last_sign = sign_of(fld, n + 1);
    LazyRow out(fld, tuples * d);
    for (std::size_t t = 0; t < tuples; ++t) {
        const std::size_t base = t * d;
        const std::size_t a1 = t / pw[n];
        const std::size_t tail = t % pw[n];
        for (std::size_t c = 0; c < d; ++c)
            if (Elem v = f[tail * d + c])
                for (const Term& term : a.product_terms(a1, c)) out.add(base + term.index, fld.mul(v, term.coeff));
        for (std::size_t j = 0; j + 1 <= n; ++j) {
            const Elem sign = sign_of(fld, j + 1);
            const std::size_t x = digit(t, j, d, pw, n + 1);
            const std::size_t y = digit(t, j + 1, d, pw, n + 1);
            for (const Term& term : a.product_terms(x, y)) {
                const std::size_t s = merge_index(t, j, term.index, d, pw, n + 1);
                const Elem coeff = fld.mul(sign, term.coeff);
                for (std::size_t c = 0; c < d; ++c)
                    if (Elem v = f[s * d + c]) out.add(base + c, fld.mul(coeff, v));
            }
        }
        const std::size_t head = t / d;
        const std::size_t an = t % d;
        for (std::size_t c = 0; c < d; ++c)
            if (Elem v = f[head * d + c])
                for (const Term& term : a.product_terms(c, an))
                    out.add(base + term.index, fld.mul(fld.mul(v, term.coeff), last_sign));
    }
    return out.finish();
}

void CochainComplex::row(std::size_t n, std::size_t t, std::size_t c, Vec& row,
                         std::vector<std::size_t>& touched) const {
    const Algebra& a = *algebra_;
    const PrimeField& fld = a.field();
    const std::size_t d = a.dim();
    const std::vector<std::size_t> pw = powers(d, n + 1);
    auto put = [&](std::size_t idx, Elem v) {
        if (!v) return;
        if (row[idx] == 0) touched.push_back(idx);
        row[idx] = fld.add(row[idx], v);
    };
    const std::size_t a1 = t / pw[n];
    const std::size_t tail = t % pw[n];
    for (std::size_t k = 0; k < d; ++k) put(tail * d + k, a.structure(a1, k, c));
    for (std::size_t j = 0; j + 1 <= n; ++j) {
        const Elem sign = sign_of(fld, j + 1);
        const std::size_t x = digit(t, j, d, pw, n + 1);
        const std::size_t y = digit(t, j + 1, d, pw, n + 1);
        for (const Term& term : a.product_terms(x, y))
            put(merge_index(t, j, term.index, d, pw, n + 1) * d + c, fld.mul(sign, term.coeff));
    }
    const Elem last_sign = sign_of(fld, n + 1);
    const std::size_t head = t / d;
    const std::size_t an = t % d;
    for (std::size_t k = 0; k < d; ++k) put(head * d + k, fld.mul(last_sign, a.structure(k, an, c)));
}

Matrix CochainComplex::differential(std::size_t n, const MemoryBudget& budget) const {
    const std::size_t rows = dim(n + 1);
    const std::size_t cols = dim(n);
    budget.check(rows * cols * sizeof(Elem), "dense Hochschild differential");
    Matrix m(algebra_->field(), rows, cols);
    Vec r(cols, 0);
    std::vector<std::size_t> touched;
    const std::size_t d = algebra_->dim();
    for (std::size_t t = 0; t < rows / d; ++t)
        for (std::size_t c = 0; c < d; ++c) {
            row(n, t, c, r, touched);
            // An index can appear twice if its entry cancelled and reappeared.
            for (std::size_t i : touched) {
                if (!r[i]) continue;
                m(t * d + c, i) = r[i];
                r[i] = 0;
            }
            touched.clear();
        }
    return m;
}

// ---------------------------------------------------------------------------------------------
// Bar complex

BarComplex::BarComplex(AlgebraPtr algebra, std::size_t max_degree, const MemoryBudget& budget)
    : algebra_(std::move(algebra)), max_degree_(max_degree) {
    const Algebra& a = *algebra_;
    const PrimeField& f = a.field();
    const std::size_t d = a.dim();
    std::size_t need = 0;
    for (std::size_t n = 1; n <= max_degree_; ++n) need += dim(n) * dim(n - 1) * sizeof(Elem);
    budget.check(need, "bar complex differentials");

    augmentation_ = Matrix(f, d, d * d);
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y)
            for (const Term& t : a.product_terms(x, y)) augmentation_(t.index, x * d + y) = t.coeff;

    for (std::size_t n = 1; n <= max_degree_; ++n) {
        const std::size_t len = n + 2;
        const std::vector<std::size_t> pw = powers(d, len);
        Matrix m(f, dim(n - 1), dim(n));
        for (std::size_t t = 0; t < dim(n); ++t)
            for (std::size_t j = 0; j + 1 < len; ++j) {
                const Elem sign = sign_of(f, j);
                const std::size_t x = digit(t, j, d, pw, len);
                const std::size_t y = digit(t, j + 1, d, pw, len);
                for (const Term& term : a.product_terms(x, y)) {
                    const std::size_t s = merge_index(t, j, term.index, d, pw, len);
                    m(s, t) = f.add(m(s, t), f.mul(sign, term.coeff));
                }
            }
        differentials_.push_back(std::move(m));
    }
}

Bimodule BarComplex::module(std::size_t n) const {
    const Algebra& a = *algebra_;
    const std::size_t rest = tuple_count(a.dim(), n + 1);
    const Matrix id = Matrix::identity(a.field(), rest);
    std::vector<Matrix> left, right;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        left.push_back(kronecker(a.left_mult(i), id));
        right.push_back(kronecker(id, a.right_mult(i)));
    }
    return Bimodule(algebra_, algebra_, dim(n), std::move(left), std::move(right), {}, "Bar" + std::to_string(n));
}

// ---------------------------------------------------------------------------------------------
// Cohomology

HHClasses::HHClasses(AlgebraPtr algebra, std::size_t degree, const MemoryBudget& budget)
    : algebra_(std::move(algebra)), degree_(degree) {
    const CochainComplex cx(algebra_);
    const PrimeField& f = algebra_->field();
    const std::size_t d = algebra_->dim();
    const std::size_t n = degree_;
    const std::size_t cols = cx.dim(n);
    budget.check(2 * RowReducer::storage_bytes(f, cols, cols) + cols * cols * sizeof(Elem),
                 "HH^" + std::to_string(n) + " of a " + std::to_string(d) + "-dimensional algebra");

    if (n == 0) {
        coboundaries_ = Subspace(f, cols);
    } else {
        RowReducer im(f, cols);
        Vec e(cx.dim(n - 1), 0);
        for (std::size_t j = 0; j < e.size() && im.rank() < cols; ++j) {
            e[j] = 1;
            im.insert(cx.apply(n - 1, e));
            e[j] = 0;
        }
        coboundaries_ = std::move(im).finish();
    }

    RowReducer eqs(f, cols);
    {
        Vec r(cols, 0);
        std::vector<std::size_t> touched;
        const std::size_t tuples = tuple_count(d, n + 1);
        for (std::size_t t = 0; t < tuples && eqs.rank() < cols; ++t)
            for (std::size_t c = 0; c < d; ++c) {
                cx.row(n, t, c, r, touched);
                eqs.insert(r);
                for (std::size_t i : touched) r[i] = 0;
                touched.clear();
            }
    }
    const Subspace eq_space = std::move(eqs).finish();
    const Subspace cocycles = kernel_of_rref(eq_space.basis(), eq_space.pivots());
    cocycle_dim_ = cocycles.dim();
    if (!cocycles.contains(coboundaries_)) throw InternalError("coboundaries are not cocycles");

    free_ = coboundaries_.free_columns();
    RowReducer cls(f, free_.size());
    Vec w(free_.size());
    for (std::size_t i = 0; i < cocycles.dim(); ++i) {
        const Vec r = coboundaries_.reduce(cocycles.basis().row(i));
        for (std::size_t k = 0; k < free_.size(); ++k) w[k] = r[free_[k]];
        cls.insert(w);
    }
    classes_ = std::move(cls).finish();
    if (classes_.dim() + coboundaries_.dim() != cocycle_dim_) throw InternalError("HH dimension mismatch");
    for (std::size_t i = 0; i < classes_.dim(); ++i) {
        Vec rep(cols, 0);
        const auto row = classes_.basis().row(i);
        for (std::size_t k = 0; k < free_.size(); ++k) rep[free_[k]] = row[k];
        representatives_.push_back(std::move(rep));
    }
}

bool HHClasses::is_cocycle(std::span<const Elem> f) const {
    return vec::is_zero(CochainComplex(algebra_).apply(degree_, f));
}

std::optional<Vec> HHClasses::try_class_of(std::span<const Elem> f) const {
    if (!is_cocycle(f)) return std::nullopt;
    const Vec r = coboundaries_.reduce(f);
    Vec w(free_.size());
    for (std::size_t k = 0; k < free_.size(); ++k) w[k] = r[free_[k]];
    auto c = classes_.coordinates(w);
    if (!c) throw InternalError("cocycle outside the span of the class representatives");
    return c;
}

Vec HHClasses::class_of(std::span<const Elem> f) const {
    auto c = try_class_of(f);
    if (!c) throw InternalError("cochain is not a cocycle");
    return *c;
}

HHClasses cohomology(const AlgebraPtr& algebra, std::size_t n, const MemoryBudget& budget) {
    return HHClasses(algebra, n, budget);
}

// ---------------------------------------------------------------------------------------------
// Transfer

TransferData::TransferData(BimodulePtr m, Vec form_a, Vec form_b, std::size_t max_degree, const MemoryBudget& budget,
                           TransferOptions options)
    : module_(std::move(m)), max_degree_(max_degree), budget_(budget), options_(std::move(options)) {
    const Bimodule& mod = *module_;
    const PrimeField& f = mod.field();
    const std::size_t dm = mod.dim();
    const std::size_t db = mod.right_algebra().dim();
    if (form_a.size() != mod.left_algebra().dim() || form_b.size() != db)
        throw ValidationError("transfer: symmetrizing forms have the wrong length");

    if (!is_projective(mod, Side::Left).projective)
        throw ValidationError("transfer: bimodule is not projective as a left module");
    ProjectivityResult right = is_projective(mod, Side::Right, options_.generator_order);
    if (!right.projective) throw ValidationError("transfer: bimodule is not projective as a right module");
    dual_basis_ = std::move(*right.witness);

    casimir_.assign(dm * dm, 0);
    for (std::size_t i = 0; i < dual_basis_.maps.size(); ++i) {
        Vec fi(dm, 0);
        const Matrix& phi = dual_basis_.maps[i];
        for (std::size_t b = 0; b < db; ++b)
            if (form_b[b])
                for (std::size_t x = 0; x < dm; ++x) fi[x] = f.add(fi[x], f.mul(form_b[b], phi(b, x)));
        for (std::size_t x = 0; x < dm; ++x)
            casimir_[dual_basis_.generators[i] * dm + x] = f.add(casimir_[dual_basis_.generators[i] * dm + x], fi[x]);
        functionals_.push_back(std::move(fi));
    }

    build_counit(form_a);
    build_homotopy(form_b);

    std::size_t need = 0;
    for (std::size_t n = 0; n <= max_degree_; ++n)
        need += tuple_count(mod.left_algebra().dim(), n) * x_dim(n) * sizeof(Elem);
    budget_.check(need, "chain lift through degree " + std::to_string(max_degree_));

    lifts_.resize(max_degree_ + 1);
    lifts_[0] = casimir_;
    if (options_.method == LiftMethod::Homotopy) lift_homotopy();
    else lift_solve();
}

std::size_t TransferData::x_dim(std::size_t n) const {
    const std::size_t dm = module_->dim();
    return dm * tuple_count(module_->right_algebra().dim(), n) * dm;
}

std::span<const Elem> TransferData::lift(std::size_t n, std::size_t t) const {
    const std::size_t len = x_dim(n);
    return {lifts_.at(n).data() + t * len, len};
}

void TransferData::build_counit(const Vec& form_a) {
    const Bimodule& mod = *module_;
    const PrimeField& f = mod.field();
    const std::size_t dm = mod.dim();
    const std::size_t da = mod.left_algebra().dim();
    // eps(m (x) f) = psi_f(m) where psi_f in Hom_A(M, A) has s_A o psi_f = f.
    const std::vector<Matrix> homs = hom_to_algebra(mod, Side::Left);
    if (homs.size() != dm) throw ValidationError("transfer: Hom_A(M, A) and M^* have different dimensions");
    Matrix theta(f, dm, dm);
    for (std::size_t k = 0; k < dm; ++k)
        for (std::size_t a = 0; a < da; ++a)
            if (form_a[a])
                for (std::size_t x = 0; x < dm; ++x) theta(x, k) = f.add(theta(x, k), f.mul(form_a[a], homs[k](a, x)));
    const auto inv = inverse(theta);
    if (!inv) throw ValidationError("transfer: s_A does not identify Hom_A(M, A) with M^*");
    counit_.assign(dm * dm, Vec(da, 0));
    for (std::size_t fi = 0; fi < dm; ++fi)
        for (std::size_t k = 0; k < dm; ++k)
            if (Elem c = (*inv)(k, fi))
                for (std::size_t x = 0; x < dm; ++x)
                    for (std::size_t a = 0; a < da; ++a)
                        counit_[x * dm + fi][a] = f.add(counit_[x * dm + fi][a], f.mul(c, homs[k](a, x)));
}

void TransferData::build_homotopy(const Vec& form_b) {
    const Bimodule& mod = *module_;
    const PrimeField& f = mod.field();
    const std::size_t dm = mod.dim();
    const Algebra& b = mod.right_algebra();
    const std::size_t db = b.dim();
    const auto ginv = inverse(gram_matrix(b, form_b));
    if (!ginv) throw ValidationError("transfer: s_B is degenerate");
    // f = sum_j beta_j(f) f_j with s_B(x beta_j(f)) = f(m_j x).
    homotopy_.assign(dm, {});
    Vec acc(db * dm);
    Vec v(db);
    for (std::size_t fi = 0; fi < dm; ++fi) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t j = 0; j < dual_basis_.generators.size(); ++j) {
            const std::size_t gj = dual_basis_.generators[j];
            for (std::size_t k = 0; k < db; ++k) v[k] = mod.right_action(k)(fi, gj);
            const Vec beta = ginv->apply(v);
            for (std::size_t bp = 0; bp < db; ++bp) {
                if (!beta[bp]) continue;
                for (std::size_t fp = 0; fp < dm; ++fp)
                    if (Elem c = functionals_[j][fp])
                        acc[bp * dm + fp] = f.add(acc[bp * dm + fp], f.mul(beta[bp], c));
            }
        }
        for (std::size_t idx = 0; idx < acc.size(); ++idx)
            if (acc[idx]) homotopy_[fi].emplace_back(idx / dm, idx % dm, acc[idx]);
    }
}

Vec TransferData::lift_boundary(std::size_t n, std::size_t t) const {
    const Bimodule& mod = *module_;
    const Algebra& a = mod.left_algebra();
    const PrimeField& f = mod.field();
    const std::size_t da = a.dim();
    const std::size_t dm = mod.dim();
    const std::size_t u_count = tuple_count(mod.right_algebra().dim(), n - 1);
    const std::vector<std::size_t> pw = powers(da, n);
    LazyRow out(f, x_dim(n - 1));

    // a_1 . lift(a_2, ..., a_n)
    {
        const std::size_t a1 = t / pw[n - 1];
        const Matrix& l = mod.left_action(a1);
        const auto src = lift(n - 1, t % pw[n - 1]);
        for (std::size_t x = 0; x < src.size(); ++x) {
            const Elem v = src[x];
            if (!v) continue;
            const std::size_t m = x / (u_count * dm);
            const std::size_t rest = x % (u_count * dm);
            for (std::size_t mp = 0; mp < dm; ++mp)
                if (Elem c = l(mp, m)) out.add(mp * u_count * dm + rest, f.mul(v, c));
        }
    }
    // (-1)^i lift(..., a_i a_{i+1}, ...)
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const Elem sign = sign_of(f, j + 1);
        const std::size_t x = digit(t, j, da, pw, n);
        const std::size_t y = digit(t, j + 1, da, pw, n);
        for (const Term& term : a.product_terms(x, y))
            out.axpy(f.mul(sign, term.coeff), lift(n - 1, merge_index(t, j, term.index, da, pw, n)));
    }
    // (-1)^n lift(a_1, ..., a_{n-1}) . a_n, acting on the M^* factor: e*_f a = sum_k L_a[f][k] e*_k
    {
        const Elem sign = sign_of(f, n);
        const Matrix& l = mod.left_action(t % da);
        const auto src = lift(n - 1, t / da);
        for (std::size_t x = 0; x < src.size(); ++x) {
            const Elem v = src[x];
            if (!v) continue;
            const std::size_t fi = x % dm;
            const std::size_t base = x - fi;
            const Elem sv = f.mul(sign, v);
            for (std::size_t k = 0; k < dm; ++k)
                if (Elem c = l(fi, k)) out.add(base + k, f.mul(sv, c));
        }
    }
    return out.finish();
}

void TransferData::lift_homotopy() {
    const Bimodule& mod = *module_;
    const PrimeField& f = mod.field();
    const std::size_t da = mod.left_algebra().dim();
    const std::size_t db = mod.right_algebra().dim();
    const std::size_t dm = mod.dim();
    for (std::size_t n = 1; n <= max_degree_; ++n) {
        const std::size_t gens = tuple_count(da, n);
        const std::size_t len = x_dim(n);
        const std::size_t u_prev = tuple_count(db, n - 1);
        const Elem sign = sign_of(f, n);  // h_{n-1} carries (-1)^n
        lifts_[n].assign(gens * len, 0);
        for (std::size_t t = 0; t < gens; ++t) {
            const Vec y = lift_boundary(n, t);
            LazyRow out(f, len);
            for (std::size_t x = 0; x < y.size(); ++x) {
                const Elem v = y[x];
                if (!v) continue;
                const std::size_t fi = x % dm;
                const std::size_t mu = x / dm;  // m * u_prev + u
                const std::size_t m = mu / u_prev;
                const std::size_t u = mu % u_prev;
                const Elem sv = f.mul(sign, v);
                for (const auto& [bp, fp, c] : homotopy_[fi])
                    out.add(((m * u_prev + u) * db + bp) * dm + fp, f.mul(sv, c));
            }
            const Vec z = out.finish();
            std::copy(z.begin(), z.end(), lifts_[n].begin() + static_cast<std::ptrdiff_t>(t * len));
        }
    }
}

void TransferData::lift_solve() {
    const Bimodule& mod = *module_;
    const PrimeField& f = mod.field();
    const std::size_t da = mod.left_algebra().dim();
    for (std::size_t n = 1; n <= max_degree_; ++n) {
        const std::size_t gens = tuple_count(da, n);
        const std::size_t rows = x_dim(n - 1);
        const std::size_t cols = x_dim(n);
        budget_.check(2 * rows * (cols + gens) * sizeof(Elem), "chain-lift system in degree " + std::to_string(n));
        Matrix aug(f, rows, cols + gens);
        const Matrix d = x_differential(n);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) aug(r, c) = d(r, c);
        for (std::size_t t = 0; t < gens; ++t) {
            const Vec y = lift_boundary(n, t);
            for (std::size_t r = 0; r < rows; ++r) aug(r, cols + t) = y[r];
        }
        const RrefResult red = rref(aug);
        lifts_[n].assign(gens * cols, 0);
        for (std::size_t i = 0; i < red.pivots.size(); ++i) {
            const std::size_t p = red.pivots[i];
            if (p >= cols) throw InternalError("chain lift: inconsistent system in degree " + std::to_string(n));
            for (std::size_t t = 0; t < gens; ++t) lifts_[n][t * cols + p] = red.matrix(i, cols + t);
        }
    }
}

void TransferData::apply_x_differential(std::size_t n, std::span<const Elem> x, Vec& result) const {
    const Bimodule& mod = *module_;
    const Algebra& b = mod.right_algebra();
    const PrimeField& f = mod.field();
    const std::size_t db = b.dim();
    const std::size_t dm = mod.dim();
    const std::size_t u_count = tuple_count(db, n);
    const std::size_t u_prev = tuple_count(db, n - 1);
    const std::vector<std::size_t> pw = powers(db, n);
    LazyRow out(f, x_dim(n - 1));
    const Elem last_sign = sign_of(f, n);
    for (std::size_t idx = 0; idx < x.size(); ++idx) {
        const Elem v = x[idx];
        if (!v) continue;
        const std::size_t fi = idx % dm;
        const std::size_t u = (idx / dm) % u_count;
        const std::size_t m = idx / dm / u_count;
        // m b_1 (x) b_2 ... (x) f
        const Matrix& r1 = mod.right_action(u / pw[n - 1]);
        const std::size_t tail = u % pw[n - 1];
        for (std::size_t mp = 0; mp < dm; ++mp)
            if (Elem c = r1(mp, m)) out.add((mp * u_prev + tail) * dm + fi, f.mul(v, c));
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const Elem sign = sign_of(f, j + 1);
            const std::size_t p = digit(u, j, db, pw, n);
            const std::size_t q = digit(u, j + 1, db, pw, n);
            for (const Term& term : b.product_terms(p, q))
                out.add((m * u_prev + merge_index(u, j, term.index, db, pw, n)) * dm + fi,
                        f.mul(f.mul(sign, term.coeff), v));
        }
        // (-1)^n m (x) ... (x) b_n f with b e*_f = sum_k R_b[f][k] e*_k
        const Matrix& rn = mod.right_action(u % db);
        const std::size_t base = (m * u_prev + u / db) * dm;
        const Elem sv = f.mul(last_sign, v);
        for (std::size_t k = 0; k < dm; ++k)
            if (Elem c = rn(fi, k)) out.add(base + k, f.mul(sv, c));
    }
    result = out.finish();
}

Matrix TransferData::x_differential(std::size_t n) const {
    const std::size_t rows = x_dim(n - 1);
    const std::size_t cols = x_dim(n);
    budget_.check(rows * cols * sizeof(Elem), "dense relative bar differential");
    Matrix d(module_->field(), rows, cols);
    Vec e(cols, 0);
    Vec img;
    for (std::size_t c = 0; c < cols; ++c) {
        e[c] = 1;
        apply_x_differential(n, e, img);
        e[c] = 0;
        for (std::size_t r = 0; r < rows; ++r) d(r, c) = img[r];
    }
    return d;
}

Vec TransferData::transfer_cochain(std::size_t n, std::span<const Elem> zeta) const {
    const Bimodule& mod = *module_;
    const PrimeField& f = mod.field();
    const std::size_t da = mod.left_algebra().dim();
    const std::size_t db = mod.right_algebra().dim();
    const std::size_t dm = mod.dim();
    const std::size_t u_count = tuple_count(db, n);
    if (n > max_degree_) throw InternalError("transfer: degree above the chain lift");
    if (zeta.size() != u_count * db) throw std::invalid_argument("transfer: cochain has wrong length");

    // er[(m * db + c) * dm + fi] = eps(e_m e_c (x) e*_fi)
    std::vector<Vec> er(dm * db * dm, Vec(da, 0));
    for (std::size_t c = 0; c < db; ++c) {
        const Matrix& r = mod.right_action(c);
        for (std::size_t m = 0; m < dm; ++m)
            for (std::size_t mp = 0; mp < dm; ++mp)
                if (Elem coeff = r(mp, m))
                    for (std::size_t fi = 0; fi < dm; ++fi)
                        vec::axpy(f, er[(m * db + c) * dm + fi], coeff, counit(mp, fi));
    }
    // w[x] = eps(m zeta(u) (x) f) for x = (m, u, f)
    const std::size_t len = x_dim(n);
    std::vector<Elem> w(len * da, 0);
    for (std::size_t m = 0; m < dm; ++m)
        for (std::size_t u = 0; u < u_count; ++u)
            for (std::size_t c = 0; c < db; ++c) {
                const Elem z = zeta[u * db + c];
                if (!z) continue;
                for (std::size_t fi = 0; fi < dm; ++fi) {
                    Elem* dst = w.data() + ((m * u_count + u) * dm + fi) * da;
                    const Vec& src = er[(m * db + c) * dm + fi];
                    for (std::size_t a = 0; a < da; ++a) dst[a] = f.add(dst[a], f.mul(z, src[a]));
                }
            }

    const std::size_t gens = tuple_count(da, n);
    Vec out(gens * da, 0);
    LazyRow acc(f, da);
    for (std::size_t t = 0; t < gens; ++t) {
        acc.clear();
        const auto l = lift(n, t);
        for (std::size_t x = 0; x < len; ++x)
            if (Elem v = l[x]) acc.axpy(v, std::span<const Elem>(w.data() + x * da, da));
        const Vec r = acc.finish();
        std::copy(r.begin(), r.end(), out.begin() + static_cast<std::ptrdiff_t>(t * da));
    }
    return out;
}

TransferInvariants TransferData::check_invariants() const {
    const Bimodule& mod = *module_;
    const Algebra& a = mod.left_algebra();
    const PrimeField& f = mod.field();
    const std::size_t dm = mod.dim();
    const std::size_t da = a.dim();
    const std::size_t db = mod.right_algebra().dim();
    TransferInvariants inv;
    inv.dual_basis = verify_dual_basis(mod, dual_basis_);

    const TensorProduct mm = tensor_over(mod, dual(mod));
    inv.casimir_central = true;
    for (std::size_t i = 0; i < da && inv.casimir_central; ++i) {
        const Matrix& l = mod.left_action(i);
        const Vec left = kronecker(l, Matrix::identity(f, dm)).apply(casimir_);
        const Vec right = kronecker(Matrix::identity(f, dm), l.transpose()).apply(casimir_);
        inv.casimir_central = mm.presentation.quotient.project(left) == mm.presentation.quotient.project(right);
    }

    inv.counit_balanced = true;
    for (std::size_t b = 0; b < db && inv.counit_balanced; ++b) {
        const Matrix& r = mod.right_action(b);
        for (std::size_t m = 0; m < dm && inv.counit_balanced; ++m)
            for (std::size_t fi = 0; fi < dm && inv.counit_balanced; ++fi) {
                Vec lhs(da, 0), rhs(da, 0);
                for (std::size_t mp = 0; mp < dm; ++mp)
                    if (Elem c = r(mp, m)) vec::axpy(f, lhs, c, counit(mp, fi));
                for (std::size_t k = 0; k < dm; ++k)
                    if (Elem c = r(fi, k)) vec::axpy(f, rhs, c, counit(m, k));
                inv.counit_balanced = lhs == rhs;
            }
    }

    inv.counit_bimodule = true;
    for (std::size_t i = 0; i < da && inv.counit_bimodule; ++i) {
        const Matrix& l = mod.left_action(i);
        const Vec ei = vec::unit(da, i);
        for (std::size_t m = 0; m < dm && inv.counit_bimodule; ++m)
            for (std::size_t fi = 0; fi < dm && inv.counit_bimodule; ++fi) {
                Vec lhs(da, 0), rhs(da, 0);
                for (std::size_t mp = 0; mp < dm; ++mp)
                    if (Elem c = l(mp, m)) vec::axpy(f, lhs, c, counit(mp, fi));
                for (std::size_t k = 0; k < dm; ++k)
                    if (Elem c = l(fi, k)) vec::axpy(f, rhs, c, counit(m, k));
                inv.counit_bimodule = lhs == a.multiply(ei, counit(m, fi)) && rhs == a.multiply(counit(m, fi), ei);
            }
    }

    inv.chain_map = true;
    Vec img;
    for (std::size_t n = 1; n <= max_degree_ && inv.chain_map; ++n)
        for (std::size_t t = 0; t < tuple_count(da, n) && inv.chain_map; ++t) {
            apply_x_differential(n, lift(n, t), img);
            inv.chain_map = img == lift_boundary(n, t);
        }
    return inv;
}

Matrix transfer_matrix(const TransferData& data, const HHClasses& source, const HHClasses& target) {
    if (source.degree() != target.degree()) throw std::invalid_argument("transfer_matrix: degrees differ");
    const std::size_t n = source.degree();
    Matrix out(target.algebra().field(), target.dim(), source.dim());
    for (std::size_t j = 0; j < source.dim(); ++j) {
        const Vec img = data.transfer_cochain(n, source.representatives()[j]);
        const auto c = target.try_class_of(img);
        if (!c) throw InternalError("transfer of a cocycle is not a cocycle in degree " + std::to_string(n));
        for (std::size_t i = 0; i < target.dim(); ++i) out(i, j) = (*c)[i];
    }
    return out;
}

ComposeReport compose_check(const BimodulePtr& m, const BimodulePtr& n_prime, const Vec& form_a, const Vec& form_b,
                            const Vec& form_c, std::size_t n, const MemoryBudget& budget) {
    const auto mn = std::make_shared<const Bimodule>(tensor_over(*m, *n_prime).module);
    const TransferData tm(m, form_a, form_b, n, budget);
    const TransferData tn(n_prime, form_b, form_c, n, budget);
    const TransferData tmn(mn, form_a, form_c, n, budget);
    const HHClasses ha(m->left_ptr(), n, budget);
    const HHClasses hb(m->right_ptr(), n, budget);
    const HHClasses hc(n_prime->right_ptr(), n, budget);
    ComposeReport r;
    r.lhs = transfer_matrix(tm, hb, ha) * transfer_matrix(tn, hc, hb);
    r.rhs = transfer_matrix(tmn, hc, ha);
    r.pass = r.lhs == r.rhs;
    return r;
}

} // namespace hhm
