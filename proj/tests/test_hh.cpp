#include "corpus.hpp"
#include "hhm/error.hpp"
#include "hhm/hh.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace hhm;

namespace {

Vec random_vec(const PrimeField& f, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Vec v(n);
    for (auto& x : v) x = static_cast<Elem>(rng() % f.p());
    return v;
}

struct Graded {
    AlgebraSpec spec;
    GradedAlgebra whole;
    explicit Graded(const std::string& name)
        : spec(corpus::load(name)), whole(component_subalgebra(*spec.algebra, Subgroup::whole(spec.group))) {}
    GradedAlgebra sub(std::vector<std::size_t> e) const {
        return component_subalgebra(*spec.algebra, Subgroup(spec.group, std::move(e)));
    }
    std::vector<std::size_t> all() const { return Subgroup::whole(spec.group).elements(); }
    BimodulePtr bimodule(const GradedAlgebra& l, std::span<const std::size_t> slice, const GradedAlgebra& r) const {
        return std::make_shared<const Bimodule>(truncation(*spec.algebra, l, slice, r));
    }
};

Vec form(const GradedAlgebra& a) { return symmetrizing_form(a).functional; }

Matrix tmatrix(const BimodulePtr& m, const Vec& sa, const Vec& sb, std::size_t n, TransferOptions opts = {}) {
    const TransferData data(m, sa, sb, n, MemoryBudget(), std::move(opts));
    return transfer_matrix(data, HHClasses(m->right_ptr(), n), HHClasses(m->left_ptr(), n));
}

} // namespace

TEST(BarComplex, GroundField) {
    const auto k = std::make_shared<const Algebra>(Algebra::ground_field(PrimeField(5)));
    const BarComplex bar(k, 4);
    for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(bar.dim(n), 1u);
    // d_n = sum_{i=0}^{n} (-1)^i: identity for even n, zero for odd n.
    for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(bar.differential(n)(0, 0), n % 2 ? 0u : 1u);
}

TEST(BarComplex, SquaresToZeroAndIsBimoduleMap) {
    const Graded g("f2_c2");
    const BarComplex bar(g.spec.algebra->algebra_ptr(), 3);
    EXPECT_EQ(bar.dim(0), 4u);
    EXPECT_EQ(bar.dim(1), 8u);
    EXPECT_EQ(bar.dim(2), 16u);
    EXPECT_EQ(bar.dim(3), 32u);
    EXPECT_TRUE((bar.augmentation() * bar.differential(1)).is_zero());
    for (std::size_t n = 2; n <= 3; ++n) EXPECT_TRUE((bar.differential(n - 1) * bar.differential(n)).is_zero());
    for (std::size_t n = 1; n <= 3; ++n)
        EXPECT_TRUE(is_bimodule_map(bar.module(n), bar.module(n - 1), bar.differential(n)));

    const Graded s("f3_s3");
    const BarComplex b2(s.spec.algebra->algebra_ptr(), 2);
    EXPECT_EQ(b2.dim(2), 1296u);
    EXPECT_TRUE((b2.differential(1) * b2.differential(2)).is_zero());
}

TEST(CochainComplex, DeltaSquaredIsZero) {
    for (const std::string name : {"f3_s3", "f2_m2_c2", "f3_c2_twisted"}) {
        const Graded g(name);
        const CochainComplex c(g.spec.algebra->algebra_ptr());
        for (std::size_t n = 0; n <= 2; ++n)
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const Vec f = random_vec(g.spec.field, c.dim(n), seed + 10 * n);
                EXPECT_TRUE(vec::is_zero(c.apply(n + 1, c.apply(n, f)))) << name << " n=" << n;
            }
    }
}

TEST(CochainComplex, DenseMatchesApply) {
    const Graded g("f3_s3");
    const CochainComplex c(g.spec.algebra->algebra_ptr());
    for (std::size_t n = 0; n <= 1; ++n) {
        const Matrix d = c.differential(n);
        const Vec f = random_vec(g.spec.field, c.dim(n), 7);
        EXPECT_EQ(d.apply(f), c.apply(n, f));
    }
}

TEST(Cohomology, TruncatedPolynomialOracle) {
    for (std::uint32_t p : {2u, 3u})
        for (std::size_t m : {2u, 3u, 4u}) {
            const auto a = std::make_shared<const Algebra>(Algebra::truncated_polynomial(PrimeField(p), m));
            const auto expected = oracle::truncated_polynomial_hh(p, m, 3);
            for (std::size_t n = 0; n <= 3; ++n)
                EXPECT_EQ(cohomology(a, n).dim(), expected[n]) << "p=" << p << " m=" << m << " n=" << n;
        }
}

TEST(Cohomology, GroupAlgebraDimensions) {
    const auto c2 = corpus::load("f2_c2").algebra->algebra_ptr();
    const auto c3 = corpus::load("f3_c3").algebra->algebra_ptr();
    const auto o2 = oracle::truncated_polynomial_hh(2, 2, 3);
    const auto o3 = oracle::truncated_polynomial_hh(3, 3, 3);
    for (std::size_t n = 0; n <= 3; ++n) {
        EXPECT_EQ(cohomology(c2, n).dim(), o2[n]);
        EXPECT_EQ(cohomology(c3, n).dim(), o3[n]);
    }
    const auto s3 = corpus::load("f7_s3").algebra->algebra_ptr();
    EXPECT_EQ(cohomology(s3, 0).dim(), 3u);
    EXPECT_EQ(cohomology(s3, 1).dim(), 0u);
    EXPECT_EQ(cohomology(s3, 2).dim(), 0u);
}

TEST(Cohomology, MaschkeVanishing) {
    for (const std::string name : {"f3_c2", "f2_c3", "f7_s3", "f3_c2_twisted"}) {
        const auto a = corpus::load(name).algebra->algebra_ptr();
        for (std::size_t n = 1; n <= 3; ++n) EXPECT_EQ(cohomology(a, n).dim(), 0u) << name << " n=" << n;
    }
}

TEST(Cohomology, DegreeZeroIsCentre) {
    for (const std::string& name : corpus::names()) {
        const auto a = corpus::load(name).algebra->algebra_ptr();
        const HHClasses h(a, 0);
        EXPECT_EQ(Subspace::span(a->field(), a->dim(), h.representatives()), a->center()) << name;
    }
}

TEST(Cohomology, RepresentativesAndClassCoordinates) {
    const Graded g("f2_s3");
    const auto a = g.spec.algebra->algebra_ptr();
    const CochainComplex c(a);
    for (std::size_t n = 1; n <= 2; ++n) {
        const HHClasses h(a, n);
        ASSERT_GT(h.dim(), 0u);
        for (std::size_t i = 0; i < h.dim(); ++i) {
            EXPECT_TRUE(h.is_cocycle(h.representatives()[i]));
            EXPECT_EQ(h.class_of(h.representatives()[i]), vec::unit(h.dim(), i));
            // Shift by a coboundary.
            const Vec xi = random_vec(g.spec.field, c.dim(n - 1), 31 + i);
            const Vec shifted = vec::add(g.spec.field, h.representatives()[i], c.apply(n - 1, xi));
            EXPECT_EQ(h.class_of(shifted), vec::unit(h.dim(), i));
        }
        EXPECT_FALSE(h.try_class_of(vec::unit(c.dim(n), 0)) && !h.is_cocycle(vec::unit(c.dim(n), 0)));
        EXPECT_EQ(h.cocycle_dim(), h.dim() + h.coboundaries().dim());
    }
}

TEST(Cohomology, BudgetIsEnforced) {
    const auto a = corpus::load("f2_d4").algebra->algebra_ptr();
    EXPECT_THROW(HHClasses(a, 4, MemoryBudget(1)), BudgetError);
    EXPECT_THROW(tuple_count(1000, 20), BudgetError);
}

TEST(Transfer, RegularIsIdentity) {
    for (const std::string& name : corpus::names()) {
        const Graded g(name);
        const auto r = std::make_shared<const Bimodule>(regular(g.spec.algebra->algebra_ptr()));
        const Vec s = form(*g.spec.algebra);
        const std::size_t top = g.spec.algebra->dim() > 6 ? 2 : 3;
        const TransferData data(r, s, s, top);
        EXPECT_TRUE(data.check_invariants().pass()) << name;
        for (std::size_t n = 0; n <= top; ++n) {
            const HHClasses h(r->left_ptr(), n);
            const Matrix t = transfer_matrix(data, h, h);
            EXPECT_TRUE(t.is_identity()) << name << " n=" << n;
        }
    }
}

TEST(Transfer, GroundFieldIsIdentity) {
    const auto k = std::make_shared<const Algebra>(Algebra::ground_field(PrimeField(3)));
    const auto m = std::make_shared<const Bimodule>(regular(k));
    const TransferData data(m, Vec{1}, Vec{1}, 3);
    EXPECT_EQ(data.counit(0, 0), Vec{1});
    EXPECT_EQ(data.casimir(), Vec{1});
    for (std::size_t n = 0; n <= 3; ++n)
        EXPECT_TRUE(transfer_matrix(data, HHClasses(k, n), HHClasses(k, n)).is_identity());
}

TEST(Transfer, InvariantsForRestrictionBimodule) {
    const Graded g("f2_s3");
    const GradedAlgebra h = g.sub({0, 2});
    const auto m = g.bimodule(h, g.all(), g.whole);
    const TransferData data(m, form(h), form(g.whole), 3);
    const TransferInvariants inv = data.check_invariants();
    EXPECT_TRUE(inv.dual_basis);
    EXPECT_TRUE(inv.casimir_central);
    EXPECT_TRUE(inv.counit_balanced);
    EXPECT_TRUE(inv.counit_bimodule);
    EXPECT_TRUE(inv.chain_map);
}

TEST(Transfer, DegreeZeroIsRelativeTrace) {
    for (const std::string name : {"f2_c2", "f3_c2", "f2_s3", "f3_s3", "f2_d4", "f3_c2xc2"}) {
        const Graded g(name);
        const std::int64_t p = g.spec.field.p();
        for (const Subgroup& hs : all_subgroups(g.spec.group)) {
            const GradedAlgebra h = component_subalgebra(*g.spec.algebra, hs);
            const TransferData data(g.bimodule(g.whole, g.all(), h), form(g.whole), form(h), 0);
            const HHClasses zh(h.algebra_ptr(), 0);
            for (const Vec& z : zh.representatives()) {
                const Vec image = data.transfer_cochain(0, z);
                const auto expected = oracle::relative_trace(g.spec.group->table(), hs.elements(), vec::to_ints(z), p);
                EXPECT_EQ(vec::to_ints(image), expected) << name << ' ' << hs.describe();
            }
        }
    }
}

TEST(Transfer, TrivialSubgroupOfC2InCharacteristicTwo) {
    const Graded g("f2_c2");
    const GradedAlgebra one = g.sub({0});
    const Matrix t = tmatrix(g.bimodule(g.whole, g.all(), one), form(g.whole), form(one), 0);
    EXPECT_TRUE(t.is_zero());
}

TEST(Transfer, Composition) {
    for (const std::string name : {"f2_s3", "f3_s3"}) {
        const Graded g(name);
        const GradedAlgebra one = g.sub({0});
        const GradedAlgebra h = g.sub({0, 2});
        for (std::size_t n = 0; n <= 2; ++n) {
            // restriction chain G -> H -> 1 and transfer chain 1 -> H -> G
            const ComposeReport r = compose_check(g.bimodule(one, h.support().elements(), h),
                                                  g.bimodule(h, g.all(), g.whole), form(one), form(h),
                                                  form(g.whole), n);
            EXPECT_TRUE(r.pass) << name << " n=" << n;
            const ComposeReport t = compose_check(g.bimodule(g.whole, g.all(), h),
                                                  g.bimodule(h, h.support().elements(), one), form(g.whole),
                                                  form(h), form(one), n);
            EXPECT_TRUE(t.pass) << name << " n=" << n;
        }
    }
}

TEST(Transfer, Additivity) {
    for (const std::string name : {"f2_s3", "f2_c2xc2"}) {
        const Graded g(name);
        const auto subs = all_subgroups(g.spec.group);
        const GradedAlgebra k = component_subalgebra(*g.spec.algebra, subs[1]);
        const GradedAlgebra h = component_subalgebra(*g.spec.algebra, subs[1]);
        const auto parts = decompose_by_double_cosets(*g.spec.algebra, k, h);
        ASSERT_GE(parts.size(), 2u);
        for (std::size_t n = 0; n <= 2; ++n) {
            const Matrix whole = tmatrix(g.bimodule(k, g.all(), h), form(k), form(h), n);
            Matrix sum(g.spec.field, whole.rows(), whole.cols());
            for (const auto& part : parts) sum = sum + tmatrix(part.summand, form(k), form(h), n);
            const auto xy = std::make_shared<const Bimodule>(direct_sum(*parts[0].summand, *parts[1].summand));
            const Matrix pair = tmatrix(xy, form(k), form(h), n);
            EXPECT_EQ(whole, sum) << name << " n=" << n;
            EXPECT_EQ(pair, tmatrix(parts[0].summand, form(k), form(h), n) +
                                tmatrix(parts[1].summand, form(k), form(h), n))
                << name << " n=" << n;
        }
    }
}

TEST(Transfer, ChoiceIndependence) {
    for (const std::string name : {"f2_s3", "f3_s3", "f2_m2_c2"}) {
        const Graded g(name);
        const auto subs = all_subgroups(g.spec.group);
        const GradedAlgebra h = component_subalgebra(*g.spec.algebra, subs[1]);
        const std::vector<std::tuple<BimodulePtr, Vec, Vec>> cases = {
            {g.bimodule(g.whole, g.all(), h), form(g.whole), form(h)},
            {g.bimodule(h, g.all(), g.whole), form(h), form(g.whole)},
        };
        for (const auto& [m, sa, sb] : cases) {
            TransferOptions reversed;
            reversed.generator_order.resize(m->dim());
            std::iota(reversed.generator_order.rbegin(), reversed.generator_order.rend(), std::size_t{0});
            TransferOptions solve;
            solve.method = LiftMethod::Solve;
            const TransferData base(m, sa, sb, 2);
            const TransferData other(m, sa, sb, 2, MemoryBudget(), reversed);
            EXPECT_NE(base.dual_basis().generators, other.dual_basis().generators);
            EXPECT_TRUE(other.check_invariants().pass());
            for (std::size_t n = 0; n <= 2; ++n) {
                const HHClasses src(m->right_ptr(), n), dst(m->left_ptr(), n);
                const Matrix t = transfer_matrix(base, src, dst);
                EXPECT_EQ(t, transfer_matrix(other, src, dst)) << name << " n=" << n;
                EXPECT_EQ(t, tmatrix(m, sa, sb, n, solve)) << name << " n=" << n;
                if (n == 0) continue;
                const CochainComplex cb(m->right_ptr());
                for (std::size_t i = 0; i < src.dim(); ++i) {
                    const Vec xi = random_vec(g.spec.field, cb.dim(n - 1), 97 + i);
                    const Vec shifted = vec::add(g.spec.field, src.representatives()[i], cb.apply(n - 1, xi));
                    const Vec img = base.transfer_cochain(n, shifted);
                    EXPECT_EQ(dst.class_of(img), t.column(i)) << name << " n=" << n;
                }
            }
        }
    }
}

TEST(Transfer, SolveLiftSatisfiesChainMap) {
    const Graded g("f3_s3");
    const GradedAlgebra h = g.sub({0, 3, 4});
    TransferOptions solve;
    solve.method = LiftMethod::Solve;
    const TransferData data(g.bimodule(h, g.all(), g.whole), form(h), form(g.whole), 2, MemoryBudget(), solve);
    EXPECT_TRUE(data.check_invariants().pass());
}

TEST(Transfer, RejectsNonProjective) {
    const Graded g("f2_c2");
    const AlgebraPtr a = g.spec.algebra->algebra_ptr();
    const AlgebraPtr k = std::make_shared<const Algebra>(Algebra::ground_field(g.spec.field));
    const Matrix one = Matrix::identity(g.spec.field, 1);
    const auto triv = std::make_shared<const Bimodule>(a, k, 1, std::vector<Matrix>{one, one}, std::vector<Matrix>{one});
    EXPECT_THROW(TransferData(triv, form(g.whole), Vec{1}, 1), ValidationError);
}
