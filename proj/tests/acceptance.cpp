// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include "corpus.hpp"
#include "hhm/error.hpp"
#include "hhm/mackey.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

using namespace hhm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

Vec form(const GradedAlgebra& a) { return symmetrizing_form(a).functional; }

GradedAlgebra component(const AlgebraSpec& s, const Subgroup& h) { return component_subalgebra(*s.algebra, h); }

BimodulePtr bimodule(const AlgebraSpec& s, const GradedAlgebra& l, std::span<const std::size_t> slice,
                     const GradedAlgebra& r) {
    return std::make_shared<const Bimodule>(truncation(*s.algebra, l, slice, r));
}

Matrix tmatrix(const BimodulePtr& m, const Vec& sa, const Vec& sb, std::size_t n, TransferOptions o = {}) {
    const TransferData d(m, sa, sb, n, MemoryBudget(), std::move(o));
    return transfer_matrix(d, HHClasses(m->right_ptr(), n), HHClasses(m->left_ptr(), n));
}

std::string summary(const VerifySummary& v) {
    return std::to_string(v.reports.size() - v.failed) + "/" + std::to_string(v.reports.size()) + " identities";
}

Outcome criterion1() {
    Outcome o;
    std::size_t identities = 0;
    for (const std::string name : {"f2_c2", "f3_c2", "f2_c3", "f3_c3", "f2_c2xc2", "f3_c2xc2", "f2_s3", "f3_s3"}) {
        MackeySystem sys(corpus::load(name).algebra, 2);
        const VerifySummary v = verify_all(sys, all_axioms());
        identities += v.reports.size();
        if (!v.pass()) o.fail(name + ": " + summary(v));
        for (Axiom a : all_axioms()) {
            const bool covered = std::any_of(v.reports.begin(), v.reports.end(),
                                             [&](const AxiomReport& r) { return r.axiom == a; });
            if (!covered) o.fail(name + ": axiom " + axiom_name(a) + " has no instance");
        }
    }
    if (o.pass) o.detail = std::to_string(identities) + " identities, 8 algebras, degrees 0..2";
    return o;
}

Outcome criterion2() {
    Outcome o;
    const AlgebraSpec s = corpus::load("f2_m2_c2");
    if (!check_fully_graded(*s.algebra).pass()) o.fail("not fully graded");
    const SymmetrizingForm f = symmetrizing_form(*s.algebra);
    if (!is_symmetrizing(s.algebra->algebra(), f.functional)) o.fail("form is not symmetrizing");
    MackeySystem sys(s.algebra, 1);
    const VerifySummary v = verify_all(sys, all_axioms());
    if (!v.pass()) o.fail("axioms: " + summary(v));
    if (o.pass) o.detail = "fully graded, symmetric, " + summary(v);
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::size_t count = 0;
    for (const std::string name : {"f2_s3", "f3_s3", "f2_m2_c2"}) {
        const AlgebraSpec s = corpus::load(name);
        const GroupPtr& g = s.group;
        const auto subs = all_subgroups(g);
        const GradedAlgebra whole = component(s, Subgroup::whole(g));
        const auto all = Subgroup::whole(g).elements();
        auto both = [](const Bimodule& m) {
            return is_projective(m, Side::Left).projective && is_projective(m, Side::Right).projective;
        };
        for (const Subgroup& h : subs) {
            const GradedAlgebra rh = component(s, h);
            if (!both(truncation(*s.algebra, rh, all, whole))) o.fail(name + ": M not projective " + h.describe());
            if (!both(truncation(*s.algebra, whole, all, rh))) o.fail(name + ": N not projective " + h.describe());
            for (std::size_t x = 0; x < g->order(); ++x) {
                const GradedAlgebra rc = component(s, conjugate_subgroup(x, h));
                if (!both(truncation(*s.algebra, rc, left_coset(x, h), rh)))
                    o.fail(name + ": P not projective g=" + std::to_string(x));
                count += 1;
            }
            for (std::size_t x = 0; x < g->order(); ++x) {
                for (const Subgroup& k : subs) {
                    if (!check_lemma2(lemma2_case_b(*s.algebra, k, x, h), lemma2_case_b(*s.algebra, k, x, h, true))
                             .pass())
                        o.fail(name + ": case b " + k.describe() + " g=" + std::to_string(x) + " " + h.describe());
                    ++count;
                }
                for (std::size_t y = 0; y < g->order(); ++y) {
                    if (!check_lemma2(lemma2_case_c(*s.algebra, x, y, h), lemma2_case_c(*s.algebra, x, y, h, true))
                             .pass())
                        o.fail(name + ": case c g=" + std::to_string(x) + " h=" + std::to_string(y) + " " +
                               h.describe());
                    ++count;
                }
            }
        }
    }
    if (o.pass) o.detail = std::to_string(count) + " instances";
    return o;
}

Outcome criterion4() {
    Outcome o;
    for (const std::string& name : corpus::names()) {
        const AlgebraSpec s = corpus::load(name);
        const auto r = std::make_shared<const Bimodule>(regular(s.algebra->algebra_ptr()));
        const Vec f = form(*s.algebra);
        const TransferData d(r, f, f, 3);
        for (std::size_t n = 0; n <= 3; ++n) {
            const HHClasses h(r->left_ptr(), n);
            if (!transfer_matrix(d, h, h).is_identity()) o.fail(name + ": t_regular != id at n=" + std::to_string(n));
        }
    }
    for (const std::string name : {"f2_s3", "f3_s3"}) {
        MackeySystem sys(corpus::load(name).algebra, 3);
        const Subgroup one = Subgroup::trivial(sys.root().group());
        const Subgroup h(sys.root().group(), {0, 2});
        const Subgroup g = sys.whole();
        for (std::size_t n = 0; n <= 3; ++n) {
            if (!(sys.restriction(h, one, n) * sys.restriction(g, h, n) == sys.restriction(g, one, n)))
                o.fail(name + ": restriction chain n=" + std::to_string(n));
            if (!(sys.transfer_up(h, g, n) * sys.transfer_up(one, h, n) == sys.transfer_up(one, g, n)))
                o.fail(name + ": transfer chain n=" + std::to_string(n));
        }
    }
    if (o.pass) o.detail = std::to_string(corpus::names().size()) + " algebras n<=3; chain 1 < <(12)> < S3 n<=3";
    return o;
}

Outcome criterion5() {
    Outcome o;
    std::size_t checks = 0;
    for (const std::string name : {"f2_s3", "f3_s3"}) {
        const AlgebraSpec s = corpus::load(name);
        const GradedAlgebra one = component(s, Subgroup::trivial(s.group));
        const GradedAlgebra h = component(s, Subgroup(s.group, {0, 2}));
        const GradedAlgebra g = component(s, Subgroup::whole(s.group));
        const auto all = g.support().elements();
        const auto hel = h.support().elements();
        for (std::size_t n = 0; n <= 2; ++n) {
            if (!compose_check(bimodule(s, one, hel, h), bimodule(s, h, all, g), form(one), form(h), form(g), n).pass)
                o.fail(name + ": composition (restriction) n=" + std::to_string(n));
            if (!compose_check(bimodule(s, g, all, h), bimodule(s, h, hel, one), form(g), form(h), form(one), n).pass)
                o.fail(name + ": composition (transfer) n=" + std::to_string(n));
            // Conjugation by (2 3) followed by transfer up to G.
            const Subgroup hs(s.group, {0, 2});
            const GradedAlgebra ch = component(s, conjugate_subgroup(1, hs));
            if (!compose_check(bimodule(s, ch, left_coset(1, hs), h), bimodule(s, h, all, g), form(ch), form(h),
                               form(g), n)
                     .pass)
                o.fail(name + ": composition (conjugation) n=" + std::to_string(n));
            checks += 3;
        }
    }
    for (const std::string name : {"f2_s3", "f3_s3", "f2_c2xc2"}) {
        const AlgebraSpec s = corpus::load(name);
        const auto subs = all_subgroups(s.group);
        for (const Subgroup& ks : subs)
            for (const Subgroup& hs : subs) {
                const GradedAlgebra k = component(s, ks);
                const GradedAlgebra h = component(s, hs);
                const auto parts = decompose_by_double_cosets(*s.algebra, k, h);
                if (parts.size() < 2) continue;
                const auto xy = std::make_shared<const Bimodule>(direct_sum(*parts[0].summand, *parts[1].summand));
                for (std::size_t n = 0; n <= 2; ++n) {
                    const Matrix lhs = tmatrix(xy, form(k), form(h), n);
                    const Matrix rhs =
                        tmatrix(parts[0].summand, form(k), form(h), n) + tmatrix(parts[1].summand, form(k), form(h), n);
                    if (!(lhs == rhs))
                        o.fail(name + ": additivity " + ks.describe() + " " + hs.describe() + " n=" + std::to_string(n));
                    ++checks;
                }
            }
    }
    if (o.pass) o.detail = std::to_string(checks) + " composition/additivity identities";
    return o;
}

Outcome criterion6() {
    Outcome o;
    const auto c2 = corpus::load("f2_c2").algebra->algebra_ptr();
    const auto c3 = corpus::load("f3_c3").algebra->algebra_ptr();
    const auto s3 = corpus::load("f7_s3");
    const auto o2 = oracle::truncated_polynomial_hh(2, 2, 3);
    const auto o3 = oracle::truncated_polynomial_hh(3, 3, 3);
    for (std::size_t n = 0; n <= 3; ++n) {
        const std::size_t d2 = cohomology(c2, n).dim(), d3 = cohomology(c3, n).dim();
        if (o2[n] != 2 || d2 != o2[n]) o.fail("F2[C2] n=" + std::to_string(n) + " got " + std::to_string(d2));
        if (o3[n] != 3 || d3 != o3[n]) o.fail("F3[C3] n=" + std::to_string(n) + " got " + std::to_string(d3));
    }
    const auto a = s3.algebra->algebra_ptr();
    if (oracle::class_count(s3.group->table()) != 3 || cohomology(a, 0).dim() != 3) o.fail("HH^0(F7[S3]) != 3");
    if (cohomology(a, 1).dim() != 0 || cohomology(a, 2).dim() != 0) o.fail("HH^{1,2}(F7[S3]) != 0");
    std::size_t traces = 0;
    for (const std::string name : {"f2_c2", "f3_c2", "f2_s3", "f3_s3", "f7_s3", "f2_c2xc2", "f2_d4"}) {
        const AlgebraSpec s = corpus::load(name);
        const GradedAlgebra g = component(s, Subgroup::whole(s.group));
        for (const Subgroup& hs : all_subgroups(s.group)) {
            const GradedAlgebra h = component(s, hs);
            const TransferData d(bimodule(s, g, g.support().elements(), h), form(g), form(h), 0);
            const HHClasses centre(h.algebra_ptr(), 0);
            for (const Vec& z : centre.representatives()) {
                const auto expected = oracle::relative_trace(s.group->table(), hs.elements(), vec::to_ints(z),
                                                             s.field.p());
                if (vec::to_ints(d.transfer_cochain(0, z)) != expected)
                    o.fail(name + ": relative trace from " + hs.describe());
                ++traces;
            }
        }
    }
    if (o.pass) o.detail = "HH dims match oracles; " + std::to_string(traces) + " relative traces";
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::size_t checks = 0;
    for (const std::string name : {"f2_s3", "f3_s3", "f2_m2_c2"}) {
        const AlgebraSpec s = corpus::load(name);
        const auto subs = all_subgroups(s.group);
        const GradedAlgebra g = component(s, Subgroup::whole(s.group));
        const auto all = g.support().elements();
        for (const Subgroup& hs : subs) {
            const GradedAlgebra h = component(s, hs);
            const std::vector<std::tuple<BimodulePtr, Vec, Vec>> cases = {
                {bimodule(s, g, all, h), form(g), form(h)},
                {bimodule(s, h, all, g), form(h), form(g)},
            };
            for (const auto& [m, sa, sb] : cases) {
                TransferOptions reversed;
                reversed.generator_order.resize(m->dim());
                std::iota(reversed.generator_order.rbegin(), reversed.generator_order.rend(), std::size_t{0});
                TransferOptions solve;
                solve.method = LiftMethod::Solve;
                const TransferData base(m, sa, sb, 2);
                const TransferData alt(m, sa, sb, 2, MemoryBudget(), reversed);
                const TransferData sol(m, sa, sb, 2, MemoryBudget(), solve);
                if (m->dim() > 1 && base.dual_basis().generators == alt.dual_basis().generators)
                    o.fail(name + ": permuted order did not change the dual basis");
                for (std::size_t n = 0; n <= 2; ++n) {
                    const HHClasses src(m->right_ptr(), n), dst(m->left_ptr(), n);
                    const Matrix t = transfer_matrix(base, src, dst);
                    if (!(t == transfer_matrix(alt, src, dst))) o.fail(name + ": dual basis dependence");
                    if (!(t == transfer_matrix(sol, src, dst))) o.fail(name + ": chain lift dependence");
                    if (n > 0) {
                        const CochainComplex cb(m->right_ptr());
                        for (std::size_t i = 0; i < src.dim(); ++i) {
                            Vec xi(cb.dim(n - 1));
                            for (std::size_t j = 0; j < xi.size(); ++j)
                                xi[j] = static_cast<Elem>((j * 7 + i * 3 + 1) % s.field.p());
                            const Vec shifted = vec::add(s.field, src.representatives()[i], cb.apply(n - 1, xi));
                            if (dst.class_of(base.transfer_cochain(n, shifted)) != t.column(i))
                                o.fail(name + ": coboundary shift changed the class");
                        }
                    }
                    checks += 3;
                }
            }
        }
        MackeySystem sys(s.algebra, 2);
        for (const Subgroup& k : subs)
            for (const Subgroup& h : subs)
                for (std::size_t n = 0; n <= 2; ++n) {
                    const auto a = verify_axiom(sys, Axiom::VI, {{k, h}, {}}, n);
                    const auto b = verify_axiom(sys, Axiom::VI, {{k, h}, maximal_double_coset_reps(k, h)}, n);
                    if (!(a[0].rhs == b[0].rhs) || !b[0].pass) o.fail(name + ": double coset representative dependence");
                    ++checks;
                }
    }
    if (o.pass) o.detail = std::to_string(checks) + " comparisons";
    return o;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion8() {
    Outcome o;
    const std::string cli = HHM_CLI_PATH;
    const std::string dir = std::string(HHM_WORK_DIR);
    std::string outputs[2];
    for (int i = 0; i < 2; ++i) {
        const std::string file = dir + "/determinism_" + std::to_string(i) + ".json";
        const std::string cmd = "\"" + cli + "\" verify --spec \"" + corpus::path("f2_s3") +
                                "\" --degree 2 --format json --seed 0 > \"" + file + "\"";
        const int rc = std::system(cmd.c_str());
        if (rc != 0) o.fail("verify exited with status " + std::to_string(rc));
        outputs[i] = slurp(file);
    }
    if (outputs[0].empty()) o.fail("empty report");
    if (outputs[0] != outputs[1]) o.fail("reports differ");
    if (o.pass) o.detail = "two reports of " + std::to_string(outputs[0].size()) + " bytes are identical";
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Mackey axioms i-vi on kG, G in {C2,C3,C2xC2,S3}, p in {2,3}, n<=2", criterion1},
        {"crossed product M2(F2) x C2: graded, symmetric, axioms n<=1", criterion2},
        {"truncation projectivity and Phi/Psi inverse pairs", criterion3},
        {"t_regular = id (n<=3) and restriction/transfer transitivity", criterion4},
        {"transfer composition and additivity", criterion5},
        {"HH dimensions and relative traces against oracles", criterion6},
        {"choice independence of transfer matrices", criterion7},
        {"byte-identical verify --format json --seed 0", criterion8},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %zu: %s  %s  [%s] (%.2fs)\n", i + 1, o.pass ? "PASS" : "FAIL",
                    criteria[i].first.c_str(), o.detail.c_str(), secs);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
