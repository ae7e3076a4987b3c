#include "hhm/mackey.hpp"

#include "hhm/error.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

namespace hhm {

MackeySystem::MackeySystem(GradedAlgebraPtr root, std::size_t max_degree, const MemoryBudget& budget,
                           MackeyOptions options, std::uint64_t seed)
    : root_(std::move(root)), max_degree_(max_degree), budget_(budget), options_(std::move(options)) {
    form_ = symmetrizing_form(*root_, seed).functional;
}

const GradedAlgebra& MackeySystem::component(const Subgroup& h) {
    auto it = components_.find(h.elements());
    if (it == components_.end()) {
        auto c = std::make_shared<const GradedAlgebra>(component_subalgebra(*root_, h));
        c->validate();
        it = components_.emplace(h.elements(), std::move(c)).first;
    }
    return *it->second;
}

const Vec& MackeySystem::form(const Subgroup& h) {
    auto it = forms_.find(h.elements());
    if (it == forms_.end()) {
        const GradedAlgebra& c = component(h);
        Vec s(c.dim());
        for (std::size_t i = 0; i < c.dim(); ++i) s[i] = form_[c.ambient_index()[i]];
        if (!is_symmetrizing(c.algebra(), s))
            throw ValidationError("restriction of the symmetrizing form to R_" + h.describe() + " is degenerate");
        it = forms_.emplace(h.elements(), std::move(s)).first;
    }
    return it->second;
}

const HHClasses& MackeySystem::cohomology(const Subgroup& h, std::size_t n) {
    auto key = std::make_pair(h.elements(), n);
    auto it = cohomology_.find(key);
    if (it == cohomology_.end())
        it = cohomology_.emplace(key, std::make_unique<HHClasses>(component(h).algebra_ptr(), n, budget_)).first;
    return *it->second;
}

const TransferData& MackeySystem::transfer_data(const Subgroup& left, std::span<const std::size_t> slice,
                                                const Subgroup& right) {
    Key key{left.elements(), {slice.begin(), slice.end()}, right.elements()};
    auto it = transfers_.find(key);
    if (it != transfers_.end()) return *it->second;
    const GradedAlgebra& l = component(left);
    const GradedAlgebra& r = component(right);
    auto m = std::make_shared<const Bimodule>(truncation(*root_, l, slice, r));
    TransferOptions opts;
    opts.method = options_.method;
    if (options_.generator_shuffle) {
        opts.generator_order.resize(m->dim());
        std::iota(opts.generator_order.begin(), opts.generator_order.end(), std::size_t{0});
        std::mt19937_64 rng(*options_.generator_shuffle);
        std::shuffle(opts.generator_order.begin(), opts.generator_order.end(), rng);
    }
    auto data = std::make_unique<TransferData>(m, form(left), form(right), max_degree_, budget_, std::move(opts));
    return *transfers_.emplace(std::move(key), std::move(data)).first->second;
}

const Matrix& MackeySystem::map(const Subgroup& left, std::vector<std::size_t> slice, const Subgroup& right,
                                std::size_t n) {
    if (n > max_degree_) throw std::invalid_argument("degree above the system bound");
    auto key = std::make_pair(Key{left.elements(), slice, right.elements()}, n);
    auto it = maps_.find(key);
    if (it != maps_.end()) return it->second;
    const TransferData& data = transfer_data(left, slice, right);
    Matrix m = transfer_matrix(data, cohomology(right, n), cohomology(left, n));
    return maps_.emplace(std::move(key), std::move(m)).first->second;
}

const Matrix& MackeySystem::restriction(const Subgroup& h, const Subgroup& k, std::size_t n) {
    if (!k.is_subgroup_of(h)) throw std::invalid_argument("restriction: K is not a subgroup of H");
    return map(k, h.elements(), h, n);
}

const Matrix& MackeySystem::transfer_up(const Subgroup& k, const Subgroup& h, std::size_t n) {
    if (!k.is_subgroup_of(h)) throw std::invalid_argument("transfer: K is not a subgroup of H");
    return map(h, h.elements(), k, n);
}

const Matrix& MackeySystem::conjugation(std::size_t g, const Subgroup& h, std::size_t n) {
    return map(conjugate_subgroup(g, h), left_coset(g, h), h, n);
}

// ---------------------------------------------------------------------------------------------

std::string axiom_name(Axiom a) {
    static const char* names[] = {"i", "ii", "iii", "iv", "v", "vi"};
    return names[static_cast<int>(a)];
}

Axiom parse_axiom(const std::string& s) {
    for (Axiom a : all_axioms())
        if (axiom_name(a) == s) return a;
    throw ParseError("unknown axiom '" + s + "' (expected one of i, ii, iii, iv, v, vi)");
}

std::vector<Axiom> all_axioms() { return {Axiom::I, Axiom::II, Axiom::III, Axiom::IV, Axiom::V, Axiom::VI}; }

std::vector<std::size_t> maximal_double_coset_reps(const Subgroup& k, const Subgroup& h) {
    std::vector<std::size_t> out;
    for (std::size_t g : double_coset_reps(k, h)) out.push_back(double_coset(k, g, h).back());
    return out;
}

namespace {

AxiomReport compare(Axiom axiom, std::string part, const AxiomInstance& inst, std::size_t n, Matrix lhs,
                    Matrix rhs) {
    AxiomReport r;
    r.axiom = axiom;
    r.part = std::move(part);
    r.instance = inst;
    r.degree = n;
    r.pass = lhs == rhs;
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    return r;
}

Matrix identity_on(MackeySystem& sys, const Subgroup& h, std::size_t n) {
    return Matrix::identity(sys.root().algebra().field(), sys.cohomology(h, n).dim());
}

Matrix zero_map(MackeySystem& sys, const Subgroup& to, const Subgroup& from, std::size_t n) {
    return Matrix(sys.root().algebra().field(), sys.cohomology(to, n).dim(), sys.cohomology(from, n).dim());
}

} // namespace

std::vector<AxiomReport> verify_axiom(MackeySystem& sys, Axiom axiom, const AxiomInstance& inst, std::size_t n) {
    const Subgroup g_all = sys.whole();
    const FiniteGroup& grp = sys.group();
    auto need = [&](std::size_t subgroups, std::size_t elements) {
        if (inst.subgroups.size() != subgroups || inst.elements.size() < elements)
            throw std::invalid_argument("axiom " + axiom_name(axiom) + ": malformed instance");
    };
    std::vector<AxiomReport> out;
    switch (axiom) {
    case Axiom::I: {
        need(2, 0);
        const Subgroup& k = inst.subgroups[0];
        const Subgroup& h = inst.subgroups[1];
        out.push_back(compare(axiom, "r", inst, n, sys.restriction(h, k, n) * sys.restriction(g_all, h, n),
                              sys.restriction(g_all, k, n)));
        out.push_back(compare(axiom, "t", inst, n, sys.transfer_up(h, g_all, n) * sys.transfer_up(k, h, n),
                              sys.transfer_up(k, g_all, n)));
        break;
    }
    case Axiom::II: {
        need(1, 0);
        const Subgroup& h = inst.subgroups[0];
        out.push_back(compare(axiom, "r", inst, n, sys.restriction(h, h, n), identity_on(sys, h, n)));
        out.push_back(compare(axiom, "t", inst, n, sys.transfer_up(h, h, n), identity_on(sys, h, n)));
        break;
    }
    case Axiom::III: {
        need(1, 2);
        const Subgroup& h = inst.subgroups[0];
        const std::size_t g = inst.elements[0];
        const std::size_t x = inst.elements[1];
        const Subgroup hx = conjugate_subgroup(x, h);
        out.push_back(compare(axiom, "c", inst, n, sys.conjugation(grp.mul(g, x), h, n),
                              sys.conjugation(g, hx, n) * sys.conjugation(x, h, n)));
        break;
    }
    case Axiom::IV: {
        need(1, 1);
        const Subgroup& h = inst.subgroups[0];
        if (!h.contains(inst.elements[0])) throw std::invalid_argument("axiom iv: element outside H");
        out.push_back(compare(axiom, "c", inst, n, sys.conjugation(inst.elements[0], h, n), identity_on(sys, h, n)));
        break;
    }
    case Axiom::V: {
        need(2, 1);
        const Subgroup& k = inst.subgroups[0];
        const Subgroup& h = inst.subgroups[1];
        const std::size_t g = inst.elements[0];
        const Subgroup gk = conjugate_subgroup(g, k);
        const Subgroup gh = conjugate_subgroup(g, h);
        out.push_back(compare(axiom, "cr", inst, n, sys.conjugation(g, k, n) * sys.restriction(h, k, n),
                              sys.restriction(gh, gk, n) * sys.conjugation(g, h, n)));
        out.push_back(compare(axiom, "ct", inst, n, sys.conjugation(g, h, n) * sys.transfer_up(k, h, n),
                              sys.transfer_up(gk, gh, n) * sys.conjugation(g, k, n)));
        break;
    }
    case Axiom::VI: {
        need(2, 0);
        const Subgroup& k = inst.subgroups[0];
        const Subgroup& h = inst.subgroups[1];
        std::vector<std::size_t> reps = inst.elements;
        if (reps.empty()) reps = double_coset_reps(k, h);
        Matrix rhs = zero_map(sys, k, h, n);
        for (std::size_t g : reps) {
            const Subgroup gh = conjugate_subgroup(g, h);
            const Subgroup meet = intersect(k, gh);
            rhs = rhs + sys.transfer_up(meet, k, n) * sys.restriction(gh, meet, n) * sys.conjugation(g, h, n);
        }
        out.push_back(compare(axiom, "mackey", inst, n,
                              sys.restriction(g_all, k, n) * sys.transfer_up(h, g_all, n), std::move(rhs)));
        break;
    }
    }
    return out;
}

VerifySummary verify_all(MackeySystem& sys, const std::vector<Axiom>& axioms, std::vector<Subgroup> subgroups) {
    const auto start = std::chrono::steady_clock::now();
    if (subgroups.empty()) subgroups = all_subgroups(sys.root().group());
    std::sort(subgroups.begin(), subgroups.end());
    subgroups.erase(std::unique(subgroups.begin(), subgroups.end()), subgroups.end());
    const std::size_t order = sys.group().order();

    std::vector<AxiomInstance> instances;
    VerifySummary summary;
    for (Axiom axiom : axioms) {
        instances.clear();
        switch (axiom) {
        case Axiom::I:
        case Axiom::V:
            for (const Subgroup& h : subgroups)
                for (const Subgroup& k : subgroups) {
                    if (!k.is_subgroup_of(h)) continue;
                    if (axiom == Axiom::I) instances.push_back({{k, h}, {}});
                    else
                        for (std::size_t g = 0; g < order; ++g) instances.push_back({{k, h}, {g}});
                }
            break;
        case Axiom::II:
            for (const Subgroup& h : subgroups) instances.push_back({{h}, {}});
            break;
        case Axiom::III:
            for (const Subgroup& h : subgroups)
                for (std::size_t g = 0; g < order; ++g)
                    for (std::size_t x = 0; x < order; ++x) instances.push_back({{h}, {g, x}});
            break;
        case Axiom::IV:
            for (const Subgroup& h : subgroups)
                for (std::size_t x : h.elements()) instances.push_back({{h}, {x}});
            break;
        case Axiom::VI:
            for (const Subgroup& k : subgroups)
                for (const Subgroup& h : subgroups) instances.push_back({{k, h}, {}});
            break;
        }
        for (const AxiomInstance& inst : instances)
            for (std::size_t n = 0; n <= sys.max_degree(); ++n)
                for (AxiomReport& r : verify_axiom(sys, axiom, inst, n)) {
                    if (!r.pass) ++summary.failed;
                    summary.reports.push_back(std::move(r));
                }
    }
    summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

} // namespace hhm
