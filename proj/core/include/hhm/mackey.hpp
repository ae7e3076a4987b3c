#pragma once

#include "hhm/hh.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hhm {

struct MackeyOptions {
    LiftMethod method = LiftMethod::Homotopy;
    /// When set, the free-cover generators of every bimodule are shuffled with this seed.
    std::optional<std::uint64_t> generator_shuffle;
};

/// The restriction, transfer and conjugation maps between HH^*(R_H) for the subgroups H of G,
/// each realized as t_M for a truncation bimodule of R_G. Everything is cached.
///
/// Forms on the component subalgebras are restrictions of one symmetrizing form of R_G.
class MackeySystem {
public:
    MackeySystem(GradedAlgebraPtr root, std::size_t max_degree, const MemoryBudget& budget = MemoryBudget(),
                 MackeyOptions options = {}, std::uint64_t seed = 0);

    const GradedAlgebra& root() const noexcept { return *root_; }
    const FiniteGroup& group() const noexcept { return *root_->group(); }
    Subgroup whole() const { return Subgroup::whole(root_->group()); }
    std::size_t max_degree() const noexcept { return max_degree_; }
    const Vec& root_form() const noexcept { return form_; }

    const GradedAlgebra& component(const Subgroup& h);
    const Vec& form(const Subgroup& h);
    const HHClasses& cohomology(const Subgroup& h, std::size_t n);

    /// r^H_K : HH^n(R_H) -> HH^n(R_K), K <= H.
    const Matrix& restriction(const Subgroup& h, const Subgroup& k, std::size_t n);
    /// t^H_K : HH^n(R_K) -> HH^n(R_H), K <= H.
    const Matrix& transfer_up(const Subgroup& k, const Subgroup& h, std::size_t n);
    /// c_{g,H} : HH^n(R_H) -> HH^n(R_{gHg^-1}).
    const Matrix& conjugation(std::size_t g, const Subgroup& h, std::size_t n);

    /// Transfer data of R_[slice] as an R_left - R_right bimodule.
    const TransferData& transfer_data(const Subgroup& left, std::span<const std::size_t> slice,
                                      const Subgroup& right);

private:
    using Key = std::tuple<std::vector<std::size_t>, std::vector<std::size_t>, std::vector<std::size_t>>;

    const Matrix& map(const Subgroup& left, std::vector<std::size_t> slice, const Subgroup& right, std::size_t n);

    GradedAlgebraPtr root_;
    std::size_t max_degree_;
    MemoryBudget budget_;
    MackeyOptions options_;
    Vec form_;
    std::map<std::vector<std::size_t>, std::shared_ptr<const GradedAlgebra>> components_;
    std::map<std::vector<std::size_t>, Vec> forms_;
    std::map<std::pair<std::vector<std::size_t>, std::size_t>, std::unique_ptr<HHClasses>> cohomology_;
    std::map<Key, std::unique_ptr<TransferData>> transfers_;
    std::map<std::pair<Key, std::size_t>, Matrix> maps_;
};

enum class Axiom { I, II, III, IV, V, VI };

std::string axiom_name(Axiom a);
/// "i".."vi"; throws ParseError otherwise.
Axiom parse_axiom(const std::string& s);
std::vector<Axiom> all_axioms();

/// Subgroups and elements an axiom instance is about. Roles per axiom:
/// i, v: subgroups (K, H) with K <= H, v also elements (g);
/// ii: (H); iii: (H), elements (g, h); iv: (H), elements (h);
/// vi: (K, H), elements = double-coset representatives (empty means minimal ones).
struct AxiomInstance {
    std::vector<Subgroup> subgroups;
    std::vector<std::size_t> elements;
};

struct AxiomReport {
    Axiom axiom = Axiom::I;
    std::string part;  ///< which equality of the axiom
    AxiomInstance instance;
    std::size_t degree = 0;
    bool pass = false;
    Matrix lhs;
    Matrix rhs;
};

/// Builds both sides of every equality of the axiom at degree n and compares them.
std::vector<AxiomReport> verify_axiom(MackeySystem& sys, Axiom axiom, const AxiomInstance& instance, std::size_t n);

struct VerifySummary {
    std::vector<AxiomReport> reports;
    std::size_t failed = 0;
    double seconds = 0;
    bool pass() const noexcept { return failed == 0; }
};

/// Every admissible instance over `subgroups` (all subgroups when empty) for degrees 0..max_degree.
/// Instances are ordered by axiom, subgroup order (order, elements), element index, degree.
VerifySummary verify_all(MackeySystem& sys, const std::vector<Axiom>& axioms, std::vector<Subgroup> subgroups = {});

/// Maximal-index representatives of the double cosets KgH, in the order of the minimal ones.
std::vector<std::size_t> maximal_double_coset_reps(const Subgroup& k, const Subgroup& h);

} // namespace hhm
