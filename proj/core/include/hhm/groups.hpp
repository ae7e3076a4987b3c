#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hhm {

/// A finite group given by its Cayley table. Elements are the indices 0..n-1 and the
/// identity is always 0. `mul(a, b)` is the product with a as left factor.
class FiniteGroup {
public:
    static constexpr std::size_t kMaxOrder = 120;

    static FiniteGroup cyclic(std::size_t n);
    /// Dihedral group of order 2n; element r^i s^j has index i + n*j.
    static FiniteGroup dihedral(std::size_t n);
    /// Symmetric group on n <= 5 points. Elements are permutations in one-line notation in
    /// lexicographic order, composed as (s*t)(x) = s(t(x)).
    static FiniteGroup symmetric(std::size_t n);
    /// Element (a, b) has index a * |b-factor| + b.
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
    /// Validates the table; relabels so that the identity is index 0.
    static FiniteGroup from_table(std::vector<std::vector<std::size_t>> table,
                                  std::string name = "table");

    std::size_t order() const noexcept { return table_.size(); }
    std::size_t identity() const noexcept { return 0; }
    std::size_t mul(std::size_t a, std::size_t b) const noexcept { return table_[a][b]; }
    std::size_t inv(std::size_t a) const noexcept { return inverse_[a]; }
    /// g x g^-1
    std::size_t conj(std::size_t g, std::size_t x) const noexcept { return mul(mul(g, x), inv(g)); }
    std::size_t element_order(std::size_t a) const noexcept;

    const std::string& name() const noexcept { return name_; }
    const std::string& label(std::size_t a) const { return labels_.at(a); }
    const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }

    /// Classes ordered by their minimal element; each class sorted.
    std::vector<std::vector<std::size_t>> conjugacy_classes() const;

private:
    FiniteGroup(std::string name, std::vector<std::vector<std::size_t>> table, std::vector<std::string> labels);

    std::string name_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inverse_;
    std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr make_group(FiniteGroup g);

/// A subgroup stored as the sorted list of its element indices.
class Subgroup {
public:
    Subgroup() = default;
    /// Validates closure; `elements` need not be sorted.
    Subgroup(GroupPtr parent, std::vector<std::size_t> elements);

    static Subgroup whole(GroupPtr parent);
    static Subgroup trivial(GroupPtr parent);

    const GroupPtr& parent() const noexcept { return parent_; }
    const FiniteGroup& group() const noexcept { return *parent_; }
    const std::vector<std::size_t>& elements() const noexcept { return elements_; }
    std::size_t order() const noexcept { return elements_.size(); }
    bool contains(std::size_t x) const noexcept { return x < member_.size() && member_[x]; }
    bool is_subgroup_of(const Subgroup& other) const noexcept;
    std::string describe() const;

    friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept {
        return a.parent_ == b.parent_ && a.elements_ == b.elements_;
    }
    /// Orders by (order, element list).
    friend std::strong_ordering operator<=>(const Subgroup& a, const Subgroup& b) noexcept {
        if (auto c = a.elements_.size() <=> b.elements_.size(); c != 0) return c;
        return a.elements_ <=> b.elements_;
    }

private:
    GroupPtr parent_;
    std::vector<std::size_t> elements_;
    std::vector<bool> member_;
};

enum class CosetSide { Left, Right };

Subgroup subgroup_generated(const GroupPtr& group, std::span<const std::size_t> generators);
/// {g h g^-1 : h in H}
Subgroup conjugate_subgroup(std::size_t g, const Subgroup& h);
Subgroup intersect(const Subgroup& k, const Subgroup& h);

/// Sorted elements of gH.
std::vector<std::size_t> left_coset(std::size_t g, const Subgroup& h);
/// Sorted elements of Kg.
std::vector<std::size_t> right_coset(const Subgroup& k, std::size_t g);
/// Sorted elements of KgH.
std::vector<std::size_t> double_coset(const Subgroup& k, std::size_t g, const Subgroup& h);

/// Minimal-index representatives of the left cosets gH (Left) or right cosets Hg (Right), ascending.
std::vector<std::size_t> coset_reps(const Subgroup& h, CosetSide side);
/// Minimal-index representatives of the double cosets KgH, ascending.
std::vector<std::size_t> double_coset_reps(const Subgroup& k, const Subgroup& h);

/// Every subgroup, ordered by (order, element list).
std::vector<Subgroup> all_subgroups(const GroupPtr& group);

} // namespace hhm
