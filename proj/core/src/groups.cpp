#include "hhm/groups.hpp"

#include "hhm/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hhm {

namespace {

std::string cycle_label(const std::vector<std::size_t>& perm) {
    std::vector<bool> seen(perm.size(), false);
    std::ostringstream os;
    for (std::size_t s = 0; s < perm.size(); ++s) {
        if (seen[s] || perm[s] == s) continue;
        os << '(';
        std::size_t x = s;
        bool first = true;
        while (!seen[x]) {
            seen[x] = true;
            if (!first) os << ' ';
            os << x + 1;
            first = false;
            x = perm[x];
        }
        os << ')';
    }
    const std::string out = os.str();
    return out.empty() ? "()" : out;
}

} // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<std::size_t>> table,
                         std::vector<std::string> labels)
    : name_(std::move(name)), table_(std::move(table)), labels_(std::move(labels)) {
    const std::size_t n = table_.size();
    if (n == 0) throw ValidationError("not a group: empty table");
    if (n > kMaxOrder) throw ValidationError("group order " + std::to_string(n) + " exceeds supported maximum");
    for (std::size_t a = 0; a < n; ++a) {
        if (table_[a].size() != n) throw ValidationError("not a group: Cayley table is not square");
        std::vector<bool> seen(n, false);
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t c = table_[a][b];
            if (c >= n) throw ValidationError("not a group: entry out of range in row " + std::to_string(a));
            if (seen[c]) throw ValidationError("not a group: row " + std::to_string(a) + " repeats an entry");
            seen[c] = true;
        }
    }
    for (std::size_t b = 0; b < n; ++b) {
        std::vector<bool> seen(n, false);
        for (std::size_t a = 0; a < n; ++a) {
            if (seen[table_[a][b]])
                throw ValidationError("not a group: column " + std::to_string(b) + " repeats an entry");
            seen[table_[a][b]] = true;
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        if (table_[0][x] != x || table_[x][0] != x)
            throw ValidationError("not a group: index 0 is not a two-sided identity");
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
                    std::ostringstream os;
                    os << "not a group: associativity fails at (" << a << ", " << b << ", " << c << ")";
                    throw ValidationError(os.str());
                }
    inverse_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (table_[a][b] == 0) inverse_[a] = b;
    if (labels_.size() != n) {
        labels_.resize(n);
        for (std::size_t a = 0; a < n; ++a) labels_[a] = std::to_string(a);
    }
}

GroupPtr make_group(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    if (n == 0) throw std::invalid_argument("cyclic: order must be positive");
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
        labels[a] = a == 0 ? "1" : (a == 1 ? "x" : "x^" + std::to_string(a));
        for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    }
    return FiniteGroup("C" + std::to_string(n), std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
    if (n == 0) throw std::invalid_argument("dihedral: n must be positive");
    const std::size_t order = 2 * n;
    std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
    std::vector<std::string> labels(order);
    for (std::size_t x = 0; x < order; ++x) {
        const std::size_t i = x % n, a = x / n;
        std::string r = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
        labels[x] = a == 0 ? (r.empty() ? "1" : r) : (r.empty() ? "s" : r + "s");
        for (std::size_t y = 0; y < order; ++y) {
            const std::size_t k = y % n, b = y / n;
            // (r^i s^a)(r^k s^b) = r^(i + (-1)^a k) s^(a+b)
            const std::size_t rot = a == 0 ? (i + k) % n : (i + n - k) % n;
            t[x][y] = rot + n * ((a + b) % 2);
        }
    }
    return FiniteGroup("D" + std::to_string(order), std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
    if (n == 0 || n > 5) throw std::invalid_argument("symmetric: supported for 1 <= n <= 5");
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const std::size_t order = perms.size();
    auto index_of = [&](const std::vector<std::size_t>& q) {
        return static_cast<std::size_t>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
    std::vector<std::string> labels(order);
    std::vector<std::size_t> comp(n);
    for (std::size_t a = 0; a < order; ++a) {
        labels[a] = cycle_label(perms[a]);
        for (std::size_t b = 0; b < order; ++b) {
            for (std::size_t x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
            t[a][b] = index_of(comp);
        }
    }
    return FiniteGroup("S" + std::to_string(n), std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const std::size_t na = a.order(), nb = b.order();
    std::vector<std::vector<std::size_t>> t(na * nb, std::vector<std::size_t>(na * nb));
    std::vector<std::string> labels(na * nb);
    for (std::size_t x = 0; x < na * nb; ++x) {
        labels[x] = "(" + a.label(x / nb) + "," + b.label(x % nb) + ")";
        for (std::size_t y = 0; y < na * nb; ++y)
            t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    }
    return FiniteGroup(a.name() + "x" + b.name(), std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<std::size_t>> table, std::string name) {
    const std::size_t n = table.size();
    if (n == 0) throw ValidationError("not a group: empty table");
    for (const auto& row : table)
        if (row.size() != n) throw ValidationError("not a group: Cayley table is not square");
    for (const auto& row : table)
        for (auto v : row)
            if (v >= n) throw ValidationError("not a group: entry out of range");
    std::size_t e = n;
    for (std::size_t c = 0; c < n && e == n; ++c) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) ok = table[c][x] == x && table[x][c] == x;
        if (ok) e = c;
    }
    if (e == n) throw ValidationError("not a group: no identity element");
    std::vector<std::size_t> relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::swap(relabel[0], relabel[e]);
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
        labels[relabel[a]] = std::to_string(a);
        for (std::size_t b = 0; b < n; ++b) t[relabel[a]][relabel[b]] = relabel[table[a][b]];
    }
    return FiniteGroup(std::move(name), std::move(t), std::move(labels));
}

std::size_t FiniteGroup::element_order(std::size_t a) const noexcept {
    std::size_t k = 1;
    for (std::size_t x = a; x != 0; x = mul(x, a)) ++k;
    return a == 0 ? 1 : k;
}

std::vector<std::vector<std::size_t>> FiniteGroup::conjugacy_classes() const {
    std::vector<bool> seen(order(), false);
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t x = 0; x < order(); ++x) {
        if (seen[x]) continue;
        std::set<std::size_t> cls;
        for (std::size_t g = 0; g < order(); ++g) cls.insert(conj(g, x));
        for (auto y : cls) seen[y] = true;
        classes.emplace_back(cls.begin(), cls.end());
    }
    return classes;
}

// ---------------------------------------------------------------------------------------------

Subgroup::Subgroup(GroupPtr parent, std::vector<std::size_t> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)) {
    if (!parent_) throw std::invalid_argument("Subgroup: null parent group");
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    member_.assign(parent_->order(), false);
    for (auto x : elements_) {
        if (x >= parent_->order()) throw ValidationError("Subgroup: element out of range");
        member_[x] = true;
    }
    if (elements_.empty() || !member_[0]) throw ValidationError("Subgroup: does not contain the identity");
    for (auto a : elements_) {
        if (!member_[parent_->inv(a)]) throw ValidationError("Subgroup: not closed under inverses");
        for (auto b : elements_)
            if (!member_[parent_->mul(a, b)]) throw ValidationError("Subgroup: not closed under products");
    }
}

Subgroup Subgroup::whole(GroupPtr parent) {
    std::vector<std::size_t> all(parent->order());
    std::iota(all.begin(), all.end(), 0);
    return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::trivial(GroupPtr parent) { return Subgroup(std::move(parent), {0}); }

bool Subgroup::is_subgroup_of(const Subgroup& other) const noexcept {
    if (parent_ != other.parent_) return false;
    return std::all_of(elements_.begin(), elements_.end(), [&](std::size_t x) { return other.contains(x); });
}

std::string Subgroup::describe() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < elements_.size(); ++i) os << (i ? "," : "") << elements_[i];
    os << '}';
    return os.str();
}

Subgroup subgroup_generated(const GroupPtr& group, std::span<const std::size_t> generators) {
    std::vector<bool> in(group->order(), false);
    std::vector<std::size_t> elems{0};
    in[0] = true;
    for (auto g : generators) {
        if (g >= group->order()) throw std::invalid_argument("subgroup_generated: generator out of range");
    }
    // closure under right multiplication by generators suffices in a finite group
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (auto g : generators) {
            const std::size_t y = group->mul(elems[i], g);
            if (!in[y]) {
                in[y] = true;
                elems.push_back(y);
            }
        }
    }
    return Subgroup(group, std::move(elems));
}

Subgroup conjugate_subgroup(std::size_t g, const Subgroup& h) {
    const FiniteGroup& G = h.group();
    std::vector<std::size_t> out;
    out.reserve(h.order());
    for (auto x : h.elements()) out.push_back(G.conj(g, x));
    return Subgroup(h.parent(), std::move(out));
}

Subgroup intersect(const Subgroup& k, const Subgroup& h) {
    if (k.parent() != h.parent()) throw std::invalid_argument("intersect: subgroups of different groups");
    std::vector<std::size_t> out;
    std::set_intersection(k.elements().begin(), k.elements().end(), h.elements().begin(), h.elements().end(),
                          std::back_inserter(out));
    return Subgroup(k.parent(), std::move(out));
}

std::vector<std::size_t> left_coset(std::size_t g, const Subgroup& h) {
    std::vector<std::size_t> out;
    for (auto x : h.elements()) out.push_back(h.group().mul(g, x));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> right_coset(const Subgroup& k, std::size_t g) {
    std::vector<std::size_t> out;
    for (auto x : k.elements()) out.push_back(k.group().mul(x, g));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> double_coset(const Subgroup& k, std::size_t g, const Subgroup& h) {
    if (k.parent() != h.parent()) throw std::invalid_argument("double_coset: subgroups of different groups");
    const FiniteGroup& G = h.group();
    std::vector<bool> in(G.order(), false);
    for (auto a : k.elements())
        for (auto b : h.elements()) in[G.mul(G.mul(a, g), b)] = true;
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < G.order(); ++x)
        if (in[x]) out.push_back(x);
    return out;
}

std::vector<std::size_t> coset_reps(const Subgroup& h, CosetSide side) {
    const FiniteGroup& G = h.group();
    std::vector<bool> covered(G.order(), false);
    std::vector<std::size_t> reps;
    for (std::size_t g = 0; g < G.order(); ++g) {
        if (covered[g]) continue;
        reps.push_back(g);
        for (auto x : h.elements()) covered[side == CosetSide::Left ? G.mul(g, x) : G.mul(x, g)] = true;
    }
    return reps;
}

std::vector<std::size_t> double_coset_reps(const Subgroup& k, const Subgroup& h) {
    const FiniteGroup& G = h.group();
    std::vector<bool> covered(G.order(), false);
    std::vector<std::size_t> reps;
    for (std::size_t g = 0; g < G.order(); ++g) {
        if (covered[g]) continue;
        reps.push_back(g);
        for (auto x : double_coset(k, g, h)) covered[x] = true;
    }
    return reps;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& group) {
    std::set<std::vector<std::size_t>> seen;
    std::vector<Subgroup> found;
    std::vector<std::size_t> trivial{0};
    found.emplace_back(group, trivial);
    seen.insert(trivial);
    for (std::size_t i = 0; i < found.size(); ++i) {
        const Subgroup current = found[i];
        for (std::size_t x = 0; x < group->order(); ++x) {
            if (current.contains(x)) continue;
            std::vector<std::size_t> gens = current.elements();
            gens.push_back(x);
            Subgroup next = subgroup_generated(group, gens);
            if (seen.insert(next.elements()).second) found.push_back(std::move(next));
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

} // namespace hhm
