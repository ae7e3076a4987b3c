#include "hhm/spec_io.hpp"

#include "hhm/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace hhm {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
    return j.at(key);
}

std::int64_t as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
    return j.get<std::int64_t>();
}

std::size_t as_size(const json& j, const std::string& where) {
    const std::int64_t v = as_int(j, where);
    if (v < 0) throw ParseError(where + ": expected a nonnegative integer");
    return static_cast<std::size_t>(v);
}

Vec as_vec(const PrimeField& f, const json& j, std::size_t len, const std::string& where) {
    if (!j.is_array() || j.size() != len)
        throw ParseError(where + ": expected an array of length " + std::to_string(len));
    Vec v(len);
    for (std::size_t i = 0; i < len; ++i) v[i] = f.from_int(as_int(j[i], where));
    return v;
}

Matrix as_matrix(const PrimeField& f, const json& j, std::size_t n, const std::string& where) {
    if (!j.is_array() || j.size() != n) throw ParseError(where + ": expected " + std::to_string(n) + " rows");
    Matrix m(f, n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const Vec row = as_vec(f, j[r], n, where);
        for (std::size_t c = 0; c < n; ++c) m(r, c) = row[c];
    }
    return m;
}

FiniteGroup table_group(const json& j, const std::string& name) {
    const std::size_t n = as_size(require(j, "order", "group"), "group.order");
    const json& t = require(j, "table", "group");
    if (!t.is_array() || t.size() != n) throw ParseError("group.table: expected " + std::to_string(n) + " rows");
    std::vector<std::vector<std::size_t>> table(n);
    for (std::size_t r = 0; r < n; ++r) {
        if (!t[r].is_array() || t[r].size() != n)
            throw ParseError("group.table: row " + std::to_string(r) + " has wrong length");
        for (const json& x : t[r]) table[r].push_back(as_size(x, "group.table"));
    }
    return FiniteGroup::from_table(std::move(table), name);
}

FiniteGroup parse_group(const json& j) {
    const std::string kind = require(j, "kind", "group").get<std::string>();
    auto param = [&] { return as_size(require(j, "n", "group"), "group.n"); };
    if (kind == "cyclic") return FiniteGroup::cyclic(param());
    if (kind == "dihedral") return FiniteGroup::dihedral(param());
    if (kind == "symmetric") return FiniteGroup::symmetric(param());
    if (kind == "direct_product") {
        const json& fs = require(j, "factors", "group");
        if (!fs.is_array() || fs.empty()) throw ParseError("group.factors: expected a nonempty array");
        FiniteGroup g = parse_group(fs[0]);
        for (std::size_t i = 1; i < fs.size(); ++i) g = FiniteGroup::direct_product(g, parse_group(fs[i]));
        return g;
    }
    if (kind == "table") return table_group(j, j.value("name", std::string("table")));
    throw ParseError("group.kind: unknown kind \"" + kind + "\"");
}

BaseAlgebra parse_base(const PrimeField& f, const json& j) {
    const std::string kind = require(j, "kind", "base").get<std::string>();
    if (kind == "field") return field_base(f);
    if (kind == "matrix") {
        const std::size_t n = as_size(require(j, "n", "base"), "base.n");
        if (n == 0) throw ParseError("base.n: must be positive");
        return matrix_base(f, n);
    }
    throw ParseError("base.kind: unknown kind \"" + kind + "\"");
}

} // namespace

AlgebraSpec parse_spec(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    try {
        const std::int64_t p = as_int(require(require(j, "field", "spec"), "p", "field"), "field.p");
        if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime(static_cast<std::uint64_t>(p)))
            throw ParseError("field.p: " + std::to_string(p) + " is not a supported prime");
        const PrimeField f(static_cast<std::uint32_t>(p));
        GroupPtr group = make_group(parse_group(require(j, "group", "spec")));

        const json& a = require(j, "algebra", "spec");
        const std::string kind = require(a, "kind", "algebra").get<std::string>();
        GradedAlgebraPtr alg;
        if (kind == "group_algebra") {
            alg = std::make_shared<const GradedAlgebra>(group_algebra(group, f));
        } else if (kind == "crossed_product") {
            const BaseAlgebra base = a.contains("base") ? parse_base(f, a.at("base")) : field_base(f);
            const std::size_t n = group->order();
            const std::size_t d = base.algebra.dim();
            std::vector<Matrix> action;
            if (a.contains("action")) {
                const json& act = a.at("action");
                if (!act.is_array() || act.size() != n)
                    throw ParseError("algebra.action: expected one matrix per group element");
                for (const json& m : act) action.push_back(as_matrix(f, m, d, "algebra.action"));
            }
            std::vector<std::vector<Vec>> cocycle;
            if (a.contains("cocycle")) {
                const json& co = a.at("cocycle");
                if (!co.is_array() || co.size() != n) throw ParseError("algebra.cocycle: expected |G| rows");
                for (const json& row : co) {
                    if (!row.is_array() || row.size() != n) throw ParseError("algebra.cocycle: expected |G| columns");
                    std::vector<Vec> r;
                    for (const json& v : row) r.push_back(as_vec(f, v, d, "algebra.cocycle"));
                    cocycle.push_back(std::move(r));
                }
            }
            alg = std::make_shared<const GradedAlgebra>(
                crossed_product(group, base, std::move(action), std::move(cocycle)));
        } else {
            throw ParseError("algebra.kind: unknown kind \"" + kind + "\"");
        }
        return {f, std::move(group), std::move(alg)};
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid spec: ") + e.what());
    }
}

AlgebraSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open spec file " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_spec(os.str());
}

FiniteGroup parse_cayley_table(std::string_view text) {
    try {
        return table_group(json::parse(text), "table");
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed Cayley table: ") + e.what());
    }
}

} // namespace hhm
