#include "cli.hpp"

#include "hhm/error.hpp"
#include "hhm/spec_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace hhm::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

ordered_json to_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : m.to_ints()) rows.push_back(r);
    return rows;
}

ordered_json to_json(const Subgroup& h) { return h.elements(); }

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string describe(const AxiomInstance& inst) {
    std::string s;
    for (std::size_t i = 0; i < inst.subgroups.size(); ++i) s += (i ? " " : "") + inst.subgroups[i].describe();
    if (!inst.elements.empty()) s += " g=" + join(inst.elements);
    return s;
}

struct Loaded {
    AlgebraSpec spec;
    std::vector<Subgroup> subgroups;
};

Loaded load(const RunConfig& cfg) {
    Loaded l{load_spec(cfg.spec_path), {}};
    l.subgroups = parse_subgroups(l.spec.group, cfg.subgroups);
    return l;
}

ordered_json header(const std::string& command, const Loaded& l, const RunConfig& cfg) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = command;
    j["algebra"] = l.spec.algebra->name();
    j["p"] = l.spec.field.p();
    j["group"] = l.spec.group->name();
    j["group_order"] = l.spec.group->order();
    j["degree"] = cfg.degree;
    j["seed"] = cfg.seed;
    return j;
}

} // namespace

std::vector<Subgroup> parse_subgroups(const GroupPtr& group, const std::string& selection) {
    if (trim(selection) == "all") return all_subgroups(group);
    std::vector<Subgroup> out;
    for (const std::string& item : split(selection, ';')) {
        std::vector<std::size_t> gens;
        for (const std::string& tok : split(item, ',')) {
            const std::string t = trim(tok);
            if (t.empty()) continue;
            std::size_t pos = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(t, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != t.size() || v >= group->order())
                throw ParseError("--subgroups: '" + t + "' is not an element index below " +
                                 std::to_string(group->order()));
            gens.push_back(static_cast<std::size_t>(v));
        }
        out.push_back(subgroup_generated(group, gens));
    }
    if (out.empty()) throw ParseError("--subgroups: empty selection");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Axiom> parse_axioms(const std::string& list) {
    std::vector<Axiom> out;
    for (const std::string& tok : split(list, ',')) {
        const Axiom a = parse_axiom(trim(tok));
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
    if (out.empty()) throw ParseError("--axioms: empty list");
    std::sort(out.begin(), out.end());
    return out;
}

int cmd_info(const RunConfig& cfg, std::ostream& out) {
    const Loaded l = load(cfg);
    const GradedAlgebra& a = *l.spec.algebra;
    const FullyGradedReport fg = check_fully_graded(a);
    bool symmetric = true;
    bool canonical = true;
    std::string sym_error;
    try {
        const SymmetrizingForm s = symmetrizing_form(a, cfg.seed);
        canonical = s.canonical;
    } catch (const ValidationError& e) {
        symmetric = false;
        sym_error = e.what();
    }
    std::vector<std::size_t> blocks;
    for (std::size_t g = 0; g < l.spec.group->order(); ++g) blocks.push_back(a.component(g).size());

    if (cfg.format == Format::Json) {
        ordered_json j = header("info", l, cfg);
        j.erase("degree");
        j["dim"] = a.dim();
        j["blocks"] = blocks;
        j["fully_graded"] = fg.pass();
        ordered_json fails = ordered_json::array();
        for (auto [g, h] : fg.failures) fails.push_back({g, h});
        j["fully_graded_failures"] = fails;
        j["symmetric_form"] = symmetric;
        j["symmetric_form_canonical"] = symmetric && canonical;
        out << j.dump(2) << '\n';
    } else {
        out << "algebra " << a.name() << " over F_" << l.spec.field.p() << '\n';
        out << "group " << l.spec.group->name() << ", order " << l.spec.group->order() << '\n';
        out << "dim " << a.dim() << ", blocks " << join(blocks) << '\n';
        out << "fully graded: " << (fg.pass() ? "pass" : "fail") << '\n';
        for (auto [g, h] : fg.failures) out << "  R_" << g << " R_" << h << " != R_" << l.spec.group->mul(g, h) << '\n';
        out << "symmetric form: " << (symmetric ? "pass" : "fail");
        if (symmetric && !canonical) out << " (found by search)";
        if (!symmetric) out << " (" << sym_error << ")";
        out << '\n';
    }
    return fg.pass() && symmetric ? 0 : 1;
}

int cmd_hh(const RunConfig& cfg, std::ostream& out) {
    const Loaded l = load(cfg);
    const MemoryBudget budget(cfg.memory_mb);
    ordered_json rows = ordered_json::array();
    std::ostringstream text;
    text << std::left << std::setw(24) << "subgroup";
    for (std::size_t n = 0; n <= cfg.degree; ++n) text << " HH^" << n;
    text << '\n';
    for (const Subgroup& h : l.subgroups) {
        const GradedAlgebra c = component_subalgebra(*l.spec.algebra, h);
        std::vector<std::size_t> dims;
        for (std::size_t n = 0; n <= cfg.degree; ++n) dims.push_back(cohomology(c.algebra_ptr(), n, budget).dim());
        ordered_json r;
        r["subgroup"] = to_json(h);
        r["dim"] = c.dim();
        r["hh"] = dims;
        rows.push_back(r);
        text << std::left << std::setw(24) << h.describe();
        for (std::size_t n = 0; n <= cfg.degree; ++n)
            text << ' ' << std::right << std::setw(n < 10 ? 4 : 5) << dims[n];
        text << '\n';
    }
    if (cfg.format == Format::Json) {
        ordered_json j = header("hh", l, cfg);
        j["subgroups"] = rows;
        out << j.dump(2) << '\n';
    } else {
        out << text.str();
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const Loaded l = load(cfg);
    const std::vector<Axiom> axioms = parse_axioms(cfg.axioms);
    MackeySystem sys(l.spec.algebra, cfg.degree, MemoryBudget(cfg.memory_mb), {}, cfg.seed);
    const VerifySummary summary = verify_all(sys, axioms, l.subgroups);

    if (cfg.format == Format::Json) {
        ordered_json j = header("verify", l, cfg);
        ordered_json axs = ordered_json::array();
        for (Axiom a : axioms) axs.push_back(axiom_name(a));
        j["axioms"] = axs;
        ordered_json subs = ordered_json::array();
        for (const Subgroup& h : l.subgroups) subs.push_back(to_json(h));
        j["subgroups"] = subs;
        ordered_json reports = ordered_json::array();
        for (const AxiomReport& r : summary.reports) {
            ordered_json e;
            e["axiom"] = axiom_name(r.axiom);
            e["part"] = r.part;
            ordered_json s = ordered_json::array();
            for (const Subgroup& h : r.instance.subgroups) s.push_back(to_json(h));
            e["subgroups"] = s;
            e["elements"] = r.instance.elements;
            e["degree"] = r.degree;
            e["verdict"] = r.pass ? "pass" : "fail";
            if (!r.pass) {
                e["lhs"] = to_json(r.lhs);
                e["rhs"] = to_json(r.rhs);
            }
            reports.push_back(e);
        }
        j["reports"] = reports;
        j["total"] = summary.reports.size();
        j["failed"] = summary.failed;
        j["pass"] = summary.pass();
        out << j.dump(2) << '\n';
    } else {
        out << "algebra " << l.spec.algebra->name() << ", degrees 0.." << cfg.degree << '\n';
        for (Axiom a : axioms) {
            std::size_t total = 0, failed = 0;
            for (const AxiomReport& r : summary.reports)
                if (r.axiom == a) {
                    ++total;
                    failed += r.pass ? 0 : 1;
                }
            out << "axiom " << std::left << std::setw(4) << axiom_name(a) << total - failed << "/" << total
                << " passed\n";
        }
        for (const AxiomReport& r : summary.reports)
            if (!r.pass)
                out << "FAIL axiom " << axiom_name(r.axiom) << " (" << r.part << ") " << describe(r.instance)
                    << " n=" << r.degree << "\n  lhs " << r.lhs << "\n  rhs " << r.rhs << '\n';
        out << (summary.pass() ? "all axioms hold" : "axiom failures: " + std::to_string(summary.failed))
            << std::fixed << std::setprecision(2) << " (" << summary.seconds << " s)\n";
    }
    return summary.pass() ? 0 : 1;
}

int cmd_lemma2(const RunConfig& cfg, std::ostream& out) {
    const Loaded l = load(cfg);
    const GradedAlgebra& root = *l.spec.algebra;
    const GroupPtr& group = l.spec.group;
    const std::size_t order = group->order();
    std::set<std::string> cases;
    for (const std::string& c : split(cfg.cases, ',')) {
        const std::string t = trim(c);
        if (t != "a" && t != "b" && t != "c") throw ParseError("--cases: unknown case '" + t + "'");
        cases.insert(t);
    }

    ordered_json entries = ordered_json::array();
    std::size_t total = 0, failed = 0;
    std::ostringstream fails;
    auto record = [&](const std::string& kind, const std::string& inst, ordered_json detail, bool pass) {
        ++total;
        if (!pass) {
            ++failed;
            fails << "FAIL " << kind << ' ' << inst << '\n';
        }
        detail["verdict"] = pass ? "pass" : "fail";
        entries.push_back(detail);
    };

    const GradedAlgebra whole = component_subalgebra(root, Subgroup::whole(group));
    if (cases.count("a"))
        for (const Subgroup& h : l.subgroups) {
            const GradedAlgebra rh = component_subalgebra(root, h);
            auto both = [](const Bimodule& m) {
                return is_projective(m, Side::Left).projective && is_projective(m, Side::Right).projective;
            };
            const auto elems = Subgroup::whole(group).elements();
            const bool m_ok = both(truncation(root, rh, elems, whole));
            const bool n_ok = both(truncation(root, whole, elems, rh));
            ordered_json d;
            d["case"] = "a";
            d["subgroup"] = to_json(h);
            d["M"] = m_ok;
            d["N"] = n_ok;
            std::vector<std::size_t> bad_p;
            for (std::size_t g : coset_reps(h, CosetSide::Left)) {
                const GradedAlgebra rgh = component_subalgebra(root, conjugate_subgroup(g, h));
                if (!both(truncation(root, rgh, left_coset(g, h), rh))) bad_p.push_back(g);
            }
            d["P_failures"] = bad_p;
            record("a", h.describe(), d, m_ok && n_ok && bad_p.empty());
        }
    auto check = [&](const std::string& kind, const std::string& inst, ordered_json d, const Lemma2Maps& m,
                     const std::optional<Lemma2Maps>& alt) {
        const Lemma2Check c = check_lemma2(m, alt);
        d["phi_is_map"] = c.phi_is_map;
        d["psi_is_map"] = c.psi_is_map;
        d["phi_psi_identity"] = c.phi_psi_identity;
        d["psi_phi_identity"] = c.psi_phi_identity;
        d["psi_choice_independent"] = c.psi_choice_independent;
        record(kind, inst, std::move(d), c.pass());
    };
    if (cases.count("b"))
        for (const Subgroup& k : l.subgroups)
            for (const Subgroup& h : l.subgroups)
                for (std::size_t g = 0; g < order; ++g) {
                    ordered_json d;
                    d["case"] = "b";
                    d["K"] = to_json(k);
                    d["H"] = to_json(h);
                    d["g"] = g;
                    const Lemma2Maps m = lemma2_case_b(root, k, g, h, false);
                    check("b", k.describe() + " g=" + std::to_string(g) + " " + h.describe(), std::move(d), m,
                          lemma2_case_b(root, k, g, h, true));
                }
    if (cases.count("c"))
        for (const Subgroup& h : l.subgroups)
            for (std::size_t g = 0; g < order; ++g)
                for (std::size_t x = 0; x < order; ++x) {
                    ordered_json d;
                    d["case"] = "c";
                    d["H"] = to_json(h);
                    d["g"] = g;
                    d["h"] = x;
                    const Lemma2Maps m = lemma2_case_c(root, g, x, h, false);
                    check("c", "g=" + std::to_string(g) + " h=" + std::to_string(x) + " " + h.describe(),
                          std::move(d), m, lemma2_case_c(root, g, x, h, true));
                }

    if (cfg.format == Format::Json) {
        ordered_json j = header("lemma2", l, cfg);
        j.erase("degree");
        j["instances"] = entries;
        j["total"] = total;
        j["failed"] = failed;
        j["pass"] = failed == 0;
        out << j.dump(2) << '\n';
    } else {
        out << "algebra " << root.name() << '\n' << fails.str();
        out << total - failed << "/" << total << " instances passed\n";
    }
    return failed == 0 ? 0 : 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hochschild cohomology of group-graded algebras: transfer maps and Mackey axioms", "hhmackey"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string format = "text";
    auto common = [&](CLI::App* sub, bool degree) {
        sub->add_option("--spec", cfg.spec_path, "algebra specification (JSON)")->required();
        if (degree) sub->add_option("--degree", cfg.degree, "highest cohomological degree")->capture_default_str();
        sub->add_option("--subgroups", cfg.subgroups, "all, or ';'-separated generator lists")
            ->capture_default_str();
        sub->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "seed for randomized searches")->capture_default_str();
        sub->add_option("--memory-mb", cfg.memory_mb, "memory budget in MB")->capture_default_str();
    };
    CLI::App* info = app.add_subcommand("info", "algebra summary and validation");
    common(info, false);
    CLI::App* hh = app.add_subcommand("hh", "dimensions of HH^n per subgroup");
    common(hh, true);
    CLI::App* verify = app.add_subcommand("verify", "check the Mackey functor axioms");
    common(verify, true);
    verify->add_option("--axioms", cfg.axioms, "comma-separated subset of i,ii,iii,iv,v,vi")->capture_default_str();
    CLI::App* lemma = app.add_subcommand("lemma2", "projectivity and tensor-product isomorphisms");
    common(lemma, false);
    lemma->add_option("--cases", cfg.cases, "comma-separated subset of a,b,c")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    cfg.format = format == "json" ? Format::Json : Format::Text;

    try {
        if (info->parsed()) return cmd_info(cfg, out);
        if (hh->parsed()) return cmd_hh(cfg, out);
        if (verify->parsed()) return cmd_verify(cfg, out);
        return cmd_lemma2(cfg, out);
    } catch (const ValidationError& e) {
        err << "validation failed: " << e.what() << '\n';
        return 1;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace hhm::cli
