#include "definetti/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "definetti/fixtures.hpp"
#include "definetti/invariance.hpp"
#include "definetti/io.hpp"

namespace definetti {

namespace {

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(3) << x;
    return s.str();
}

template <class T>
std::string join(const std::vector<T>& xs, const std::string& sep = ", ") {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += sep;
        if constexpr (std::is_same_v<T, std::string>)
            s += xs[i];
        else if constexpr (std::is_arithmetic_v<T>)
            s += std::to_string(xs[i]);
        else
            s += to_string(xs[i]);
    }
    return s;
}

template <class T>
json tag_list(const std::vector<T>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(to_string(x));
    return a;
}

json violation_json(const Violation& v) {
    return {{"order", v.order}, {"pattern", v.pattern.to_string()}, {"target", v.target}, {"tuple", v.tuple},
            {"residual", v.residual}};
}

std::string violation_text(const Violation& v) {
    return "order " + std::to_string(v.order) + ", pattern " + v.pattern.to_string() + ", target (" +
           join(v.target) + "), coefficient tuple " + std::to_string(v.tuple) + ", residual " + fmt(v.residual);
}

DecorationClass parse_decoration(const std::string& s) {
    if (s == "alternating") return DecorationClass::alternating_words();
    if (s == "alternating_pair") return DecorationClass::alternating_pairs();
    if (s == "infinite") return DecorationClass::infinite();
    if (s.rfind("divisible:", 0) == 0) {
        try {
            return DecorationClass::divisible(std::stoi(s.substr(10)));
        } catch (const std::logic_error&) {
        }
    }
    throw InputError("unknown decoration class: " + s + " (alternating, alternating_pair, infinite, divisible:M)");
}

json family_check_json(const FamilyCheck& c) {
    json rel = json::array();
    for (const auto& r : c.relations) rel.push_back({{"name", r.name}, {"residual", r.residual}, {"holds", r.holds}});
    return {{"family", to_string(c.family)}, {"holds", c.holds}, {"residual", c.residual}, {"relations", rel}};
}

struct Context {
    std::vector<std::string> argv;
    bool as_json = false;
    std::uint64_t seed = 0;
    std::ostream* out = nullptr;

    json report(const std::string& command) const {
        return {{"command", command}, {"argv", argv}, {"version", kVersion}, {"seed", seed}};
    }
    void emit(const json& j, const std::string& text) const {
        if (as_json)
            *out << j.dump(2) << "\n";
        else
            *out << text;
    }
};

int cmd_enumerate(const Context& ctx, int nc, int all, const std::string& decorated, const std::string& cls,
                  bool list) {
    int chosen = (nc >= 0) + (all >= 0) + !decorated.empty();
    if (chosen != 1) throw InputError("enumerate needs exactly one of --nc, --all, --decorated");
    std::vector<Partition> ps;
    std::string kind;
    json j = ctx.report("enumerate");
    if (nc >= 0) {
        ps = enumerate_noncrossing(nc);
        kind = "noncrossing";
        j["k"] = nc;
    } else if (all >= 0) {
        ps = enumerate_all_partitions(all);
        kind = "all";
        j["k"] = all;
    } else {
        auto d = StarPattern::parse(decorated);
        ps = filter_decorated(enumerate_noncrossing(d.size()), d, parse_decoration(cls));
        kind = "decorated";
        j["pattern"] = d.to_string();
        j["class"] = cls;
        j["k"] = d.size();
    }
    j["kind"] = kind;
    j["count"] = ps.size();
    std::string text = std::to_string(ps.size()) + "\n";
    if (list) {
        json a = json::array();
        for (const auto& p : ps) {
            a.push_back(p.to_string());
            text += p.to_string() + "\n";
        }
        j["partitions"] = a;
    }
    ctx.emit(j, text);
    return kExitPass;
}

int cmd_convert(const Context& ctx, const std::string& file, bool classical, int order, const std::string& out_path) {
    auto s = load_spec(file);
    if (order < 0) order = s.table.order();
    if (order > s.table.order()) throw InputError("order exceeds the table's order");
    const bool free = !classical;
    SpecFile r;
    r.selfadjoint = s.selfadjoint;
    r.shift = coeff_scalar(0.0, s.table.dim());
    if (s.kind == "moments") {
        r.kind = "cumulants";
        auto m = MomentOracle::from_table(s.table);
        if (s.table.alphabet() > 1) {
            if (!free) throw UnsupportedError("classical conversion is for a single variable");
            r.table = multivariate_cumulants_from_joint_moments(m, order);
        } else {
            r.table = free ? moments_to_free_cumulants(m, order) : moments_to_classical_cumulants(m, order);
        }
    } else {
        if (s.table.alphabet() > 1) throw UnsupportedError("cumulants to moments is for a single variable");
        r.kind = "moments";
        auto k = CumulantSpec::make(s.table, s.shift, s.selfadjoint).table();
        auto m = free ? free_cumulants_to_moments(k, order) : classical_cumulants_to_moments(k, order);
        r.table = m.tabulate(order);
    }
    json spec = spec_to_json(r);
    json j = ctx.report("convert");
    j["formula"] = free ? "free" : "classical";
    j["order"] = order;
    if (!out_path.empty()) {
        write_json(out_path, spec);
        j["out"] = out_path;
        j["entries"] = r.table.entries();
        ctx.emit(j, "wrote " + out_path + " (" + std::to_string(r.table.entries()) + " " + r.kind + ")\n");
    } else {
        j["result"] = spec;
        ctx.emit(j, spec.dump(2) + "\n");
    }
    return kExitPass;
}

int cmd_classify(const Context& ctx, const std::string& file, bool classical, int order, int m_max,
                 const std::string& expect) {
    auto spec = cumulant_spec(load_spec(file), !classical, order);
    json j = ctx.report("classify-dist");
    j["formula"] = classical ? "classical" : "free";
    j["order"] = order;
    j["m_max"] = m_max;
    std::string text;
    bool ok = true;
    auto fill = [&](const auto& c, auto parse) {
        j["tags"] = tag_list(c.tags);
        j["minimal"] = tag_list(c.minimal);
        j["noncanonical"] = c.noncanonical;
        text += "tags: " + (c.tags.empty() ? std::string("none") : join(c.tags)) + "\n";
        text += "minimal: " + (c.minimal.empty() ? std::string("none") : join(c.minimal)) + "\n";
        if (!c.noncanonical.empty()) text += "noncanonical: " + join(c.noncanonical) + "\n";
        if (!expect.empty()) {
            ok = c.has(parse(expect));
            j["expect"] = expect;
            j["pass"] = ok;
            text += std::string(ok ? "pass" : "FAIL") + ": " + expect + "\n";
        }
    };
    if (classical)
        fill(classify_classical(spec, order, m_max), parse_classical_class);
    else
        fill(classify_free(spec, order, m_max), parse_free_class);
    text += "up to order " + std::to_string(order) + "\n";
    ctx.emit(j, text);
    return ok ? kExitPass : kExitFail;
}

int cmd_check_rep(const Context& ctx, const std::string& file, std::vector<std::string> families, int m_max,
                  bool structural) {
    auto r = load_rep(file);
    const auto& u = r.rep;
    auto b = check_biunitary(u);
    json j = ctx.report("check-rep");
    j["name"] = r.name;
    j["n"] = u.n();
    j["d"] = u.d();
    j["tol"] = u.tol();
    j["biunitary"] = {{"residual", b.residual}, {"completion_consistent", b.completion_consistent}};
    std::string text = "biunitary: yes (residual " + fmt(b.residual) + ")\n";
    bool requested = true;
    if (families.empty() && !r.family.empty()) families.push_back(r.family);
    if (families.empty()) {
        requested = false;
        for (auto f : family_list(3)) {
            if (f.kind != Family::h_m_plus) {
                families.push_back(to_string(f));
                continue;
            }
            for (int m = 3; m <= m_max; ++m) families.push_back(to_string(FamilyTag{Family::h_m_plus, m}));
        }
    }
    bool ok = true;
    json checks = json::array();
    for (const auto& name : families) {
        auto c = check_family(u, parse_family(name));
        checks.push_back(family_check_json(c));
        if (requested) ok = ok && c.holds;
        text += to_string(c.family) + ": " + (c.holds ? "holds" : "fails") + " (residual " + fmt(c.residual) + ")";
        std::vector<std::string> failed;
        for (const auto& rel : c.relations)
            if (!rel.holds) failed.push_back(rel.name);
        if (!failed.empty()) text += " [" + join(failed) + "]";
        text += "\n";
    }
    j["checks"] = checks;
    if (structural) {
        std::vector<StarPattern> ps;
        for (int k = 1; k <= 4; ++k)
            for (const auto& d : all_patterns(k)) ps.push_back(d);
        json claims = json::array();
        for (const auto& c : structural_consequences(u, ps)) {
            claims.push_back({{"pattern", c.pattern}, {"claim", c.claim}, {"residual", c.residual}, {"holds", c.holds}});
            text += "  " + c.pattern + ": " + c.claim + " " + (c.holds ? "ok" : "FAILS") + " (" + fmt(c.residual) + ")\n";
            if (requested) ok = ok && c.holds;
        }
        j["structural"] = claims;
    }
    j["pass"] = ok;
    ctx.emit(j, text);
    return ok ? kExitPass : kExitFail;
}

int cmd_lattice(const Context& ctx, const std::string& file, int m_max, const std::string& expect) {
    auto r = load_rep(file);
    auto lp = lattice_position(r.rep, m_max);
    json j = ctx.report("lattice-position");
    j["name"] = r.name;
    j["m_max"] = m_max;
    j["satisfied"] = tag_list(lp.satisfied);
    j["minimal"] = tag_list(lp.minimal);
    j["h_indices"] = lp.h_indices;
    j["h_gcd"] = lp.h_gcd;
    j["classical"] = lp.classical;
    j["notes"] = lp.notes;
    std::string text = "minimal: " + (lp.minimal.empty() ? std::string("none") : join(lp.minimal)) + "\n";
    text += "satisfied: " + join(lp.satisfied) + "\n";
    if (!lp.h_indices.empty())
        text += "H_M indices up to " + std::to_string(m_max) + ": " + join(lp.h_indices, " ") + " (gcd " +
                std::to_string(lp.h_gcd) + ")\n";
    text += std::string("entries commute: ") + (lp.classical ? "yes" : "no") + "\n";
    for (const auto& n : lp.notes) text += "note: " + n + "\n";
    bool ok = true;
    if (!expect.empty()) {
        auto want = parse_family(expect);
        ok = std::find(lp.minimal.begin(), lp.minimal.end(), want) != lp.minimal.end();
        j["expect"] = expect;
        j["pass"] = ok;
        text += std::string(ok ? "pass" : "FAIL") + ": " + expect + "\n";
    }
    ctx.emit(j, text);
    return ok ? kExitPass : kExitFail;
}

int cmd_invariance(const Context& ctx, const std::string& dist, const std::string& rep_file, int order, bool matrix_b,
                   bool identities) {
    auto s = load_spec(dist);
    auto r = load_rep(rep_file);
    const int n = r.rep.n();
    json j = ctx.report("check-invariance");
    j["order"] = order;
    j["n"] = n;
    std::string text;
    std::optional<JointDistribution> joint;
    std::optional<CumulantSpec> single;
    if (s.table.alphabet() == 1) {
        if (order > s.table.order()) throw InputError("order exceeds the distribution's order");
        single = cumulant_spec(s, true, order);
        auto table = single->table();
        if (matrix_b && table.dim() == 1) table = promote_table(table, 2);
        joint.emplace(free_iid(table, n, order));
        j["distribution"] = "free identically distributed family";
    } else {
        if (s.kind != "moments") throw UnsupportedError("a joint distribution must be given by its moments");
        if (s.table.alphabet() != n) throw InputError("distribution alphabet does not match the rep's n");
        auto table = matrix_b && s.table.dim() == 1 ? promote_table(s.table, 2) : s.table;
        joint.emplace(MomentOracle::from_table(table), table.order());
        j["distribution"] = "joint moment table";
    }
    j["dim"] = joint->dim();
    auto v = check_invariance(*joint, r.rep, order, ctx.seed);
    j["invariant"] = v.invariant;
    j["checks"] = v.checks;
    j["max_residual"] = v.max_residual;
    if (v.first) j["violation"] = violation_json(*v.first);
    if (v.invariant)
        text += "invariant through order " + std::to_string(order) + " (" + std::to_string(v.checks) +
                " checks, max residual " + fmt(v.max_residual) + ")\n";
    else
        text += "violation: " + violation_text(*v.first) + "\n";
    if (identities) {
        if (!single) throw UnsupportedError("--identities needs a single-variable spec");
        auto spec = matrix_b && single->dim() == 1 ? CumulantSpec(promote_table(single->table(), 2), false) : *single;
        auto ex = cumulant_identity_extractor(spec, r.rep, order, ctx.seed);
        json ids = json::array();
        for (const auto& p : ex.patterns) {
            ids.push_back({{"pattern", p.pattern.to_string()},
                           {"block_holds", p.block.holds},
                           {"block_residual", p.block.residual},
                           {"delta_holds", p.delta.holds},
                           {"delta_residual", p.delta.residual}});
            text += "  " + p.pattern.to_string() + ": block " + (p.block.holds ? "ok" : "fails") + ", delta " +
                    (p.delta.holds ? "ok" : "fails") + "\n";
        }
        j["identities"] = ids;
        j["predicted_invariant"] = ex.predicted_invariant;
        j["agree"] = ex.agree;
        text += std::string("prediction ") + (ex.agree ? "agrees" : "DISAGREES") + " with the check\n";
    }
    ctx.emit(j, text);
    return v.invariant ? kExitPass : kExitFail;
}

int cmd_probe(const Context& ctx, int n, int order) {
    auto g = theorem1_probe(n, order, ctx.seed);
    json j = ctx.report("theorem1-probe");
    j["n"] = n;
    j["order"] = order;
    j["columns"] = tag_list(g.columns);
    j["mismatches"] = g.mismatches();
    json grid = json::object();
    std::ostringstream t;
    t << std::left << std::setw(22) << "class";
    for (auto c : g.columns) t << std::setw(14) << to_string(c);
    t << "\n";
    std::size_t idx = 0;
    for (auto cls : g.classes) {
        json row = json::object();
        t << std::setw(22) << to_string(cls);
        for (std::size_t c = 0; c < g.columns.size(); ++c, ++idx) {
            const auto& cell = g.cells[idx];
            json jc = {{"witness", cell.witness}, {"n", cell.n},          {"expected", cell.expected},
                       {"invariant", cell.invariant}, {"match", cell.match()}};
            if (cell.violation) jc["violation"] = violation_json(*cell.violation);
            row[to_string(cell.column)] = jc;
            std::string mark = std::string(cell.invariant ? "pass" : "fail") + (cell.match() ? "" : "!");
            t << std::setw(14) << mark;
        }
        t << "\n";
        grid[to_string(cls)] = row;
    }
    j["grid"] = grid;
    t << "mismatches: " << g.mismatches() << "\n";
    ctx.emit(j, t.str());
    return g.mismatches() == 0 ? kExitPass : kExitFail;
}

int cmd_fixtures(const Context& ctx, const std::string& dir) {
    auto paths = write_fixtures(dir, ctx.seed);
    // reload so every written rep is checked against its declared family
    load_fixtures(dir);
    json j = ctx.report("fixtures");
    json files = json::array();
    std::string text;
    for (const auto& p : paths) {
        files.push_back(p.string());
        text += p.string() + "\n";
    }
    j["files"] = files;
    ctx.emit(j, text);
    return kExitPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"de Finetti-type invariance checks for free cumulant classes and quantum group relations", "definetti"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    Context ctx;
    ctx.argv = args;
    ctx.out = &out;
    app.add_flag("--json", ctx.as_json, "JSON report");
    app.add_option("--seed", ctx.seed, "seed for randomized parts")->capture_default_str();

    int nc = -1, all = -1;
    std::string decorated, deco_class = "alternating";
    bool list = false;
    auto* en = app.add_subcommand("enumerate", "count (or list) partitions");
    en->add_option("--nc", nc, "noncrossing partitions of k points");
    en->add_option("--all", all, "all partitions of k points");
    en->add_option("--decorated", decorated, "noncrossing partitions decorated by a pattern, e.g. 1*1*");
    en->add_option("--class", deco_class, "alternating, alternating_pair, infinite or divisible:M")->capture_default_str();
    en->add_flag("--list", list, "print the partitions");

    std::string file, out_path, expect;
    bool free_flag = false, classical = false;
    int order = -1;
    auto* cv = app.add_subcommand("convert", "moments <-> cumulants");
    cv->add_option("file", file, "spec file")->required();
    auto* cv_free = cv->add_flag("--free", free_flag, "free cumulants (default)");
    cv->add_flag("--classical", classical, "classical cumulants")->excludes(cv_free);
    cv->add_option("--order", order, "order (default: the table's)");
    cv->add_option("--out", out_path, "write the result here");

    int class_order = kDefaultClassOrder, m_max = kDefaultMaxM;
    auto* cl = app.add_subcommand("classify-dist", "cumulant classes of a single variable");
    cl->add_option("file", file, "spec file")->required();
    auto* cl_free = cl->add_flag("--free", free_flag, "free cumulants");
    auto* cl_cl = cl->add_flag("--classical", classical, "classical cumulants")->excludes(cl_free);
    cl->add_option("--order", class_order, "classify up to this order")->capture_default_str();
    cl->add_option("--mmax", m_max, "largest m for M_UNITARY(m)")->capture_default_str();
    cl->add_option("--expect", expect, "exit 1 unless this tag is present");
    (void)cl_cl;

    std::vector<std::string> families;
    bool structural = false;
    auto* cr = app.add_subcommand("check-rep", "check a matrix representation against families");
    cr->add_option("file", file, "rep file")->required();
    cr->add_option("--family", families, "family tag, repeatable (default: the file's declared family, else all)");
    cr->add_option("--mmax", m_max, "largest m for H_M_PLUS(m)")->capture_default_str();
    cr->add_flag("--structural", structural, "check the structural consequences too");

    auto* lp = app.add_subcommand("lattice-position", "minimal families of a representation");
    lp->add_option("file", file, "rep file")->required();
    lp->add_option("--mmax", m_max, "largest m for H_M_PLUS(m)")->capture_default_str();
    lp->add_option("--expect", expect, "exit 1 unless this family is minimal");

    std::string dist, rep_file;
    int inv_order = 0;
    bool matrix_b = false, identities = false;
    auto* ci = app.add_subcommand("check-invariance", "invariance of a distribution under a representation");
    ci->add_option("--dist", dist, "spec or joint moment file")->required();
    ci->add_option("--rep", rep_file, "rep file")->required();
    ci->add_option("--order", inv_order, "largest moment order")->required();
    ci->add_flag("--matrix-b", matrix_b, "test with 2x2 matrix coefficients");
    ci->add_flag("--identities", identities, "also report the cumulant identities");

    int probe_n = 2, probe_order = 5;
    auto* pr = app.add_subcommand("theorem1-probe", "class x family invariance grid");
    pr->add_option("--n", probe_n, "number of variables (2 or 3)")->capture_default_str();
    pr->add_option("--order", probe_order, "largest moment order")->capture_default_str();

    std::string fix_dir;
    auto* fx = app.add_subcommand("fixtures", "write the witness reps and sample specs");
    fx->add_option("--out", fix_dir, "directory")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitInput;
    }

    try {
        if (*en) return cmd_enumerate(ctx, nc, all, decorated, deco_class, list);
        if (*cv) return cmd_convert(ctx, file, classical, order, out_path);
        if (*cl) {
            if (!free_flag && !classical) throw InputError("classify-dist needs --free or --classical");
            return cmd_classify(ctx, file, classical, class_order, m_max, expect);
        }
        if (*cr) return cmd_check_rep(ctx, file, families, m_max, structural);
        if (*lp) return cmd_lattice(ctx, file, m_max, expect);
        if (*ci) return cmd_invariance(ctx, dist, rep_file, inv_order, matrix_b, identities);
        if (*pr) return cmd_probe(ctx, probe_n, probe_order);
        if (*fx) return cmd_fixtures(ctx, fix_dir);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace definetti
