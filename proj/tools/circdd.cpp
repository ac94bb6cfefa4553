// circdd: command-line front end for the circdd library.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "circdd/bounds.hpp"
#include "circdd/circulant.hpp"
#include "circdd/families.hpp"
#include "circdd/lattice.hpp"
#include "circdd/search.hpp"

using namespace circdd;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kFailed = 2, kBudget = 3 };

ojson num(i128 v) {
    if (v >= INT64_MIN && v <= INT64_MAX) return static_cast<int64_t>(v);
    return to_string(v);
}

int exit_for(Errc c) {
    switch (c) {
        case Errc::BudgetExceeded: return kBudget;
        case Errc::IdentityFailure:
        case Errc::SuiteFailure:
        case Errc::InvariantViolation:
        case Errc::DivisibilityFailure:
        case Errc::InvolutionNotHalfLattice:
        case Errc::Overflow: return kFailed;
        default: return kUsage;
    }
}

std::string csv_cell(const ojson& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return s;
}

struct Output {
    std::string format = "json";
    bool perf = false;
    ojson request = ojson::object();
    ojson result = ojson::object();
    ojson warnings = ojson::array();
    ojson perf_data = ojson::object();
    // Rows for csv output; when empty the result's scalar fields form one row.
    std::vector<std::string> columns;
    std::vector<std::vector<ojson>> rows;

    void emit(const std::string& command, std::ostream& os) const {
        if (format == "json") {
            ojson j;
            j["command"] = command;
            j["request"] = request;
            j["result"] = result;
            j["warnings"] = warnings;
            if (perf) j["perf"] = perf_data;
            os << j.dump(2) << "\n";
        } else if (format == "csv") {
            std::vector<std::string> cols = columns;
            std::vector<std::vector<ojson>> body = rows;
            if (cols.empty()) {
                std::vector<ojson> row;
                for (auto it = result.begin(); it != result.end(); ++it) {
                    cols.push_back(it.key());
                    row.push_back(it.value());
                }
                body.push_back(row);
            }
            for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
            os << "\n";
            for (const auto& r : body) {
                for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
                os << "\n";
            }
        } else {
            for (auto it = result.begin(); it != result.end(); ++it) {
                if (it.value().is_array() && !it.value().empty() && it.value().front().is_object()) {
                    os << it.key() << ":\n";
                    for (const auto& e : it.value()) os << "  " << e.dump() << "\n";
                } else {
                    os << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
                       << "\n";
                }
            }
            for (const auto& w : warnings) os << "warning: " << w.get<std::string>() << "\n";
        }
    }
};

ojson genset_json(const GeneratingSet& g) { return g.gens; }

ojson report_json(const VerificationReport& r) {
    ojson j;
    j["degree"] = r.degree;
    j["class"] = r.class_label;
    j["set"] = r.set_index;
    j["subset"] = r.subset;
    j["k"] = r.k;
    j["n_claimed"] = r.n_claimed;
    j["n_computed"] = r.n_computed;
    j["diameter_claimed"] = r.diameter_claimed;
    j["diameter_computed"] = r.diameter_computed ? ojson(*r.diameter_computed) : ojson(nullptr);
    j["engine"] = engine_name(r.engine);
    j["pass"] = r.pass;
    j["budget_exceeded"] = r.budget_exceeded;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::vector<ojson> report_row(const VerificationReport& r) {
    return {r.degree, r.class_label, r.set_index, r.subset, r.k, r.n_computed,
            r.diameter_computed ? ojson(*r.diameter_computed) : ojson(""), engine_name(r.engine), r.pass, r.ms};
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Largest-known circulant graphs of degree 10 and 11: evaluation, verification and search"};
    app.require_subcommand(1);
    Output out;
    app.add_option("--format", out.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_flag("--perf", out.perf, "include timing under \"perf\"");

    int degree = 10, diameter = 0, k = 0, set_index = 1, k_max = 0, theorem = 0;
    std::string cls, engine_s = "auto", suite = "all";
    int64_t order = 0;
    std::vector<int64_t> gens;

    auto* bounds = app.add_subcommand("bounds", "Abelian Cayley bound and conjectured coefficients");
    bounds->add_option("--degree", degree)->required();
    bounds->add_option("--diameter", diameter)->required();

    auto* family = app.add_subcommand("family", "Family tables");
    family->require_subcommand(1);
    auto* fam_list = family->add_subcommand("list", "List families and sets");
    auto* fam_gen = family->add_subcommand("gen", "Evaluate a generating set");
    fam_gen->add_option("--degree", degree)->required();
    fam_gen->add_option("--class", cls)->required();
    fam_gen->add_option("--set", set_index)->required();
    fam_gen->add_option("--k", k)->required();
    auto* fam_order = family->add_subcommand("order", "Evaluate a family order");
    fam_order->add_option("--degree", degree)->required();
    fam_order->add_option("--class", cls)->required();
    fam_order->add_option("--k", k)->required();
    (void)fam_list;

    auto* diam = app.add_subcommand("diameter", "Diameter of a circulant graph");
    diam->add_option("--order", order)->required();
    diam->add_option("--gens", gens)->required()->delimiter(',');
    diam->add_option("--degree", degree)->required();
    diam->add_option("--engine", engine_s, "bfs, bitset or lattice")->check(CLI::IsMember({"bfs", "bitset", "lattice", "auto"}));

    VerifyOptions vopts;
    bool paper_tables = false;
    auto* verify = app.add_subcommand("verify", "Verify every applicable family instance up to k-max");
    verify->add_option("--degree", degree)->required();
    bool subsets = false;
    int min_modulus = 0;
    verify->add_option("--k-max", k_max);
    verify->add_flag("--subsets", subsets, "each transcribed subset once, at its smallest valid k");
    verify->add_option("--min-modulus", min_modulus, "with --subsets: skip subsets of smaller modulus");
    verify->add_option("--engine", engine_s)->check(CLI::IsMember({"bfs", "bitset", "lattice", "multiplier", "auto"}));
    verify->add_option("--mem-cap", vopts.mem_cap, "bytes for byte-per-vertex engines");
    verify->add_option("--bitset-cap", vopts.bitset_cap, "bytes for the packed engine");
    verify->add_flag("--paper-tables", paper_tables, "summarise the table rows instead");

    auto* lattice = app.add_subcommand("lattice", "Lattice constructions");
    lattice->require_subcommand(1);
    auto* lat_check = lattice->add_subcommand("check", "Check a theorem construction at k");
    lat_check->add_option("--theorem", theorem)->required();
    lat_check->add_option("--k", k)->required();
    lat_check->add_option("--suite", suite)->check(CLI::IsMember({"combos", "orthants", "covering", "all"}));

    SearchConfig scfg;
    int64_t confirm_n = 0;
    auto* search = app.add_subcommand("search", "Exhaustive extremal search");
    search->add_option("--degree", scfg.degree)->required();
    search->add_option("--diameter", scfg.diameter)->required();
    search->add_option("--n-max", scfg.n_max);
    search->add_option("--n-min", scfg.n_min);
    search->add_flag("--fix-one,!--no-fix-one", scfg.fix_one, "primitive sets plus all-non-unit sets (default on)");
    search->add_flag("--girth-prune", scfg.girth_prune);
    search->add_option("--pair-diff", scfg.pair_diff, "require two generators at most this far apart");
    search->add_option("--jobs", scfg.jobs);
    search->add_option("--checkpoint", scfg.checkpoint);
    search->add_option("--time-budget", scfg.time_budget_s, "seconds");
    search->add_option("--confirm", confirm_n, "claimed extremal order: scan (claimed, n-max] only");

    bool involution = false;
    auto* gsets = app.add_subcommand("gensets", "Primitive generating sets of a circulant graph");
    gsets->add_option("--order", order)->required();
    gsets->add_option("--gens", gens)->required()->delimiter(',');
    gsets->add_flag("--involution", involution, "odd degree: n/2 is in the connection set");

    // Global flags may follow the subcommand.
    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* inner : sub->get_subcommands({})) inner->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int rc = kOk;
    std::string command;
    try {
        if (*bounds) {
            command = "bounds";
            out.request = {{"degree", degree}, {"diameter", diameter}};
            BoundReport b = bound_report(degree, diameter);
            out.result["degree"] = degree;
            out.result["diameter"] = diameter;
            out.result["m_ac"] = num(b.m_ac);
            out.result["lee_sphere"] = num(lee_sphere_size(degree / 2, diameter));
            if (b.conjectured) {
                out.result["conjectured_leading"] = b.conjectured->leading.str();
                out.result["conjectured_second"] = b.conjectured->second.str();
            } else {
                out.warnings.push_back("conjectured coefficients are given only for d <= 15");
            }
            out.result["r_f"] = b.r_f.str();
        } else if (*family) {
            const auto tables = load_tables();
            if (*fam_list) {
                command = "family list";
                ojson arr = ojson::array();
                out.columns = {"degree", "class", "parity", "order_poly", "a_sub", "k_min", "sets"};
                for (const auto& t : tables) {
                    ojson sets = ojson::array();
                    std::string sets_s;
                    for (const auto& s : t.sets) {
                        sets.push_back({{"index", s.index},
                                        {"declared", std::to_string(s.declared_count) + "/" + std::to_string(s.declared_modulus)},
                                        {"transcribed", s.subsets.size()}});
                        sets_s += (sets_s.empty() ? "" : " ") + std::to_string(s.declared_count) + "/" +
                                  std::to_string(s.declared_modulus);
                    }
                    ojson row;
                    row["degree"] = t.degree;
                    row["class"] = t.class_label;
                    row["parity"] = t.parity == Parity::LargestKnown ? "largest-known" : "largest-known-odd-order";
                    row["order_poly"] = t.order_poly.str();
                    row["a_sub"] = t.a_sub.str();
                    row["k_min"] = t.k_min;
                    row["sets"] = sets;
                    arr.push_back(row);
                    out.rows.push_back({t.degree, t.class_label, row["parity"], row["order_poly"], row["a_sub"], t.k_min, sets_s});
                    for (const auto& s : t.sets)
                        if (!s.complete())
                            out.warnings.push_back("degree " + std::to_string(t.degree) + " class " + t.class_label + " set " +
                                                   std::to_string(s.index) + ": " + std::to_string(s.subsets.size()) + " of " +
                                                   std::to_string(s.declared_count) + " subsets transcribed");
                }
                out.result["families"] = arr;
            } else if (*fam_gen) {
                command = "family gen";
                out.request = {{"degree", degree}, {"class", cls}, {"set", set_index}, {"k", k}};
                const auto& fam = find_family(tables, degree, cls);
                GeneratingSet g = eval_genset(fam, set_index, k);
                const Subset& sub = subset_for(fam, set_index, k);
                out.result["order"] = g.order;
                out.result["gens"] = genset_json(g);
                out.result["involution"] = g.has_involution ? ojson(g.order / 2) : ojson(nullptr);
                out.result["subset"] = std::to_string(sub.residue) + "/" + std::to_string(sub.modulus);
                out.result["a"] = a_param(fam, k);
            } else {
                command = "family order";
                out.request = {{"degree", degree}, {"class", cls}, {"k", k}};
                const auto& fam = find_family(tables, degree, cls);
                out.result["order"] = eval_order(fam, k);
                out.result["a"] = a_param(fam, k);
            }
        } else if (*diam) {
            command = "diameter";
            out.request = {{"order", order}, {"gens", gens}, {"degree", degree}, {"engine", engine_s}};
            CirculantGraph g = make_graph(order, gens, degree);
            out.result["order"] = order;
            out.result["gens"] = genset_json(g.genset);
            if (engine_s == "lattice") {
                LatticeBasis b = kernel_lattice(order, g.genset.gens);
                IntRow vm;
                if (g.genset.has_involution) vm = preimage(order, g.genset.gens, order / 2);
                out.result["diameter"] = covering_radius(b, g.genset.has_involution ? &vm : nullptr);
            } else if (engine_s == "bitset") {
                out.result["diameter"] = diameter_bitset(g);
            } else {
                out.result["diameter"] = diameter_bfs(g);
            }
            auto og = odd_girth(g);
            out.result["odd_girth"] = og ? ojson(*og) : ojson(nullptr);
        } else if (*verify) {
            command = "verify";
            if (!subsets && k_max <= 0) throw Error(Errc::Usage, "verify needs --k-max or --subsets");
            out.request = {{"degree", degree}, {"k_max", k_max}, {"engine", engine_s},
                           {"mem_cap", vopts.mem_cap}, {"bitset_cap", vopts.bitset_cap}};
            if (subsets) out.request["subsets"] = {{"min_modulus", min_modulus}};
            const auto tables = load_tables();
            VerifyContext ctx(tables, vopts);
            std::vector<VerificationReport> reps;
            if (paper_tables) {
                for (const auto& t : tables)
                    if (t.degree == degree)
                        for (const auto& in : t.instances)
                            if (in.k <= k_max) reps.push_back(ctx.verify_table_instance(t, in, parse_engine(engine_s)));
                std::stable_sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
                ojson rows = ojson::array();
                for (const auto& r : reps) {
                    const auto& fam = find_family(tables, degree, r.class_label);
                    ojson row;
                    row["k"] = r.k;
                    row["kind"] = fam.parity == Parity::LargestKnown ? "L_CC" : "L_OC";
                    row["class"] = r.class_label;
                    row["order"] = r.n_claimed;
                    for (const auto& in : fam.instances)
                        if (in.k == r.k && fam.class_label + in.label == r.class_label) row["gens"] = in.gens;
                    row["m_ac"] = num(m_ac(degree, r.k));
                    row["verified"] = r.pass;
                    rows.push_back(row);
                }
                out.result["rows"] = rows;
            } else {
                reps = subsets ? ctx.verify_subsets(degree, min_modulus, parse_engine(engine_s))
                               : ctx.verify_suite(degree, k_max, parse_engine(engine_s));
                ojson arr = ojson::array();
                for (const auto& r : reps) arr.push_back(report_json(r));
                out.result["reports"] = arr;
            }
            out.columns = {"degree", "class", "set", "subset", "k", "n", "diameter", "engine", "pass", "ms"};
            int passed = 0, failed = 0, budget = 0;
            ojson ms = ojson::array();
            for (const auto& r : reps) {
                out.rows.push_back(report_row(r));
                passed += r.pass;
                failed += !r.pass && !r.budget_exceeded;
                budget += r.budget_exceeded;
                ms.push_back(r.ms);
            }
            out.result["passed"] = passed;
            out.result["failed"] = failed;
            out.result["budget_exceeded"] = budget;
            out.perf_data["instance_ms"] = ms;
            if (reps.empty()) out.warnings.push_back("no instances at or below k-max");
            rc = failed ? kFailed : budget ? kBudget : kOk;
        } else if (*lattice) {
            command = "lattice check";
            out.request = {{"theorem", theorem}, {"k", k}, {"suite", suite}};
            const auto& c = construction(theorem);
            LatticeBasis b = theorem_basis(c, k);
            const i128 det = determinant(b);
            SmithForm s = smith_form(b);
            out.result["a"] = c.a_at(k);
            out.result["rows"] = b.rows;
            out.result["determinant"] = num(det);
            out.result["smith"] = s.diag;
            out.result["cyclic"] = s.cyclic();
            const auto& fam = find_family(builtin_tables(), c.family_degree, c.family_class);
            if (k >= fam.k_min) {
                const int64_t n = eval_order(fam, k);
                out.result["family_order"] = n;
                if (abs128(det) != n) rc = kFailed;
            }
            if (suite == "combos" || suite == "all") {
                verify_combo_identities(c, k);
                out.result["combos"] = "pass";
            }
            if (suite == "orthants" || suite == "all") {
                if (k < c.threshold && suite == "all") {
                    out.result["orthants"] = "below threshold";
                    out.warnings.push_back("orthant argument needs k >= " + std::to_string(c.threshold));
                } else {
                    verify_orthant_suite(c, k);
                    out.result["orthants"] = "pass";
                }
            }
            if (suite == "covering" || suite == "all") {
                bool at_k = covering_check(b, k);
                bool below = covering_check(b, k - 1);
                out.result["covering_k"] = at_k;
                out.result["covering_k_minus_1"] = below;
                if (!at_k || below) rc = kFailed;
            }
        } else if (*search) {
            command = "search";
            out.request = {{"degree", scfg.degree}, {"diameter", scfg.diameter}, {"n_max", scfg.n_max},
                           {"n_min", scfg.n_min},   {"fix_one", scfg.fix_one},    {"girth_prune", scfg.girth_prune},
                           {"pair_diff", scfg.pair_diff}, {"jobs", scfg.jobs}, {"confirm", confirm_n}};
            if (confirm_n > 0) {
                out.result["confirmed"] = confirm_extremality(scfg.degree, scfg.diameter, confirm_n, scfg);
                out.result["m_ac"] = num(m_ac(scfg.degree, scfg.diameter));
                if (!out.result["confirmed"].get<bool>()) rc = kFailed;
            } else {
                SearchResult r = exhaustive_extremal(scfg);
                out.result["best_order"] = r.best_order;
                out.result["m_ac"] = num(m_ac(scfg.degree, scfg.diameter));
                ojson classes = ojson::array();
                for (const auto& c : r.classes)
                    classes.push_back({{"representative", c.representative.gens}, {"members", c.members.size()}});
                out.result["classes"] = classes;
                ojson w = ojson::array();
                for (const auto& g : r.witnesses) w.push_back(g.gens);
                out.result["witnesses"] = w;
                out.result["exhaustive"] = r.exhaustive;
                out.result["heuristic_filters"] = r.heuristic_filters;
                out.result["budget_exceeded"] = r.budget_exceeded;
                out.result["frontier"] = {{"n", r.frontier.n}, {"unit", r.frontier.unit}};
                out.result["candidates"] = r.candidates;
                if (r.heuristic_filters) out.warnings.push_back("heuristic filters on: no completeness claim");
                if (r.budget_exceeded) rc = kBudget;
            }
        } else if (*gsets) {
            command = "gensets";
            out.request = {{"order", order}, {"gens", gens}, {"involution", involution}};
            int d = 2 * static_cast<int>(gens.size()) + (involution ? 1 : 0);
            CirculantGraph g = make_graph(order, gens, d);
            ojson arr = ojson::array();
            out.columns = {"gens"};
            for (const auto& s : enumerate_primitive_gensets(g)) {
                arr.push_back(s.gens);
                std::string joined;
                for (int64_t x : s.gens) joined += (joined.empty() ? "" : " ") + std::to_string(x);
                out.rows.push_back({joined});
            }
            out.result["order"] = order;
            out.result["sets"] = arr;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        out.warnings.push_back(e.what());
        out.result["error"] = errc_name(e.code());
        rc = exit_for(e.code());
    }
    out.perf_data["ms"] = ms_since(t0);
    out.emit(command, std::cout);
    return rc;
}
