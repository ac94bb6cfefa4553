#include "circdd/families.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "circdd/lattice.hpp"
#include "embedded.hpp"

namespace circdd {

namespace {

using nlohmann::json;

QuinticPoly parse_poly(const json& j) {
    QuinticPoly p;
    const auto& c = j.at("coeffs");
    if (!c.is_array() || c.size() != 6) throw Error(Errc::ParseError, "polynomial needs six coefficients");
    for (size_t i = 0; i < 6; ++i) p.coeffs[i] = c[i].get<int64_t>();
    p.div = j.at("div").get<int64_t>();
    if (p.div <= 0) throw Error(Errc::InvariantViolation, "polynomial divisor must be positive");
    return p;
}

bool is_constant_one(const QuinticPoly& p) {
    for (size_t i = 0; i < 5; ++i)
        if (p.coeffs[i] != 0) return false;
    return p.coeffs[5] == p.div;
}

std::string family_name(const FamilyTable& t) {
    return "degree " + std::to_string(t.degree) + " class " + t.class_label;
}

// Structural checks, plus exact evaluation at each subset's smallest k.
void validate(const FamilyTable& t) {
    if (t.degree != 10 && t.degree != 11) throw Error(Errc::InvariantViolation, "unsupported degree " + std::to_string(t.degree));
    if (t.a_sub.den <= 0) throw Error(Errc::InvariantViolation, family_name(t) + ": a_sub den must be positive");
    const int cr = t.class_residue();
    if (cr < 0) throw Error(Errc::InvariantViolation, family_name(t) + ": a is never integral");
    if (t.k_min < 1) throw Error(Errc::InvariantViolation, family_name(t) + ": k_min must be positive");
    std::vector<int> seen;
    for (const auto& s : t.sets) {
        if (std::find(seen.begin(), seen.end(), s.index) != seen.end())
            throw Error(Errc::InvariantViolation, family_name(t) + ": set " + std::to_string(s.index) + " repeated");
        seen.push_back(s.index);
        for (const auto& sub : s.subsets) {
            const std::string where = family_name(t) + " set " + std::to_string(s.index) + " subset " +
                                      std::to_string(sub.residue) + "/" + std::to_string(sub.modulus);
            if (sub.modulus <= 0 || sub.modulus % t.a_sub.den != 0)
                throw Error(Errc::InvariantViolation, where + ": modulus is not a multiple of " + std::to_string(t.a_sub.den));
            if (sub.residue < 0 || sub.residue >= sub.modulus)
                throw Error(Errc::InvariantViolation, where + ": residue out of range");
            if (sub.residue % t.a_sub.den != cr)
                throw Error(Errc::InvariantViolation, where + ": residue disagrees with the class residue");
            if (!is_constant_one(sub.generators[0]))
                throw Error(Errc::InvariantViolation, where + ": first generator is not 1");
            const int k = sub.smallest_k(t.k_min);
            const int64_t a = t.a_sub.at(k);
            try {
                const i128 n = t.order_poly.eval(a);
                for (const auto& g : sub.generators) (void)mod_floor(g.eval(a), to_i64(n));
            } catch (const Error& e) {
                throw Error(Errc::InvariantViolation, where + " at k=" + std::to_string(k) + ": " + e.what());
            }
        }
    }
    int k0 = t.k_min;
    while (!t.a_sub.admissible(k0)) ++k0;
    for (int k = k0; k < k0 + 3 * static_cast<int>(t.a_sub.den); k += static_cast<int>(t.a_sub.den)) {
        try {
            int64_t n = eval_order(t, k);
            if (t.degree == 11 && n % 2 != 0)
                throw Error(Errc::InvariantViolation, family_name(t) + ": odd order at k=" + std::to_string(k));
        } catch (const Error& e) {
            if (e.code() == Errc::InvariantViolation) throw;
            throw Error(Errc::InvariantViolation, family_name(t) + ": " + e.what());
        }
    }
}

std::vector<FamilyTable> parse_degree(const json& doc) {
    std::vector<FamilyTable> out;
    const int degree = doc.at("degree").get<int>();
    for (const auto& fj : doc.at("families")) {
        FamilyTable t;
        t.degree = degree;
        t.class_label = fj.at("class").get<std::string>();
        std::string parity = fj.value("parity", "largest-known");
        if (parity == "largest-known")
            t.parity = Parity::LargestKnown;
        else if (parity == "largest-known-odd-order")
            t.parity = Parity::LargestKnownOddOrder;
        else
            throw Error(Errc::ParseError, "unknown parity '" + parity + "'");
        t.order_poly = parse_poly(fj.at("order_poly"));
        if (fj.contains("order_poly_k")) t.order_poly_k = parse_poly(fj.at("order_poly_k"));
        const auto& as = fj.at("a_sub");
        t.a_sub = {as.at("mul").get<int64_t>(), as.at("off").get<int64_t>(), as.at("den").get<int64_t>()};
        t.k_min = fj.at("k_min").get<int>();
        for (const auto& sj : fj.value("sets", json::array())) {
            GenSetTable s;
            s.index = sj.at("index").get<int>();
            for (const auto& uj : sj.at("subsets")) {
                Subset sub;
                sub.residue = uj.at("residue").get<int>();
                sub.modulus = uj.at("modulus").get<int>();
                const auto& gj = uj.at("generators");
                if (!gj.is_array() || gj.size() != 5) throw Error(Errc::ParseError, "subset needs five generators");
                for (size_t i = 0; i < 5; ++i) sub.generators[i] = parse_poly(gj[i]);
                if (uj.contains("printed"))
                    for (auto it = uj.at("printed").begin(); it != uj.at("printed").end(); ++it)
                        sub.printed[std::stoi(it.key())] = parse_poly(it.value());
                s.subsets.push_back(std::move(sub));
            }
            if (sj.contains("declared")) {
                s.declared_count = sj.at("declared").at("count").get<int>();
                s.declared_modulus = sj.at("declared").at("modulus").get<int>();
            } else {
                s.declared_count = static_cast<int>(s.subsets.size());
                s.declared_modulus = s.subsets.empty() ? 0 : s.subsets.front().modulus;
            }
            t.sets.push_back(std::move(s));
        }
        for (const auto& ij : fj.value("instances", json::array())) {
            Instance in;
            in.k = ij.at("k").get<int>();
            in.order = ij.at("order").get<int64_t>();
            in.gens = ij.at("gens").get<std::vector<int64_t>>();
            in.label = ij.value("label", "");
            if (in.gens.empty() || in.order < 3) throw Error(Errc::InvariantViolation, "malformed instance");
            t.instances.push_back(std::move(in));
        }
        validate(t);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<FamilyTable> parse_any(const json& doc) {
    std::vector<FamilyTable> out;
    if (doc.is_array()) {
        for (const auto& d : doc) {
            auto part = parse_degree(d);
            out.insert(out.end(), part.begin(), part.end());
        }
    } else {
        out = parse_degree(doc);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ParseError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string base_label(const std::string& label) {
    // "3(odd)a" names instance list a of the shared 3(odd) order entry
    auto p = label.find("(odd)");
    if (p != std::string::npos && p + 5 < label.size()) return label.substr(0, p + 5);
    return label;
}

}  // namespace

i128 QuinticPoly::numerator(i128 a) const {
    i128 acc = 0;
    for (int64_t c : coeffs) acc = checked_add(checked_mul(acc, a), c);
    return acc;
}

i128 QuinticPoly::eval(i128 a) const {
    i128 num = numerator(a);
    if (num % div != 0)
        throw Error(Errc::DivisibilityFailure, str() + " is not integral at a=" + to_string(a));
    return num / div;
}

std::string QuinticPoly::str() const {
    std::string s = "(";
    for (size_t i = 0; i < 6; ++i) s += (i ? " " : "") + std::to_string(coeffs[i]);
    return s + ")/" + std::to_string(div);
}

int ASubstitution::residue() const {
    for (int r = 0; r < den; ++r)
        if (mod_floor(static_cast<i128>(mul) * r + off, den) == 0) return r;
    return -1;
}

std::string ASubstitution::str() const {
    std::string s = "a=(" + std::to_string(mul) + "k";
    if (off > 0) s += "+" + std::to_string(off);
    if (off < 0) s += std::to_string(off);
    return s + ")/" + std::to_string(den);
}

int Subset::smallest_k(int k_min) const {
    int k = residue;
    while (k < k_min) k += modulus;
    return k;
}

const GenSetTable& FamilyTable::set(int index) const {
    for (const auto& s : sets)
        if (s.index == index) return s;
    throw Error(Errc::Unsupported, "degree " + std::to_string(degree) + " class " + class_label + " has no set " +
                                       std::to_string(index));
}

std::vector<FamilyTable> load_tables_json(const std::string& text) {
    try {
        return parse_any(json::parse(text));
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("table data: ") + e.what());
    }
}

std::vector<FamilyTable> load_tables_file(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::is_directory(path)) {
        std::vector<std::string> files;
        for (const auto& e : fs::directory_iterator(path)) {
            auto name = e.path().filename().string();
            if (name.rfind("degree", 0) == 0 && e.path().extension() == ".json") files.push_back(e.path().string());
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) throw Error(Errc::ParseError, "no degree*.json tables in " + path);
        std::vector<FamilyTable> out;
        for (const auto& f : files) {
            auto part = load_tables_json(read_file(f));
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    return load_tables_json(read_file(path));
}

const std::vector<FamilyTable>& builtin_tables() {
    static const std::vector<FamilyTable> all = [] {
        auto t = load_tables_json(std::string(embedded::degree10()));
        auto u = load_tables_json(std::string(embedded::degree11()));
        t.insert(t.end(), u.begin(), u.end());
        return t;
    }();
    return all;
}

std::vector<FamilyTable> load_tables() {
    if (const char* env = std::getenv("CIRCDD_TABLES"); env && *env) return load_tables_file(env);
    return builtin_tables();
}

const FamilyTable& find_family(const std::vector<FamilyTable>& tables, int degree, const std::string& label) {
    for (int pass = 0; pass < 2; ++pass) {
        const std::string want = pass == 0 ? label : base_label(label);
        for (const auto& t : tables)
            if (t.degree == degree && t.class_label == want) return t;
    }
    throw Error(Errc::Unsupported, "no family for degree " + std::to_string(degree) + " class " + label);
}

int64_t a_param(const FamilyTable& t, int k) {
    if (!t.a_sub.admissible(k))
        throw Error(Errc::WrongResidue, family_name(t) + " needs k = " + std::to_string(t.class_residue()) + " mod " +
                                            std::to_string(t.a_sub.den));
    if (k < t.k_min)
        throw Error(Errc::BelowThreshold, family_name(t) + " starts at k=" + std::to_string(t.k_min));
    return t.a_sub.at(k);
}

int64_t eval_order_unchecked(const FamilyTable& t, int k) {
    if (!t.a_sub.admissible(k))
        throw Error(Errc::WrongResidue, family_name(t) + " needs k = " + std::to_string(t.class_residue()) + " mod " +
                                            std::to_string(t.a_sub.den));
    return to_i64(t.order_poly.eval(t.a_sub.at(k)));
}

int64_t eval_order_kform(const FamilyTable& t, int k) {
    a_param(t, k);
    if (!t.order_poly_k) throw Error(Errc::Unsupported, family_name(t) + " has no k-form order");
    return to_i64(t.order_poly_k->eval(k));
}

int64_t eval_order(const FamilyTable& t, int k) {
    const int64_t n = to_i64(t.order_poly.eval(a_param(t, k)));
    if (t.order_poly_k) {
        const int64_t nk = to_i64(t.order_poly_k->eval(k));
        if (nk != n)
            throw Error(Errc::InvariantViolation, family_name(t) + ": k-form gives " + std::to_string(nk) +
                                                      ", a-format gives " + std::to_string(n) + " at k=" + std::to_string(k));
    }
    return n;
}

const Subset& subset_for(const FamilyTable& t, int set_index, int k) {
    if (!t.has_gensets())
        throw Error(Errc::Unsupported, family_name(t) + " has instance data only, no generator polynomials");
    const auto& s = t.set(set_index);
    for (const auto& sub : s.subsets)
        if (sub.contains(k)) return sub;
    throw Error(Errc::NoSubsetForResidue, family_name(t) + " set " + std::to_string(set_index) +
                                              " has no formula for k=" + std::to_string(k));
}

GeneratingSet eval_genset(const FamilyTable& t, int set_index, int k) {
    const Subset& sub = subset_for(t, set_index, k);
    const int64_t a = a_param(t, k);
    const int64_t n = eval_order(t, k);
    std::vector<int64_t> raw;
    for (const auto& g : sub.generators) raw.push_back(mod_floor(g.eval(a), n));
    GeneratingSet gs;
    gs.order = n;
    gs.gens = canonicalize(n, raw);
    gs.has_involution = t.degree % 2 == 1;
    if (gs.gens.empty() || gs.gens.front() != 1)
        throw Error(Errc::InvariantViolation, family_name(t) + ": evaluated set lacks generator 1");
    return gs;
}

std::vector<SubsetRef> applicable_sets(const std::vector<FamilyTable>& tables, int degree, int k) {
    std::vector<SubsetRef> out;
    for (const auto& t : tables) {
        if (t.degree != degree || !t.has_gensets() || k < t.k_min || !t.a_sub.admissible(k)) continue;
        for (const auto& s : t.sets)
            for (const auto& sub : s.subsets)
                if (sub.contains(k)) {
                    out.push_back({&t, s.index, &sub});
                    break;
                }
    }
    return out;
}

const char* engine_name(Engine e) {
    switch (e) {
        case Engine::Bfs: return "bfs";
        case Engine::Bitset: return "bitset";
        case Engine::Lattice: return "lattice";
        case Engine::Multiplier: return "multiplier";
        case Engine::Auto: return "auto";
    }
    return "?";
}

Engine parse_engine(const std::string& s) {
    for (Engine e : {Engine::Bfs, Engine::Bitset, Engine::Lattice, Engine::Multiplier, Engine::Auto})
        if (s == engine_name(e)) return e;
    throw Error(Errc::Usage, "unknown engine '" + s + "'");
}

std::optional<int> VerifyContext::known_diameter(int64_t n, const std::vector<int64_t>& gens) const {
    auto it = measured_.find({n, gens});
    if (it == measured_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> VerifyContext::measure(const CirculantGraph& g, Engine* used) {
    const int64_t n = g.order();
    if (auto d = known_diameter(n, g.genset.gens)) {
        if (used) *used = Engine::Bfs;
        return d;
    }
    int d;
    if (bfs_bytes(n) <= opts_.mem_cap) {
        d = diameter_bfs(g);
        if (used) *used = Engine::Bfs;
    } else if (bitset_bytes(n) <= opts_.bitset_cap) {
        d = diameter_bitset(g, 254);
        if (used) *used = Engine::Bitset;
    } else {
        return std::nullopt;
    }
    measured_[{n, g.genset.gens}] = d;
    return d;
}

void VerifyContext::run_engine(const FamilyTable& fam, const CirculantGraph& g, int set_index, int k, Engine engine,
                               VerificationReport& r) {
    const int64_t n = g.order();
    switch (engine) {
        case Engine::Bfs:
            if (bfs_bytes(n) > opts_.mem_cap) {
                r.budget_exceeded = true;
                r.note = "order " + std::to_string(n) + " exceeds bfs memory cap";
                return;
            }
            r.diameter_computed = diameter_bfs(g);
            measured_[{n, g.genset.gens}] = *r.diameter_computed;
            return;
        case Engine::Bitset:
            if (bitset_bytes(n) > opts_.bitset_cap) {
                r.budget_exceeded = true;
                r.note = "order " + std::to_string(n) + " exceeds bitset memory cap";
                return;
            }
            r.diameter_computed = diameter_bitset(g, 254);
            measured_[{n, g.genset.gens}] = *r.diameter_computed;
            return;
        case Engine::Lattice: {
            if (static_cast<uint64_t>(n) > opts_.mem_cap) {
                r.budget_exceeded = true;
                r.note = "order " + std::to_string(n) + " exceeds lattice memory cap";
                return;
            }
            LatticeBasis b = kernel_lattice(n, g.genset.gens);
            bool at_k, below;
            if (g.genset.has_involution) {
                IntRow vm = preimage(n, g.genset.gens, n / 2);
                at_k = odd_covering_check(b, vm, k, opts_.mem_cap);
                below = odd_covering_check(b, vm, k - 1, opts_.mem_cap);
            } else {
                at_k = covering_check(b, k, opts_.mem_cap);
                below = covering_check(b, k - 1, opts_.mem_cap);
            }
            if (at_k && !below) {
                r.diameter_computed = k;
            } else {
                r.note = at_k ? "covered below k" : "not covered at k";
            }
            return;
        }
        case Engine::Multiplier: {
            if (set_index <= 0 || !fam.has_gensets()) {
                r.note = "multiplier engine needs a polynomial set";
                return;
            }
            // Prefer a base already measured; otherwise measure the first other set that fits.
            std::vector<GeneratingSet> bases;
            for (const auto& s : fam.sets) {
                if (s.index == set_index) continue;
                try {
                    bases.push_back(eval_genset(fam, s.index, k));
                } catch (const Error& e) {
                    if (e.code() != Errc::NoSubsetForResidue) throw;
                }
            }
            if (bases.empty()) {
                r.note = "no other set of the class is defined at this k";
                return;
            }
            std::stable_partition(bases.begin(), bases.end(),
                                  [&](const GeneratingSet& b) { return known_diameter(n, b.gens).has_value(); });
            const GeneratingSet& base = bases.front();
            auto u = find_multiplier(n, base, g.genset);
            if (!u) {
                r.note = "not a unit multiple of " + std::string("the base set");
                return;
            }
            Engine used = Engine::Bfs;
            auto d = measure(make_graph(n, base.gens, fam.degree), &used);
            if (!d) {
                r.budget_exceeded = true;
                r.note = "base set at order " + std::to_string(n) + " exceeds both memory caps";
                return;
            }
            r.diameter_computed = d;
            r.note = "u=" + std::to_string(*u) + " from base measured by " + engine_name(used);
            return;
        }
        case Engine::Auto: break;
    }
    throw Error(Errc::InvariantViolation, "engine must be resolved before running");
}

VerificationReport VerifyContext::verify_instance(int degree, const std::string& class_label, int set_index, int k,
                                                  Engine engine) {
    auto t0 = std::chrono::steady_clock::now();
    const FamilyTable& fam = find_family(tables_, degree, class_label);
    VerificationReport r;
    r.degree = degree;
    r.k = k;
    r.class_label = fam.class_label;
    r.set_index = set_index;
    r.diameter_claimed = k;
    const Subset& sub = subset_for(fam, set_index, k);
    r.subset = std::to_string(sub.residue) + "/" + std::to_string(sub.modulus);
    GeneratingSet gs = eval_genset(fam, set_index, k);
    r.n_computed = gs.order;
    r.n_claimed = fam.order_poly_k ? eval_order_kform(fam, k) : gs.order;
    for (const auto& in : fam.instances)
        if (in.k == k && in.order != r.n_computed) {
            r.n_claimed = in.order;
            r.note = "table row order differs";
        }
    CirculantGraph g = make_graph(gs.order, gs.gens, degree);
    if (engine == Engine::Auto) {
        const int64_t n = gs.order;
        bool has_lower = false;
        for (const auto& s : fam.sets)
            if (s.index < set_index)
                for (const auto& other : s.subsets) has_lower |= other.contains(k);
        if (bfs_bytes(n) <= opts_.mem_cap)
            engine = Engine::Bfs;
        else if (has_lower)
            engine = Engine::Multiplier;
        else
            engine = Engine::Bitset;
    }
    r.engine = engine;
    if (r.note.empty()) run_engine(fam, g, set_index, k, engine, r);
    r.pass = !r.budget_exceeded && r.n_claimed == r.n_computed && r.diameter_computed == k;
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

VerificationReport VerifyContext::verify_table_instance(const FamilyTable& fam, const Instance& inst, Engine engine) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport r;
    r.degree = fam.degree;
    r.k = inst.k;
    r.class_label = fam.class_label + inst.label;
    r.set_index = 0;
    r.subset = "table";
    r.diameter_claimed = inst.k;
    r.n_claimed = inst.order;
    r.n_computed = eval_order_unchecked(fam, inst.k);
    CirculantGraph g = make_graph(inst.order, inst.gens, fam.degree);
    if (engine == Engine::Auto || engine == Engine::Multiplier)
        engine = bfs_bytes(inst.order) <= opts_.mem_cap ? Engine::Bfs : Engine::Bitset;
    r.engine = engine;
    run_engine(fam, g, 0, inst.k, engine, r);
    r.pass = !r.budget_exceeded && r.n_claimed == r.n_computed && r.diameter_computed == inst.k;
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<VerificationReport> VerifyContext::verify_suite(int degree, int k_max, Engine engine) {
    struct Job {
        const FamilyTable* fam;
        int set;
        int k;
        const Instance* inst;
    };
    std::vector<Job> jobs;
    for (const auto& t : tables_) {
        if (t.degree != degree) continue;
        for (const auto& s : t.sets)
            for (int k = t.k_min; k <= k_max; ++k)
                if (t.a_sub.admissible(k))
                    for (const auto& sub : s.subsets)
                        if (sub.contains(k)) {
                            jobs.push_back({&t, s.index, k, nullptr});
                            break;
                        }
        for (const auto& in : t.instances)
            if (in.k <= k_max) jobs.push_back({&t, 0, in.k, &in});
    }
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
        return std::tie(a.fam->class_label, a.set, a.k) < std::tie(b.fam->class_label, b.set, b.k);
    });
    std::vector<VerificationReport> out;
    for (const auto& j : jobs) {
        if (j.inst)
            out.push_back(verify_table_instance(*j.fam, *j.inst, engine));
        else
            out.push_back(verify_instance(degree, j.fam->class_label, j.set, j.k, engine));
    }
    return out;
}

std::vector<VerificationReport> VerifyContext::verify_subsets(int degree, int min_modulus, Engine engine) {
    std::vector<VerificationReport> out;
    for (const auto& t : tables_) {
        if (t.degree != degree) continue;
        for (const auto& s : t.sets)
            for (const auto& sub : s.subsets)
                if (sub.modulus >= min_modulus)
                    out.push_back(verify_instance(degree, t.class_label, s.index, sub.smallest_k(t.k_min), engine));
    }
    return out;
}

}  // namespace circdd
