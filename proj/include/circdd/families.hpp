#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "circdd/circulant.hpp"

namespace circdd {

// (c5 a^5 + ... + c0) / div, evaluated exactly.
struct QuinticPoly {
    std::array<int64_t, 6> coeffs{};  // c5..c0
    int64_t div = 1;

    i128 numerator(i128 a) const;
    // Throws DivisibilityFailure when div does not divide the numerator.
    i128 eval(i128 a) const;
    bool divides_at(i128 a) const { return numerator(a) % div == 0; }
    std::string str() const;
};

// a = (mul*k + off) / den
struct ASubstitution {
    int64_t mul = 4;
    int64_t off = 0;
    int64_t den = 5;

    bool admissible(int k) const { return (mul * k + off) % den == 0; }
    int64_t at(int k) const { return (mul * k + off) / den; }
    // The residue of k modulo den for which a is integral (-1 if none).
    int residue() const;
    std::string str() const;
};

struct Subset {
    int residue = 0;
    int modulus = 5;
    std::array<QuinticPoly, 5> generators;
    // Generators whose printed coefficients were corrected: index -> printed form.
    std::map<int, QuinticPoly> printed;

    bool contains(int k) const { return k % modulus == residue; }
    int smallest_k(int k_min) const;
};

struct GenSetTable {
    int index = 0;
    int declared_count = 0;  // number of subsets the set is characterised by
    int declared_modulus = 0;
    std::vector<Subset> subsets;

    bool complete() const { return static_cast<int>(subsets.size()) == declared_count; }
};

struct Instance {
    int k = 0;
    int64_t order = 0;
    std::vector<int64_t> gens;
    std::string label;
};

enum class Parity { LargestKnown, LargestKnownOddOrder };

struct FamilyTable {
    int degree = 10;
    std::string class_label;
    Parity parity = Parity::LargestKnown;
    QuinticPoly order_poly;    // a-format
    std::optional<QuinticPoly> order_poly_k;  // same order written in k, when supplied
    ASubstitution a_sub;
    int k_min = 4;
    std::vector<GenSetTable> sets;
    std::vector<Instance> instances;

    bool has_gensets() const { return !sets.empty(); }
    const GenSetTable& set(int index) const;
    int class_residue() const { return a_sub.residue(); }
};

// Built-in tables, or the file/directory named by CIRCDD_TABLES when set.
std::vector<FamilyTable> load_tables();
std::vector<FamilyTable> load_tables_file(const std::string& path);
// Parses one degree object or an array of them.
std::vector<FamilyTable> load_tables_json(const std::string& text);
const std::vector<FamilyTable>& builtin_tables();

const FamilyTable& find_family(const std::vector<FamilyTable>& tables, int degree, const std::string& label);

int64_t a_param(const FamilyTable& t, int k);
// Order from the a-format polynomial; cross-checked against the k-form.
int64_t eval_order(const FamilyTable& t, int k);
int64_t eval_order_kform(const FamilyTable& t, int k);
// Same polynomial evaluated without the k_min gate (small-k values are not extremal).
int64_t eval_order_unchecked(const FamilyTable& t, int k);

const Subset& subset_for(const FamilyTable& t, int set_index, int k);
GeneratingSet eval_genset(const FamilyTable& t, int set_index, int k);

struct SubsetRef {
    const FamilyTable* family = nullptr;
    int set_index = 0;
    const Subset* subset = nullptr;
};

std::vector<SubsetRef> applicable_sets(const std::vector<FamilyTable>& tables, int degree, int k);

enum class Engine { Bfs, Bitset, Lattice, Multiplier, Auto };
const char* engine_name(Engine e);
Engine parse_engine(const std::string& s);

struct VerificationReport {
    int degree = 0;
    int k = 0;
    std::string class_label;
    int set_index = 0;  // 0 for a table instance
    std::string subset;  // "r/m", or instance label
    int64_t n_claimed = 0;
    int64_t n_computed = 0;
    int diameter_claimed = 0;
    std::optional<int> diameter_computed;
    Engine engine = Engine::Bfs;
    bool pass = false;
    bool budget_exceeded = false;
    double ms = 0;
    std::string note;
};

struct VerifyOptions {
    uint64_t mem_cap = 200'000'000;       // byte-per-vertex engines (bfs, lattice)
    uint64_t bitset_cap = 1'000'000'000;  // packed engine, used for multiplier bases
};

// Holds diameters already established, so multiplier checks can reuse them.
class VerifyContext {
public:
    explicit VerifyContext(const std::vector<FamilyTable>& tables, VerifyOptions opts = {})
        : tables_(tables), opts_(opts) {}

    VerificationReport verify_instance(int degree, const std::string& class_label, int set_index, int k,
                                       Engine engine = Engine::Auto);
    VerificationReport verify_table_instance(const FamilyTable& fam, const Instance& inst,
                                             Engine engine = Engine::Auto);
    // Every applicable (class, set, k) with k_min <= k <= k_max, then the table rows.
    std::vector<VerificationReport> verify_suite(int degree, int k_max, Engine engine = Engine::Auto);
    // Each transcribed subset once, at its smallest valid k, for subsets with modulus >= min_modulus.
    std::vector<VerificationReport> verify_subsets(int degree, int min_modulus = 0, Engine engine = Engine::Auto);

    const VerifyOptions& options() const { return opts_; }
    // Diameter of a set that was measured directly by a graph engine.
    std::optional<int> known_diameter(int64_t n, const std::vector<int64_t>& gens) const;

private:
    void run_engine(const FamilyTable& fam, const CirculantGraph& g, int set_index, int k, Engine engine,
                    VerificationReport& r);
    // Graph-engine diameter (bfs or bitset by size); nullopt when over both caps.
    std::optional<int> measure(const CirculantGraph& g, Engine* used);

    const std::vector<FamilyTable>& tables_;
    VerifyOptions opts_;
    std::map<std::pair<int64_t, std::vector<int64_t>>, int> measured_;
};

}  // namespace circdd
