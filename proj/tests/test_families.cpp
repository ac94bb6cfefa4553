#include <cstdlib>
#include <functional>
#include <fstream>
#include <sstream>

#include "circdd/bounds.hpp"
#include "circdd/families.hpp"
#include "circdd/lattice.hpp"
#include "doctest.h"

using namespace circdd;

namespace {

const std::vector<FamilyTable>& tables() { return builtin_tables(); }

Rational a_of(const FamilyTable& t, int k) { return Rational(t.a_sub.mul * k + t.a_sub.off, t.a_sub.den); }

// Order evaluated in exact rationals, independent of the integer evaluation path.
Rational rational_order(const QuinticPoly& p, Rational a) {
    Rational acc(0);
    for (int i = 0; i < 6; ++i) acc = acc * a + Rational(p.coeffs[i]);
    return acc / Rational(p.div);
}

// Coefficients of k^5 and k^4 after substituting a = (mul k + off)/den.
std::pair<Rational, Rational> top_k_terms(const FamilyTable& t) {
    const Rational m(t.a_sub.mul, t.a_sub.den), o(t.a_sub.off, t.a_sub.den);
    const auto& c = t.order_poly.coeffs;
    const Rational div(t.order_poly.div);
    Rational lead = Rational(c[0]) * m.pow(5) / div;
    Rational second = (Rational(5 * c[0]) * m.pow(4) * o + Rational(c[1]) * m.pow(4)) / div;
    return {lead, second};
}

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Usage;
}

std::string read_file(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("families") {

TEST_CASE("builtin tables cover both degrees") {
    int d10 = 0, d11 = 0, with_sets = 0;
    for (const auto& t : tables()) {
        (t.degree == 10 ? d10 : d11)++;
        with_sets += t.has_gensets();
    }
    CHECK(d10 == 7);
    CHECK(d11 == 6);
    CHECK(with_sets == 11);
}

TEST_CASE("a-format and k-format orders agree for every valid k up to 200") {
    for (const auto& t : tables())
        for (int k = t.k_min; k <= 200; ++k) {
            if (!t.a_sub.admissible(k)) {
                CHECK(code_of([&] { eval_order(t, k); }) == Errc::WrongResidue);
                continue;
            }
            const int64_t n = eval_order(t, k);
            CHECK(Rational(n) == rational_order(t.order_poly, a_of(t, k)));
            if (t.order_poly_k) {
                CHECK(eval_order_kform(t, k) == n);
                CHECK(Rational(n) == rational_order(*t.order_poly_k, Rational(k)));
            }
        }
}

TEST_CASE("leading k-coefficients equal the conjectured terms") {
    for (const auto& t : tables()) {
        auto [lead, second] = top_k_terms(t);
        auto want = conjectured_terms(t.degree);
        CHECK(lead == want.leading);
        CHECK(second == want.second);
        if (t.order_poly_k) {
            CHECK(Rational(t.order_poly_k->coeffs[0], t.order_poly_k->div) == lead);
            CHECK(Rational(t.order_poly_k->coeffs[1], t.order_poly_k->div) == second);
        }
    }
}

TEST_CASE("order parity per class") {
    for (const auto& t : tables())
        for (int k = t.k_min; k <= 200; ++k) {
            if (!t.a_sub.admissible(k)) continue;
            const int64_t n = eval_order(t, k);
            if (t.degree == 11) CHECK(n % 2 == 0);
            if (t.parity == Parity::LargestKnownOddOrder) CHECK(n % 2 == 1);
        }
}

TEST_CASE("table rows match the embedded orders") {
    const int64_t d10[] = {457, 1099, 2380, 4551, 8288, 14099, 22805, 35568, 53025, 77572, 110045, 152671, 208052};
    const char* cls10[] = {"0", "1", "2", "3", "4"};
    for (int k = 4; k <= 16; ++k) CHECK(eval_order(find_family(tables(), 10, cls10[k % 5]), k) == d10[k - 4]);
    const int64_t d11[] = {1428, 3200, 6652, 12416, 21572, 35880, 56700, 87248, 128852, 184424, 259260, 355576};
    const char* cls11[] = {"0", "1a", "2", "3", "4"};
    for (int k = 5; k <= 16; ++k) CHECK(eval_order(find_family(tables(), 11, cls11[k % 5]), k) == d11[k - 5]);
    CHECK(eval_order(find_family(tables(), 10, "1(odd)"), 6) == 2329);
    CHECK(eval_order(find_family(tables(), 10, "3(odd)a"), 8) == 8183);
    CHECK(eval_order(find_family(tables(), 11, "1b"), 11) == 56700);
}

TEST_CASE("evaluated sets are primitive and integral at every valid k up to 200") {
    int evaluated = 0, missing = 0;
    for (const auto& t : tables())
        for (const auto& s : t.sets)
            for (int k = t.k_min; k <= 200; ++k) {
                if (!t.a_sub.admissible(k)) continue;
                GeneratingSet g;
                try {
                    g = eval_genset(t, s.index, k);
                } catch (const Error& e) {
                    CHECK(e.code() == Errc::NoSubsetForResidue);
                    ++missing;
                    continue;
                }
                CHECK(g.gens.front() == 1);
                CHECK(g.order == eval_order(t, k));
                CHECK(g.has_involution == (t.degree == 11));
                ++evaluated;
            }
    CHECK(evaluated > 1000);
    MESSAGE("evaluated " << evaluated << " sets, " << missing << " (set, k) pairs have no transcribed subset");
}

TEST_CASE("sets of one family at one k are multiplier-equivalent") {
    for (const auto& t : tables()) {
        if (t.sets.size() < 2) continue;
        for (int k = t.k_min; k <= 60; ++k) {
            if (!t.a_sub.admissible(k)) continue;
            std::vector<GeneratingSet> here;
            for (const auto& s : t.sets) {
                try {
                    here.push_back(eval_genset(t, s.index, k));
                } catch (const Error&) {
                }
            }
            for (size_t i = 1; i < here.size(); ++i)
                CHECK_MESSAGE(find_multiplier(here[0].order, here[0], here[i]).has_value(),
                              "degree " << t.degree << " class " << t.class_label << " k=" << k);
        }
    }
}

TEST_CASE("residue and threshold errors") {
    const auto& c0 = find_family(tables(), 10, "0");
    CHECK(code_of([&] { a_param(c0, 6); }) == Errc::WrongResidue);
    CHECK(code_of([&] { a_param(c0, 0); }) == Errc::BelowThreshold);
    CHECK(eval_order_unchecked(c0, 0) == 1);
    CHECK(code_of([&] { subset_for(c0, 5, 60); }) == Errc::NoSubsetForResidue);
    CHECK(code_of([&] { subset_for(c0, 9, 5); }) == Errc::Unsupported);
    CHECK(code_of([&] { eval_genset(find_family(tables(), 10, "1(odd)"), 1, 6); }) == Errc::Unsupported);
    CHECK(code_of([&] { find_family(tables(), 12, "0"); }) == Errc::Unsupported);
    QuinticPoly q{{0, 0, 0, 0, 1, 0}, 2};
    CHECK(q.eval(4) == 2);
    CHECK(code_of([&] { q.eval(3); }) == Errc::DivisibilityFailure);
}

TEST_CASE("loading tables from files and bad input") {
    auto from_dir = load_tables_file(CIRCDD_DATA_DIR);
    CHECK(from_dir.size() == tables().size());
    auto d10 = load_tables_json(read_file(std::string(CIRCDD_DATA_DIR) + "/degree10.json"));
    CHECK(d10.size() == 7);
    CHECK(code_of([] { load_tables_json("{"); }) == Errc::ParseError);
    CHECK(code_of([] { load_tables_file("/nonexistent/tables.json"); }) == Errc::ParseError);
    std::string text = read_file(std::string(CIRCDD_DATA_DIR) + "/degree10.json");
    const std::string one = "{\"coeffs\": [0, 0, 0, 0, 0, 1], \"div\": 1}";
    auto pos = text.find(one);
    REQUIRE(pos != std::string::npos);
    std::string broken = text;
    broken.replace(pos, one.size(), "{\"coeffs\": [0, 0, 0, 0, 0, 2], \"div\": 1}");
    CHECK(code_of([&] { load_tables_json(broken); }) == Errc::InvariantViolation);
    ::setenv("CIRCDD_TABLES", CIRCDD_DATA_DIR "/degree11.json", 1);
    auto only11 = load_tables();
    ::unsetenv("CIRCDD_TABLES");
    CHECK(only11.size() == 6);
}

TEST_CASE("engines agree on small family instances") {
    VerifyContext ctx(tables());
    for (int k = 4; k <= 12; ++k)
        for (const auto& ref : applicable_sets(tables(), 10, k)) {
            auto a = ctx.verify_instance(10, ref.family->class_label, ref.set_index, k, Engine::Bfs);
            auto b = ctx.verify_instance(10, ref.family->class_label, ref.set_index, k, Engine::Lattice);
            auto c = ctx.verify_instance(10, ref.family->class_label, ref.set_index, k, Engine::Bitset);
            CHECK(a.pass);
            CHECK(b.pass);
            CHECK(c.pass);
            CHECK(a.diameter_computed == b.diameter_computed);
            CHECK(a.diameter_computed == c.diameter_computed);
        }
}

TEST_CASE("multiplier engine reuses a measured base") {
    VerifyContext ctx(tables());
    auto base = ctx.verify_instance(10, "0", 1, 20, Engine::Bfs);
    CHECK(base.pass);
    auto m = ctx.verify_instance(10, "0", 2, 20, Engine::Multiplier);
    CHECK(m.pass);
    CHECK(m.engine == Engine::Multiplier);
    auto e = ctx.verify_instance(10, "0", 5, 20, Engine::Auto);
    CHECK(e.pass);
}

TEST_CASE("budget is reported, not failed") {
    VerifyOptions opts;
    opts.mem_cap = 1000;
    opts.bitset_cap = 100;
    VerifyContext ctx(tables(), opts);
    auto r = ctx.verify_instance(10, "0", 1, 10, Engine::Auto);
    CHECK(r.budget_exceeded);
    CHECK(!r.note.empty());
}

TEST_CASE("table instances verify") {
    VerifyContext ctx(tables());
    for (const auto& t : tables())
        for (const auto& in : t.instances) {
            auto r = ctx.verify_table_instance(t, in);
            CHECK_MESSAGE(r.pass, t.degree << " " << t.class_label << in.label << " k=" << in.k);
        }
}

}
