#include <deque>
#include <random>

#include "circdd/bounds.hpp"
#include "circdd/circulant.hpp"
#include "doctest.h"

using namespace circdd;

namespace {

// Plain queue BFS on the full connection set.
std::vector<int> naive_distances(const CirculantGraph& g) {
    const int64_t n = g.order();
    std::vector<int> d(n, -1);
    std::deque<int64_t> q{0};
    d[0] = 0;
    const auto conn = g.connection();
    while (!q.empty()) {
        int64_t v = q.front();
        q.pop_front();
        for (int64_t c : conn) {
            int64_t w = (v + c) % n;
            if (d[w] < 0) {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
        }
    }
    return d;
}

int naive_diameter(const CirculantGraph& g) {
    auto d = naive_distances(g);
    return *std::max_element(d.begin(), d.end());
}

// Shortest odd cycle by BFS from 0 over (vertex, parity) states.
std::optional<int> naive_odd_girth(const CirculantGraph& g) {
    const int64_t n = g.order();
    std::vector<int> d(2 * n, -1);
    std::deque<int64_t> q{0};
    d[0] = 0;
    const auto conn = g.connection();
    while (!q.empty()) {
        int64_t s = q.front();
        q.pop_front();
        int64_t v = s / 2, p = s % 2;
        for (int64_t c : conn) {
            int64_t w = ((v + c) % n) * 2 + (1 - p);
            if (d[w] < 0) {
                d[w] = d[s] + 1;
                q.push_back(w);
            }
        }
    }
    if (d[1] < 0) return std::nullopt;
    return d[1];
}

std::optional<CirculantGraph> random_graph(std::mt19937_64& rng, int64_t n, int degree) {
    const int f = degree / 2;
    std::vector<int64_t> gens;
    for (int tries = 0; tries < 100 && static_cast<int>(gens.size()) < f; ++tries) {
        int64_t g = 1 + static_cast<int64_t>(rng() % static_cast<uint64_t>((n - 1) / 2));
        if (2 * g == n) continue;
        if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
    if (static_cast<int>(gens.size()) < f) return std::nullopt;
    if (!is_connected(n, gens, degree % 2 == 1)) return std::nullopt;
    return make_graph(n, gens, degree);
}

}  // namespace

TEST_SUITE("circulant") {

TEST_CASE("canonical form and input errors") {
    const std::vector<int64_t> raw{1098, 53, 207, 827, 536};
    CHECK(canonicalize(1099, raw) == std::vector<int64_t>{1, 53, 207, 272, 536});
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::Usage;
    };
    CHECK(code([] { make_graph(10, {1, 9}, 4); }) == Errc::DuplicateGenerator);
    CHECK(code([] { make_graph(10, {1, 5}, 4); }) == Errc::GeneratorOutOfRange);
    CHECK(code([] { make_graph(10, {0, 3}, 4); }) == Errc::GeneratorOutOfRange);
    CHECK(code([] { make_graph(11, {1, 3}, 5); }) == Errc::ParityMismatch);
    CHECK(code([] { make_graph(12, {2, 4}, 4); }) == Errc::Disconnected);
    CHECK(code([] { make_graph(12, {1, 2}, 6); }) == Errc::InvariantViolation);
    auto g = make_graph(12, {1, 5}, 5);
    CHECK(g.connection().size() == 5);
    CHECK(g.genset.has_involution);
}

TEST_CASE("known diameters") {
    CHECK(diameter_bfs(make_graph(1099, {1, 53, 207, 272, 536}, 10)) == 5);
    CHECK(diameter_bfs(make_graph(457, {1, 20, 130, 147, 191}, 10)) == 4);
    CHECK(diameter_bfs(make_graph(51, {1, 2, 10, 16, 23}, 10)) == 2);
    CHECK(diameter_bfs(make_graph(1428, {1, 169, 285, 289, 387}, 11)) == 5);
    CHECK(diameter_bfs(make_graph(56, {2, 6, 7, 18, 21}, 11)) == 2);
    CHECK(diameter_bfs(make_graph(13, {1, 5}, 4)) == 2);
}

TEST_CASE("engines agree with a plain BFS on random graphs") {
    std::mt19937_64 rng(2024);
    BitsetBall ball;
    int checked = 0;
    for (int it = 0; it < 400; ++it) {
        const int degree = 2 + static_cast<int>(rng() % 10);
        int64_t n = 5 + static_cast<int64_t>(rng() % 3000);
        if (degree % 2 == 1 && n % 2 == 1) ++n;
        if (n < 2 * degree) continue;
        auto g = random_graph(rng, n, degree);
        if (!g) continue;
        const int d = naive_diameter(*g);
        if (d >= 255) {
            CHECK_THROWS_AS(diameter_bfs(*g), Error);
            CHECK(diameter_bitset(*g, 250) == 251);
            continue;
        }
        CHECK(diameter_bfs(*g) == d);
        CHECK(diameter_bitset(*g) == d);
        CHECK(diameter_bfs(*g, static_cast<int64_t>(rng() % n)) == d);
        auto prof = distances(*g);
        CHECK(prof.diameter == d);
        uint64_t total = 0, within = 0;
        for (size_t t = 0; t < prof.layer_sizes.size(); ++t) {
            total += prof.layer_sizes[t];
            within += prof.layer_sizes[t];
            // |ball of radius t| is bounded by the abelian count
            if (t > 0) CHECK(within <= static_cast<uint64_t>(m_ac(degree, static_cast<int>(t))));
        }
        CHECK(total == static_cast<uint64_t>(n));
        const auto conn = g->connection();
        CHECK(ball.eccentricity(n, conn, 255) == d);
        CHECK(ball.covers(n, conn, d));
        if (d > 0) CHECK(!ball.covers(n, conn, d - 1));
        auto og = odd_girth(*g);
        CHECK(og == naive_odd_girth(*g));
        if (og) {
            CHECK(*og <= 2 * d + 1);
            CHECK(ball.shortest_odd_walk(n, conn, 2 * d + 1) == *og);
        }
        std::vector<std::pair<int64_t, int>> src{{0, 0}};
        CHECK(cyclic_reach(n, conn, src, d) == static_cast<uint64_t>(n));
        if (d > 0) CHECK(cyclic_reach(n, conn, src, d - 1) < static_cast<uint64_t>(n));
        ++checked;
    }
    CHECK(checked > 200);
}

TEST_CASE("diameter is invariant under unit multipliers") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 60; ++it) {
        const int64_t n = 200 + static_cast<int64_t>(rng() % 2000);
        auto g = random_graph(rng, n, 8);
        if (!g) continue;
        const int d = diameter_bfs(*g);
        for (int j = 0; j < 5; ++j) {
            int64_t u = 1 + static_cast<int64_t>(rng() % (n - 1));
            if (gcd64(u, n) != 1) {
                CHECK_THROWS_AS(multiply(g->genset, u), Error);
                continue;
            }
            GeneratingSet img = multiply(g->genset, u);
            CHECK(diameter_bfs(make_graph(n, img.gens, 8)) == d);
            auto m = find_multiplier(n, g->genset, img);
            REQUIRE(m.has_value());
            CHECK(multiply(g->genset, *m) == img);
        }
    }
}

TEST_CASE("primitive images of a generating set") {
    auto g = make_graph(22805, {1, 313, 2495, 2846, 5662}, 10);
    auto prim = enumerate_primitive_gensets(g);
    CHECK(prim.size() == 4);
    for (const auto& p : prim) {
        CHECK(p.gens.front() == 1);
        CHECK(find_multiplier(22805, g.genset, p).has_value());
    }
    CHECK(std::is_sorted(prim.begin(), prim.end(), [](auto& a, auto& b) { return a.gens < b.gens; }));
}

TEST_CASE("non-isomorphic sets have no multiplier") {
    auto a = make_graph(56, {1, 2, 10, 15, 22}, 11).genset;
    auto b = make_graph(56, {2, 6, 7, 18, 21}, 11).genset;
    CHECK(!find_multiplier(56, a, b).has_value());
}

TEST_CASE("memory estimates") {
    CHECK(bfs_bytes(1000) >= 1000);
    CHECK(bitset_bytes(1 << 20) < bfs_bytes(1 << 20));
}

TEST_CASE("odd girth of a bipartite circulant") {
    CHECK(!odd_girth(make_graph(10, {1, 3}, 4)).has_value());
    CHECK(odd_girth(make_graph(51, {1, 2, 10, 16, 23}, 10)) == 3);
}

}
