#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "circdd/arith.hpp"

namespace circdd {

struct GeneratingSet {
    int64_t order = 0;
    std::vector<int64_t> gens;  // canonical: ascending, each in (0, n/2)
    bool has_involution = false;

    int degree() const { return 2 * static_cast<int>(gens.size()) + (has_involution ? 1 : 0); }
    int dimension() const { return static_cast<int>(gens.size()); }
    bool operator==(const GeneratingSet&) const = default;
};

struct CirculantGraph {
    GeneratingSet genset;
    int degree = 0;

    int64_t order() const { return genset.order; }
    // Full inverse-closed connection set, |C| = degree.
    std::vector<int64_t> connection() const;
};

// min(g, n-g) for each generator, ascending; rejects 0, n/2 and collisions.
std::vector<int64_t> canonicalize(int64_t n, std::span<const int64_t> gens);

CirculantGraph make_graph(int64_t n, std::span<const int64_t> gens, int degree);
inline CirculantGraph make_graph(int64_t n, std::initializer_list<int64_t> gens, int degree) {
    return make_graph(n, std::span<const int64_t>(gens.begin(), gens.size()), degree);
}

struct DistanceProfile {
    std::vector<uint8_t> dist;
    int diameter = 0;
    std::vector<uint64_t> layer_sizes;  // layer_sizes[t] = #{v : dist[v] = t}
};

// Exact BFS from vertex 0 storing every distance (one byte per vertex).
DistanceProfile distances(const CirculantGraph& g);

// Eccentricity of vertex 0 using the byte-per-vertex engine; start may be any vertex.
int diameter_bfs(const CirculantGraph& g, int64_t start = 0);

// Same quantity computed on packed bit sets (3n/8 bytes); stops once a layer exceeds limit
// and then returns limit + 1.
int diameter_bitset(const CirculantGraph& g, int limit = 255);

// Bytes needed by each engine for order n.
uint64_t bfs_bytes(int64_t n);
uint64_t bitset_bytes(int64_t n);

// Shortest odd cycle, via BFS on the bipartite double cover; nullopt for bipartite graphs.
std::optional<int> odd_girth(const CirculantGraph& g);

GeneratingSet multiply(const GeneratingSet& s, int64_t u);

// Primitive images g^{-1}·S for each unit g in S, deduplicated and sorted.
std::vector<GeneratingSet> enumerate_primitive_gensets(const CirculantGraph& g);

// Smallest unit u with canonicalize(u·A) = B.
std::optional<int64_t> find_multiplier(int64_t n, const GeneratingSet& a, const GeneratingSet& b);

bool is_connected(int64_t n, std::span<const int64_t> gens, bool involution);

// Breadth-first growth on Z_n with an arbitrary step multiset. Sources are (vertex, start
// distance) pairs. Returns the number of vertices reached within `radius`.
uint64_t cyclic_reach(int64_t n, std::span<const int64_t> steps,
                      std::span<const std::pair<int64_t, int>> sources, int radius);

// Reusable packed-bit BFS workspace for many small graphs (search inner loop).
class BitsetBall {
public:
    // True iff every vertex of Z_n lies within `radius` of 0 using the given steps.
    bool covers(int64_t n, std::span<const int64_t> steps, int radius);
    // Distance layers needed to cover Z_n; returns limit + 1 when not covered by limit.
    int eccentricity(int64_t n, std::span<const int64_t> steps, int limit);
    // Length of the shortest odd closed walk through 0, or limit + 1 if none is <= limit.
    int shortest_odd_walk(int64_t n, std::span<const int64_t> steps, int limit);

private:
    std::vector<uint64_t> visited_, frontier_, next_;
};

}  // namespace circdd
