#include "circdd/circulant.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace circdd {

namespace {

constexpr uint8_t kUnseen = 0xFF;

std::vector<int64_t> steps_of(const CirculantGraph& g) { return g.connection(); }

// Level-synchronous BFS over Z_n. Distances saturate at 254; callers needing larger
// eccentricities use the bit-set engine.
template <class Index>
int byte_bfs(int64_t n, std::span<const int64_t> steps, std::vector<uint8_t>& dist,
             std::vector<uint64_t>* layers, int64_t start) {
    dist.assign(static_cast<size_t>(n), kUnseen);
    std::vector<Index> cur{static_cast<Index>(start)}, nxt;
    dist[static_cast<size_t>(start)] = 0;
    if (layers) layers->assign(1, 1);
    int depth = 0;
    std::vector<Index> st(steps.begin(), steps.end());
    while (!cur.empty()) {
        if (depth + 1 >= kUnseen) throw Error(Errc::Overflow, "diameter exceeds byte distance range");
        nxt.clear();
        const uint8_t nd = static_cast<uint8_t>(depth + 1);
        const uint64_t nn = static_cast<uint64_t>(n);
        for (Index v : cur) {
            for (Index s : st) {
                uint64_t w = static_cast<uint64_t>(v) + s;
                if (w >= nn) w -= nn;
                if (dist[w] == kUnseen) {
                    dist[w] = nd;
                    nxt.push_back(static_cast<Index>(w));
                }
            }
        }
        if (nxt.empty()) break;
        ++depth;
        if (layers) layers->push_back(nxt.size());
        cur.swap(nxt);
    }
    return depth;
}

// dst bits [dst_start, dst_start+len) |= src bits [src_start, src_start+len).
// src carries one zero word of padding past its last used word.
void or_bits(uint64_t* dst, const uint64_t* src, uint64_t dst_start, uint64_t src_start, uint64_t len) {
    uint64_t d = dst_start;
    const uint64_t end = dst_start + len;
    while (d < end) {
        const uint64_t w = d >> 6;
        const unsigned lo = static_cast<unsigned>(d & 63);
        const uint64_t word_end = std::min<uint64_t>((w + 1) << 6, end);
        const unsigned cnt = static_cast<unsigned>(word_end - d);
        const uint64_t p = src_start + (d - dst_start);
        const uint64_t q = p >> 6;
        const unsigned r = static_cast<unsigned>(p & 63);
        uint64_t bits = r == 0 ? src[q] : (src[q] >> r) | (src[q + 1] << (64 - r));
        if (cnt < 64) bits &= (uint64_t{1} << cnt) - 1;
        dst[w] |= bits << lo;
        d = word_end;
    }
}

// dst |= rotate(src, s): bit i of the result is bit (i - s) mod n of src.
void or_rotated(uint64_t* dst, const uint64_t* src, uint64_t n, uint64_t s) {
    if (s == 0) {
        or_bits(dst, src, 0, 0, n);
        return;
    }
    or_bits(dst, src, s, 0, n - s);
    or_bits(dst, src, 0, n - s, s);
}

// OR a 64-bit word into dst starting at bit pos (may spill into the next word).
inline void put_bits(uint64_t* dst, uint64_t pos, uint64_t bits) {
    const uint64_t w = pos >> 6;
    const unsigned r = static_cast<unsigned>(pos & 63);
    dst[w] |= bits << r;
    if (r) dst[w + 1] |= bits >> (64 - r);
}

inline void put_word(uint64_t* dst, uint64_t n, uint64_t base, uint64_t s, uint64_t bits) {
    uint64_t pos = base + s;
    if (pos >= n) pos -= n;
    if (pos + 64 <= n) {
        put_bits(dst, pos, bits);
        return;
    }
    // wraps: the first n - pos bits land at pos, the rest at 0
    const uint64_t head = n - pos;
    put_bits(dst, pos, bits & ((uint64_t{1} << head) - 1));
    put_bits(dst, 0, bits >> head);
}

int packed_eccentricity(uint64_t n, std::span<const int64_t> steps, int limit, std::vector<uint64_t>& visited,
                        std::vector<uint64_t>& frontier, std::vector<uint64_t>& next) {
    const size_t words = (n + 63) / 64;
    visited.assign(words + 1, 0);
    frontier.assign(words + 1, 0);
    next.assign(words + 1, 0);
    visited[0] = frontier[0] = 1;
    uint64_t seen = 1;
    int depth = 0;
    while (seen < n) {
        if (depth >= limit) return limit + 1;
        std::fill(next.begin(), next.end(), 0);
        for (size_t i = 0; i < words; ++i) {
            const uint64_t bits = frontier[i];
            if (bits == 0) continue;
            const uint64_t base = static_cast<uint64_t>(i) << 6;
            for (int64_t s : steps) put_word(next.data(), n, base, static_cast<uint64_t>(s), bits);
        }
        uint64_t added = 0;
        for (size_t i = 0; i < words; ++i) {
            uint64_t fresh = next[i] & ~visited[i];
            next[i] = fresh;
            visited[i] |= fresh;
            added += static_cast<uint64_t>(std::popcount(fresh));
        }
        if (added == 0) return limit + 1;  // disconnected
        seen += added;
        ++depth;
        frontier.swap(next);
    }
    return depth;
}

}  // namespace

std::vector<int64_t> CirculantGraph::connection() const {
    const int64_t n = genset.order;
    std::vector<int64_t> c;
    for (int64_t g : genset.gens) {
        c.push_back(g);
        c.push_back(n - g);
    }
    if (genset.has_involution) c.push_back(n / 2);
    return c;
}

std::vector<int64_t> canonicalize(int64_t n, std::span<const int64_t> gens) {
    if (n < 2) throw Error(Errc::GeneratorOutOfRange, "order must be at least 2");
    std::vector<int64_t> out;
    out.reserve(gens.size());
    for (int64_t g : gens) {
        int64_t r = mod_floor(g, n);
        if (r == 0) throw Error(Errc::GeneratorOutOfRange, "generator " + std::to_string(g) + " is 0 mod n");
        if (n % 2 == 0 && r == n / 2)
            throw Error(Errc::GeneratorOutOfRange, "generator " + std::to_string(g) + " is n/2");
        out.push_back(std::min(r, n - r));
    }
    std::sort(out.begin(), out.end());
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i] == out[i - 1])
            throw Error(Errc::DuplicateGenerator, "generator " + std::to_string(out[i]) + " appears twice");
    return out;
}

bool is_connected(int64_t n, std::span<const int64_t> gens, bool involution) {
    int64_t g = n;
    for (int64_t x : gens) g = gcd64(g, x);
    if (involution) g = gcd64(g, n / 2);
    return g == 1;
}

CirculantGraph make_graph(int64_t n, std::span<const int64_t> gens, int degree) {
    if (n < 3) throw Error(Errc::GeneratorOutOfRange, "order must be at least 3");
    if (degree < 1) throw Error(Errc::InvariantViolation, "degree must be positive");
    const bool inv = degree % 2 == 1;
    if (inv && n % 2 != 0) throw Error(Errc::ParityMismatch, "odd degree needs even order");
    CirculantGraph g;
    g.genset.order = n;
    g.genset.gens = canonicalize(n, gens);
    g.genset.has_involution = inv;
    g.degree = degree;
    if (g.genset.gens.empty() && !inv) throw Error(Errc::InvariantViolation, "empty generating set");
    if (g.genset.degree() != degree)
        throw Error(Errc::InvariantViolation, "generating set has degree " + std::to_string(g.genset.degree()) +
                                                  ", expected " + std::to_string(degree));
    if (!is_connected(n, g.genset.gens, inv)) throw Error(Errc::Disconnected, "gcd test fails");
    return g;
}

DistanceProfile distances(const CirculantGraph& g) {
    DistanceProfile p;
    auto steps = steps_of(g);
    if (g.order() <= static_cast<int64_t>(UINT32_MAX))
        p.diameter = byte_bfs<uint32_t>(g.order(), steps, p.dist, &p.layer_sizes, 0);
    else
        p.diameter = byte_bfs<uint64_t>(g.order(), steps, p.dist, &p.layer_sizes, 0);
    return p;
}

int diameter_bfs(const CirculantGraph& g, int64_t start) {
    std::vector<uint8_t> dist;
    auto steps = steps_of(g);
    start = mod_floor(start, g.order());
    if (g.order() <= static_cast<int64_t>(UINT32_MAX)) return byte_bfs<uint32_t>(g.order(), steps, dist, nullptr, start);
    return byte_bfs<uint64_t>(g.order(), steps, dist, nullptr, start);
}

int diameter_bitset(const CirculantGraph& g, int limit) {
    std::vector<uint64_t> a, b, c;
    auto steps = steps_of(g);
    return packed_eccentricity(static_cast<uint64_t>(g.order()), steps, limit, a, b, c);
}

uint64_t bfs_bytes(int64_t n) { return static_cast<uint64_t>(n); }
uint64_t bitset_bytes(int64_t n) { return 3 * 8 * ((static_cast<uint64_t>(n) + 63) / 64 + 1); }

std::optional<int> odd_girth(const CirculantGraph& g) {
    const int64_t n = g.order();
    auto steps = steps_of(g);
    // state bit 0: reached by an even walk, bit 1: by an odd walk
    std::vector<uint8_t> seen(static_cast<size_t>(n), 0);
    std::vector<std::pair<int64_t, uint8_t>> cur{{0, 0}}, nxt;
    seen[0] = 1;
    int depth = 0;
    while (!cur.empty()) {
        ++depth;
        nxt.clear();
        for (auto [v, par] : cur) {
            const uint8_t np = par ^ 1;
            for (int64_t s : steps) {
                int64_t w = v + s;
                if (w >= n) w -= n;
                if (w == 0 && np == 1) return depth;
                if (!(seen[w] & (1u << np))) {
                    seen[w] |= static_cast<uint8_t>(1u << np);
                    nxt.emplace_back(w, np);
                }
            }
        }
        cur.swap(nxt);
    }
    return std::nullopt;
}

GeneratingSet multiply(const GeneratingSet& s, int64_t u) {
    const int64_t n = s.order;
    if (gcd64(mod_floor(u, n), n) != 1)
        throw Error(Errc::NotAUnit, std::to_string(u) + " is not a unit modulo " + std::to_string(n));
    GeneratingSet r = s;
    std::vector<int64_t> img;
    for (int64_t g : s.gens) img.push_back(mul_mod(g, u, n));
    r.gens = canonicalize(n, img);
    return r;
}

std::vector<GeneratingSet> enumerate_primitive_gensets(const CirculantGraph& g) {
    const int64_t n = g.order();
    std::set<std::vector<int64_t>> seen;
    std::vector<GeneratingSet> out;
    for (int64_t x : g.genset.gens) {
        if (gcd64(x, n) != 1) continue;
        GeneratingSet img = multiply(g.genset, mod_inverse(x, n));
        if (seen.insert(img.gens).second) out.push_back(img);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.gens < b.gens; });
    return out;
}

std::optional<int64_t> find_multiplier(int64_t n, const GeneratingSet& a, const GeneratingSet& b) {
    if (a.gens.size() != b.gens.size() || a.gens.empty()) {
        if (a.gens.empty() && b.gens.empty() && a.has_involution == b.has_involution) return 1;
        return std::nullopt;
    }
    // Any multiplier sends the chosen element of A to some ±b_j; solve x·u ≡ t (mod n).
    int64_t x = a.gens[0];
    for (int64_t y : a.gens)
        if (gcd64(y, n) < gcd64(x, n)) x = y;
    const int64_t gx = gcd64(x, n);
    const int64_t step = n / gx;
    std::optional<int64_t> best;
    for (int64_t bj : b.gens) {
        for (int64_t t : {bj, n - bj}) {
            if (t % gx != 0) continue;
            int64_t u0 = mul_mod(t / gx, mod_inverse(x / gx, step), step);
            for (int64_t u = u0; u < n; u += step) {
                if (u == 0 || gcd64(u, n) != 1) continue;
                if (best && u >= *best) break;
                if (multiply(a, u).gens == b.gens) {
                    best = u;
                    break;
                }
            }
        }
    }
    return best;
}

uint64_t cyclic_reach(int64_t n, std::span<const int64_t> steps, std::span<const std::pair<int64_t, int>> sources,
                      int radius) {
    if (n <= 0) throw Error(Errc::InvariantViolation, "cyclic_reach needs n >= 1");
    std::vector<uint8_t> seen(static_cast<size_t>(n), 0);
    std::vector<int64_t> norm;
    for (int64_t s : steps) norm.push_back(mod_floor(s, n));
    uint64_t count = 0;
    std::vector<int64_t> cur, nxt;
    int max_start = 0;
    for (auto& [v, d] : sources) max_start = std::max(max_start, d);
    for (int depth = 0; depth <= radius; ++depth) {
        for (auto& [v, d] : sources) {
            if (d != depth) continue;
            int64_t w = mod_floor(v, n);
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                cur.push_back(w);
            }
        }
        if (depth == radius) break;
        nxt.clear();
        for (int64_t v : cur)
            for (int64_t s : norm) {
                int64_t w = v + s;
                if (w >= n) w -= n;
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    nxt.push_back(w);
                }
            }
        cur.swap(nxt);
        if (cur.empty() && depth >= max_start) break;
    }
    return count;
}

bool BitsetBall::covers(int64_t n, std::span<const int64_t> steps, int radius) {
    return eccentricity(n, steps, radius) <= radius;
}

int BitsetBall::eccentricity(int64_t n, std::span<const int64_t> steps, int limit) {
    return packed_eccentricity(static_cast<uint64_t>(n), steps, limit, visited_, frontier_, next_);
}

int BitsetBall::shortest_odd_walk(int64_t n, std::span<const int64_t> steps, int limit) {
    const size_t words = (static_cast<uint64_t>(n) + 63) / 64;
    // visited_ holds walks of even length, frontier_ walks of odd length, next_ is scratch
    visited_.assign(words + 1, 0);
    frontier_.assign(words + 1, 0);
    next_.assign(words + 1, 0);
    visited_[0] = 1;
    for (int len = 1; len <= limit; ++len) {
        auto& src = (len % 2 == 1) ? visited_ : frontier_;
        auto& dst = (len % 2 == 1) ? frontier_ : visited_;
        std::fill(next_.begin(), next_.end(), 0);
        for (int64_t s : steps) or_rotated(next_.data(), src.data(), static_cast<uint64_t>(n), static_cast<uint64_t>(s));
        for (size_t i = 0; i < words; ++i) dst[i] |= next_[i];
        if (len % 2 == 1 && (frontier_[0] & 1)) return len;
    }
    return limit + 1;
}

}  // namespace circdd
