#include "circdd/lattice.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <set>

#include "circdd/bounds.hpp"
#include "circdd/circulant.hpp"
#include "circdd/families.hpp"
#include "embedded.hpp"

namespace circdd {

namespace {

using Mat = std::vector<std::vector<i128>>;

Mat to_mat(const LatticeBasis& b) {
    if (b.f <= 0 || static_cast<int>(b.rows.size()) != b.f)
        throw Error(Errc::InvariantViolation, "basis must have f rows");
    Mat m;
    for (const auto& r : b.rows) {
        if (static_cast<int>(r.size()) != b.f) throw Error(Errc::InvariantViolation, "basis rows must have f entries");
        m.emplace_back(r.begin(), r.end());
    }
    return m;
}

LatticeBasis from_mat(const Mat& m) {
    LatticeBasis b;
    b.f = static_cast<int>(m.size());
    for (const auto& r : m) {
        IntRow row;
        for (i128 v : r) row.push_back(to_i64(v));
        b.rows.push_back(std::move(row));
    }
    return b;
}

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// row_i = x*row_i + y*row_j ; row_j = u*row_i + v*row_j (simultaneous)
void mix_rows(Mat& m, size_t i, size_t j, i128 x, i128 y, i128 u, i128 v) {
    for (size_t c = 0; c < m[i].size(); ++c) {
        i128 a = m[i][c], b = m[j][c];
        m[i][c] = checked_add(checked_mul(x, a), checked_mul(y, b));
        m[j][c] = checked_add(checked_mul(u, a), checked_mul(v, b));
    }
}

void add_row(Mat& m, size_t dst, size_t src, i128 t) {
    if (t == 0) return;
    for (size_t c = 0; c < m[dst].size(); ++c) m[dst][c] = checked_add(m[dst][c], checked_mul(t, m[src][c]));
}

void add_col(Mat& m, size_t dst, size_t src, i128 t) {
    if (t == 0) return;
    for (auto& r : m) r[dst] = checked_add(r[dst], checked_mul(t, r[src]));
}

void swap_cols(Mat& m, size_t a, size_t b) {
    for (auto& r : m) std::swap(r[a], r[b]);
}

// Breadth-first growth in a finite abelian group given in mixed radix.
struct QuotientWalk {
    IntRow radix;                 // only the nontrivial invariant factors
    std::vector<IntRow> steps;    // labels of ±e_j
    uint64_t size = 1;

    uint64_t encode(const IntRow& x) const {
        uint64_t idx = 0;
        for (size_t i = 0; i < radix.size(); ++i) idx = idx * static_cast<uint64_t>(radix[i]) + static_cast<uint64_t>(x[i]);
        return idx;
    }
    void decode(uint64_t idx, IntRow& x) const {
        x.resize(radix.size());
        for (size_t i = radix.size(); i-- > 0;) {
            x[i] = static_cast<int64_t>(idx % static_cast<uint64_t>(radix[i]));
            idx /= static_cast<uint64_t>(radix[i]);
        }
    }
};

QuotientWalk make_walk(const SmithForm& s, uint64_t mem_cap) {
    QuotientWalk w;
    std::vector<size_t> keep;
    for (size_t i = 0; i < s.diag.size(); ++i)
        if (s.diag[i] > 1) keep.push_back(i);
    for (size_t i : keep) {
        w.radix.push_back(s.diag[i]);
        if (w.size > mem_cap / static_cast<uint64_t>(s.diag[i]))
            throw Error(Errc::BudgetExceeded, "quotient of index " + std::to_string(s.index()) + " exceeds memory cap");
        w.size *= static_cast<uint64_t>(s.diag[i]);
    }
    const size_t f = s.diag.size();
    for (size_t j = 0; j < f; ++j) {
        IntRow e(f, 0);
        e[j] = 1;
        IntRow full = coset_label(s, e);
        IntRow plus, minus;
        for (size_t i : keep) {
            plus.push_back(full[i]);
            minus.push_back(full[i] == 0 ? 0 : s.diag[i] - full[i]);
        }
        w.steps.push_back(plus);
        w.steps.push_back(minus);
    }
    return w;
}

struct WalkResult {
    uint64_t reached = 0;
    int depth = 0;  // radius at which the last new coset appeared
};

// Sources are (label, start distance). Stops at `radius` (or when everything is reached).
WalkResult walk(const QuotientWalk& w, const std::vector<std::pair<IntRow, int>>& sources, int radius) {
    std::vector<uint8_t> seen(w.size, 0);
    std::vector<uint64_t> cur, nxt;
    WalkResult r;
    IntRow x, y(w.radix.size());
    int max_start = 0;
    for (auto& s : sources) max_start = std::max(max_start, s.second);
    for (int depth = 0; depth <= radius; ++depth) {
        for (auto& [lab, d] : sources) {
            if (d != depth) continue;
            uint64_t idx = w.encode(lab);
            if (!seen[idx]) {
                seen[idx] = 1;
                ++r.reached;
                r.depth = depth;
                cur.push_back(idx);
            }
        }
        if (r.reached == w.size || depth == radius) break;
        nxt.clear();
        for (uint64_t v : cur) {
            w.decode(v, x);
            for (const auto& st : w.steps) {
                for (size_t i = 0; i < x.size(); ++i) {
                    int64_t t = x[i] + st[i];
                    y[i] = t >= w.radix[i] ? t - w.radix[i] : t;
                }
                uint64_t idx = w.encode(y);
                if (!seen[idx]) {
                    seen[idx] = 1;
                    ++r.reached;
                    r.depth = depth + 1;
                    nxt.push_back(idx);
                }
            }
        }
        cur.swap(nxt);
        if (cur.empty() && depth >= max_start) break;
    }
    return r;
}

std::vector<std::pair<IntRow, int>> walk_sources(const SmithForm& s, const IntRow* v_m) {
    auto reduce = [&](const IntRow& full) {
        IntRow out;
        for (size_t i = 0; i < s.diag.size(); ++i)
            if (s.diag[i] > 1) out.push_back(full[i]);
        return out;
    };
    std::vector<std::pair<IntRow, int>> src;
    src.emplace_back(reduce(IntRow(s.diag.size(), 0)), 0);
    if (v_m) src.emplace_back(reduce(coset_label(s, *v_m)), 1);
    return src;
}

void check_half_lattice(const SmithForm& s, const IntRow& v_m) {
    IntRow twice;
    for (int64_t x : v_m) twice.push_back(checked_mul64(2, x));
    if (!in_lattice(s, twice)) throw Error(Errc::InvolutionNotHalfLattice, "2 v_m is not in the lattice");
}

}  // namespace

LatticeBasis LatticeBasis::identity(int f) {
    IntRow d(static_cast<size_t>(f), 1);
    return diagonal(d);
}

LatticeBasis LatticeBasis::diagonal(const IntRow& d) {
    LatticeBasis b;
    b.f = static_cast<int>(d.size());
    for (size_t i = 0; i < d.size(); ++i) {
        IntRow r(d.size(), 0);
        r[i] = d[i];
        b.rows.push_back(r);
    }
    return b;
}

bool SmithForm::cyclic() const {
    for (size_t i = 0; i + 1 < diag.size(); ++i)
        if (diag[i] != 1) return false;
    return true;
}

int64_t SmithForm::index() const {
    int64_t p = 1;
    for (int64_t d : diag) p = checked_mul64(p, d);
    return p;
}

LatticeBasis hermite_form(const LatticeBasis& b) {
    Mat m = to_mat(b);
    const size_t f = m.size();
    for (size_t c = 0; c < f; ++c) {
        for (size_t i = c + 1; i < f; ++i) {
            if (m[i][c] == 0) continue;
            i128 x, y;
            i128 g = ext_gcd(m[c][c], m[i][c], x, y);
            i128 p = m[c][c] / g, q = m[i][c] / g;
            mix_rows(m, c, i, x, y, -q, p);
        }
        if (m[c][c] == 0) throw Error(Errc::DegenerateInput, "basis is singular");
        if (m[c][c] < 0)
            for (auto& v : m[c]) v = -v;
        for (size_t i = 0; i < c; ++i) add_row(m, i, c, -floor_div(m[i][c], m[c][c]));
    }
    return from_mat(m);
}

i128 determinant(const LatticeBasis& b) {
    Mat m = to_mat(b);
    const size_t f = m.size();
    i128 sign = 1, prev = 1;
    for (size_t k = 0; k < f; ++k) {
        size_t piv = k;
        while (piv < f && m[piv][k] == 0) ++piv;
        if (piv == f) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < f; ++i) {
            for (size_t j = k + 1; j < f; ++j)
                m[i][j] = checked_sub(checked_mul(m[i][j], m[k][k]), checked_mul(m[i][k], m[k][j])) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[f - 1][f - 1];
}

SmithForm smith_form(const LatticeBasis& b) {
    Mat a = to_mat(hermite_form(b));
    const size_t f = a.size();
    Mat v(f, std::vector<i128>(f, 0));
    for (size_t i = 0; i < f; ++i) v[i][i] = 1;
    for (size_t t = 0; t < f; ++t) {
        for (;;) {
            size_t pi = f, pj = f;
            for (size_t i = t; i < f; ++i)
                for (size_t j = t; j < f; ++j)
                    if (a[i][j] != 0 && (pi == f || abs128(a[i][j]) < abs128(a[pi][pj]))) pi = i, pj = j;
            if (pi == f) throw Error(Errc::DegenerateInput, "basis is singular");
            std::swap(a[t], a[pi]);
            swap_cols(a, t, pj);
            swap_cols(v, t, pj);
            bool clean = true;
            for (size_t i = t + 1; i < f; ++i) {
                add_row(a, i, t, -(a[i][t] / a[t][t]));
                if (a[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < f; ++j) {
                i128 q = a[t][j] / a[t][t];
                add_col(a, j, t, -q);
                add_col(v, j, t, -q);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            size_t bad = f;
            for (size_t i = t + 1; i < f && bad == f; ++i)
                for (size_t j = t + 1; j < f; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == f) break;
            add_row(a, t, bad, 1);
        }
        if (a[t][t] < 0) a[t][t] = -a[t][t];
    }
    SmithForm s;
    for (size_t i = 0; i < f; ++i) s.diag.push_back(to_i64(a[i][i]));
    s.q.assign(f, IntRow(f, 0));
    for (size_t i = 0; i < f; ++i)
        for (size_t j = 0; j < f; ++j) s.q[i][j] = mod_floor(v[i][j], s.diag[j]);
    return s;
}

IntRow coset_label(const SmithForm& s, const IntRow& x) {
    const size_t f = s.diag.size();
    if (x.size() != f) throw Error(Errc::InvariantViolation, "vector dimension mismatch");
    IntRow out(f, 0);
    for (size_t j = 0; j < f; ++j) {
        i128 acc = 0;
        for (size_t i = 0; i < f; ++i) acc = checked_add(acc, checked_mul(x[i], s.q[i][j]));
        out[j] = mod_floor(acc, s.diag[j]);
    }
    return out;
}

bool in_lattice(const SmithForm& s, const IntRow& x) {
    for (int64_t v : coset_label(s, x))
        if (v != 0) return false;
    return true;
}

IntRow preimage(int64_t n, const IntRow& gens, int64_t target) {
    if (gens.empty()) throw Error(Errc::DegenerateInput, "no generators");
    std::vector<i128> c(gens.size(), 0);
    c[0] = 1;
    i128 cur = gens[0];
    for (size_t i = 1; i < gens.size(); ++i) {
        i128 x, y;
        i128 g = ext_gcd(cur, gens[i], x, y);
        for (size_t j = 0; j < i; ++j) c[j] = mod_floor(checked_mul(c[j], x), n);
        c[i] = mod_floor(y, n);
        cur = g;
    }
    i128 x, y;
    if (ext_gcd(cur, n, x, y) != 1) throw Error(Errc::DegenerateInput, "generators share a factor with n");
    IntRow out;
    for (i128 v : c) out.push_back(mul_mod(mul_mod(mod_floor(v, n), mod_floor(x, n), n), mod_floor(target, n), n));
    return out;
}

LatticeBasis kernel_lattice(int64_t n, const IntRow& gens) {
    if (n < 1 || gens.empty()) throw Error(Errc::DegenerateInput, "kernel lattice needs n >= 1 and generators");
    int64_t g = n;
    for (int64_t x : gens) g = gcd64(g, x);
    if (g != 1) throw Error(Errc::DegenerateInput, "gcd of generators and n is " + std::to_string(g));
    const size_t f = gens.size();
    const i128 nn = n;
    auto reduce = [&](std::vector<i128>& row) {
        for (auto& e : row) e = mod_floor(e, n);
    };
    // Row operations M with M*g = (h, 0, ..., 0)^T; kernel = n Z^f + span(M[1..]), so M is kept mod n.
    Mat m(f, std::vector<i128>(f, 0));
    for (size_t i = 0; i < f; ++i) m[i][i] = 1;
    std::vector<i128> v(gens.begin(), gens.end());
    for (size_t i = 1; i < f; ++i) {
        if (v[i] == 0) continue;
        i128 x, y;
        i128 d = ext_gcd(v[0], v[i], x, y);
        i128 p = v[0] / d, q = v[i] / d;
        mix_rows(m, 0, i, mod_floor(x, n), mod_floor(y, n), mod_floor(-q, n), mod_floor(p, n));
        reduce(m[0]);
        reduce(m[i]);
        v[0] = d;
        v[i] = 0;
    }
    // Hermite form modulo n: every n e_j is in the lattice, so entries stay below n.
    Mat spare(m.begin() + 1, m.end());
    Mat h(f, std::vector<i128>(f, 0));
    for (size_t c = 0; c < f; ++c) {
        std::vector<i128> piv(f, 0);
        piv[c] = nn;
        for (auto& r : spare) {
            if (r[c] == 0) continue;
            i128 x, y;
            i128 d = ext_gcd(piv[c], r[c], x, y);
            i128 p = piv[c] / d, q = r[c] / d;
            std::vector<i128> a(f), b(f);
            for (size_t j = 0; j < f; ++j) {
                a[j] = mod_floor(x, n) * piv[j] + mod_floor(y, n) * r[j];
                b[j] = p * r[j] - q * piv[j];
            }
            reduce(a);
            reduce(b);
            a[c] = d;
            b[c] = 0;
            piv = std::move(a);
            r = std::move(b);
        }
        h[c] = std::move(piv);
    }
    for (size_t c = 0; c < f; ++c)
        for (size_t i = 0; i < c; ++i) add_row(h, i, c, -floor_div(h[i][c], h[c][c]));
    LatticeBasis b = from_mat(h);
    if (abs128(determinant(b)) != n) throw Error(Errc::InvariantViolation, "kernel lattice index differs from n");
    return b;
}

bool covering_check(const LatticeBasis& b, int k, uint64_t mem_cap) {
    if (k < 0) return false;
    i128 det = abs128(determinant(b));
    if (det == 0) throw Error(Errc::DegenerateInput, "basis is singular");
    if (det > lee_sphere_size(b.f, k)) return false;
    SmithForm s = smith_form(b);
    if (static_cast<uint64_t>(det) > mem_cap)
        throw Error(Errc::BudgetExceeded, "quotient of index " + to_string(det) + " exceeds memory cap");
    if (s.cyclic()) {
        const int64_t d = s.diag.back();
        IntRow steps;
        for (size_t i = 0; i < s.q.size(); ++i) {
            int64_t t = s.q[i].back();
            steps.push_back(t);
            steps.push_back(t == 0 ? 0 : d - t);
        }
        std::pair<int64_t, int> src[] = {{0, 0}};
        return cyclic_reach(d, steps, src, k) == static_cast<uint64_t>(d);
    }
    QuotientWalk w = make_walk(s, mem_cap);
    return walk(w, walk_sources(s, nullptr), k).reached == w.size;
}

bool odd_covering_check(const LatticeBasis& b, const IntRow& v_m, int k, uint64_t mem_cap) {
    SmithForm s = smith_form(b);
    check_half_lattice(s, v_m);
    if (k < 0) return false;
    if (k == 0) return s.index() == 1;
    i128 det = s.index();
    if (det > checked_add(lee_sphere_size(b.f, k), lee_sphere_size(b.f, k - 1))) return false;
    if (static_cast<uint64_t>(det) > mem_cap)
        throw Error(Errc::BudgetExceeded, "quotient of index " + to_string(det) + " exceeds memory cap");
    if (s.cyclic()) {
        const int64_t d = s.diag.back();
        IntRow steps;
        for (size_t i = 0; i < s.q.size(); ++i) {
            int64_t t = s.q[i].back();
            steps.push_back(t);
            steps.push_back(t == 0 ? 0 : d - t);
        }
        std::pair<int64_t, int> src[] = {{0, 0}, {coset_label(s, v_m).back(), 1}};
        return cyclic_reach(d, steps, src, k) == static_cast<uint64_t>(d);
    }
    QuotientWalk w = make_walk(s, mem_cap);
    return walk(w, walk_sources(s, &v_m), k).reached == w.size;
}

int covering_radius(const LatticeBasis& b, const IntRow* v_m, uint64_t mem_cap) {
    SmithForm s = smith_form(b);
    if (v_m) check_half_lattice(s, *v_m);
    QuotientWalk w = make_walk(s, mem_cap);
    WalkResult r = walk(w, walk_sources(s, v_m), INT32_MAX - 1);
    if (r.reached != w.size) throw Error(Errc::InvariantViolation, "quotient walk did not close");
    return r.depth;
}

// ---- theorem constructions ----

bool TheoremConstruction::valid_k(int k) const {
    return k >= 0 && k % modulus == residue && (a_mul * k + a_off) % a_den == 0;
}

int64_t TheoremConstruction::a_at(int k) const {
    if (!valid_k(k))
        throw Error(Errc::WrongResidue, "theorem " + std::to_string(theorem) + " needs k = " + std::to_string(residue) +
                                            " mod " + std::to_string(modulus));
    return (a_mul * k + a_off) / a_den;
}

std::vector<TheoremConstruction> load_constructions_json(const std::string& text) {
    using nlohmann::json;
    std::vector<TheoremConstruction> out;
    auto polys = [](const json& arr) {
        std::vector<Poly> v;
        for (const auto& s : arr) v.push_back(Poly::parse(s.get<std::string>()));
        return v;
    };
    try {
        json doc = json::parse(text);
        for (const auto& j : doc.at("constructions")) {
            TheoremConstruction c;
            c.theorem = j.at("theorem").get<int>();
            c.residue = j.at("residue").get<int>();
            c.modulus = j.at("modulus").get<int>();
            c.a_mul = j.at("a_sub").at("mul").get<int64_t>();
            c.a_off = j.at("a_sub").at("off").get<int64_t>();
            c.a_den = j.at("a_sub").at("den").get<int64_t>();
            c.threshold = j.at("threshold").get<int>();
            c.family_degree = j.at("family").at("degree").get<int>();
            c.family_class = j.at("family").at("class").get<std::string>();
            c.family_set = j.at("family").at("set").get<int>();
            for (const auto& r : j.at("rows")) c.rows.push_back(polys(r));
            for (const auto& cj : j.at("combos")) {
                Combination cb;
                cb.coeffs = polys(cj.at("coeffs"));
                cb.target = polys(cj.at("target"));
                if (cj.contains("printed")) cb.printed_coeffs = polys(cj.at("printed").at("coeffs"));
                c.combos.push_back(std::move(cb));
            }
            c.det = Poly::parse(j.at("det").get<std::string>());
            for (const auto& aj : j.at("aux")) {
                AuxVector a;
                a.index = aj.at("index").get<int>();
                for (const auto& t : aj.at("terms")) a.terms.emplace_back(t.at(0).get<int>(), t.at(1).get<int>());
                a.value = polys(aj.at("value"));
                if (aj.contains("printed")) a.printed_value = polys(aj.at("printed").at("value"));
                c.aux.push_back(std::move(a));
            }
            c.norm = Poly::parse(j.at("norm").get<std::string>());
            c.cap = Poly::parse(j.at("cap").get<std::string>());
            c.cap_exceptions = j.at("cap_exceptions").get<std::vector<int>>();
            if (j.contains("cap_exceptions_printed"))
                c.printed_cap_exceptions = j.at("cap_exceptions_printed").get<std::vector<int>>();
            if (c.rows.size() != 5) throw Error(Errc::InvariantViolation, "construction needs five rows");
            out.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("theorem data: ") + e.what());
    }
    return out;
}

const std::vector<TheoremConstruction>& theorem_constructions() {
    static const std::vector<TheoremConstruction> all = load_constructions_json(std::string(embedded::theorems()));
    return all;
}

const TheoremConstruction& construction(int theorem) {
    for (const auto& c : theorem_constructions())
        if (c.theorem == theorem) return c;
    throw Error(Errc::Unsupported, "no construction for theorem " + std::to_string(theorem));
}

LatticeBasis theorem_basis(const TheoremConstruction& c, int k) {
    const int64_t a = c.a_at(k);
    LatticeBasis b;
    b.f = static_cast<int>(c.rows.size());
    for (const auto& r : c.rows) {
        IntRow row;
        for (const auto& p : r) row.push_back(to_i64(p.eval(a)));
        b.rows.push_back(row);
    }
    return b;
}

namespace {

IntRow eval_vec(const std::vector<Poly>& v, int64_t a) {
    IntRow out;
    for (const auto& p : v) out.push_back(to_i64(p.eval(a)));
    return out;
}

std::string vec_str(const IntRow& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

}  // namespace

IntRow implied_generators(const TheoremConstruction& c, int k) {
    const int64_t a = c.a_at(k);
    const int64_t n = to_i64(abs128(determinant(theorem_basis(c, k))));
    IntRow gens(c.rows.size(), 0);
    gens[0] = 1;
    for (const auto& cb : c.combos) {
        IntRow t = eval_vec(cb.target, a);
        size_t j = 0;
        for (size_t i = 1; i < t.size(); ++i)
            if (t[i] == -1) j = i;
        if (j == 0) throw Error(Errc::IdentityFailure, "combination target has no -1 entry");
        gens[j] = mod_floor(t[0], n);
    }
    return gens;
}

bool verify_combo_identities(const TheoremConstruction& c, int k) {
    const int64_t a = c.a_at(k);
    LatticeBasis b = theorem_basis(c, k);
    for (size_t ci = 0; ci < c.combos.size(); ++ci) {
        const auto& cb = c.combos[ci];
        IntRow coeff = eval_vec(cb.coeffs, a);
        IntRow target = eval_vec(cb.target, a);
        std::vector<i128> sum(b.rows.size(), 0);
        for (size_t r = 0; r < b.rows.size(); ++r)
            for (size_t j = 0; j < sum.size(); ++j)
                sum[j] = checked_add(sum[j], checked_mul(coeff[r], b.rows[r][j]));
        IntRow got;
        for (i128 v : sum) got.push_back(to_i64(v));
        if (got != target)
            throw Error(Errc::IdentityFailure, "theorem " + std::to_string(c.theorem) + " combination " +
                                                   std::to_string(ci + 1) + " at k=" + std::to_string(k) + " gives " +
                                                   vec_str(got) + ", expected " + vec_str(target));
    }
    const auto& fam = find_family(builtin_tables(), c.family_degree, c.family_class);
    if (k >= fam.k_min) {
        IntRow g = implied_generators(c, k);
        const int64_t n = to_i64(abs128(determinant(b)));
        if (eval_order(fam, k) != n)
            throw Error(Errc::IdentityFailure, "theorem " + std::to_string(c.theorem) + " determinant differs from the family order");
        GeneratingSet table = eval_genset(fam, c.family_set, k);
        if (canonicalize(n, g) != table.gens)
            throw Error(Errc::IdentityFailure, "theorem " + std::to_string(c.theorem) + " generators " + vec_str(g) +
                                                   " differ from the family table at k=" + std::to_string(k));
    }
    return true;
}

bool verify_orthant_suite(const TheoremConstruction& c, int k) {
    const int64_t a = c.a_at(k);
    if (k < c.threshold)
        throw Error(Errc::ThresholdError, "theorem " + std::to_string(c.theorem) + " orthant argument needs k >= " +
                                              std::to_string(c.threshold));
    auto fail = [&](const std::string& clause, const std::string& what) {
        throw Error(Errc::SuiteFailure, "theorem " + std::to_string(c.theorem) + " k=" + std::to_string(k) + " clause " +
                                            clause + ": " + what);
    };
    std::map<int, IntRow> v;
    LatticeBasis b = theorem_basis(c, k);
    for (size_t i = 0; i < b.rows.size(); ++i) v[static_cast<int>(i) + 1] = b.rows[i];
    const size_t f = b.rows.size();
    // (a)
    for (const auto& aux : c.aux) {
        IntRow sum(f, 0);
        for (auto [sign, idx] : aux.terms) {
            auto it = v.find(idx);
            if (it == v.end()) fail("a", "v" + std::to_string(aux.index) + " uses undefined v" + std::to_string(idx));
            for (size_t j = 0; j < f; ++j) sum[j] = checked_add64(sum[j], sign * it->second[j]);
        }
        IntRow printed = eval_vec(aux.value, a);
        if (sum != printed)
            fail("a", "v" + std::to_string(aux.index) + " = " + vec_str(sum) + " but table gives " + vec_str(printed));
        v[aux.index] = sum;
    }
    // (b)
    std::set<unsigned> patterns;
    for (const auto& [idx, vec] : v) {
        unsigned pat = 0;
        for (size_t j = 0; j < f; ++j) {
            if (vec[j] == 0) fail("b", "v" + std::to_string(idx) + " has a zero coordinate");
            if (vec[j] > 0) pat |= 1u << j;
        }
        patterns.insert(pat);
        patterns.insert(pat ^ ((1u << f) - 1));
    }
    if (patterns.size() != (1u << f)) fail("b", std::to_string(patterns.size()) + " sign patterns instead of " + std::to_string(1u << f));
    // (c)
    const int64_t cap = to_i64(c.cap.eval(a));
    for (const auto& [idx, vec] : v) {
        int64_t m = 0;
        for (int64_t x : vec) m = std::max(m, x < 0 ? -x : x);
        bool exc = std::find(c.cap_exceptions.begin(), c.cap_exceptions.end(), idx) != c.cap_exceptions.end();
        if (exc ? m != cap + 1 : m > cap)
            fail("c", "v" + std::to_string(idx) + " has largest coordinate " + std::to_string(m) + " against cap " +
                          std::to_string(cap) + (exc ? " (+1 expected)" : ""));
    }
    // (d)
    const int64_t norm = to_i64(c.norm.eval(a));
    if (norm != 2 * k + 1) fail("d", "norm formula gives " + std::to_string(norm) + ", not 2k+1");
    for (const auto& [idx, vec] : v) {
        int64_t s = 0;
        for (int64_t x : vec) s += x < 0 ? -x : x;
        if (s != norm) fail("d", "v" + std::to_string(idx) + " has l1 norm " + std::to_string(s));
    }
    return true;
}

}  // namespace circdd
