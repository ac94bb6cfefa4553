#pragma once

#include <string>
#include <vector>

#include "circdd/arith.hpp"

namespace circdd {

using IntRow = std::vector<int64_t>;

// Rows generate a full-rank sublattice of Z^f.
struct LatticeBasis {
    int f = 0;
    std::vector<IntRow> rows;

    static LatticeBasis identity(int f);
    static LatticeBasis diagonal(const IntRow& d);
};

struct SmithForm {
    IntRow diag;                 // d_1 | d_2 | ... | d_f
    std::vector<IntRow> q;       // column transform: coset of x is ((xQ)_i mod d_i)_i
    bool cyclic() const;
    int64_t index() const;       // product of diag
};

// {x in Z^f : sum x_i g_i = 0 (mod n)}, Hermite-reduced.
LatticeBasis kernel_lattice(int64_t n, const IntRow& gens);

// Upper-triangular row Hermite form with positive pivots.
LatticeBasis hermite_form(const LatticeBasis& b);

i128 determinant(const LatticeBasis& b);

SmithForm smith_form(const LatticeBasis& b);
inline IntRow smith_diag(const LatticeBasis& b) { return smith_form(b).diag; }

// Coset label of x in Z^f / L, as mixed-radix coordinates.
IntRow coset_label(const SmithForm& s, const IntRow& x);
bool in_lattice(const SmithForm& s, const IntRow& x);

// Some x with sum x_i g_i = target (mod n); gcd(gens, n) must be 1.
IntRow preimage(int64_t n, const IntRow& gens, int64_t target);

// Does every coset of L contain a vector of l1 norm <= k?
bool covering_check(const LatticeBasis& b, int k, uint64_t mem_cap = 200'000'000);

// Every coset within l1 distance k of 0 or k-1 of v_m. Requires 2 v_m in L.
bool odd_covering_check(const LatticeBasis& b, const IntRow& v_m, int k, uint64_t mem_cap = 200'000'000);

// Smallest radius at which the quotient is covered (from 0, and from v_m at +1 when given).
int covering_radius(const LatticeBasis& b, const IntRow* v_m = nullptr, uint64_t mem_cap = 200'000'000);

struct AuxVector {
    int index = 0;
    std::vector<std::pair<int, int>> terms;  // (sign, vector index)
    std::vector<Poly> value;
    std::vector<Poly> printed_value;  // empty unless the printed value was corrected
};

struct Combination {
    std::vector<Poly> coeffs;
    std::vector<Poly> target;
    std::vector<Poly> printed_coeffs;  // empty unless a printed coefficient was corrected
};

struct TheoremConstruction {
    int theorem = 0;
    int residue = 0;
    int modulus = 5;
    int64_t a_mul = 2, a_off = 0, a_den = 5;
    int threshold = 0;
    int family_degree = 10;
    std::string family_class;
    int family_set = 1;
    std::vector<std::vector<Poly>> rows;
    std::vector<Combination> combos;
    Poly det;
    std::vector<AuxVector> aux;
    Poly norm;
    Poly cap;
    std::vector<int> cap_exceptions;  // vectors whose largest coordinate is cap + 1
    std::vector<int> printed_cap_exceptions;  // empty unless the printed list was corrected

    bool valid_k(int k) const;
    int64_t a_at(int k) const;  // throws WrongResidue
};

const std::vector<TheoremConstruction>& theorem_constructions();
std::vector<TheoremConstruction> load_constructions_json(const std::string& text);
const TheoremConstruction& construction(int theorem);

LatticeBasis theorem_basis(const TheoremConstruction& c, int k);

// Generators implied by the combination targets (P, 0, .., -1, .., 0): g_j = P mod n, g_1 = 1.
IntRow implied_generators(const TheoremConstruction& c, int k);

// Each combination evaluates to its target, and the implied generators match the family table
// (compared from the family's k_min on). Throws IdentityFailure.
bool verify_combo_identities(const TheoremConstruction& c, int k);

// Clauses: (a) auxiliary definitions, (b) 32 sign patterns, (c) coordinate cap, (d) l1 norm.
bool verify_orthant_suite(const TheoremConstruction& c, int k);

}  // namespace circdd
