#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "loopforge/errors.hpp"
#include "loopforge/perm.hpp"

namespace loopforge {

// A finite loop as a Cayley table with the identity pinned at index 0.
// table[i*n+j] = i o j.  Immutable after construction.
struct CayleyLoop {
    int n = 0;
    std::vector<int> table;

    int mul(int i, int j) const { return table[i * n + j]; }

    // Unique x with a o x = b.
    int left_div(int a, int b) const;
    // Unique x with x o a = b.
    int right_div(int a, int b) const;

    bool operator==(const CayleyLoop&) const = default;
};

// Sorted set of element indices forming a subloop; always contains 0.
struct SubloopSet {
    const CayleyLoop* parent = nullptr;
    std::vector<int> members;

    int size() const { return static_cast<int>(members.size()); }
    bool contains(int x) const;
};

struct LoopHom {
    const CayleyLoop* source = nullptr;
    const CayleyLoop* target = nullptr;
    std::vector<int> map;
};

// ---- construction / validation ----

// Checks the Latin-square and identity-at-0 invariants.
// Throws NotLatinSquare / NoIdentity.
CayleyLoop validate_loop(const std::vector<std::vector<int>>& table);
CayleyLoop validate_loop(int n, std::vector<int> flat);

// ---- translations ----

Perm right_translation(const CayleyLoop& X, int x);  // y -> y o x
Perm left_translation(const CayleyLoop& X, int x);   // y -> x o y

// ---- first-order predicates ----

bool is_associative(const CayleyLoop& X);
bool is_commutative(const CayleyLoop& X);

// Serial reference scan of the Bol identity ((z o x) o y) o x = z o ((x o y) o x).
bool is_bol_serial(const CayleyLoop& X);
// OpenMP scan; agrees with the serial path by construction (tested).
bool is_bol(const CayleyLoop& X);

// Two-sided inverse of x, or nullopt.
std::optional<int> two_sided_inverse(const CayleyLoop& X, int x);

// AIP: (x o y)^-1 = x^-1 o y^-1.  Throws InversesUndefined when some
// element has no two-sided inverse.
bool has_aip(const CayleyLoop& X);

bool is_bruck(const CayleyLoop& X);

// ---- powers and orders (Bol loops: <x> is a group) ----

// Cycle length of 0 under R(x); coincides with the usual order in Bol loops.
int element_order(const CayleyLoop& X, int x);
int power(const CayleyLoop& X, int x, long long m);
int bol_inverse(const CayleyLoop& X, int x);

// ---- subloops ----

SubloopSet subloop_generated(const CayleyLoop& X, const std::vector<int>& gens);
bool is_subloop_set(const CayleyLoop& X, const std::vector<int>& members);
bool is_normal_subloop(const CayleyLoop& X, const SubloopSet& Y);  // throws NotSubloop

// Quotient by a normal subloop together with the projection (kernel = Y).
std::pair<CayleyLoop, LoopHom> factor_loop(const CayleyLoop& X, const SubloopSet& Y);

SubloopSet center(const CayleyLoop& X);

// Table of the subloop Y reindexed to 0..|Y|-1 (sorted member order),
// plus the member list in that order.
CayleyLoop subloop_table(const CayleyLoop& X, const SubloopSet& Y);

// Smallest normal subloop containing x: the class of 0 in the congruence
// generated by (0, x).
SubloopSet normal_closure_loop(const CayleyLoop& X, int x);
SubloopSet normal_closure_loop(const CayleyLoop& X, const std::vector<int>& xs);

// All subloops, by closure of incremental generator additions.
std::vector<std::vector<int>> all_subloops(const CayleyLoop& X);

// ---- isomorphism ----

// Identity-preserving isomorphism search, pruned by per-element invariants.
// Optional colors constrain the map to be color-preserving.
std::optional<LoopHom> loops_isomorphic(const CayleyLoop& X1, const CayleyLoop& X2,
                                        const std::vector<int>* colors1 = nullptr,
                                        const std::vector<int>* colors2 = nullptr);

// Lexicographically least table over relabelings fixing 0.
// Brute force over (n-1)! relabelings with early abort; intended for n <= 8.
CayleyLoop canonical_form(const CayleyLoop& X);

// Verifies that hom is a loop homomorphism.
bool is_loop_hom(const LoopHom& h);

// Direct product loop; elements indexed a*|B|+b.
CayleyLoop direct_product(const CayleyLoop& A, const CayleyLoop& B);

// ---- .loop text format ----
// line 1: n; next n lines: n space-separated 0-based indices; '#' comments.
CayleyLoop read_loop(std::istream& in);
CayleyLoop read_loop_file(const std::string& path);
std::string write_loop(const CayleyLoop& X);
void write_loop_file(const CayleyLoop& X, const std::string& path);

// FNV-1a hash of the canonical text form; stable across platforms.
std::string loop_content_hash(const CayleyLoop& X);

}  // namespace loopforge
