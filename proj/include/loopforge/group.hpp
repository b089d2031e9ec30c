#pragma once

#include <string>
#include <vector>

#include "loopforge/bsgs.hpp"
#include "loopforge/errors.hpp"
#include "loopforge/perm.hpp"

namespace loopforge {

inline constexpr long long kDefaultGroupCap = 1 << 20;

// Fully enumerated group: identity at 0, multiplication and inverse tables,
// optional permutation tags from the enumerating BSGS.
struct FiniteGroup {
    int m = 0;
    std::vector<int> mul_table;  // m*m
    std::vector<int> inv;
    std::vector<Perm> tags;  // may be empty

    int mul(int a, int b) const { return mul_table[a * m + b]; }
    int conj(int x, int g) const { return mul(mul(inv[g], x), g); }  // x^g
    int comm(int a, int b) const {  // [a,b] = a^-1 b^-1 a b
        return mul(mul(mul(inv[a], inv[b]), a), b);
    }
    int element_order(int x) const;
    bool is_two_element(int x) const;
};

using ElementSet = std::vector<int>;  // sorted element indices

// Builds the group from a raw table, checking identity/inverse laws and
// (for m <= assoc_cap) full associativity.
FiniteGroup make_group(int m, std::vector<int> mul, int assoc_cap = 256);

// Regular representation of an abstract cyclic group C_n.
FiniteGroup cyclic_group(int n);
FiniteGroup group_direct_product(const FiniteGroup& A, const FiniteGroup& B);

// Enumerates a BSGS group into table form; tags carry each element's Perm.
FiniteGroup enumerate_group(const PermGroupBSGS& g, long long cap = kDefaultGroupCap);

// ---- subgroup machinery ----

bool is_subgroup(const FiniteGroup& G, const ElementSet& S);
ElementSet subgroup_generated(const FiniteGroup& G, const ElementSet& gens);
ElementSet normal_closure(const FiniteGroup& G, const ElementSet& gens);
bool is_normal_subgroup(const FiniteGroup& G, const ElementSet& N);

// ker_H(G): largest normal subgroup of G inside H.  Throws NotSubgroup.
ElementSet core_in(const FiniteGroup& G, const ElementSet& H);

// Largest normal 2-subgroup / largest normal odd-order subgroup, via the
// closure characterization <x : <x^G> is a 2-group (resp. odd)>.
ElementSet o2_group(const FiniteGroup& G);
ElementSet o_odd_group(const FiniteGroup& G);

ElementSet derived_subgroup(const FiniteGroup& G, const ElementSet& S);
std::vector<ElementSet> derived_series(const FiniteGroup& G);
bool group_solvable(const FiniteGroup& G);

ElementSet center_group(const FiniteGroup& G);
ElementSet centralizer(const FiniteGroup& G, const ElementSet& S);
ElementSet normalizer(const FiniteGroup& G, const ElementSet& S);

// Quotient G/N with coset-of-0 first; also returns the projection map.
std::pair<FiniteGroup, std::vector<int>> quotient_group(const FiniteGroup& G,
                                                        const ElementSet& N);

// Subgroup reindexed as a standalone group; second result maps new -> old.
std::pair<FiniteGroup, std::vector<int>> subgroup_as_group(const FiniteGroup& G,
                                                           const ElementSet& S);

// All subgroups, by closure of incremental generator additions.
// Intended for oracle-scale orders (<= a few hundred).
std::vector<ElementSet> all_subgroups(const FiniteGroup& G);

bool groups_isomorphic(const FiniteGroup& A, const FiniteGroup& B);

// ---- JSON serialization ----
// {"order": m, "mul": [[...]], "labels": optional}
std::string group_to_json(const FiniteGroup& G);
FiniteGroup group_from_json(const std::string& text);

}  // namespace loopforge
