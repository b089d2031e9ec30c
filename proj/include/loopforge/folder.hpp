#pragma once

#include <string>
#include <vector>

#include "loopforge/group.hpp"
#include "loopforge/loop.hpp"

namespace loopforge {

// Loop folder (G, H, K): H a subgroup, K a transversal of every conjugate
// H^g, 0 in K.  Stored over a fully enumerated group.
struct LoopFolder {
    FiniteGroup group;
    ElementSet H;
    ElementSet K;
};

// A subfolder referenced by element sets of an ambient folder's group.
struct SubfolderRef {
    ElementSet G, H, K;
};

struct FolderMorphism {
    std::vector<int> map;  // ambient group index -> target group index
};

// Checks both folder invariants; reference path quantifies over every g.
// Throws NotSubgroup / NotTransversal.
LoopFolder verify_folder(FiniteGroup group, ElementSet H, ElementSet K);

// Same check; quantifies only over distinct conjugates of H.
bool folder_invariants_hold(const FiniteGroup& G, const ElementSet& H,
                            const ElementSet& K, bool fast_path);

// epsilon(X) = (<R(X)>, stabilizer of 0, {R(x)}) in enumerated form.
// Tags carry the permutations.  Throws CapExceeded.
LoopFolder envelope(const CayleyLoop& X, long long cap = kDefaultGroupCap);

// Envelope group order without enumeration.
long long envelope_order(const CayleyLoop& X);

// l(f): loop on sorted K, x o y = the unique k in K inside H*(xy).
CayleyLoop loop_of_folder(const LoopFolder& f);

bool is_envelope(const LoopFolder& f);  // G = <K>
bool is_faithful(const LoopFolder& f);  // ker_H(G) = 1

// Subfolder test: sub.G a subgroup with H-K decompositions landing inside
// sub, sub.H = H n sub.G, sub.K = K n sub.G, and folder axioms on sub.
bool is_subfolder(const LoopFolder& f, const SubfolderRef& sub);

// Normal subfolder: subfolder + normality condition (NC) + sub.G normal.
bool is_normal_subfolder(const LoopFolder& f, const SubfolderRef& sub);

// Canonical subfolder on a subgroup S: (S, H n S, K n S).
SubfolderRef subfolder_on(const LoopFolder& f, const ElementSet& S);

// Standalone folder for a subfolder (group reindexed).
LoopFolder materialize_subfolder(const LoopFolder& f, const SubfolderRef& sub);

// Quotient folder and the natural projection morphism.  Throws NotNormal.
std::pair<LoopFolder, FolderMorphism> folder_quotient(const LoopFolder& f,
                                                      const SubfolderRef& sub);

// Join: G3 = G1G2, H3 = H n G3, K3 = K n G3.
SubfolderRef folder_join(const LoopFolder& f, const SubfolderRef& f1,
                         const SubfolderRef& f2);
// Meet: componentwise intersections.
SubfolderRef folder_meet(const LoopFolder& f, const SubfolderRef& f1,
                         const SubfolderRef& f2);

// Unique h in H, k in K with g = h*k.
std::pair<int, int> hk_decompose(const LoopFolder& f, int g);

// Identity-fixing group isomorphism carrying H to H' and K to K'.
bool folders_isomorphic(const LoopFolder& a, const LoopFolder& b);

std::string folder_to_json(const LoopFolder& f);
LoopFolder folder_from_json(const std::string& text);

}  // namespace loopforge
