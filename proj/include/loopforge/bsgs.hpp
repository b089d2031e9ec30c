#pragma once

#include <vector>

#include "loopforge/errors.hpp"
#include "loopforge/perm.hpp"

namespace loopforge {

// Deterministic Schreier-Sims stabilizer chain.  Base points are taken in
// increasing order (after an optional forced prefix) so transversals are
// reproducible.
struct PermGroupBSGS {
    int degree = 0;
    std::vector<Perm> generators;
    std::vector<int> base;

    struct Level {
        int beta = -1;
        std::vector<Perm> gens;         // generators of this stabilizer level
        std::vector<int> orbit;         // in discovery order
        std::vector<Perm> transversal;  // indexed by point; empty image = absent
    };
    std::vector<Level> levels;

    long long order() const;
    bool contains(const Perm& p) const;
};

PermGroupBSGS bsgs_build(const std::vector<Perm>& gens,
                         const std::vector<int>& base_prefix = {});

long long bsgs_order(const PermGroupBSGS& g);
bool bsgs_contains(const PermGroupBSGS& g, const Perm& p);

// Stabilizer of pt, via a rebuild with pt forced first in the base.
PermGroupBSGS point_stabilizer(const PermGroupBSGS& g, int pt);

// All group elements, lexicographically sorted by image array (identity
// first).  Throws CapExceeded.
std::vector<Perm> bsgs_elements(const PermGroupBSGS& g, long long cap);

}  // namespace loopforge
