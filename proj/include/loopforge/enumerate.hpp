#pragma once

#include <string>
#include <vector>

#include "loopforge/bruck.hpp"

namespace loopforge {

inline constexpr const char* kToolVersion = "loopforge 1.0.0";

enum class LoopClass { loop, bol, bruck, bol_ar };

const char* loop_class_name(LoopClass c);

struct EnumerationTask {
    int order = 1;
    LoopClass cls = LoopClass::loop;
    // true: canonical-form dedup (order <= 9); false: pairwise isomorphism.
    bool canonical_dedup = true;
    // 0 = serial reference; d > 0 fixes the first d free cells and
    // distributes the prefixes across threads.
    int parallel_depth = 0;
};

// Depth-first Latin-square completion in row-major cell order, with partial
// Bol pruning for the bol/bruck/bol_ar classes.  Output is one representative
// per isomorphism class, sorted by table.  Throws BoundExceeded.
std::vector<CayleyLoop> enumerate_loops(const EnumerationTask& task);

// Corpus layout: <dir>/<order>/<hash>.loop plus <dir>/manifest.json.
void corpus_write(const std::vector<CayleyLoop>& loops, const std::string& dir,
                  int order, const std::string& predicate);
std::vector<CayleyLoop> corpus_read(const std::string& dir);

// ---- odd groups with involutory automorphisms ----

// All abelian groups of order n (primary decomposition), as tables.
std::vector<FiniteGroup> abelian_groups(int n);

// C_a x| C_b where conjugation by the C_b generator multiplies by r mod a.
FiniteGroup semidirect_cyclic(int a, int b, int r);

// Built-in odd-order groups up to the bound: all abelian ones plus the
// nonabelian groups of orders 21, 27, 39, 55, 57, 63, 75 and a
// representative set at 81.
std::vector<FiniteGroup> odd_group_catalog(int bound);

// Every automorphism t with t^2 = 1 (identity included).
std::vector<std::vector<int>> involutory_automorphisms(const FiniteGroup& G);

struct GlaubermanInstance {
    FiniteGroup group;
    std::vector<int> tau;
    CayleyLoop loop;
};

// All (L, t, l(L, C_L(t), K_L(t))) over the catalog; every emitted loop is
// checked Bruck of odd order.  Throws BoundExceeded above 81.
std::vector<GlaubermanInstance> enumerate_glauberman(int bound);

}  // namespace loopforge
