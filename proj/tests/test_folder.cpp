#include <doctest.h>

#include "loopforge/folder.hpp"

using namespace loopforge;

namespace {

CayleyLoop from_group(const FiniteGroup& G) { return CayleyLoop{G.m, G.mul_table}; }

CayleyLoop c(int n) { return from_group(cyclic_group(n)); }

CayleyLoop s3_loop() {
    PermGroupBSGS b = bsgs_build({Perm{{1, 0, 2}}, Perm{{1, 2, 0}}});
    return from_group(enumerate_group(b));
}

}  // namespace

TEST_CASE("envelope of a group is its regular representation") {
    CayleyLoop X = s3_loop();
    LoopFolder f = envelope(X);
    CHECK(f.group.m == 6);
    CHECK(envelope_order(X) == 6);
    CHECK(f.H == ElementSet{0});
    CHECK(f.K.size() == 6);
    CHECK(is_envelope(f));
    CHECK(is_faithful(f));
    CHECK(loops_isomorphic(loop_of_folder(f), X).has_value());
}

TEST_CASE("functor roundtrip on small groups") {
    for (int n : {1, 2, 3, 4, 5, 6, 8}) {
        CayleyLoop X = c(n);
        LoopFolder f = envelope(X);
        CHECK(loops_isomorphic(loop_of_folder(f), X).has_value());
    }
}

TEST_CASE("fast and reference folder checks agree") {
    LoopFolder f = envelope(s3_loop());
    CHECK(folder_invariants_hold(f.group, f.H, f.K, true));
    CHECK(folder_invariants_hold(f.group, f.H, f.K, false));
    // break the transversal: drop one k, duplicate impossible, so shrink K
    ElementSet broken(f.K.begin(), f.K.end() - 1);
    CHECK(!folder_invariants_hold(f.group, f.H, broken, true));
    CHECK(!folder_invariants_hold(f.group, f.H, broken, false));
}

TEST_CASE("verify_folder throws on bad input") {
    FiniteGroup G = cyclic_group(6);
    CHECK_THROWS_AS(verify_folder(G, {0, 1}, {0, 2, 4}), NotSubgroup);
    CHECK_THROWS_AS(verify_folder(G, {0}, {0, 2, 4}), NotTransversal);
    CHECK_NOTHROW(verify_folder(G, {0}, {0, 1, 2, 3, 4, 5}));
}

TEST_CASE("hk decomposition is unique") {
    LoopFolder f = envelope(s3_loop());
    for (int g = 0; g < f.group.m; ++g) {
        auto [h, k] = hk_decompose(f, g);
        CHECK(f.group.mul(h, k) == g);
    }
}

TEST_CASE("subfolders and quotients of a C6 folder") {
    FiniteGroup G = cyclic_group(6);
    LoopFolder f = verify_folder(G, {0}, {0, 1, 2, 3, 4, 5});
    SubfolderRef sub = subfolder_on(f, {0, 2, 4});
    CHECK(is_subfolder(f, sub));
    CHECK(is_normal_subfolder(f, sub));
    auto [q, morph] = folder_quotient(f, sub);
    CHECK(q.group.m == 2);
    CHECK(loop_of_folder(q).n == 2);
    LoopFolder mat = materialize_subfolder(f, sub);
    CHECK(mat.group.m == 3);

    SubfolderRef s2 = subfolder_on(f, {0, 3});
    SubfolderRef join = folder_join(f, sub, s2);
    CHECK(join.G.size() == 6);
    SubfolderRef meet = folder_meet(f, sub, s2);
    CHECK(meet.G == ElementSet{0});
}

TEST_CASE("folder JSON roundtrip") {
    LoopFolder f = envelope(s3_loop());
    LoopFolder g = folder_from_json(folder_to_json(f));
    CHECK(g.group.m == f.group.m);
    CHECK(g.H == f.H);
    CHECK(g.K == f.K);
    CHECK(folders_isomorphic(f, g));
}

TEST_CASE("folders_isomorphic respects the H/K coloring") {
    FiniteGroup G = cyclic_group(4);
    LoopFolder a = verify_folder(G, {0}, {0, 1, 2, 3});
    FiniteGroup V = group_direct_product(cyclic_group(2), cyclic_group(2));
    LoopFolder b = verify_folder(V, {0}, {0, 1, 2, 3});
    CHECK(!folders_isomorphic(a, b));
    CHECK(folders_isomorphic(a, a));
}
