#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "loopforge/enumerate.hpp"
#include "loopforge/structure.hpp"

using namespace loopforge;

namespace {

size_t count_loops(int order, LoopClass cls, bool canonical, int depth) {
    EnumerationTask t;
    t.order = order;
    t.cls = cls;
    t.canonical_dedup = canonical;
    t.parallel_depth = depth;
    return enumerate_loops(t).size();
}

size_t nonassoc(const std::vector<CayleyLoop>& xs) {
    size_t k = 0;
    for (const CayleyLoop& X : xs) {
        bool assoc = true;
        for (int a = 0; a < X.n && assoc; ++a)
            for (int b = 0; b < X.n && assoc; ++b)
                for (int c = 0; c < X.n; ++c)
                    if (X.mul(X.mul(a, b), c) != X.mul(a, X.mul(b, c))) {
                        assoc = false;
                        break;
                    }
        if (!assoc) ++k;
    }
    return k;
}

}  // namespace

TEST_CASE("loop counts up to isomorphism") {
    CHECK(count_loops(1, LoopClass::loop, true, 0) == 1);
    CHECK(count_loops(2, LoopClass::loop, true, 0) == 1);
    CHECK(count_loops(3, LoopClass::loop, true, 0) == 1);
    CHECK(count_loops(4, LoopClass::loop, true, 0) == 2);
    CHECK(count_loops(5, LoopClass::loop, true, 0) == 6);
    CHECK(count_loops(6, LoopClass::loop, true, 0) == 109);
}

TEST_CASE("canonical and pairwise dedup agree; serial and parallel agree") {
    for (int n : {4, 5}) {
        EnumerationTask a{n, LoopClass::loop, true, 0};
        EnumerationTask b{n, LoopClass::loop, false, 0};
        EnumerationTask c{n, LoopClass::loop, true, 3};
        auto xa = enumerate_loops(a);
        auto xb = enumerate_loops(b);
        auto xc = enumerate_loops(c);
        CHECK(xa.size() == xb.size());
        REQUIRE(xa.size() == xc.size());
        for (size_t i = 0; i < xa.size(); ++i) CHECK(xa[i].table == xc[i].table);
    }
}

TEST_CASE("bol loops below order 8 are groups") {
    for (int n = 1; n <= 7; ++n) {
        auto xs = enumerate_loops({n, LoopClass::bol, true, 0});
        CHECK(nonassoc(xs) == 0);
        for (const CayleyLoop& X : xs) CHECK(is_bol(X));
    }
}

TEST_CASE("bol and bruck loops of order 8") {
    auto bol = enumerate_loops({8, LoopClass::bol, true, 3});
    CHECK(bol.size() == 11);        // 5 groups + 6 proper Bol loops
    CHECK(nonassoc(bol) == 6);
    auto bruck = enumerate_loops({8, LoopClass::bruck, true, 3});
    for (const CayleyLoop& X : bruck) CHECK(is_bruck(X));
    CHECK(bruck.size() == 6);       // 3 abelian groups + 3 proper Bruck loops
    CHECK(nonassoc(bruck) == 3);
    auto ar = enumerate_loops({8, LoopClass::bol_ar, true, 3});
    CHECK(ar.size() <= bol.size());
    for (const CayleyLoop& X : ar) CHECK(is_ar_loop(X));
}

TEST_CASE("enumeration bounds") {
    CHECK_THROWS_AS(enumerate_loops({9, LoopClass::loop, true, 0}), BoundExceeded);
    CHECK_THROWS_AS(enumerate_loops({17, LoopClass::bol, true, 0}), BoundExceeded);
}

TEST_CASE("corpus roundtrip and tamper detection") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "loopforge_corpus_test";
    fs::remove_all(dir);
    auto xs = enumerate_loops({5, LoopClass::loop, true, 0});
    corpus_write(xs, dir.string(), 5, "loop");
    auto back = corpus_read(dir.string());
    REQUIRE(back.size() == xs.size());
    for (size_t i = 0; i < xs.size(); ++i) CHECK(back[i].table == xs[i].table);
    // tamper: drop a file, manifest count no longer matches
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.path().extension() == ".loop") {
            fs::remove(e.path());
            break;
        }
    CHECK_THROWS_AS(corpus_read(dir.string()), ManifestMismatch);
    fs::remove_all(dir);
}

TEST_CASE("abelian group generation by partitions") {
    CHECK(abelian_groups(1).size() == 1);
    CHECK(abelian_groups(9).size() == 2);    // C9, C3^2
    CHECK(abelian_groups(27).size() == 3);
    CHECK(abelian_groups(45).size() == 2);
    for (const FiniteGroup& G : abelian_groups(45)) {
        CHECK(G.m == 45);
        CHECK(derived_subgroup(G, [&] {
                  ElementSet all(G.m);
                  for (int i = 0; i < G.m; ++i) all[i] = i;
                  return all;
              }()) == ElementSet{0});
    }
}

TEST_CASE("semidirect products in the catalog are the right groups") {
    FiniteGroup F21 = semidirect_cyclic(7, 3, 2);
    CHECK(F21.m == 21);
    CHECK(center_group(F21) == ElementSet{0});
    CHECK(!groups_isomorphic(F21, cyclic_group(21)));
    auto cat = odd_group_catalog(27);
    int nonab = 0;
    for (const FiniteGroup& G : cat) {
        CHECK(G.m % 2 == 1);
        CHECK(G.m <= 27);
        if (center_group(G).size() != static_cast<size_t>(G.m)) ++nonab;
    }
    CHECK(nonab == 3);  // F21 and the two nonabelian groups of order 27
}

TEST_CASE("involutory automorphisms") {
    FiniteGroup G = group_direct_product(cyclic_group(3), cyclic_group(3));
    auto ts = involutory_automorphisms(G);
    CHECK(ts.size() == 14);  // 1 + |{involutions in GL(2,3)}|
    for (const auto& t : ts) {
        for (int x = 0; x < G.m; ++x) {
            CHECK(t[static_cast<size_t>(t[x])] == x);
            for (int y = 0; y < G.m; ++y)
                CHECK(t[G.mul(x, y)] == G.mul(t[x], t[y]));
        }
    }
    // nonabelian path hits the same contract
    FiniteGroup F21 = semidirect_cyclic(7, 3, 2);
    for (const auto& t : involutory_automorphisms(F21))
        for (int x = 0; x < F21.m; ++x) CHECK(t[static_cast<size_t>(t[x])] == x);
}

TEST_CASE("glauberman loops from small abelian groups are the groups back") {
    auto got = enumerate_glauberman(9);
    CHECK(!got.empty());
    for (const GlaubermanInstance& gi : got) {
        CHECK(is_bruck(gi.loop));
        CHECK(gi.loop.n % 2 == 1);
    }
    // with t = inversion on an abelian group the loop is the group itself
    bool saw9 = false;
    for (const GlaubermanInstance& gi : got)
        if (gi.group.m == 9 && gi.loop.n == 9) {
            CHECK(loops_isomorphic(gi.loop, CayleyLoop{9, gi.group.mul_table})
                      .has_value());
            saw9 = true;
        }
    CHECK(saw9);
    CHECK_THROWS_AS(enumerate_glauberman(83), BoundExceeded);
}
