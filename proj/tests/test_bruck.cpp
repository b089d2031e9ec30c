#include <doctest.h>

#include <algorithm>

#include "loopforge/bruck.hpp"
#include "loopforge/enumerate.hpp"

using namespace loopforge;

namespace {

CayleyLoop from_group(const FiniteGroup& G) { return CayleyLoop{G.m, G.mul_table}; }

LoopFolder full_folder(const FiniteGroup& G) {
    ElementSet K(G.m);
    for (int i = 0; i < G.m; ++i) K[i] = i;
    return verify_folder(G, {0}, K);
}

LoopFolder s3_envelope() {
    PermGroupBSGS b = bsgs_build({Perm{{1, 0, 2}}, Perm{{1, 2, 0}}});
    return envelope(from_group(enumerate_group(b)));
}

}  // namespace

TEST_CASE("twisted subgroup basics") {
    FiniteGroup G = cyclic_group(6);
    ElementSet all{0, 1, 2, 3, 4, 5};
    CHECK(is_twisted_subgroup(G, all));        // abelian: whole group works
    CHECK(is_twisted_subgroup(G, {0, 3}));     // a subgroup
    CHECK(!is_twisted_subgroup(G, {1, 2}));    // missing identity
    CHECK(is_twisted_subgroup(G, {0, 2, 4}));
}

TEST_CASE("tau on an abelian full folder is inversion") {
    FiniteGroup G = cyclic_group(9);
    auto tau = tau_construct(G, {0, 1, 2, 3, 4, 5, 6, 7, 8});
    REQUIRE(tau.has_value());
    for (int g = 0; g < 9; ++g) CHECK(tau->image[g] == G.inv[g]);
    CHECK(k_radical(G, {0, 1, 2, 3, 4, 5, 6, 7, 8}) == ElementSet{0});
}

TEST_CASE("K-radical of the S3 envelope is A3, minimal by oracle") {
    LoopFolder f = s3_envelope();
    ElementSet rad = k_radical(f);
    CHECK(rad.size() == 3);
    CHECK(is_normal_subgroup(f.group, rad));
    // oracle: every normal N whose quotient admits tau contains the radical
    for (const ElementSet& N : all_subgroups(f.group)) {
        if (!is_normal_subgroup(f.group, N)) continue;
        auto [Q, cls] = quotient_group(f.group, N);
        ElementSet KQ;
        for (int k : f.K) KQ.push_back(cls[k]);
        std::sort(KQ.begin(), KQ.end());
        KQ.erase(std::unique(KQ.begin(), KQ.end()), KQ.end());
        if (tau_construct(Q, KQ).has_value())
            CHECK(std::includes(N.begin(), N.end(), rad.begin(), rad.end()));
    }
}

TEST_CASE("bruck folder predicate") {
    CHECK(is_bruck_folder(full_folder(cyclic_group(5))));
    CHECK(is_bruck_folder(full_folder(cyclic_group(8))));
    LoopFolder s3 = s3_envelope();
    CHECK(is_bol_folder(s3));  // groups are Bol
    CHECK(!is_bruck_folder(s3));  // nontrivial radical
}

TEST_CASE("extended group G+ inverts K by conjugation with tau") {
    LoopFolder f = full_folder(cyclic_group(7));
    auto tau = tau_construct(f.group, f.K);
    REQUIRE(tau.has_value());
    ExtendedGroup ext = extend_group(f, *tau);
    CHECK(ext.plus.m == 14);
    CHECK(ext.plus.element_order(ext.tau) == 2);
    for (int k : f.K)
        CHECK(ext.plus.conj(k, ext.tau) == f.group.inv[k]);
    CHECK(ext.lambda.size() == f.K.size());
    for (int l : ext.lambda) CHECK(ext.plus.element_order(l) <= 2);
    CHECK(k_of_tau(f.group, extend_tau_to_group(f, *tau)) == f.K);
}

TEST_CASE("criteria lemmas are internally consistent on easy inputs") {
    LoopFolder two = full_folder(cyclic_group(8));
    auto tau2 = tau_construct(two.group, two.K);
    REQUIRE(tau2.has_value());
    CriteriaReport a = two_loop_criteria(two, *tau2);
    CHECK(a.consistent);
    CHECK(a.all_true());
    CriteriaReport b = two_element_criterion(two, *tau2);
    CHECK(b.consistent);
    CHECK(b.all_true());
    CriteriaReport c = odd_loop_criteria(two);
    CHECK(c.consistent);
    CHECK(!c.all_true());

    LoopFolder odd = full_folder(cyclic_group(15));
    CHECK(odd_loop_criteria(odd).consistent);
    CHECK(odd_loop_criteria(odd).all_true());
}

TEST_CASE("glauberman folder of C7 x| C3 yields the order-7 loop") {
    FiniteGroup L = semidirect_cyclic(7, 3, 2);
    auto ts = involutory_automorphisms(L);
    bool saw7 = false;
    for (const auto& t : ts) {
        LoopFolder f = glauberman_folder(L, t);
        CHECK(is_bruck_folder(f));
        CayleyLoop X = loop_of_folder(f);
        CayleyLoop S = glauberman_square_root_loop(L, t);
        CHECK(X.table == S.table);  // same K ordering, same model
        if (X.n == 7) saw7 = true;
    }
    CHECK(saw7);
    CHECK_THROWS_AS(glauberman_folder(cyclic_group(4), {0, 3, 2, 1}), EvenOrder);
    CHECK_THROWS_AS(glauberman_folder(cyclic_group(5), {0, 2, 4, 1, 3}),
                    NotInvolutory);
}

TEST_CASE("fixed subfolders") {
    LoopFolder f = s3_envelope();
    SubfolderRef whole = fixed_subfolder(f, {0});
    CHECK(whole.G.size() == static_cast<size_t>(f.group.m));
    std::vector<int> tau_id(f.group.m);
    for (int i = 0; i < f.group.m; ++i) tau_id[i] = i;
    SubfolderRef fix = tau_fixed_subfolder(f, tau_id);
    CHECK(fix.G.size() == static_cast<size_t>(f.group.m));
    CayleyLoop X = loop_of_folder(f);
    SubloopSet everything = fixed_points_loop(X, {});
    CHECK(everything.members.size() == static_cast<size_t>(X.n));
}

TEST_CASE("baer bijection on odd abelian envelopes") {
    for (int n : {3, 5, 9, 15}) {
        LoopFolder f = full_folder(cyclic_group(n));
        BaerReport r = baer_bijection(f);
        CHECK(r.all_pass());
        // abelian: every subgroup is tau-invariant
        CHECK(r.tau_invariant_subgroups == r.subfolders);
        CHECK(r.subloops == r.commutator_subgroups);
    }
    CHECK_THROWS_AS(baer_bijection(full_folder(cyclic_group(4))), EvenOrder);
}

TEST_CASE("d_of and tau JSON") {
    LoopFolder f = full_folder(cyclic_group(5));
    auto [D, normal] = d_of(f);
    CHECK(D.size() == 5);
    CHECK(normal);
    auto tau = tau_construct(f.group, f.K);
    REQUIRE(tau.has_value());
    std::string j = tau_to_json(*tau, "deadbeef");
    CHECK(tau_image_from_json(j) == tau->image);
}
