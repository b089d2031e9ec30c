#include <doctest.h>

#include <sstream>

#include "loopforge/group.hpp"
#include "loopforge/loop.hpp"

using namespace loopforge;

namespace {

CayleyLoop from_group(const FiniteGroup& G) { return CayleyLoop{G.m, G.mul_table}; }

CayleyLoop c(int n) { return from_group(cyclic_group(n)); }

CayleyLoop s3_loop() {
    PermGroupBSGS b = bsgs_build({Perm{{1, 0, 2}}, Perm{{1, 2, 0}}});
    return from_group(enumerate_group(b));
}

// The smallest Moufang-but-handy nonassociative Bol loop check input: a
// loop of order 5 that is not a group (cyclic table with a transposition).
CayleyLoop nonassoc5() {
    return validate_loop(5, {0, 1, 2, 3, 4,
                             1, 0, 3, 4, 2,
                             2, 3, 4, 0, 1,
                             3, 4, 1, 2, 0,
                             4, 2, 0, 1, 3});
}

}  // namespace

TEST_CASE("validate_loop rejects bad tables") {
    CHECK_THROWS_AS(validate_loop(2, {0, 1, 1, 1}), NotLatinSquare);
    CHECK_THROWS_AS(validate_loop(2, {1, 0, 0, 1}), NoIdentity);
    CHECK_THROWS_AS(validate_loop(2, {0, 1, 1, 2}), Error);  // out of range
    CHECK_NOTHROW(validate_loop(2, {0, 1, 1, 0}));
}

TEST_CASE("divisions invert multiplication") {
    CayleyLoop X = nonassoc5();
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            CHECK(X.mul(a, X.left_div(a, b)) == b);
            CHECK(X.mul(X.right_div(a, b), a) == b);
        }
}

TEST_CASE("translations act on the right") {
    CayleyLoop X = s3_loop();
    for (int x = 0; x < X.n; ++x) {
        Perm R = right_translation(X, x);
        Perm L = left_translation(X, x);
        for (int y = 0; y < X.n; ++y) {
            CHECK(R(y) == X.mul(y, x));
            CHECK(L(y) == X.mul(x, y));
        }
    }
}

TEST_CASE("bol parallel kernel agrees with serial reference") {
    std::vector<CayleyLoop> xs{c(6), s3_loop(), nonassoc5(), c(8)};
    for (const CayleyLoop& X : xs) CHECK(is_bol(X) == is_bol_serial(X));
}

TEST_CASE("groups are Bol; abelian groups are Bruck; S3 lacks AIP") {
    CHECK(is_bol(c(6)));
    CHECK(is_bruck(c(6)));
    CHECK(is_bol(s3_loop()));
    CHECK(!has_aip(s3_loop()));
    CHECK(!is_bruck(s3_loop()));
    CHECK(!is_bol(nonassoc5()));
}

TEST_CASE("element orders and powers in a Bol loop") {
    CayleyLoop X = c(12);
    CHECK(element_order(X, 1) == 12);
    CHECK(element_order(X, 4) == 3);
    CHECK(power(X, 1, 7) == 7);
    CHECK(power(X, 1, -1) == 11);
    CHECK(bol_inverse(X, 5) == 7);
}

TEST_CASE("subloops, normality, factor loop of C6") {
    CayleyLoop X = c(6);
    SubloopSet S = subloop_generated(X, {2});
    CHECK(S.members == std::vector<int>{0, 2, 4});
    CHECK(is_subloop_set(X, S.members));
    CHECK(!is_subloop_set(X, {0, 2}));
    CHECK(is_normal_subloop(X, S));
    auto [Q, hom] = factor_loop(X, S);
    CHECK(Q.n == 2);
    hom.target = &Q;  // factor_loop leaves the target to the caller
    CHECK(is_loop_hom(hom));
    CHECK(center(X).members.size() == 6);
}

TEST_CASE("normal closure via congruence") {
    CayleyLoop X = s3_loop();
    // closure of any involution is everything; closure of a 3-element is A3
    int invol = -1, three = -1;
    for (int x = 1; x < 6; ++x) {
        if (element_order(X, x) == 2) invol = x;
        if (element_order(X, x) == 3) three = x;
    }
    CHECK(normal_closure_loop(X, invol).members.size() == 6);
    CHECK(normal_closure_loop(X, three).members.size() == 3);
}

TEST_CASE("all_subloops of C6") {
    auto subs = all_subloops(c(6));
    CHECK(subs.size() == 4);  // 1, C2, C3, C6
}

TEST_CASE("isomorphism and canonical forms") {
    CayleyLoop c4 = c(4);
    CayleyLoop v4 = from_group(group_direct_product(cyclic_group(2), cyclic_group(2)));
    CHECK(!loops_isomorphic(c4, v4).has_value());
    auto self = loops_isomorphic(c4, c4);
    REQUIRE(self.has_value());
    CHECK(is_loop_hom(*self));
    CHECK(canonical_form(c4) == canonical_form(c4));
    // relabeled copy has the same canonical form
    std::vector<int> relab{0, 3, 2, 1};
    std::vector<int> inv(4);
    for (int i = 0; i < 4; ++i) inv[relab[i]] = i;
    std::vector<int> t(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            t[relab[a] * 4 + relab[b]] = relab[c4.mul(a, b)];
    CayleyLoop copy = validate_loop(4, std::move(t));
    CHECK(canonical_form(copy).table == canonical_form(c4).table);
    CHECK(canonical_form(v4).table != canonical_form(c4).table);
}

TEST_CASE("direct product") {
    CayleyLoop P = direct_product(c(2), c(3));
    CHECK(P.n == 6);
    CHECK(loops_isomorphic(P, c(6)).has_value());
}

TEST_CASE("loop text format roundtrip and comments") {
    CayleyLoop X = s3_loop();
    std::string text = "# a comment\n" + write_loop(X);
    std::istringstream in(text);
    CHECK(read_loop(in).table == X.table);
    CHECK_THROWS_AS(
        [] {
            std::istringstream bad("2\n0 1\n1 2\n");
            return read_loop(bad);
        }(),
        Error);
    CHECK(loop_content_hash(X) == loop_content_hash(X));
    CHECK(loop_content_hash(X) != loop_content_hash(c(6)));
}
