#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopforge/bruck.hpp"

namespace loopforge {

// Ascending chain {0} = T_0 < ... < T_r = X, each term normal in the next,
// with the factor loops and their abelian-group flags as witnesses.
struct NormalSeries {
    std::vector<std::vector<int>> terms;
    std::vector<CayleyLoop> factors;
    std::vector<bool> abelian;
};

struct ClauseReport {
    std::string name;
    bool pass = false;
    std::string note;
};

struct DecompositionReport {
    std::vector<int> o_upper2prime_set;  // subloop generated by 2-elements
    std::vector<int> o_set;              // largest normal odd subloop
    std::vector<int> o2_set;             // largest normal 2-subloop
    std::vector<int> z_set;              // O^{2'}(X) n O(X)
    bool solvable = false;
    std::vector<ClauseReport> clauses;
    bool all_pass() const;
};

struct PairCheckReport {
    long long pairs_checked = 0;
    bool pass = false;
    std::string first_failure;
};

struct Corollary4Report {
    bool loop_solvable = false;
    bool group_solvable = false;
    bool agree = false;
    bool radical_normal_subfolder = false;
    bool radical_subloop_normal = false;
    bool radical_order_match = false;
    bool radical_group_iso = false;
    bool quotient_bruck = false;
    bool all_pass() const;
};

// Largest normal pi-subloop, as the iterated join of normal closures of
// elements whose closure is a pi-subloop.
SubloopSet o_pi(const CayleyLoop& X, const std::vector<int>& pi);
SubloopSet o2_loop(const CayleyLoop& X);     // O_2(X)
SubloopSet o_odd_loop(const CayleyLoop& X);  // O(X)

// Subloop generated by all elements of odd order / all 2-elements.
// Throw NotBol (element orders must be defined).
SubloopSet o_upper2(const CayleyLoop& X);
SubloopSet o_upper2prime(const CayleyLoop& X);

// For every pair (x, y), x a 2-element and |y| odd: the four translation
// equalities R(x)R(y) = R(x o y) = R(y o x) = R(y)R(x), commutation, the
// power law (u o v)^(2^i) = u^(2^i) o v^(2^i) under its commuting
// hypothesis, and the generation trigger v in <u o v>.  Throws NotBruck.
PairCheckReport theorem2_verify(const CayleyLoop& X);

// The five-part 2 / 2' decomposition suite.  Throws NotBruck, CapExceeded.
DecompositionReport theorem1_verify(const CayleyLoop& X);

// Witness series with abelian-group factors, or empty if none exists.
std::optional<NormalSeries> is_solvable_loop(const CayleyLoop& X);

// All quotients of all subloops; "proper" means order below |X|.
std::vector<CayleyLoop> sections(const CayleyLoop& X);

// True iff X is nonsolvable with every proper section solvable.
bool m_loop_detect(const CayleyLoop& X);

bool is_ar_loop(const CayleyLoop& X);  // H acts on K in the envelope

// Solvability biconditional plus the radical chain on X -> X/Xi(X).
Corollary4Report corollary4_check(const CayleyLoop& X);

// X = A o B with elementwise commuting and R(a)R(b) = R(a o b) in the
// envelope.  Throws NotNormal.
bool central_product_check(const CayleyLoop& X, const SubloopSet& A,
                           const SubloopSet& B);

std::string decomposition_to_json(const DecompositionReport& r);
std::string corollary4_to_json(const Corollary4Report& r);

}  // namespace loopforge
