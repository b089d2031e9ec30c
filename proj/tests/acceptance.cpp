// Acceptance gate: one line per criterion, nonzero exit iff any fail.
#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "loopforge/enumerate.hpp"
#include "loopforge/structure.hpp"

using namespace loopforge;

namespace {

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& note) {
    std::printf("[%s] %d. %-34s %s\n", ok ? "PASS" : "FAIL", idx, name,
                note.c_str());
    if (!ok) ++failures;
}

std::vector<CayleyLoop> enumerate_class(int order, LoopClass cls, int depth) {
    EnumerationTask t;
    t.order = order;
    t.cls = cls;
    t.canonical_dedup = order <= 9;
    t.parallel_depth = depth;
    return enumerate_loops(t);
}

// Exhaustive Bruck loops to order 8, then a constructive extension to 16:
// abelian groups, odd Glauberman loops, and closure under direct products.
std::vector<CayleyLoop> bruck_corpus() {
    std::vector<CayleyLoop> out;
    auto add = [&out](const CayleyLoop& X) {
        for (const CayleyLoop& Y : out)
            if (Y.n == X.n && loops_isomorphic(Y, X).has_value()) return;
        out.push_back(X);
    };
    for (int n = 1; n <= 8; ++n)
        for (const CayleyLoop& X : enumerate_class(n, LoopClass::bruck, 3))
            add(X);
    for (int n = 9; n <= 16; ++n)
        for (const FiniteGroup& G : abelian_groups(n))
            add(CayleyLoop{G.m, G.mul_table});
    for (const GlaubermanInstance& gi : enumerate_glauberman(15))
        if (gi.loop.n <= 16) add(gi.loop);
    size_t base = out.size();
    for (size_t i = 0; i < base; ++i)
        for (size_t j = 0; j < base; ++j)
            if (out[i].n > 1 && out[j].n > 1 && out[i].n * out[j].n <= 16)
                add(direct_product(out[i], out[j]));
    return out;
}

// ---- criterion 7 oracle: no pruning, pairwise isomorphism ----

struct NaiveSearch {
    int n;
    std::vector<int> table;
    std::vector<std::vector<CayleyLoop>>* sink;

    void run(int step) {
        if (step == (n - 1) * (n - 1)) {
            CayleyLoop X = validate_loop(n, table);
            auto& reps = (*sink)[0];
            for (const CayleyLoop& Y : reps)
                if (loops_isomorphic(Y, X).has_value()) return;
            reps.push_back(X);
            return;
        }
        int i = 1 + step / (n - 1), j = 1 + step % (n - 1);
        for (int v = 0; v < n; ++v) {
            bool clash = false;
            for (int jj = 0; jj < j && !clash; ++jj)
                if (table[i * n + jj] == v) clash = true;
            for (int ii = 0; ii < i && !clash; ++ii)
                if (table[ii * n + j] == v) clash = true;
            if (clash) continue;
            table[i * n + j] = v;
            run(step + 1);
            table[i * n + j] = -1;
        }
    }
};

size_t naive_count(int n) {
    std::vector<std::vector<CayleyLoop>> reps(1);
    NaiveSearch s;
    s.n = n;
    s.table.assign(n * n, -1);
    for (int i = 0; i < n; ++i) s.table[i] = i, s.table[i * n] = i;
    s.sink = &reps;
    s.run(0);
    return reps[0].size();
}

size_t nonassoc_count(const std::vector<CayleyLoop>& xs) {
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

ElementSet whole(const FiniteGroup& G) {
    ElementSet all(G.m);
    for (int i = 0; i < G.m; ++i) all[i] = i;
    return all;
}

ElementSet commutator_with(const FiniteGroup& G, const std::vector<int>& t) {
    ElementSet gens;
    for (int g = 0; g < G.m; ++g) gens.push_back(G.mul(G.inv[g], t[g]));
    return subgroup_generated(G, gens);
}

}  // namespace

int main() {
    auto corpus = bruck_corpus();
    std::printf("bruck corpus: %zu loops up to order 16\n", corpus.size());

    {  // 1. functor roundtrip
        bool ok = true;
        long long checked = 0;
        for (int n = 1; n <= 6 && ok; ++n)
            for (const CayleyLoop& X : enumerate_class(n, LoopClass::loop, n >= 5 ? 3 : 0)) {
                ++checked;
                if (!loops_isomorphic(loop_of_folder(envelope(X)), X)) {
                    ok = false;
                    break;
                }
            }
        for (const CayleyLoop& X : enumerate_class(8, LoopClass::bol, 3)) {
            ++checked;
            if (!loops_isomorphic(loop_of_folder(envelope(X)), X)) ok = false;
        }
        report(1, "functor roundtrip l(eps(X)) ~ X", ok,
               std::to_string(checked) + " loops");
    }

    std::vector<GlaubermanInstance> glaub = enumerate_glauberman(81);
    std::map<std::string, const CayleyLoop*> glaub_dedup;
    for (const GlaubermanInstance& gi : glaub)
        glaub_dedup.emplace(loop_content_hash(gi.loop), &gi.loop);

    {  // 2. theorem 2 suite
        bool ok = true;
        std::string note;
        long long pairs = 0;
        for (const CayleyLoop& X : corpus) {
            PairCheckReport r = theorem2_verify(X);
            pairs += r.pairs_checked;
            if (!r.pass) {
                ok = false;
                note = "corpus n=" + std::to_string(X.n) + ": " + r.first_failure;
                break;
            }
        }
        for (const auto& [hash, Xp] : glaub_dedup) {
            PairCheckReport r = theorem2_verify(*Xp);
            pairs += r.pairs_checked;
            if (!r.pass) {
                ok = false;
                note = "glauberman n=" + std::to_string(Xp->n) + ": " + r.first_failure;
                break;
            }
        }
        if (ok)
            note = std::to_string(pairs) + " pairs over corpus + " +
                   std::to_string(glaub_dedup.size()) + " glauberman loops";
        report(2, "theorem 2 pair identities", ok, note);
    }

    {  // 3. theorem 1 suite
        bool ok = true;
        std::string note;
        for (const CayleyLoop& X : corpus) {
            DecompositionReport r = theorem1_verify(X);
            if (!r.all_pass() || !r.solvable) {
                ok = false;
                note = "n=" + std::to_string(X.n);
                for (const ClauseReport& c : r.clauses)
                    if (!c.pass) note += " " + c.name + ": " + c.note;
                break;
            }
        }
        if (ok) note = std::to_string(corpus.size()) + " loops, 5 clauses each";
        report(3, "theorem 1 decomposition clauses", ok, note);
    }

    {  // 4. glauberman correspondence
        auto cat = odd_group_catalog(81);
        bool ok = true;
        long long checked = 0, envelopes = 0;
        std::string note;
        for (const FiniteGroup& L : cat) {
            auto ts = involutory_automorphisms(L);
            ElementSet zl = center_group(L);
            bool local_ok = true;
            std::string local_note;
#pragma omp parallel for schedule(dynamic) reduction(+ : checked, envelopes)
            for (size_t ti = 0; ti < ts.size(); ++ti) {
                if (!local_ok) continue;
                const std::vector<int>& t = ts[ti];
                LoopFolder mu = glauberman_folder(L, t);
                CayleyLoop X = loop_of_folder(mu);
                bool good = is_bruck_folder(mu) &&
                            static_cast<long long>(X.n) * mu.H.size() == L.m;
                if (good) {
                    bool full_comm = commutator_with(L, t).size() ==
                                     static_cast<size_t>(L.m);
                    bool trivial_fix = true;
                    for (int z : zl)
                        if (z != 0 && t[z] == z) trivial_fix = false;
                    if (full_comm && trivial_fix) {
                        ++envelopes;
                        good = folders_isomorphic(envelope(X), mu);
                    }
                }
                if (!good) {
#pragma omp critical
                    {
                        local_ok = false;
                        local_note = "|L|=" + std::to_string(L.m) + " t#" +
                                     std::to_string(ti);
                    }
                }
                ++checked;
            }
            if (!local_ok) {
                ok = false;
                note = local_note;
                break;
            }
        }
        if (ok)
            note = std::to_string(checked) + " (L,t) pairs, " +
                   std::to_string(envelopes) + " envelope isomorphisms";
        report(4, "glauberman correspondence", ok, note);
    }

    {  // 5. baer bijections on odd envelopes
        bool ok = true;
        int ran = 0;
        std::string note;
        std::set<std::string> seen;
        auto run_one = [&](const CayleyLoop& X) {
            if (X.n % 2 == 0 || !is_bruck(X)) return;
            if (!seen.insert(loop_content_hash(X)).second) return;
            if (envelope_order(X) > 200) return;
            LoopFolder f = envelope(X);
            BaerReport r = baer_bijection(f);
            ++ran;
            if (!r.all_pass()) {
                ok = false;
                note = "n=" + std::to_string(X.n) +
                       " |G|=" + std::to_string(f.group.m);
            }
        };
        for (const CayleyLoop& X : corpus) run_one(X);
        for (const auto& [hash, Xp] : glaub_dedup) run_one(*Xp);
        if (ok) note = std::to_string(ran) + " envelopes, |G| <= 200";
        report(5, "baer bijections phi and psi", ok, note);
    }

    {  // 6. criteria lemma consistency
        bool ok = true;
        std::string note;
        for (const CayleyLoop& X : corpus) {
            LoopFolder f = envelope(X);
            auto tau = tau_construct(f.group, f.K);
            if (!tau.has_value()) {
                ok = false;
                note = "no tau at n=" + std::to_string(X.n);
                break;
            }
            if (!two_loop_criteria(f, *tau).consistent ||
                !odd_loop_criteria(f).consistent ||
                !two_element_criterion(f, *tau).consistent) {
                ok = false;
                note = "disagreement at n=" + std::to_string(X.n);
                break;
            }
        }
        if (ok) note = std::to_string(corpus.size()) + " envelopes consistent";
        report(6, "criteria lemma equivalences", ok, note);
    }

    {  // 7. enumeration ground truths
        size_t n4 = naive_count(4), n5 = naive_count(5);
        auto bol_serial = enumerate_class(8, LoopClass::bol, 0);
        auto bol_par = enumerate_class(8, LoopClass::bol, 3);
        size_t na_serial = nonassoc_count(bol_serial);
        size_t na_par = nonassoc_count(bol_par);
        bool ok = n4 == 2 && n5 == 6 &&
                  enumerate_class(4, LoopClass::loop, 0).size() == n4 &&
                  enumerate_class(5, LoopClass::loop, 0).size() == n5 &&
                  na_serial == 6 && na_serial == na_par &&
                  bol_serial.size() == bol_par.size();
        report(7, "enumeration ground truths", ok,
               "n4=" + std::to_string(n4) + " n5=" + std::to_string(n5) +
                   " bol8-nonassoc=" + std::to_string(na_serial) + "/" +
                   std::to_string(na_par));
    }

    {  // 8. oracle equivalence for the group machinery
        bool ok = true;
        std::string note;
        std::vector<std::vector<Perm>> gen_sets{
            {Perm{{1, 0, 2, 3}}, Perm{{1, 2, 3, 0}}},        // S4
            {Perm{{1, 0, 2, 3, 4}}, Perm{{1, 2, 3, 4, 0}}},  // S5
            {Perm{{1, 0, 2, 3, 4, 5}}, Perm{{1, 2, 3, 4, 5, 0}}},  // S6
            {Perm{{1, 2, 0, 3, 4}}, Perm{{0, 1, 2, 4, 3}}},  // C3 x C2
            {Perm{{1, 2, 0, 3, 4}}, Perm{{0, 2, 1, 4, 3}}},  // 3-cycle + double swap
            {Perm{{1, 2, 3, 4, 5, 6, 7, 0}}, Perm{{7, 6, 5, 4, 3, 2, 1, 0}}},  // D8
        };
        long long groups_checked = 0;
        for (const auto& gens : gen_sets) {
            // BFS closure oracle
            std::set<Perm> closure(gens.begin(), gens.end());
            closure.insert(Perm::identity(static_cast<int>(gens[0].image.size())));
            std::vector<Perm> frontier(closure.begin(), closure.end());
            while (!frontier.empty() && closure.size() <= 5000) {
                std::vector<Perm> next;
                for (const Perm& p : frontier)
                    for (const Perm& g : gens) {
                        Perm q = compose(p, g);
                        if (closure.insert(q).second) next.push_back(q);
                    }
                frontier = std::move(next);
            }
            PermGroupBSGS b = bsgs_build(gens);
            if (bsgs_order(b) != static_cast<long long>(closure.size())) {
                ok = false;
                note = "order mismatch";
                break;
            }
            for (const Perm& p : closure)
                if (!bsgs_contains(b, p)) {
                    ok = false;
                    note = "membership mismatch";
                    break;
                }
            ++groups_checked;
        }
        // o2/o_odd/core_in versus exhaustive scans, |G| <= 200
        std::vector<FiniteGroup> small;
        small.push_back(cyclic_group(12));
        small.push_back(semidirect_cyclic(7, 3, 2));
        small.push_back(semidirect_cyclic(9, 3, 4));
        small.push_back(group_direct_product(cyclic_group(4), cyclic_group(6)));
        {
            PermGroupBSGS s4 = bsgs_build({Perm{{1, 0, 2, 3}}, Perm{{1, 2, 3, 0}}});
            small.push_back(enumerate_group(s4));
            PermGroupBSGS d6 = bsgs_build(
                {Perm{{1, 2, 3, 4, 5, 0}}, Perm{{5, 4, 3, 2, 1, 0}}});
            small.push_back(enumerate_group(d6));
        }
        for (const FiniteGroup& G : small) {
            if (G.m > 200) continue;
            auto subs = all_subgroups(G);
            ElementSet best2{0}, bestodd{0};
            for (const ElementSet& S : subs) {
                if (!is_normal_subgroup(G, S)) continue;
                size_t s = S.size();
                if ((s & (s - 1)) == 0 && s > best2.size()) best2 = S;
                if (s % 2 == 1 && s > bestodd.size()) bestodd = S;
            }
            if (o2_group(G) != best2 || o_odd_group(G) != bestodd) {
                ok = false;
                note = "o2/o_odd scan mismatch at |G|=" + std::to_string(G.m);
                break;
            }
            for (const ElementSet& H : subs) {
                ElementSet core{0};
                for (const ElementSet& S : subs)
                    if (S.size() > core.size() && is_normal_subgroup(G, S) &&
                        std::includes(H.begin(), H.end(), S.begin(), S.end()))
                        core = S;
                if (core_in(G, H) != core) {
                    ok = false;
                    note = "core_in mismatch at |G|=" + std::to_string(G.m);
                    break;
                }
            }
            if (!ok) break;
            ++groups_checked;
        }
        if (ok) note = std::to_string(groups_checked) + " groups";
        report(8, "bsgs and radical oracles", ok, note);
    }

    {  // 9. corollary 4 and the M-loop scan
        bool ok = true;
        std::string note;
        int ar_checked = 0;
        std::vector<CayleyLoop> pool = corpus;
        for (int n = 1; n <= 8; ++n)
            for (const CayleyLoop& X : enumerate_class(n, LoopClass::bol, 3))
                pool.push_back(X);
        std::set<std::string> seen;
        for (const CayleyLoop& X : pool) {
            if (!seen.insert(loop_content_hash(X)).second) continue;
            if (X.n <= 12 && is_bol(X) && is_ar_loop(X)) {
                Corollary4Report r = corollary4_check(X);
                ++ar_checked;
                if (!r.agree || !r.all_pass()) {
                    ok = false;
                    note = "corollary 4 fails at n=" + std::to_string(X.n);
                    break;
                }
            }
            if (m_loop_detect(X)) {
                ok = false;
                note = "M-loop reported at n=" + std::to_string(X.n);
                break;
            }
        }
        if (ok)
            note = std::to_string(ar_checked) + " A_r loops, " +
                   std::to_string(seen.size()) + " loops scanned";
        report(9, "corollary 4 and M-loop scan", ok, note);
    }

    std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "OK",
                failures);
    return failures ? 1 : 0;
}
