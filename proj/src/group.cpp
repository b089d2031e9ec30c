#include "loopforge/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "loopforge/loop.hpp"
#include <nlohmann/json.hpp>

namespace loopforge {

int FiniteGroup::element_order(int x) const {
    int ord = 1, y = x;
    while (y != 0) {
        y = mul(y, x);
        ++ord;
    }
    return ord;
}

bool FiniteGroup::is_two_element(int x) const {
    int o = element_order(x);
    return (o & (o - 1)) == 0;
}

FiniteGroup make_group(int m, std::vector<int> mul, int assoc_cap) {
    FiniteGroup G{m, std::move(mul), {}, {}};
    for (int a = 0; a < m; ++a)
        if (G.mul(0, a) != a || G.mul(a, 0) != a)
            throw Error("make_group: 0 is not the identity");
    G.inv.assign(m, -1);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b)
            if (G.mul(a, b) == 0 && G.mul(b, a) == 0) {
                G.inv[a] = b;
                break;
            }
        if (G.inv[a] < 0) throw Error("make_group: missing inverse");
    }
    if (m <= assoc_cap) {
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
                        throw Error("make_group: not associative");
    } else {
        // sampled spot check; tables from BSGS enumeration are associative
        // by construction
        for (int t = 0; t < 4 * m; ++t) {
            int a = (t * 2654435761u) % m, b = (t * 40503u + 7) % m,
                c = (t * 69069u + 3) % m;
            if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
                throw Error("make_group: not associative");
        }
    }
    return G;
}

FiniteGroup cyclic_group(int n) {
    std::vector<int> mul(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[a * n + b] = (a + b) % n;
    return make_group(n, std::move(mul));
}

FiniteGroup group_direct_product(const FiniteGroup& A, const FiniteGroup& B) {
    int m = A.m * B.m;
    std::vector<int> mul(static_cast<size_t>(m) * m);
    for (int a1 = 0; a1 < A.m; ++a1)
        for (int b1 = 0; b1 < B.m; ++b1)
            for (int a2 = 0; a2 < A.m; ++a2)
                for (int b2 = 0; b2 < B.m; ++b2)
                    mul[(a1 * B.m + b1) * (size_t)m + a2 * B.m + b2] =
                        A.mul(a1, a2) * B.m + B.mul(b1, b2);
    return make_group(m, std::move(mul));
}

FiniteGroup enumerate_group(const PermGroupBSGS& g, long long cap) {
    std::vector<Perm> elems = bsgs_elements(g, cap);
    int m = static_cast<int>(elems.size());
    // identity is lexicographically least, hence at index 0 already
    std::map<Perm, int> index;
    for (int i = 0; i < m; ++i) index[elems[i]] = i;
    std::vector<int> mul(static_cast<size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            mul[a * (size_t)m + b] = index.at(compose(elems[a], elems[b]));
    FiniteGroup G = make_group(m, std::move(mul));
    G.tags = std::move(elems);
    return G;
}

bool is_subgroup(const FiniteGroup& G, const ElementSet& S) {
    if (S.empty() || S[0] != 0) {
        if (!std::binary_search(S.begin(), S.end(), 0)) return false;
    }
    for (int a : S)
        for (int b : S)
            if (!std::binary_search(S.begin(), S.end(), G.mul(a, b))) return false;
    return true;
}

ElementSet subgroup_generated(const FiniteGroup& G, const ElementSet& gens) {
    std::vector<char> in(G.m, 0);
    in[0] = 1;
    std::vector<int> work{0};
    for (int g : gens)
        if (!in[g]) {
            in[g] = 1;
            work.push_back(g);
        }
    for (size_t i = 0; i < work.size(); ++i)
        for (size_t j = 0; j < work.size(); ++j) {
            int v = G.mul(work[i], work[j]);
            if (!in[v]) {
                in[v] = 1;
                work.push_back(v);
            }
        }
    std::sort(work.begin(), work.end());
    return work;
}

ElementSet normal_closure(const FiniteGroup& G, const ElementSet& gens) {
    ElementSet seed = gens;
    while (true) {
        ElementSet S = subgroup_generated(G, seed);
        ElementSet extra;
        for (int s : S)
            for (int g = 0; g < G.m; ++g) {
                int c = G.conj(s, g);
                if (!std::binary_search(S.begin(), S.end(), c)) extra.push_back(c);
            }
        if (extra.empty()) return S;
        seed = S;
        seed.insert(seed.end(), extra.begin(), extra.end());
    }
}

bool is_normal_subgroup(const FiniteGroup& G, const ElementSet& N) {
    if (!is_subgroup(G, N)) return false;
    for (int x : N)
        for (int g = 0; g < G.m; ++g)
            if (!std::binary_search(N.begin(), N.end(), G.conj(x, g))) return false;
    return true;
}

ElementSet core_in(const FiniteGroup& G, const ElementSet& H) {
    if (!is_subgroup(G, H)) throw NotSubgroup();
    std::vector<char> core(G.m, 0);
    for (int h : H) core[h] = 1;
    for (int g = 0; g < G.m; ++g) {
        std::vector<char> hg(G.m, 0);
        for (int h : H) hg[G.conj(h, g)] = 1;
        for (int x = 0; x < G.m; ++x) core[x] = core[x] & hg[x];
    }
    ElementSet out;
    for (int x = 0; x < G.m; ++x)
        if (core[x]) out.push_back(x);
    return out;
}

namespace {
bool order_has_only(const FiniteGroup& G, const ElementSet& S, bool two) {
    long long n = static_cast<long long>(S.size());
    if (two) return (n & (n - 1)) == 0;
    return n % 2 == 1;
}

ElementSet o_pi_group(const FiniteGroup& G, bool two) {
    ElementSet gens;
    for (int x = 1; x < G.m; ++x) {
        ElementSet cl = normal_closure(G, {x});
        if (order_has_only(G, cl, two)) gens.push_back(x);
    }
    ElementSet S = subgroup_generated(G, gens);
    // the join of normal pi-subgroups is a normal pi-subgroup
    if (!order_has_only(G, S, two) || !is_normal_subgroup(G, S))
        throw Error("o_pi_group: closure characterization failed");
    return S;
}
}  // namespace

ElementSet o2_group(const FiniteGroup& G) { return o_pi_group(G, true); }
ElementSet o_odd_group(const FiniteGroup& G) { return o_pi_group(G, false); }

ElementSet derived_subgroup(const FiniteGroup& G, const ElementSet& S) {
    ElementSet comms;
    for (int a : S)
        for (int b : S) comms.push_back(G.comm(a, b));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    return subgroup_generated(G, comms);
}

std::vector<ElementSet> derived_series(const FiniteGroup& G) {
    std::vector<ElementSet> series;
    ElementSet cur(G.m);
    std::iota(cur.begin(), cur.end(), 0);
    series.push_back(cur);
    while (true) {
        ElementSet next = derived_subgroup(G, series.back());
        if (next == series.back()) break;
        series.push_back(next);
        if (next.size() == 1) break;
    }
    return series;
}

bool group_solvable(const FiniteGroup& G) {
    return derived_series(G).back().size() == 1;
}

ElementSet center_group(const FiniteGroup& G) {
    ElementSet out;
    for (int a = 0; a < G.m; ++a) {
        bool c = true;
        for (int b = 0; b < G.m && c; ++b) c = G.mul(a, b) == G.mul(b, a);
        if (c) out.push_back(a);
    }
    return out;
}

ElementSet centralizer(const FiniteGroup& G, const ElementSet& S) {
    ElementSet out;
    for (int a = 0; a < G.m; ++a) {
        bool c = true;
        for (int s : S)
            if (G.mul(a, s) != G.mul(s, a)) {
                c = false;
                break;
            }
        if (c) out.push_back(a);
    }
    return out;
}

ElementSet normalizer(const FiniteGroup& G, const ElementSet& S) {
    ElementSet out;
    for (int g = 0; g < G.m; ++g) {
        bool ok = true;
        for (int s : S)
            if (!std::binary_search(S.begin(), S.end(), G.conj(s, g))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(g);
    }
    return out;
}

std::pair<FiniteGroup, std::vector<int>> quotient_group(const FiniteGroup& G,
                                                        const ElementSet& N) {
    if (!is_normal_subgroup(G, N)) throw NotNormal();
    std::vector<int> cls(G.m, -1);
    std::vector<int> reps;
    for (int g = 0; g < G.m; ++g) {
        if (cls[g] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(g);
        for (int x : N) cls[G.mul(x, g)] = id;
    }
    int q = static_cast<int>(reps.size());
    std::vector<int> mul(static_cast<size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            mul[a * (size_t)q + b] = cls[G.mul(reps[a], reps[b])];
    return {make_group(q, std::move(mul)), std::move(cls)};
}

std::pair<FiniteGroup, std::vector<int>> subgroup_as_group(const FiniteGroup& G,
                                                           const ElementSet& S) {
    if (!is_subgroup(G, S)) throw NotSubgroup();
    int m = static_cast<int>(S.size());
    std::vector<int> idx(G.m, -1);
    for (int i = 0; i < m; ++i) idx[S[i]] = i;
    std::vector<int> mul(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) mul[i * (size_t)m + j] = idx[G.mul(S[i], S[j])];
    FiniteGroup H = make_group(m, std::move(mul));
    if (!G.tags.empty()) {
        for (int i = 0; i < m; ++i) H.tags.push_back(G.tags[S[i]]);
    }
    std::vector<int> back(S.begin(), S.end());
    return {std::move(H), std::move(back)};
}

std::vector<ElementSet> all_subgroups(const FiniteGroup& G) {
    std::vector<ElementSet> known{{0}};
    std::vector<ElementSet> frontier = known;
    while (!frontier.empty()) {
        std::vector<ElementSet> next;
        for (const ElementSet& S : frontier) {
            for (int g = 1; g < G.m; ++g) {
                if (std::binary_search(S.begin(), S.end(), g)) continue;
                ElementSet gens = S;
                gens.push_back(g);
                ElementSet T = subgroup_generated(G, gens);
                if (std::find(known.begin(), known.end(), T) == known.end()) {
                    known.push_back(T);
                    next.push_back(T);
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(known.begin(), known.end(),
              [](const ElementSet& a, const ElementSet& b) {
                  return std::tuple(a.size(), a) < std::tuple(b.size(), b);
              });
    return known;
}

bool groups_isomorphic(const FiniteGroup& A, const FiniteGroup& B) {
    if (A.m != B.m) return false;
    CayleyLoop la{A.m, A.mul_table}, lb{B.m, B.mul_table};
    return loops_isomorphic(la, lb).has_value();
}

std::string group_to_json(const FiniteGroup& G) {
    nlohmann::json j;
    j["order"] = G.m;
    auto& rows = j["mul"] = nlohmann::json::array();
    for (int a = 0; a < G.m; ++a) {
        nlohmann::json row = nlohmann::json::array();
        for (int b = 0; b < G.m; ++b) row.push_back(G.mul(a, b));
        rows.push_back(std::move(row));
    }
    if (!G.tags.empty()) {
        auto& labels = j["labels"] = nlohmann::json::array();
        for (const Perm& p : G.tags) labels.push_back(perm_to_string(p));
    }
    return j.dump(2);
}

FiniteGroup group_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int m = j.at("order").get<int>();
    std::vector<int> mul;
    mul.reserve(static_cast<size_t>(m) * m);
    for (const auto& row : j.at("mul"))
        for (const auto& v : row) mul.push_back(v.get<int>());
    if (static_cast<int>(mul.size()) != m * m) throw ParseError("bad mul table size");
    FiniteGroup G = make_group(m, std::move(mul));
    if (j.contains("labels"))
        for (const auto& s : j["labels"])
            G.tags.push_back(perm_from_string(s.get<std::string>()));
    return G;
}

}  // namespace loopforge
