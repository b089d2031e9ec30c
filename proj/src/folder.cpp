#include "loopforge/folder.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace loopforge {

namespace {

std::vector<char> to_mask(int m, const ElementSet& S) {
    std::vector<char> mask(m, 0);
    for (int x : S) mask[x] = 1;
    return mask;
}

ElementSet conjugate_set(const FiniteGroup& G, const ElementSet& S, int g) {
    ElementSet out;
    out.reserve(S.size());
    for (int s : S) out.push_back(G.conj(s, g));
    std::sort(out.begin(), out.end());
    return out;
}

// Checks the transversal property of K against a fixed conjugate H^g.
bool transversal_against(const FiniteGroup& G, const std::vector<char>& hg,
                         const ElementSet& K) {
    // k1, k2 in the same right coset of H^g iff k1 k2^-1 in H^g
    for (size_t i = 0; i < K.size(); ++i)
        for (size_t j = i + 1; j < K.size(); ++j)
            if (hg[G.mul(K[i], G.inv[K[j]])]) return false;
    return true;
}

}  // namespace

bool folder_invariants_hold(const FiniteGroup& G, const ElementSet& H,
                            const ElementSet& K, bool fast_path) {
    if (!is_subgroup(G, H)) return false;
    if (!std::binary_search(K.begin(), K.end(), 0)) return false;
    if (static_cast<long long>(H.size()) * K.size() != G.m) return false;
    if (fast_path) {
        // H^g depends only on the coset of N_G(H); check one g per conjugate
        std::set<ElementSet> seen;
        for (int g = 0; g < G.m; ++g) {
            ElementSet hg = conjugate_set(G, H, g);
            if (!seen.insert(hg).second) continue;
            if (!transversal_against(G, to_mask(G.m, hg), K)) return false;
        }
        return true;
    }
    bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
    for (int g = 0; g < G.m; ++g) {
        if (!ok) continue;
        std::vector<char> hg(G.m, 0);
        for (int h : H) hg[G.conj(h, g)] = 1;
        ok = ok && transversal_against(G, hg, K);
    }
    return ok;
}

LoopFolder verify_folder(FiniteGroup group, ElementSet H, ElementSet K) {
    std::sort(H.begin(), H.end());
    std::sort(K.begin(), K.end());
    if (!is_subgroup(group, H)) throw NotSubgroup();
    if (K.empty() || K[0] != 0) throw NotTransversal(0, "1 not in K");
    if (static_cast<long long>(H.size()) * K.size() != group.m)
        throw NotTransversal(0, "|H||K| != |G|");
    for (int g = 0; g < group.m; ++g) {
        ElementSet hg = conjugate_set(group, H, g);
        if (!transversal_against(group, to_mask(group.m, hg), K))
            throw NotTransversal(g, "two K elements share a coset of H^g");
    }
    return LoopFolder{std::move(group), std::move(H), std::move(K)};
}

long long envelope_order(const CayleyLoop& X) {
    std::vector<Perm> gens;
    for (int x = 1; x < X.n; ++x) gens.push_back(right_translation(X, x));
    if (gens.empty()) return 1;
    return bsgs_order(bsgs_build(gens));
}

LoopFolder envelope(const CayleyLoop& X, long long cap) {
    std::vector<Perm> gens;
    for (int x = 0; x < X.n; ++x) gens.push_back(right_translation(X, x));
    PermGroupBSGS B = bsgs_build(gens);
    FiniteGroup G = enumerate_group(B, cap);
    std::map<Perm, int> index;
    for (int i = 0; i < G.m; ++i) index[G.tags[i]] = i;
    ElementSet K;
    for (int x = 0; x < X.n; ++x) K.push_back(index.at(gens[x]));
    std::sort(K.begin(), K.end());
    ElementSet H;
    for (int i = 0; i < G.m; ++i)
        if (G.tags[i](0) == 0) H.push_back(i);
    return verify_folder(std::move(G), std::move(H), std::move(K));
}

CayleyLoop loop_of_folder(const LoopFolder& f) {
    const FiniteGroup& G = f.group;
    int n = static_cast<int>(f.K.size());
    std::vector<char> inH = to_mask(G.m, f.H);
    std::vector<int> pos(G.m, -1);
    for (int i = 0; i < n; ++i) pos[f.K[i]] = i;
    std::vector<int> flat(n * n, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int p = G.mul(f.K[x], f.K[y]);
            int found = -1;
            for (int k : f.K) {
                // k in H*p  <=>  k p^-1 in H
                if (inH[G.mul(k, G.inv[p])]) {
                    if (found >= 0) throw AmbiguousRepresentative();
                    found = pos[k];
                }
            }
            if (found < 0) throw AmbiguousRepresentative();
            flat[x * n + y] = found;
        }
    return validate_loop(n, std::move(flat));
}

bool is_envelope(const LoopFolder& f) {
    return static_cast<int>(subgroup_generated(f.group, f.K).size()) == f.group.m;
}

bool is_faithful(const LoopFolder& f) { return core_in(f.group, f.H).size() == 1; }

std::pair<int, int> hk_decompose(const LoopFolder& f, int g) {
    const FiniteGroup& G = f.group;
    std::pair<int, int> out{-1, -1};
    for (int k : f.K) {
        int h = G.mul(g, G.inv[k]);
        if (std::binary_search(f.H.begin(), f.H.end(), h)) {
            if (out.first >= 0) throw AmbiguousRepresentative();
            out = {h, k};
        }
    }
    if (out.first < 0) throw AmbiguousRepresentative();
    return out;
}

SubfolderRef subfolder_on(const LoopFolder& f, const ElementSet& S) {
    SubfolderRef sub;
    sub.G = S;
    std::set_intersection(f.H.begin(), f.H.end(), S.begin(), S.end(),
                          std::back_inserter(sub.H));
    std::set_intersection(f.K.begin(), f.K.end(), S.begin(), S.end(),
                          std::back_inserter(sub.K));
    return sub;
}

bool is_subfolder(const LoopFolder& f, const SubfolderRef& sub) {
    const FiniteGroup& G = f.group;
    if (!is_subgroup(G, sub.G)) return false;
    if (!std::includes(f.H.begin(), f.H.end(), sub.H.begin(), sub.H.end()))
        return false;
    if (!std::includes(f.K.begin(), f.K.end(), sub.K.begin(), sub.K.end()))
        return false;
    // H-K decomposition of every element of sub.G must land inside sub
    for (int g : sub.G) {
        auto [h, k] = hk_decompose(f, g);
        if (!std::binary_search(sub.H.begin(), sub.H.end(), h)) return false;
        if (!std::binary_search(sub.K.begin(), sub.K.end(), k)) return false;
    }
    // and sub must be a folder in its own right
    auto [Gs, back] = subgroup_as_group(G, sub.G);
    std::vector<int> idx(G.m, -1);
    for (size_t i = 0; i < back.size(); ++i) idx[back[i]] = static_cast<int>(i);
    ElementSet Hs, Ks;
    for (int h : sub.H) Hs.push_back(idx[h]);
    for (int k : sub.K) Ks.push_back(idx[k]);
    std::sort(Hs.begin(), Hs.end());
    std::sort(Ks.begin(), Ks.end());
    return folder_invariants_hold(Gs, Hs, Ks, true);
}

bool is_normal_subfolder(const LoopFolder& f, const SubfolderRef& sub) {
    if (!is_subfolder(f, sub)) return false;
    const FiniteGroup& G = f.group;
    if (!is_normal_subgroup(G, sub.G)) return false;
    std::vector<char> inK = to_mask(G.m, f.K);
    std::vector<int> kpos(G.m, -1);
    // (NC): for all k2 in sub.K, k in K, g in G the unique decomposition
    // k2 k = l k3 with l in H^g, k3 in K has l in sub.G.
    bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
    for (int g = 0; g < G.m; ++g) {
        if (!ok) continue;
        std::vector<char> hg(G.m, 0);
        for (int h : f.H) hg[G.conj(h, g)] = 1;
        bool local = true;
        for (int k2 : sub.K) {
            for (int k : f.K) {
                int p = G.mul(k2, k);
                int l = -1;
                for (int k3 : f.K)
                    if (hg[G.mul(p, G.inv[k3])]) {
                        l = G.mul(p, G.inv[k3]);
                        break;
                    }
                if (l < 0 || !std::binary_search(sub.G.begin(), sub.G.end(), l)) {
                    local = false;
                    break;
                }
            }
            if (!local) break;
        }
        ok = ok && local;
    }
    return ok;
}

LoopFolder materialize_subfolder(const LoopFolder& f, const SubfolderRef& sub) {
    auto [Gs, back] = subgroup_as_group(f.group, sub.G);
    std::vector<int> idx(f.group.m, -1);
    for (size_t i = 0; i < back.size(); ++i) idx[back[i]] = static_cast<int>(i);
    ElementSet Hs, Ks;
    for (int h : sub.H) Hs.push_back(idx[h]);
    for (int k : sub.K) Ks.push_back(idx[k]);
    return verify_folder(std::move(Gs), std::move(Hs), std::move(Ks));
}

std::pair<LoopFolder, FolderMorphism> folder_quotient(const LoopFolder& f,
                                                      const SubfolderRef& sub) {
    if (!is_normal_subfolder(f, sub)) throw NotNormal();
    auto [Q, cls] = quotient_group(f.group, sub.G);
    ElementSet Hq, Kq;
    for (int h : f.H) Hq.push_back(cls[h]);
    for (int k : f.K) Kq.push_back(cls[k]);
    std::sort(Hq.begin(), Hq.end());
    Hq.erase(std::unique(Hq.begin(), Hq.end()), Hq.end());
    std::sort(Kq.begin(), Kq.end());
    Kq.erase(std::unique(Kq.begin(), Kq.end()), Kq.end());
    LoopFolder q = verify_folder(std::move(Q), std::move(Hq), std::move(Kq));
    return {std::move(q), FolderMorphism{cls}};
}

SubfolderRef folder_join(const LoopFolder& f, const SubfolderRef& f1,
                         const SubfolderRef& f2) {
    ElementSet gens = f1.G;
    gens.insert(gens.end(), f2.G.begin(), f2.G.end());
    ElementSet G3 = subgroup_generated(f.group, gens);
    return subfolder_on(f, G3);
}

SubfolderRef folder_meet(const LoopFolder& f, const SubfolderRef& f1,
                         const SubfolderRef& f2) {
    SubfolderRef out;
    std::set_intersection(f1.G.begin(), f1.G.end(), f2.G.begin(), f2.G.end(),
                          std::back_inserter(out.G));
    std::set_intersection(f1.H.begin(), f1.H.end(), f2.H.begin(), f2.H.end(),
                          std::back_inserter(out.H));
    std::set_intersection(f1.K.begin(), f1.K.end(), f2.K.begin(), f2.K.end(),
                          std::back_inserter(out.K));
    return out;
}

bool folders_isomorphic(const LoopFolder& a, const LoopFolder& b) {
    if (a.group.m != b.group.m || a.H.size() != b.H.size() ||
        a.K.size() != b.K.size())
        return false;
    CayleyLoop la{a.group.m, a.group.mul_table};
    CayleyLoop lb{b.group.m, b.group.mul_table};
    auto color = [](const LoopFolder& f) {
        std::vector<int> c(f.group.m, 0);
        for (int h : f.H) c[h] |= 1;
        for (int k : f.K) c[k] |= 2;
        return c;
    };
    std::vector<int> ca = color(a), cb = color(b);
    return loops_isomorphic(la, lb, &ca, &cb).has_value();
}

std::string folder_to_json(const LoopFolder& f) {
    nlohmann::json j;
    j["group"] = nlohmann::json::parse(group_to_json(f.group));
    j["H"] = f.H;
    j["K"] = f.K;
    return j.dump(2);
}

LoopFolder folder_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FiniteGroup G = group_from_json(j.at("group").dump());
    ElementSet H = j.at("H").get<ElementSet>();
    ElementSet K = j.at("K").get<ElementSet>();
    return verify_folder(std::move(G), std::move(H), std::move(K));
}

}  // namespace loopforge
