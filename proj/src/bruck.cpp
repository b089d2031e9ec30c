#include "loopforge/bruck.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace loopforge {

namespace {

bool in_set(const ElementSet& S, int x) {
    return std::binary_search(S.begin(), S.end(), x);
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int gpow(const FiniteGroup& G, int x, int e) {
    int r = 0;
    for (int i = 0; i < e; ++i) r = G.mul(r, x);
    return r;
}

// Unique square root in a group of odd element order.
int odd_sqrt(const FiniteGroup& G, int w) {
    int o = G.element_order(w);
    if (o % 2 == 0) throw EvenOrder();
    return gpow(G, w, (o + 1) / 2);
}

ElementSet intersect(const ElementSet& A, const ElementSet& B) {
    ElementSet out;
    std::set_intersection(A.begin(), A.end(), B.begin(), B.end(),
                          std::back_inserter(out));
    return out;
}

void finalize(CriteriaReport& r) {
    r.consistent = true;
    for (const auto& [name, val] : r.conditions)
        r.consistent = r.consistent && (val == r.conditions.front().second);
}

}  // namespace

bool CriteriaReport::all_true() const {
    for (const auto& [name, val] : conditions)
        if (!val) return false;
    return !conditions.empty();
}

bool is_twisted_subgroup(const FiniteGroup& G, const ElementSet& K) {
    if (!in_set(K, 0)) return false;
    for (int x : K)
        for (int y : K)
            if (!in_set(K, G.mul(G.mul(x, G.inv[y]), x))) return false;
    return true;
}

std::optional<TauAut> tau_construct(const FiniteGroup& D, const ElementSet& K) {
    // tau is forced on <K> by tau(g k) = tau(g) k^-1; BFS from the identity.
    std::vector<int> image(D.m, -1);
    image[0] = 0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int g = queue.front();
        queue.pop_front();
        for (int k : K) {
            int next = D.mul(g, k);
            int val = D.mul(image[g], D.inv[k]);
            if (image[next] < 0) {
                image[next] = val;
                queue.push_back(next);
            } else if (image[next] != val) {
                return std::nullopt;
            }
        }
    }
    for (int g = 0; g < D.m; ++g)
        if (image[g] < 0) throw Error("tau_construct: K does not generate the group");
    // Forced values must assemble into a homomorphism; tau^2 fixes every
    // generator, so involutivity (and bijectivity) come for free once they do.
    for (int a = 0; a < D.m; ++a)
        for (int b = 0; b < D.m; ++b)
            if (image[D.mul(a, b)] != D.mul(image[a], image[b]))
                return std::nullopt;
    for (int g = 0; g < D.m; ++g)
        if (image[image[g]] != g) return std::nullopt;
    return TauAut{&D, std::move(image)};
}

// Radical with an optional pointwise-fixed set Hs: smallest normal N of D
// whose quotient admits an involutory automorphism inverting the image of K
// and fixing the image of Hs pointwise.  Hs empty gives the plain K-radical.
// The centralizing condition matters: there are Bol A_r loops of order 8
// whose envelope admits a K-inverting involutory automorphism that moves H,
// and those loops are not Bruck, so the folder radical has to see H too.
static ElementSet radical_impl(const FiniteGroup& D, const ElementSet& K,
                               const ElementSet& Hs) {
    if (subgroup_generated(D, K).size() != static_cast<size_t>(D.m))
        throw Error("k_radical: K does not generate the group");
    ElementSet N{0};
    while (true) {
        auto [Q, cls] = quotient_group(D, N);
        ElementSet KQ;
        for (int k : K) KQ.push_back(cls[k]);
        std::sort(KQ.begin(), KQ.end());
        KQ.erase(std::unique(KQ.begin(), KQ.end()), KQ.end());

        // Propagate tau in the quotient, collecting every element that a
        // conflict forces to die.  Each such element maps into any normal
        // subgroup whose quotient admits tau, so adding their normal closure
        // keeps N below the radical.
        std::vector<int> image(Q.m, -1);
        image[0] = 0;
        std::deque<int> queue{0};
        std::set<int> conflicts;
        while (!queue.empty()) {
            int g = queue.front();
            queue.pop_front();
            for (int k : KQ) {
                int next = Q.mul(g, k);
                int val = Q.mul(image[g], Q.inv[k]);
                if (image[next] < 0) {
                    image[next] = val;
                    queue.push_back(next);
                } else if (image[next] != val) {
                    conflicts.insert(Q.mul(Q.inv[image[next]], val));
                }
            }
        }
        for (int a = 0; a < Q.m; ++a)
            for (int b = 0; b < Q.m; ++b) {
                int lhs = image[Q.mul(a, b)];
                int rhs = Q.mul(image[a], image[b]);
                if (lhs != rhs) conflicts.insert(Q.mul(Q.inv[lhs], rhs));
            }
        // tau must fix H pointwise; the propagated value is forced, so any
        // admissible quotient kills image(h) h^-1
        for (int h : Hs) {
            int hq = cls[h];
            if (image[hq] >= 0 && image[hq] != hq)
                conflicts.insert(Q.mul(image[hq], Q.inv[hq]));
        }
        conflicts.erase(0);
        if (conflicts.empty()) return N;

        ElementSet gens = N;
        for (int c : conflicts)
            for (int d = 0; d < D.m; ++d)
                if (cls[d] == c) {
                    gens.push_back(d);
                    break;
                }
        N = normal_closure(D, gens);
    }
}

ElementSet k_radical(const FiniteGroup& D, const ElementSet& K) {
    return radical_impl(D, K, {});
}

ElementSet k_radical(const LoopFolder& f) {
    ElementSet D = subgroup_generated(f.group, f.K);
    auto [Ds, back] = subgroup_as_group(f.group, D);
    std::vector<int> idx(f.group.m, -1);
    for (size_t i = 0; i < back.size(); ++i) idx[back[i]] = static_cast<int>(i);
    ElementSet Kl, Hl;
    for (int k : f.K) Kl.push_back(idx[k]);
    std::sort(Kl.begin(), Kl.end());
    for (int h : f.H)
        if (idx[h] >= 0) Hl.push_back(idx[h]);
    std::sort(Hl.begin(), Hl.end());
    ElementSet rad = radical_impl(Ds, Kl, Hl);
    ElementSet out;
    for (int r : rad) out.push_back(back[r]);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_bol_folder(const LoopFolder& f) {
    return is_twisted_subgroup(f.group, f.K);
}

bool h_acts_on_k(const LoopFolder& f) {
    for (int h : f.H)
        for (int k : f.K)
            if (!in_set(f.K, f.group.conj(k, h))) return false;
    return true;
}

bool is_bruck_folder(const LoopFolder& f) {
    return is_bol_folder(f) && h_acts_on_k(f) && k_radical(f).size() == 1;
}

std::vector<int> extend_tau_to_group(const LoopFolder& f, const TauAut& tau_d) {
    const FiniteGroup& G = f.group;
    if (tau_d.carrier && tau_d.carrier->m == G.m)
        for (int k : f.K)
            if (tau_d.image[k] != G.inv[k]) throw ExtensionInconsistent();
    // hk -> h k^tau; on a Bruck folder tau inverts K.
    std::vector<int> image(G.m, -1);
    for (int g = 0; g < G.m; ++g) {
        auto [h, k] = hk_decompose(f, g);
        image[g] = G.mul(h, G.inv[k]);
    }
    for (int a = 0; a < G.m; ++a) {
        if (image[image[a]] != a) throw ExtensionInconsistent();
        for (int b = 0; b < G.m; ++b)
            if (image[G.mul(a, b)] != G.mul(image[a], image[b]))
                throw ExtensionInconsistent();
    }
    return image;
}

ExtendedGroup extend_group(const LoopFolder& f, const TauAut& tau_d) {
    const FiniteGroup& G = f.group;
    std::vector<int> tg = extend_tau_to_group(f, tau_d);
    int m = G.m, M = 2 * m;
    std::vector<int> mul(static_cast<size_t>(M) * M);
    for (int e = 0; e < 2; ++e)
        for (int g = 0; g < m; ++g)
            for (int e2 = 0; e2 < 2; ++e2)
                for (int h = 0; h < m; ++h)
                    mul[(g + m * e) * M + (h + m * e2)] =
                        G.mul(g, e ? tg[h] : h) + m * (e ^ e2);
    ExtendedGroup out;
    out.plus = make_group(M, std::move(mul));
    out.tau = m;
    for (int k : f.K) out.lambda.push_back(G.inv[k] + m);
    std::sort(out.lambda.begin(), out.lambda.end());
    out.embed_g.resize(m);
    for (int g = 0; g < m; ++g) out.embed_g[g] = g;
    return out;
}

ElementSet k_of_tau(const FiniteGroup& G, const std::vector<int>& t) {
    ElementSet out;
    for (int g = 0; g < G.m; ++g)
        if (t[g] == G.inv[g]) out.push_back(g);
    return out;
}

SubfolderRef fixed_subfolder(const LoopFolder& f, const ElementSet& U) {
    const FiniteGroup& G = f.group;
    SubfolderRef out;
    out.G = normalizer(G, U);
    out.H = intersect(out.G, f.H);
    out.K = intersect(centralizer(G, U), f.K);
    return out;
}

SubloopSet fixed_points_loop(const CayleyLoop& X, const std::vector<Perm>& U) {
    SubloopSet out;
    out.parent = &X;
    for (int x = 0; x < X.n; ++x) {
        bool fixed = true;
        for (const Perm& u : U) fixed = fixed && u(x) == x;
        if (fixed) out.members.push_back(x);
    }
    return out;
}

SubfolderRef tau_fixed_subfolder(const LoopFolder& f, const std::vector<int>& tau_g) {
    ElementSet C;
    for (int g = 0; g < f.group.m; ++g)
        if (tau_g[g] == g) C.push_back(g);
    SubfolderRef out;
    out.G = C;
    out.H = intersect(C, f.H);
    out.K = intersect(C, f.K);
    return out;
}

CriteriaReport two_loop_criteria(const LoopFolder& f, const TauAut& tau_d) {
    CriteriaReport r;
    r.conditions.emplace_back("|X| is a power of 2",
                              power_of_two(static_cast<int>(f.K.size())));
    r.conditions.emplace_back("G is a 2-group", power_of_two(f.group.m));
    ExtendedGroup ext = extend_group(f, tau_d);
    bool prods = true;
    for (int a : ext.lambda)
        for (int b : ext.lambda)
            prods = prods && ext.plus.is_two_element(ext.plus.mul(a, b));
    r.conditions.emplace_back("ab is a 2-element for a, b in Lambda", prods);
    finalize(r);
    return r;
}

CriteriaReport odd_loop_criteria(const LoopFolder& f) {
    CriteriaReport r;
    r.conditions.emplace_back("|X| is odd", f.K.size() % 2 == 1);
    r.conditions.emplace_back("|G| is odd", f.group.m % 2 == 1);
    bool orders = true;
    for (int k : f.K) orders = orders && f.group.element_order(k) % 2 == 1;
    r.conditions.emplace_back("|k| is odd for all k in K", orders);
    finalize(r);
    return r;
}

CriteriaReport two_element_criterion(const LoopFolder& f, const TauAut& tau_d) {
    CriteriaReport r;
    CayleyLoop X = loop_of_folder(f);
    bool loop2 = true;
    for (int x = 0; x < X.n; ++x) loop2 = loop2 && power_of_two(element_order(X, x));
    r.conditions.emplace_back("X is a 2-element loop", loop2);
    bool k2 = true;
    for (int k : f.K) k2 = k2 && f.group.is_two_element(k);
    r.conditions.emplace_back("k is a 2-element for each k in K", k2);
    ExtendedGroup ext = extend_group(f, tau_d);
    r.conditions.emplace_back("tau lies in O_2(G+)",
                              in_set(o2_group(ext.plus), ext.tau));
    finalize(r);
    return r;
}

LoopFolder glauberman_folder(const FiniteGroup& L, const std::vector<int>& t) {
    if (L.m % 2 == 0) throw EvenOrder();
    if (static_cast<int>(t.size()) != L.m) throw NotInvolutory();
    for (int a = 0; a < L.m; ++a) {
        if (t[t[a]] != a) throw NotInvolutory();
        for (int b = 0; b < L.m; ++b)
            if (t[L.mul(a, b)] != L.mul(t[a], t[b])) throw NotInvolutory();
    }
    ElementSet H, K;
    for (int g = 0; g < L.m; ++g) {
        if (t[g] == g) H.push_back(g);
        if (t[g] == L.inv[g]) K.push_back(g);
    }
    return verify_folder(L, std::move(H), std::move(K));
}

CayleyLoop glauberman_square_root_loop(const FiniteGroup& L, const std::vector<int>& t) {
    LoopFolder f = glauberman_folder(L, t);
    const ElementSet& K = f.K;
    int n = static_cast<int>(K.size());
    std::vector<int> pos(L.m, -1);
    for (int i = 0; i < n; ++i) pos[K[i]] = i;
    std::vector<int> flat(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int w = L.mul(K[x], L.mul(L.mul(K[y], K[y]), K[x]));
            int s = odd_sqrt(L, w);
            if (pos[s] < 0) throw Error("square root left K");
            flat[x * n + y] = pos[s];
        }
    return validate_loop(n, std::move(flat));
}

BaerReport baer_bijection(const LoopFolder& f) {
    const FiniteGroup& G = f.group;
    if (G.m % 2 == 0) throw EvenOrder();
    if (!is_envelope(f)) throw Error("baer_bijection: folder is not an envelope");
    auto tau = tau_construct(G, f.K);
    if (!tau) throw Error("baer_bijection: tau does not exist");
    const std::vector<int>& tg = tau->image;

    BaerReport r;
    ExtendedGroup ext = extend_group(f, *tau);
    ElementSet cls;
    for (int g = 0; g < ext.plus.m; ++g) cls.push_back(ext.plus.conj(ext.tau, g));
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    r.lambda_is_tau_class = cls == ext.lambda;

    ElementSet fix;
    for (int g = 0; g < G.m; ++g)
        if (tg[g] == g) fix.push_back(g);
    r.h_is_centralizer = fix == f.H;
    r.k_is_k_tau = k_of_tau(G, tg) == f.K;

    std::vector<ElementSet> subs = all_subgroups(G);
    std::vector<ElementSet> inv_subs, folder_subs;
    for (const ElementSet& J : subs) {
        bool inv = true;
        for (int j : J) inv = inv && in_set(J, tg[j]);
        if (inv) inv_subs.push_back(J);
        if (is_subfolder(f, subfolder_on(f, J))) folder_subs.push_back(J);
    }
    r.tau_invariant_subgroups = static_cast<int>(inv_subs.size());
    r.subfolders = static_cast<int>(folder_subs.size());
    bool phi = inv_subs == folder_subs;
    for (const ElementSet& J : inv_subs) {
        ElementSet CJ, KJ;
        for (int j : J) {
            if (tg[j] == j) CJ.push_back(j);
            if (tg[j] == G.inv[j]) KJ.push_back(j);
        }
        phi = phi && CJ == intersect(J, f.H) && KJ == intersect(J, f.K);
    }
    r.phi_bijection = phi;

    bool nc = true;
    for (const ElementSet& J : inv_subs)
        nc = nc && (is_normal_subgroup(G, J) ==
                    is_normal_subfolder(f, subfolder_on(f, J)));
    r.normal_correspondence = nc;

    CayleyLoop X = loop_of_folder(f);
    std::vector<std::vector<int>> subloops = all_subloops(X);
    r.subloops = static_cast<int>(subloops.size());
    std::vector<ElementSet> comm_subs;
    for (const ElementSet& L : subs) {
        ElementSet gens;
        for (int l : L) gens.push_back(G.mul(G.inv[l], tg[l]));
        std::sort(gens.begin(), gens.end());
        if (subgroup_generated(G, gens) == L) comm_subs.push_back(L);
    }
    r.commutator_subgroups = static_cast<int>(comm_subs.size());

    std::vector<ElementSet> images;
    bool psi = true;
    for (const auto& Y : subloops) {
        ElementSet kappa;
        for (int y : Y) kappa.push_back(f.K[y]);
        std::sort(kappa.begin(), kappa.end());
        ElementSet LY = subgroup_generated(G, kappa);
        psi = psi && std::find(comm_subs.begin(), comm_subs.end(), LY) != comm_subs.end();
        images.push_back(std::move(LY));
    }
    std::sort(images.begin(), images.end());
    psi = psi && std::adjacent_find(images.begin(), images.end()) == images.end();
    psi = psi && images.size() == comm_subs.size();
    r.psi_bijection = psi;
    return r;
}

bool BaerReport::all_pass() const {
    return lambda_is_tau_class && h_is_centralizer && k_is_k_tau &&
           phi_bijection && normal_correspondence && psi_bijection &&
           tau_invariant_subgroups == subfolders &&
           subloops == commutator_subgroups;
}

std::pair<ElementSet, bool> d_of(const LoopFolder& f) {
    ElementSet D = subgroup_generated(f.group, f.K);
    bool normal = is_normal_subgroup(f.group, D);
    return {std::move(D), normal};
}

std::string tau_to_json(const TauAut& t, const std::string& carrier_hash) {
    nlohmann::json j;
    j["image"] = t.image;
    j["carrier"] = carrier_hash;
    return j.dump(2);
}

std::vector<int> tau_image_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    return j.at("image").get<std::vector<int>>();
}

}  // namespace loopforge
