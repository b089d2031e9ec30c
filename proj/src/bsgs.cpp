#include "loopforge/bsgs.hpp"

#include <algorithm>

namespace loopforge {

namespace {

// Strong generators for level i are all generators stored at levels >= i
// (each stored generator fixes every base point above its level).
std::vector<Perm> gens_from(const PermGroupBSGS& G, size_t i) {
    std::vector<Perm> out;
    for (size_t j = i; j < G.levels.size(); ++j)
        out.insert(out.end(), G.levels[j].gens.begin(), G.levels[j].gens.end());
    return out;
}

void rebuild_orbit(PermGroupBSGS& G, size_t i) {
    auto& lv = G.levels[i];
    auto gens = gens_from(G, i);
    lv.orbit.clear();
    lv.transversal.assign(G.degree, Perm{});
    lv.orbit.push_back(lv.beta);
    lv.transversal[lv.beta] = Perm::identity(G.degree);
    for (size_t oi = 0; oi < lv.orbit.size(); ++oi) {
        int pt = lv.orbit[oi];
        for (const Perm& g : gens) {
            int img = g(pt);
            if (lv.transversal[img].image.empty()) {
                lv.transversal[img] = compose(lv.transversal[pt], g);
                lv.orbit.push_back(img);
            }
        }
    }
}

std::pair<Perm, size_t> sift_from(const PermGroupBSGS& G, Perm p, size_t from) {
    for (size_t i = from; i < G.levels.size(); ++i) {
        const auto& lv = G.levels[i];
        int img = p(lv.beta);
        if (img == lv.beta) continue;
        if (lv.transversal.empty() || lv.transversal[img].image.empty())
            return {std::move(p), i};
        p = compose(p, lv.transversal[img].inverse());
    }
    return {std::move(p), G.levels.size()};
}

int first_moved(const Perm& p) {
    for (int b = 0; b < p.degree(); ++b)
        if (p(b) != b) return b;
    return -1;
}

// Level at which perm p belongs: the first level whose base point it moves,
// appending new base points while p fixes the whole current base.
size_t level_of(PermGroupBSGS& G, const Perm& p) {
    for (size_t i = 0; i < G.levels.size(); ++i)
        if (p(G.levels[i].beta) != G.levels[i].beta) return i;
    int beta = first_moved(p);
    G.levels.push_back({beta, {}, {}, {}});
    G.base.push_back(beta);
    return G.levels.size() - 1;
}

// Re-establish the stabilizer condition at level i, assuming deeper levels
// are consistent.  Restarts whenever the strong set below changes.
void schreier_sims(PermGroupBSGS& G, size_t i) {
    rebuild_orbit(G, i);
    bool dirty = true;
    while (dirty) {
        dirty = false;
        auto gens = gens_from(G, i);
        const auto& lv = G.levels[i];
        for (size_t oi = 0; oi < lv.orbit.size() && !dirty; ++oi) {
            int pt = lv.orbit[oi];
            for (const Perm& g : gens) {
                Perm sg = compose(compose(lv.transversal[pt], g),
                                  lv.transversal[g(pt)].inverse());
                if (sg.is_identity()) continue;
                auto [res, at] = sift_from(G, sg, i + 1);
                if (res.is_identity()) continue;
                size_t l = level_of(G, res);
                G.levels[l].gens.push_back(res);
                for (size_t j = G.levels.size(); j-- > l;)
                    if (j > i) schreier_sims(G, j);
                rebuild_orbit(G, i);
                dirty = true;
                break;
            }
        }
    }
}

}  // namespace

PermGroupBSGS bsgs_build(const std::vector<Perm>& gens,
                         const std::vector<int>& base_prefix) {
    PermGroupBSGS G;
    G.degree = gens.empty() ? 1 : gens.front().degree();
    for (const Perm& g : gens)
        if (g.degree() != G.degree) throw Error("bsgs_build: mixed degrees");
    G.generators = gens;
    for (int b : base_prefix) {
        G.levels.push_back({b, {}, {}, {}});
        G.base.push_back(b);
    }
    for (const Perm& g : gens) {
        if (g.is_identity()) continue;
        size_t l = level_of(G, g);
        G.levels[l].gens.push_back(g);
    }
    for (size_t i = G.levels.size(); i-- > 0;) schreier_sims(G, i);
    for (size_t i = 0; i < G.levels.size(); ++i) rebuild_orbit(G, i);
    return G;
}

long long PermGroupBSGS::order() const {
    long long o = 1;
    for (const auto& lv : levels) o *= static_cast<long long>(lv.orbit.size());
    return o;
}

bool PermGroupBSGS::contains(const Perm& p) const {
    if (p.degree() != degree) return false;
    auto [res, at] = sift_from(*this, p, 0);
    (void)at;
    return res.is_identity();
}

long long bsgs_order(const PermGroupBSGS& g) { return g.order(); }
bool bsgs_contains(const PermGroupBSGS& g, const Perm& p) { return g.contains(p); }

PermGroupBSGS point_stabilizer(const PermGroupBSGS& g, int pt) {
    PermGroupBSGS with_pt = bsgs_build(g.generators, {pt});
    std::vector<Perm> stab_gens = gens_from(with_pt, 1);
    if (stab_gens.empty()) stab_gens.push_back(Perm::identity(g.degree));
    return bsgs_build(stab_gens);
}

namespace {
void enumerate_rec(const PermGroupBSGS& G, size_t level, const Perm& prefix,
                   std::vector<Perm>& out) {
    if (level-- == 0) {
        out.push_back(prefix);
        return;
    }
    const auto& lv = G.levels[level];
    // every element factors as (deeper part) then a transversal element
    for (int pt : lv.orbit)
        enumerate_rec(G, level, compose(prefix, lv.transversal[pt]), out);
}
}  // namespace

std::vector<Perm> bsgs_elements(const PermGroupBSGS& g, long long cap) {
    long long o = g.order();
    if (o > cap) throw CapExceeded(o, cap);
    std::vector<Perm> out;
    out.reserve(static_cast<size_t>(o));
    enumerate_rec(g, g.levels.size(), Perm::identity(g.degree), out);
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw Error("bsgs_elements: duplicate element, chain is inconsistent");
    return out;
}

}  // namespace loopforge
