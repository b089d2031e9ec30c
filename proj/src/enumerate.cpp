#include "loopforge/enumerate.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "loopforge/structure.hpp"

namespace fs = std::filesystem;

namespace loopforge {

const char* loop_class_name(LoopClass c) {
    switch (c) {
        case LoopClass::loop: return "loop";
        case LoopClass::bol: return "bol";
        case LoopClass::bruck: return "bruck";
        case LoopClass::bol_ar: return "bol_ar";
    }
    return "?";
}

namespace {

// ---- Latin-square completion ----

struct Search {
    int n;
    bool bol_prune;
    std::vector<int> table;           // -1 = unknown
    std::vector<unsigned> row, col;   // used-value bitmasks
    std::vector<std::vector<int>> out;

    explicit Search(int n_, bool prune) : n(n_), bol_prune(prune) {
        table.assign(n * n, -1);
        row.assign(n, 0);
        col.assign(n, 0);
        for (int i = 0; i < n; ++i) {
            set_cell(0, i, i);
            if (i > 0) set_cell(i, 0, i);
        }
    }

    void set_cell(int i, int j, int v) {
        table[i * n + j] = v;
        row[i] |= 1u << v;
        col[j] |= 1u << v;
    }
    void clear_cell(int i, int j, int v) {
        table[i * n + j] = -1;
        row[i] &= ~(1u << v);
        col[j] &= ~(1u << v);
    }
    int at(int i, int j) const { return table[i * n + j]; }

    // All Bol instances whose operands are fully determined must hold.
    bool bol_partial_ok() const {
        for (int x = 1; x < n; ++x)
            for (int y = 1; y < n; ++y) {
                int xy = at(x, y);
                if (xy < 0) continue;
                int xyx = at(xy, x);
                if (xyx < 0) continue;
                for (int z = 1; z < n; ++z) {
                    int rhs = at(z, xyx);
                    int zx = at(z, x);
                    if (zx < 0) continue;
                    int zxy = at(zx, y);
                    if (zxy < 0) continue;
                    int lhs = at(zxy, x);
                    if (lhs < 0 || rhs < 0) continue;
                    if (lhs != rhs) return false;
                }
            }
        return true;
    }

    static int cell_index(int n, int step, int& i, int& j) {
        i = 1 + step / (n - 1);
        j = 1 + step % (n - 1);
        return i * n + j;
    }

    void dfs(int step) {
        int total = (n - 1) * (n - 1);
        if (step == total) {
            out.push_back(table);
            return;
        }
        int i, j;
        cell_index(n, step, i, j);
        for (int v = 0; v < n; ++v) {
            if ((row[i] >> v & 1) || (col[j] >> v & 1)) continue;
            set_cell(i, j, v);
            if (!bol_prune || bol_partial_ok()) dfs(step + 1);
            clear_cell(i, j, v);
        }
    }

    // Collect all valid partial assignments of the first `depth` cells.
    void prefixes(int step, int depth, std::vector<std::vector<int>>& acc) {
        if (step == depth || step == (n - 1) * (n - 1)) {
            std::vector<int> p;
            for (int s = 0; s < step; ++s) {
                int i, j;
                p.push_back(table[cell_index(n, s, i, j)]);
            }
            acc.push_back(std::move(p));
            return;
        }
        int i, j;
        cell_index(n, step, i, j);
        for (int v = 0; v < n; ++v) {
            if ((row[i] >> v & 1) || (col[j] >> v & 1)) continue;
            set_cell(i, j, v);
            if (!bol_prune || bol_partial_ok()) prefixes(step + 1, depth, acc);
            clear_cell(i, j, v);
        }
    }
};

bool class_filter(const CayleyLoop& X, LoopClass cls) {
    switch (cls) {
        case LoopClass::loop: return true;
        case LoopClass::bol: return is_bol(X);
        case LoopClass::bruck: return is_bruck(X);
        case LoopClass::bol_ar: return is_bol(X) && is_ar_loop(X);
    }
    return false;
}

std::vector<CayleyLoop> dedup(std::vector<CayleyLoop> raw, bool canonical) {
    std::sort(raw.begin(), raw.end(),
              [](const CayleyLoop& a, const CayleyLoop& b) { return a.table < b.table; });
    std::vector<CayleyLoop> reps;
    if (canonical) {
        std::set<std::vector<int>> seen;
        for (CayleyLoop& X : raw)
            if (seen.insert(canonical_form(X).table).second) reps.push_back(std::move(X));
    } else {
        for (CayleyLoop& X : raw) {
            bool fresh = true;
            for (const CayleyLoop& R : reps)
                fresh = fresh && !loops_isomorphic(X, R).has_value();
            if (fresh) reps.push_back(std::move(X));
        }
    }
    std::sort(reps.begin(), reps.end(),
              [](const CayleyLoop& a, const CayleyLoop& b) { return a.table < b.table; });
    return reps;
}

// ---- odd group constructions ----

void partitions_of(int e, int mx, std::vector<int>& cur,
                   std::vector<std::vector<int>>& acc) {
    if (e == 0) {
        acc.push_back(cur);
        return;
    }
    for (int part = std::min(e, mx); part >= 1; --part) {
        cur.push_back(part);
        partitions_of(e - part, part, cur, acc);
        cur.pop_back();
    }
}

FiniteGroup heisenberg27() {
    auto idx = [](int a, int b, int c) { return (a * 3 + b) * 3 + c; };
    std::vector<int> mul(27 * 27);
    for (int a1 = 0; a1 < 3; ++a1)
        for (int b1 = 0; b1 < 3; ++b1)
            for (int c1 = 0; c1 < 3; ++c1)
                for (int a2 = 0; a2 < 3; ++a2)
                    for (int b2 = 0; b2 < 3; ++b2)
                        for (int c2 = 0; c2 < 3; ++c2)
                            mul[idx(a1, b1, c1) * 27 + idx(a2, b2, c2)] =
                                idx((a1 + a2) % 3, (b1 + b2) % 3,
                                    (c1 + c2 + a1 * b2) % 3);
    return make_group(27, std::move(mul));
}

FiniteGroup elementary_semidirect75() {
    // (C5 x C5) x| C3, the C3 generator acting by [[0,4],[1,4]] (order 3).
    auto act = [](int x, int y, int times) {
        for (int t = 0; t < times; ++t) {
            int nx = (4 * y) % 5, ny = (x + 4 * y) % 5;
            x = nx;
            y = ny;
        }
        return std::pair{x, y};
    };
    auto idx = [](int x, int y, int j) { return (x * 5 + y) * 3 + j; };
    std::vector<int> mul(75 * 75);
    for (int x1 = 0; x1 < 5; ++x1)
        for (int y1 = 0; y1 < 5; ++y1)
            for (int j1 = 0; j1 < 3; ++j1)
                for (int x2 = 0; x2 < 5; ++x2)
                    for (int y2 = 0; y2 < 5; ++y2)
                        for (int j2 = 0; j2 < 3; ++j2) {
                            auto [ax, ay] = act(x2, y2, j1);
                            mul[idx(x1, y1, j1) * 75 + idx(x2, y2, j2)] =
                                idx((x1 + ax) % 5, (y1 + ay) % 5, (j1 + j2) % 3);
                        }
    return make_group(75, std::move(mul));
}

bool table_commutative(const FiniteGroup& G) {
    for (int a = 0; a < G.m; ++a)
        for (int b = a + 1; b < G.m; ++b)
            if (G.mul(a, b) != G.mul(b, a)) return false;
    return true;
}

// Involutory automorphisms of an odd abelian group come from the
// decompositions L = F + I into fixed and inverted parts.
std::vector<std::vector<int>> abelian_involutory(const FiniteGroup& G) {
    std::vector<std::vector<int>> out;
    std::vector<ElementSet> subs = all_subgroups(G);
    for (const ElementSet& F : subs)
        for (const ElementSet& I : subs) {
            if (F.size() * I.size() != static_cast<size_t>(G.m)) continue;
            ElementSet meet;
            std::set_intersection(F.begin(), F.end(), I.begin(), I.end(),
                                  std::back_inserter(meet));
            if (meet != ElementSet{0}) continue;
            std::vector<int> t(G.m, -1);
            for (int f : F)
                for (int i : I) t[G.mul(f, i)] = G.mul(f, G.inv[i]);
            out.push_back(std::move(t));
        }
    return out;
}

struct AutSearch {
    const FiniteGroup& G;
    std::vector<int> gens;
    std::vector<std::vector<int>> candidates;  // per generator, by order
    std::vector<std::vector<int>> out;

    explicit AutSearch(const FiniteGroup& g) : G(g) {
        ElementSet cur{0};
        int x = 1;
        while (cur.size() < static_cast<size_t>(G.m)) {
            while (std::binary_search(cur.begin(), cur.end(), x)) ++x;
            gens.push_back(x);
            ElementSet gs(gens.begin(), gens.end());
            std::sort(gs.begin(), gs.end());
            cur = subgroup_generated(G, gs);
        }
        for (int g : gens) {
            std::vector<int> cand;
            int o = G.element_order(g);
            for (int c = 1; c < G.m; ++c)
                if (G.element_order(c) == o) cand.push_back(c);
            candidates.push_back(std::move(cand));
        }
    }

    // Extends the partial map by multiplicative closure; false on conflict.
    bool close(std::vector<int>& img, std::vector<int>& known) const {
        for (size_t i = 0; i < known.size(); ++i)
            for (size_t j = 0; j < known.size(); ++j)
                for (auto [a, b] : {std::pair{known[i], known[j]},
                                    std::pair{known[j], known[i]}}) {
                    int p = G.mul(a, b);
                    int v = G.mul(img[a], img[b]);
                    if (img[p] < 0) {
                        img[p] = v;
                        known.push_back(p);
                    } else if (img[p] != v) {
                        return false;
                    }
                }
        return true;
    }

    void dfs(size_t gi, const std::vector<int>& img0, const std::vector<int>& known0) {
        if (gi == gens.size()) {
            if (known0.size() != static_cast<size_t>(G.m)) return;
            std::vector<char> hit(G.m, 0);
            for (int x = 0; x < G.m; ++x) hit[img0[x]] = 1;
            for (int x = 0; x < G.m; ++x)
                if (!hit[x] || img0[img0[x]] != x) return;
            out.push_back(img0);
            return;
        }
        for (int c : candidates[gi]) {
            std::vector<int> img = img0;
            std::vector<int> known = known0;
            if (img[gens[gi]] >= 0) {
                if (img[gens[gi]] != c) continue;
            } else {
                img[gens[gi]] = c;
                known.push_back(gens[gi]);
            }
            if (close(img, known)) dfs(gi + 1, img, known);
        }
    }
};

}  // namespace

std::vector<CayleyLoop> enumerate_loops(const EnumerationTask& task) {
    int n = task.order;
    int bound = task.cls == LoopClass::loop ? 8 : 16;
    if (n < 1 || n > bound) throw BoundExceeded(n, bound);
    if (n == 1) return {validate_loop(1, {0})};
    bool prune = task.cls != LoopClass::loop;

    std::vector<std::vector<int>> raw_tables;
    if (task.parallel_depth <= 0) {
        Search s(n, prune);
        s.dfs(0);
        raw_tables = std::move(s.out);
    } else {
        std::vector<std::vector<int>> pre;
        {
            Search s(n, prune);
            s.prefixes(0, task.parallel_depth, pre);
        }
        std::vector<std::vector<std::vector<int>>> parts(pre.size());
#pragma omp parallel for schedule(dynamic)
        for (long long p = 0; p < static_cast<long long>(pre.size()); ++p) {
            Search s(n, prune);
            for (size_t step = 0; step < pre[p].size(); ++step) {
                int i, j;
                Search::cell_index(n, static_cast<int>(step), i, j);
                s.set_cell(i, j, pre[p][step]);
            }
            s.dfs(static_cast<int>(pre[p].size()));
            parts[p] = std::move(s.out);
        }
        for (auto& part : parts)
            raw_tables.insert(raw_tables.end(), part.begin(), part.end());
    }

    std::vector<CayleyLoop> kept;
    for (auto& t : raw_tables) {
        CayleyLoop X = validate_loop(n, std::move(t));
        if (class_filter(X, task.cls)) kept.push_back(std::move(X));
    }
    return dedup(std::move(kept), task.canonical_dedup && n <= 9);
}

void corpus_write(const std::vector<CayleyLoop>& loops, const std::string& dir,
                  int order, const std::string& predicate) {
    std::error_code ec;
    fs::create_directories(fs::path(dir) / std::to_string(order), ec);
    if (ec) throw IoFailure("cannot create corpus directory " + dir);
    for (const CayleyLoop& X : loops) {
        if (X.n != order) throw IoFailure("corpus order mismatch");
        fs::path p = fs::path(dir) / std::to_string(order) /
                     (loop_content_hash(X) + ".loop");
        write_loop_file(X, p.string());
    }
    nlohmann::json manifest;
    manifest["order"] = order;
    manifest["predicate"] = predicate;
    manifest["count"] = loops.size();
    manifest["tool_version"] = kToolVersion;
    std::ofstream out(fs::path(dir) / "manifest.json");
    if (!out) throw IoFailure("cannot write manifest in " + dir);
    out << manifest.dump(2) << "\n";
}

std::vector<CayleyLoop> corpus_read(const std::string& dir) {
    std::ifstream in(fs::path(dir) / "manifest.json");
    if (!in) throw IoFailure("missing manifest in " + dir);
    nlohmann::json manifest = nlohmann::json::parse(in, nullptr, false);
    if (manifest.is_discarded()) throw ParseError("bad manifest in " + dir);
    int order = manifest.at("order").get<int>();
    size_t count = manifest.at("count").get<size_t>();
    std::vector<CayleyLoop> out;
    fs::path sub = fs::path(dir) / std::to_string(order);
    std::vector<fs::path> files;
    if (fs::exists(sub))
        for (const auto& e : fs::directory_iterator(sub))
            if (e.path().extension() == ".loop") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& p : files) {
        CayleyLoop X = read_loop_file(p.string());
        if (loop_content_hash(X) != p.stem().string())
            throw ManifestMismatch("hash mismatch for " + p.string());
        if (X.n != order) throw ManifestMismatch("order mismatch for " + p.string());
        out.push_back(std::move(X));
    }
    if (out.size() != count)
        throw ManifestMismatch("count mismatch in " + dir + ": manifest says " +
                               std::to_string(count) + ", found " +
                               std::to_string(out.size()));
    std::sort(out.begin(), out.end(),
              [](const CayleyLoop& a, const CayleyLoop& b) { return a.table < b.table; });
    return out;
}

std::vector<FiniteGroup> abelian_groups(int n) {
    // primary decomposition: one cyclic factor per part of each p-partition
    std::vector<std::pair<int, int>> pe;
    int rest = n;
    for (int p = 2; p <= rest; ++p)
        if (rest % p == 0) {
            int e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            pe.emplace_back(p, e);
        }
    std::vector<FiniteGroup> acc{cyclic_group(1)};
    for (auto [p, e] : pe) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        partitions_of(e, e, cur, parts);
        std::vector<FiniteGroup> next;
        for (const FiniteGroup& base : acc)
            for (const auto& part : parts) {
                FiniteGroup g = base;
                for (int ex : part) {
                    int q = 1;
                    for (int i = 0; i < ex; ++i) q *= p;
                    g = group_direct_product(g, cyclic_group(q));
                }
                next.push_back(std::move(g));
            }
        acc = std::move(next);
    }
    return acc;
}

FiniteGroup semidirect_cyclic(int a, int b, int r) {
    // r^b must be 1 mod a so that conjugation is well defined
    long long rb = 1;
    for (int i = 0; i < b; ++i) rb = rb * r % a;
    if (rb != 1 % a) throw Error("semidirect_cyclic: r^b != 1 mod a");
    int m = a * b;
    auto idx = [b](int i, int j) { return i * b + j; };
    std::vector<int> rpow(b);
    rpow[0] = 1 % a;
    for (int j = 1; j < b; ++j) rpow[j] = static_cast<int>(1LL * rpow[j - 1] * r % a);
    std::vector<int> mul(static_cast<size_t>(m) * m);
    for (int i1 = 0; i1 < a; ++i1)
        for (int j1 = 0; j1 < b; ++j1)
            for (int i2 = 0; i2 < a; ++i2)
                for (int j2 = 0; j2 < b; ++j2)
                    mul[idx(i1, j1) * m + idx(i2, j2)] =
                        idx((i1 + rpow[j1] * i2) % a, (j1 + j2) % b);
    return make_group(m, std::move(mul));
}

std::vector<FiniteGroup> odd_group_catalog(int bound) {
    std::vector<FiniteGroup> out;
    for (int n = 1; n <= bound; n += 2)
        for (FiniteGroup& g : abelian_groups(n)) out.push_back(std::move(g));
    auto add = [&](FiniteGroup g) {
        if (g.m <= bound) out.push_back(std::move(g));
    };
    add(semidirect_cyclic(7, 3, 2));    // 21
    add(heisenberg27());                // 27, exponent 3
    add(semidirect_cyclic(9, 3, 4));    // 27, modular
    add(semidirect_cyclic(13, 3, 3));   // 39
    add(semidirect_cyclic(11, 5, 3));   // 55
    add(semidirect_cyclic(19, 3, 7));   // 57
    add(semidirect_cyclic(7, 9, 2));    // 63, C7 x| C9
    if (bound >= 63)
        add(group_direct_product(semidirect_cyclic(7, 3, 2), cyclic_group(3)));
    add(elementary_semidirect75());     // 75
    add(semidirect_cyclic(27, 3, 10));  // 81, C27 x| C3
    if (bound >= 81) {
        add(group_direct_product(heisenberg27(), cyclic_group(3)));
        add(group_direct_product(semidirect_cyclic(9, 3, 4), cyclic_group(3)));
    }
    return out;
}

std::vector<std::vector<int>> involutory_automorphisms(const FiniteGroup& G) {
    if (G.m == 1) return {{0}};
    if (table_commutative(G)) return abelian_involutory(G);
    AutSearch search(G);
    std::vector<int> img(G.m, -1);
    img[0] = 0;
    search.dfs(0, img, {0});
    std::sort(search.out.begin(), search.out.end());
    search.out.erase(std::unique(search.out.begin(), search.out.end()),
                     search.out.end());
    return search.out;
}

std::vector<GlaubermanInstance> enumerate_glauberman(int bound) {
    if (bound > 81) throw BoundExceeded(bound, 81);
    std::vector<GlaubermanInstance> out;
    for (FiniteGroup& L : odd_group_catalog(bound)) {
        for (std::vector<int>& t : involutory_automorphisms(L)) {
            LoopFolder f = glauberman_folder(L, t);
            CayleyLoop X = loop_of_folder(f);
            if (X.n % 2 == 0 || !is_bruck(X))
                throw Error("glauberman construction produced a non-Bruck or "
                            "even-order loop");
            out.push_back({L, std::move(t), std::move(X)});
        }
    }
    return out;
}

}  // namespace loopforge
