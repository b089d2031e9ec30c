#include "loopforge/loop.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

namespace loopforge {

int CayleyLoop::left_div(int a, int b) const {
    for (int x = 0; x < n; ++x)
        if (mul(a, x) == b) return x;
    return -1;
}

int CayleyLoop::right_div(int a, int b) const {
    for (int x = 0; x < n; ++x)
        if (mul(x, a) == b) return x;
    return -1;
}

bool SubloopSet::contains(int x) const {
    return std::binary_search(members.begin(), members.end(), x);
}

CayleyLoop validate_loop(int n, std::vector<int> flat) {
    if (n <= 0 || static_cast<int>(flat.size()) != n * n)
        throw ParseError("table is not square");
    for (int v : flat)
        if (v < 0 || v >= n) throw ParseError("entry out of range");
    CayleyLoop X{n, std::move(flat)};
    // identity at 0
    for (int j = 0; j < n; ++j)
        if (X.mul(0, j) != j) throw NoIdentity(0, j);
    for (int i = 0; i < n; ++i)
        if (X.mul(i, 0) != i) throw NoIdentity(i, 0);
    // Latin square
    std::vector<char> seen(n);
    for (int i = 0; i < n; ++i) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int j = 0; j < n; ++j) {
            int v = X.mul(i, j);
            if (seen[v]) throw NotLatinSquare(i, true, v);
            seen[v] = 1;
        }
    }
    for (int j = 0; j < n; ++j) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int i = 0; i < n; ++i) {
            int v = X.mul(i, j);
            if (seen[v]) throw NotLatinSquare(j, false, v);
            seen[v] = 1;
        }
    }
    return X;
}

CayleyLoop validate_loop(const std::vector<std::vector<int>>& table) {
    int n = static_cast<int>(table.size());
    std::vector<int> flat;
    flat.reserve(n * n);
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw ParseError("table is not square");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return validate_loop(n, std::move(flat));
}

Perm right_translation(const CayleyLoop& X, int x) {
    std::vector<int> img(X.n);
    for (int y = 0; y < X.n; ++y) img[y] = X.mul(y, x);
    return Perm(std::move(img));
}

Perm left_translation(const CayleyLoop& X, int x) {
    std::vector<int> img(X.n);
    for (int y = 0; y < X.n; ++y) img[y] = X.mul(x, y);
    return Perm(std::move(img));
}

bool is_associative(const CayleyLoop& X) {
    for (int a = 0; a < X.n; ++a)
        for (int b = 0; b < X.n; ++b)
            for (int c = 0; c < X.n; ++c)
                if (X.mul(X.mul(a, b), c) != X.mul(a, X.mul(b, c))) return false;
    return true;
}

bool is_commutative(const CayleyLoop& X) {
    for (int a = 0; a < X.n; ++a)
        for (int b = a + 1; b < X.n; ++b)
            if (X.mul(a, b) != X.mul(b, a)) return false;
    return true;
}

bool is_bol_serial(const CayleyLoop& X) {
    for (int z = 0; z < X.n; ++z)
        for (int x = 0; x < X.n; ++x)
            for (int y = 0; y < X.n; ++y)
                if (X.mul(X.mul(X.mul(z, x), y), x) !=
                    X.mul(z, X.mul(X.mul(x, y), x)))
                    return false;
    return true;
}

bool is_bol(const CayleyLoop& X) {
    bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (int z = 0; z < X.n; ++z) {
        bool local = true;
        for (int x = 0; x < X.n && local; ++x)
            for (int y = 0; y < X.n; ++y)
                if (X.mul(X.mul(X.mul(z, x), y), x) !=
                    X.mul(z, X.mul(X.mul(x, y), x))) {
                    local = false;
                    break;
                }
        ok = ok && local;
    }
    return ok;
}

std::optional<int> two_sided_inverse(const CayleyLoop& X, int x) {
    int r = X.left_div(x, 0);  // x o r = 0
    if (r < 0 || X.mul(r, x) != 0) return std::nullopt;
    return r;
}

bool has_aip(const CayleyLoop& X) {
    std::vector<int> inv(X.n);
    for (int x = 0; x < X.n; ++x) {
        auto i = two_sided_inverse(X, x);
        if (!i) throw InversesUndefined(x);
        inv[x] = *i;
    }
    for (int x = 0; x < X.n; ++x)
        for (int y = 0; y < X.n; ++y)
            if (inv[X.mul(x, y)] != X.mul(inv[x], inv[y])) return false;
    return true;
}

bool is_bruck(const CayleyLoop& X) {
    if (!is_bol(X)) return false;
    return has_aip(X);
}

int element_order(const CayleyLoop& X, int x) {
    // x^m = R(x)^m(0); the order is the cycle length of 0 under R(x).
    int m = 0, y = 0;
    do {
        y = X.mul(y, x);
        ++m;
    } while (y != 0);
    return m;
}

int power(const CayleyLoop& X, int x, long long m) {
    int ord = element_order(X, x);
    long long e = ((m % ord) + ord) % ord;
    int y = 0;
    for (long long i = 0; i < e; ++i) y = X.mul(y, x);
    return y;
}

int bol_inverse(const CayleyLoop& X, int x) { return power(X, x, -1); }

SubloopSet subloop_generated(const CayleyLoop& X, const std::vector<int>& gens) {
    std::vector<char> in(X.n, 0);
    in[0] = 1;
    std::vector<int> work{0};
    for (int g : gens)
        if (!in[g]) {
            in[g] = 1;
            work.push_back(g);
        }
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t i = 0; i < work.size(); ++i)
            for (size_t j = 0; j < work.size(); ++j) {
                int a = work[i], b = work[j];
                for (int v : {X.mul(a, b), X.left_div(a, b), X.right_div(a, b)}) {
                    if (!in[v]) {
                        in[v] = 1;
                        work.push_back(v);
                        grew = true;
                    }
                }
            }
    }
    std::sort(work.begin(), work.end());
    return SubloopSet{&X, std::move(work)};
}

bool is_subloop_set(const CayleyLoop& X, const std::vector<int>& members) {
    std::vector<char> in(X.n, 0);
    for (int m : members) in[m] = 1;
    if (!in[0]) return false;
    for (int a : members)
        for (int b : members)
            if (!in[X.mul(a, b)] || !in[X.left_div(a, b)] || !in[X.right_div(a, b)])
                return false;
    return true;
}

namespace {
// a o (Y o b) as a sorted vector.
std::vector<int> left_of_coset(const CayleyLoop& X, int a, const std::vector<int>& Y, int b) {
    std::vector<int> out;
    out.reserve(Y.size());
    for (int y : Y) out.push_back(X.mul(a, X.mul(y, b)));
    std::sort(out.begin(), out.end());
    return out;
}
std::vector<int> coset_of(const CayleyLoop& X, const std::vector<int>& Y, int c) {
    std::vector<int> out;
    out.reserve(Y.size());
    for (int y : Y) out.push_back(X.mul(y, c));
    std::sort(out.begin(), out.end());
    return out;
}
std::vector<int> right_of_coset(const CayleyLoop& X, int a, const std::vector<int>& Y, int b) {
    std::vector<int> out;
    out.reserve(Y.size());
    for (int y : Y) out.push_back(X.mul(X.mul(a, y), b));
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace

bool is_normal_subloop(const CayleyLoop& X, const SubloopSet& Y) {
    if (!is_subloop_set(X, Y.members)) throw NotSubloop();
    for (int a = 0; a < X.n; ++a)
        for (int b = 0; b < X.n; ++b) {
            auto mid = coset_of(X, Y.members, X.mul(a, b));
            if (left_of_coset(X, a, Y.members, b) != mid) return false;
            if (right_of_coset(X, a, Y.members, b) != mid) return false;
        }
    return true;
}

std::pair<CayleyLoop, LoopHom> factor_loop(const CayleyLoop& X, const SubloopSet& Y) {
    if (!is_normal_subloop(X, Y)) throw NotNormal();
    // cosets Y o x, labeled by least member, coset of 0 first
    std::vector<int> cls(X.n, -1);
    std::vector<std::vector<int>> cosets;
    for (int x = 0; x < X.n; ++x) {
        if (cls[x] >= 0) continue;
        auto c = coset_of(X, Y.members, x);
        for (int v : c) cls[v] = static_cast<int>(cosets.size());
        cosets.push_back(std::move(c));
    }
    // relabel: class of 0 is 0, others by least member order (already the
    // discovery order since we scan x ascending and label by first hit)
    int q = static_cast<int>(cosets.size());
    std::vector<int> flat(q * q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            flat[i * q + j] = cls[X.mul(cosets[i][0], cosets[j][0])];
    CayleyLoop Q = validate_loop(q, std::move(flat));
    LoopHom pi{&X, nullptr, cls};
    return {std::move(Q), std::move(pi)};
}

SubloopSet center(const CayleyLoop& X) {
    std::vector<int> z;
    for (int a = 0; a < X.n; ++a) {
        bool central = true;
        for (int x = 0; x < X.n && central; ++x)
            for (int y = 0; y < X.n; ++y) {
                int xy = X.mul(x, y);
                if (X.mul(a, xy) != X.mul(x, X.mul(a, y)) ||
                    X.mul(a, xy) != X.mul(X.mul(x, a), y) ||
                    X.mul(a, xy) != X.mul(x, X.mul(y, a))) {
                    central = false;
                    break;
                }
            }
        if (central) z.push_back(a);
    }
    return SubloopSet{&X, std::move(z)};
}

CayleyLoop subloop_table(const CayleyLoop& X, const SubloopSet& Y) {
    int m = Y.size();
    std::vector<int> idx(X.n, -1);
    for (int i = 0; i < m; ++i) idx[Y.members[i]] = i;
    std::vector<int> flat(m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int v = idx[X.mul(Y.members[i], Y.members[j])];
            if (v < 0) throw NotSubloop();
            flat[i * m + j] = v;
        }
    return validate_loop(m, std::move(flat));
}

namespace {
struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[b] = a;
        return true;
    }
};
}  // namespace

SubloopSet normal_closure_loop(const CayleyLoop& X, const std::vector<int>& xs) {
    // congruence generated by {(0,x)}: close a~b => aoc ~ boc, coa ~ cob.
    UnionFind uf(X.n);
    std::vector<std::pair<int, int>> queue;
    for (int x : xs)
        if (uf.unite(0, x)) queue.emplace_back(0, x);
    while (!queue.empty()) {
        auto [a, b] = queue.back();
        queue.pop_back();
        for (int c = 0; c < X.n; ++c) {
            if (uf.unite(X.mul(a, c), X.mul(b, c)))
                queue.emplace_back(X.mul(a, c), X.mul(b, c));
            if (uf.unite(X.mul(c, a), X.mul(c, b)))
                queue.emplace_back(X.mul(c, a), X.mul(c, b));
        }
    }
    std::vector<int> members;
    int root = uf.find(0);
    for (int v = 0; v < X.n; ++v)
        if (uf.find(v) == root) members.push_back(v);
    return SubloopSet{&X, std::move(members)};
}

SubloopSet normal_closure_loop(const CayleyLoop& X, int x) {
    return normal_closure_loop(X, std::vector<int>{x});
}

std::vector<std::vector<int>> all_subloops(const CayleyLoop& X) {
    std::vector<std::vector<int>> known{{0}};
    std::vector<std::vector<int>> frontier = known;
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& S : frontier)
            for (int g = 1; g < X.n; ++g) {
                if (std::binary_search(S.begin(), S.end(), g)) continue;
                std::vector<int> gens = S;
                gens.push_back(g);
                auto T = subloop_generated(X, gens).members;
                if (std::find(known.begin(), known.end(), T) == known.end()) {
                    known.push_back(T);
                    next.push_back(T);
                }
            }
        frontier = std::move(next);
    }
    std::sort(known.begin(), known.end(),
              [](const auto& a, const auto& b) {
                  return std::tuple(a.size(), a) < std::tuple(b.size(), b);
              });
    return known;
}

// ---- isomorphism ----

namespace {
// Per-element fingerprint preserved by identity-fixing isomorphisms.
std::vector<std::vector<int>> element_invariants(const CayleyLoop& X) {
    std::vector<std::vector<int>> inv(X.n);
    for (int x = 0; x < X.n; ++x) {
        auto r = cycle_type(right_translation(X, x));
        auto l = cycle_type(left_translation(X, x));
        inv[x] = r;
        inv[x].push_back(-1);
        inv[x].insert(inv[x].end(), l.begin(), l.end());
        inv[x].push_back(element_order(X, x));
    }
    return inv;
}

struct IsoSearch {
    const CayleyLoop& A;
    const CayleyLoop& B;
    std::vector<std::vector<int>> invA, invB;
    std::vector<int> map, rmap;

    bool propagate(std::vector<int>& trail, int a0, int b0) {
        std::vector<std::pair<int, int>> queue{{a0, b0}};
        auto assign = [&](int a, int b) -> bool {
            if (map[a] >= 0) return map[a] == b;
            if (rmap[b] >= 0) return false;
            if (invA[a] != invB[b]) return false;
            map[a] = b;
            rmap[b] = a;
            trail.push_back(a);
            queue.emplace_back(a, b);
            return true;
        };
        if (!assign(a0, b0)) return false;
        while (!queue.empty()) {
            auto [a, b] = queue.back();
            queue.pop_back();
            for (int c = 0; c < A.n; ++c) {
                if (map[c] < 0) continue;
                if (!assign(A.mul(a, c), B.mul(b, map[c]))) return false;
                if (!assign(A.mul(c, a), B.mul(map[c], b))) return false;
            }
        }
        return true;
    }

    bool search() {
        int a = -1;
        for (int i = 0; i < A.n; ++i)
            if (map[i] < 0) {
                a = i;
                break;
            }
        if (a < 0) return true;  // total map; hom by construction of propagation
        for (int b = 0; b < B.n; ++b) {
            if (rmap[b] >= 0 || invA[a] != invB[b]) continue;
            std::vector<int> trail;
            if (propagate(trail, a, b) && search()) return true;
            for (int t : trail) {
                rmap[map[t]] = -1;
                map[t] = -1;
            }
        }
        return false;
    }
};
}  // namespace

std::optional<LoopHom> loops_isomorphic(const CayleyLoop& X1, const CayleyLoop& X2,
                                        const std::vector<int>* colors1,
                                        const std::vector<int>* colors2) {
    if (X1.n != X2.n) return std::nullopt;
    IsoSearch s{X1, X2, element_invariants(X1), element_invariants(X2),
                std::vector<int>(X1.n, -1), std::vector<int>(X1.n, -1)};
    if (colors1) {
        for (int i = 0; i < X1.n; ++i) {
            s.invA[i].push_back((*colors1)[i]);
            s.invB[i].push_back((*colors2)[i]);
        }
    }
    {
        auto a = s.invA, b = s.invB;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    std::vector<int> trail;
    if (!s.propagate(trail, 0, 0)) return std::nullopt;
    if (!s.search()) return std::nullopt;
    LoopHom h{&X1, &X2, s.map};
    return h;
}

CayleyLoop canonical_form(const CayleyLoop& X) {
    if (X.n > 9) throw Error("canonical_form: order too large for relabeling scan");
    int n = X.n;
    std::vector<int> sigma(n);  // relabeling, sigma[0]=0
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<int> best = X.table;
    std::vector<int> inv(n), cand(n * n);
    do {
        for (int i = 0; i < n; ++i) inv[sigma[i]] = i;
        // build relabeled table row by row, abort as soon as it exceeds best
        bool better = false, worse = false;
        for (int i = 0; i < n && !worse; ++i)
            for (int j = 0; j < n; ++j) {
                int v = sigma[X.mul(inv[i], inv[j])];
                cand[i * n + j] = v;
                if (!better) {
                    if (v > best[i * n + j]) {
                        worse = true;
                        break;
                    }
                    if (v < best[i * n + j]) better = true;
                }
            }
        if (better && !worse) best = cand;
    } while (std::next_permutation(sigma.begin() + 1, sigma.end()));
    return CayleyLoop{n, std::move(best)};
}

bool is_loop_hom(const LoopHom& h) {
    const CayleyLoop& S = *h.source;
    const CayleyLoop& T = *h.target;
    if (h.map[0] != 0) return false;
    for (int a = 0; a < S.n; ++a)
        for (int b = 0; b < S.n; ++b)
            if (h.map[S.mul(a, b)] != T.mul(h.map[a], h.map[b])) return false;
    return true;
}

CayleyLoop direct_product(const CayleyLoop& A, const CayleyLoop& B) {
    int n = A.n * B.n;
    std::vector<int> flat(n * n);
    for (int a1 = 0; a1 < A.n; ++a1)
        for (int b1 = 0; b1 < B.n; ++b1)
            for (int a2 = 0; a2 < A.n; ++a2)
                for (int b2 = 0; b2 < B.n; ++b2) {
                    int i = a1 * B.n + b1, j = a2 * B.n + b2;
                    flat[i * n + j] = A.mul(a1, a2) * B.n + B.mul(b1, b2);
                }
    return validate_loop(n, std::move(flat));
}

// ---- IO ----

CayleyLoop read_loop(std::istream& in) {
    std::string line;
    std::vector<int> nums;
    int n = -1;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream is(line);
        int v;
        while (is >> v) {
            if (n < 0) {
                n = v;
                if (n <= 0) throw ParseError("bad order");
            } else {
                nums.push_back(v);
            }
        }
        if (n > 0 && static_cast<int>(nums.size()) >= n * n) break;
    }
    if (n < 0) throw ParseError("empty loop file");
    if (static_cast<int>(nums.size()) != n * n)
        throw ParseError("expected " + std::to_string(n * n) + " entries");
    return validate_loop(n, std::move(nums));
}

CayleyLoop read_loop_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoFailure("cannot open " + path);
    return read_loop(f);
}

std::string write_loop(const CayleyLoop& X) {
    std::ostringstream os;
    os << X.n << '\n';
    for (int i = 0; i < X.n; ++i) {
        for (int j = 0; j < X.n; ++j) {
            if (j) os << ' ';
            os << X.mul(i, j);
        }
        os << '\n';
    }
    return os.str();
}

void write_loop_file(const CayleyLoop& X, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoFailure("cannot open " + path);
    f << write_loop(X);
    if (!f) throw IoFailure("write failed: " + path);
}

std::string loop_content_hash(const CayleyLoop& X) {
    std::string s = write_loop(X);
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

}  // namespace loopforge
