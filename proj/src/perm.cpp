#include "loopforge/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "loopforge/errors.hpp"

namespace loopforge {

Perm Perm::identity(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    return Perm(std::move(img));
}

bool Perm::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (image[i] != i) return false;
    return true;
}

bool Perm::is_bijection() const {
    std::vector<char> seen(image.size(), 0);
    for (int v : image) {
        if (v < 0 || v >= degree() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

Perm Perm::inverse() const {
    std::vector<int> inv(image.size());
    for (int i = 0; i < degree(); ++i) inv[image[i]] = i;
    return Perm(std::move(inv));
}

Perm compose(const Perm& p, const Perm& q) {
    std::vector<int> img(p.image.size());
    for (int i = 0; i < p.degree(); ++i) img[i] = q.image[p.image[i]];
    return Perm(std::move(img));
}

std::vector<int> cycle_type(const Perm& p) {
    std::vector<char> seen(p.image.size(), 0);
    std::vector<int> type;
    for (int i = 0; i < p.degree(); ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
            seen[j] = 1;
            j = p.image[j];
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

int perm_order(const Perm& p) {
    long long ord = 1;
    for (int len : cycle_type(p)) ord = std::lcm(ord, (long long)len);
    return static_cast<int>(ord);
}

std::string perm_to_string(const Perm& p) {
    std::ostringstream os;
    os << "p:";
    for (int v : p.image) os << ' ' << v;
    return os.str();
}

Perm perm_from_string(const std::string& line) {
    std::istringstream is(line);
    std::string tag;
    is >> tag;
    if (tag != "p:") throw ParseError("perm_from_string: missing 'p:' tag");
    std::vector<int> img;
    int v;
    while (is >> v) img.push_back(v);
    Perm p(std::move(img));
    if (!p.is_bijection()) throw ParseError("perm_from_string: not a bijection");
    return p;
}

}  // namespace loopforge
