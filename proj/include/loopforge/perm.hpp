#pragma once

#include <string>
#include <vector>

namespace loopforge {

// Permutation of 0..n-1 stored as its image array.
// Products compose left to right: (p*q)(x) = q(p(x)), matching the
// convention that translations act on the right.
struct Perm {
    std::vector<int> image;

    Perm() = default;
    explicit Perm(std::vector<int> img) : image(std::move(img)) {}
    static Perm identity(int n);

    int degree() const { return static_cast<int>(image.size()); }
    int operator()(int x) const { return image[x]; }
    bool is_identity() const;
    bool is_bijection() const;

    Perm inverse() const;

    bool operator==(const Perm&) const = default;
    auto operator<=>(const Perm&) const = default;
};

Perm compose(const Perm& p, const Perm& q);  // apply p, then q

// Cycle lengths in decreasing order; an isomorphism-invariant fingerprint.
std::vector<int> cycle_type(const Perm& p);

int perm_order(const Perm& p);

// One-line text form "p: 1 2 0" and its parser.
std::string perm_to_string(const Perm& p);
Perm perm_from_string(const std::string& line);

}  // namespace loopforge
