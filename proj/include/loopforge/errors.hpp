#pragma once

#include <stdexcept>
#include <string>

namespace loopforge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotLatinSquare : Error {
    int line;       // row or column index
    bool row;       // true: duplicate in a row, false: in a column
    int duplicate;  // the repeated value
    NotLatinSquare(int line_, bool row_, int dup)
        : Error((row_ ? "row " : "column ") + std::to_string(line_) +
                " repeats value " + std::to_string(dup)),
          line(line_), row(row_), duplicate(dup) {}
};

struct NoIdentity : Error {
    int a, b;  // first product violating identity-at-0
    NoIdentity(int a_, int b_)
        : Error("element 0 is not a two-sided identity at product (" +
                std::to_string(a_) + "," + std::to_string(b_) + ")"),
          a(a_), b(b_) {}
};

struct InversesUndefined : Error {
    int element;
    explicit InversesUndefined(int x)
        : Error("element " + std::to_string(x) + " has no two-sided inverse"),
          element(x) {}
};

struct NotBol : Error {
    NotBol() : Error("loop is not a Bol loop") {}
};
struct NotBruck : Error {
    NotBruck() : Error("loop is not a Bruck loop") {}
};
struct NotSubloop : Error {
    NotSubloop() : Error("set is not a subloop") {}
};
struct NotNormal : Error {
    NotNormal() : Error("subloop/subgroup/subfolder is not normal") {}
};
struct NotSubgroup : Error {
    NotSubgroup() : Error("set is not a subgroup") {}
};
struct NotSubfolder : Error {
    NotSubfolder() : Error("triple is not a subfolder") {}
};
struct NotTransversal : Error {
    int g;
    NotTransversal(int g_, const std::string& what_)
        : Error("K is not a transversal of H^g for g=" + std::to_string(g_) +
                ": " + what_),
          g(g_) {}
};
struct CapExceeded : Error {
    long long order, cap;
    CapExceeded(long long order_, long long cap_)
        : Error("group order " + std::to_string(order_) + " exceeds cap " +
                std::to_string(cap_)),
          order(order_), cap(cap_) {}
};
struct AmbiguousRepresentative : Error {
    AmbiguousRepresentative()
        : Error("coset meets K in more than one representative") {}
};
struct ExtensionInconsistent : Error {
    ExtensionInconsistent()
        : Error("tau does not extend to an automorphism of G") {}
};
struct EvenOrder : Error {
    EvenOrder() : Error("group order must be odd") {}
};
struct NotInvolutory : Error {
    NotInvolutory() : Error("automorphism is not involutory") {}
};
struct BoundExceeded : Error {
    BoundExceeded(int n, int bound)
        : Error("order " + std::to_string(n) + " exceeds enumeration bound " +
                std::to_string(bound)) {}
};
struct IoFailure : Error {
    using Error::Error;
};
struct ManifestMismatch : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

}  // namespace loopforge
