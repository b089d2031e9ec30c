#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopforge/folder.hpp"

namespace loopforge {

// The inverting involutory automorphism of a folder's group.
struct TauAut {
    const FiniteGroup* carrier = nullptr;
    std::vector<int> image;

    int operator()(int g) const { return image[g]; }
};

// G+ = G<tau>, with G embedded as (g,0) = g and tau-coset as m+g.
struct ExtendedGroup {
    FiniteGroup plus;          // order 2|G|
    int tau;                   // index of the coset element tau
    ElementSet lambda;         // tau*K
    std::vector<int> embed_g;  // identity embedding: g -> g
};

// K a twisted subgroup: 1 in K and x y^-1 x in K for x, y in K.
bool is_twisted_subgroup(const FiniteGroup& G, const ElementSet& K);

// Word propagation of k -> k^-1 over D = <K>; empty optional when the
// propagation is inconsistent or the result is not an involutory
// automorphism (i.e. the K-radical is nontrivial).
std::optional<TauAut> tau_construct(const FiniteGroup& D, const ElementSet& K);

// Smallest normal subgroup N of D = <K> whose quotient admits tau, by
// iterated closure of propagation conflicts.  {0} iff tau exists directly.
ElementSet k_radical(const FiniteGroup& D, const ElementSet& K);
// Folder radical: additionally forces tau to fix H n <K> pointwise.  The
// plain version is too weak on some Bol A_r folders (order-8 examples admit
// a K-inverting tau that moves H while the loop lacks AIP).
ElementSet k_radical(const LoopFolder& f);

// Bruck folder: Bol folder + trivial K-radical + H acts on K by conjugation.
bool is_bol_folder(const LoopFolder& f);
bool h_acts_on_k(const LoopFolder& f);
bool is_bruck_folder(const LoopFolder& f);

// tau extended to all of G via h k -> h k^tau, then the semidirect product.
// Throws ExtensionInconsistent.
std::vector<int> extend_tau_to_group(const LoopFolder& f, const TauAut& tau_d);
ExtendedGroup extend_group(const LoopFolder& f, const TauAut& tau_d);

// K(t) = {g : g^t = g^-1} for an automorphism t.
ElementSet k_of_tau(const FiniteGroup& G, const std::vector<int>& t);

// xi_U = (N_G(U), N_H(U), C_K(U)) for U a subset of H.
SubfolderRef fixed_subfolder(const LoopFolder& f, const ElementSet& U);

// Fix_X(U) for U a set of permutations from the envelope's H.
SubloopSet fixed_points_loop(const CayleyLoop& X, const std::vector<Perm>& U);

// xi_tau = (C_G(tau), H, C_K(tau)).
SubfolderRef tau_fixed_subfolder(const LoopFolder& f, const std::vector<int>& tau_g);

// Reports for the 2-loop / odd-loop / 2-element equivalences: each condition is
// evaluated independently; `consistent` says they all agree.
struct CriteriaReport {
    std::vector<std::pair<std::string, bool>> conditions;
    bool consistent = false;
    bool all_true() const;
};

CriteriaReport two_loop_criteria(const LoopFolder& f, const TauAut& tau_d);
CriteriaReport odd_loop_criteria(const LoopFolder& f);
CriteriaReport two_element_criterion(const LoopFolder& f, const TauAut& tau_d);

// mu = (L, C_L(t), K_L(t)) for |L| odd, t an involutory automorphism.
// Throws EvenOrder / NotInvolutory.
LoopFolder glauberman_folder(const FiniteGroup& L, const std::vector<int>& t);

// Square-root model on K_L(t): x o y = (x y^2 x)^(1/2).
CayleyLoop glauberman_square_root_loop(const FiniteGroup& L, const std::vector<int>& t);

// Baer-style correspondences for an odd-order Bruck envelope.
struct BaerReport {
    bool lambda_is_tau_class = false;  // Lambda = tau^G
    bool h_is_centralizer = false;     // H = C_G(tau)
    bool k_is_k_tau = false;           // K = K(tau)
    int tau_invariant_subgroups = 0;
    int subfolders = 0;
    bool phi_bijection = false;       // J -> (J, C_J(tau), K_J(tau))
    bool normal_correspondence = false;
    int subloops = 0;
    int commutator_subgroups = 0;     // {L : L = [L, tau]}
    bool psi_bijection = false;       // Y -> <kappa(Y)>
    bool all_pass() const;
};

BaerReport baer_bijection(const LoopFolder& f);  // throws EvenOrder

// D(G) = <K>, with normality in G reported.
std::pair<ElementSet, bool> d_of(const LoopFolder& f);

std::string tau_to_json(const TauAut& t, const std::string& carrier_hash);
std::vector<int> tau_image_from_json(const std::string& text);

}  // namespace loopforge
