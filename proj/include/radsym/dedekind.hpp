#pragma once

// Classical arithmetic on SL2(Z): the sawtooth function, Dedekind sums,
// the Dedekind symbol Phi and Rademacher symbol Psi, and the cocycle and
// elliptic-recursion identities that every generalized symbol satisfies.

#include "radsym/group_element.hpp"
#include "radsym/modgroup.hpp"
#include "radsym/types.hpp"

namespace radsym {

/// ((x)) = x - floor(x) - 1/2 for non-integers, 0 on integers.
Rat sawtooth(const Rat& x);

/// s(a, c) by reciprocity descent; requires c >= 1 and gcd(a, c) = 1.
Rat dedekind_sum(const Int& a, const Int& c);
/// Sum over k = 1..c-1 of ((k/c))((ak/c)); O(c), kept as a reference.
Rat dedekind_sum_direct(const Int& a, const Int& c);

/// Phi(g) = b/d if c = 0, (a+d)/c - 12 sign(c) s(a, |c|) otherwise. Integer valued.
Rat phi_classical(const GroupElement& g);
/// Psi(g) = Phi(g) - 3 sign(c(a+d)).
Rat psi_classical(const GroupElement& g);

/// pi / vol(G \ H) = 3 / [PSL2(Z) : G] (generalized index for Gamma0(N)+).
Rat pi_over_volume(const GroupId& G);

/// Lower-left entry of A^-1 g A; only its sign enters the symbol formulas.
Int frame_c(const GroupElement& A, const GroupElement& g);

/// Phi(g1 g2) - Phi(g1) - Phi(g2) + lambda sign(c1 c2 c3), entries read in the
/// frame of the base A of the scaling map. Zero for a consistent symbol.
Rat cocycle_defect(const Rat& lambda, const GroupElement& A, const GroupElement& g1, const GroupElement& g2,
                   const Rat& phi1, const Rat& phi2, const Rat& phi12);
/// Same, with lambda and the frame taken from the group and cusp.
Rat cocycle_defect(const GroupId& G, const Cusp& cusp, const GroupElement& g1, const GroupElement& g2,
                   const Rat& phi1, const Rat& phi2, const Rat& phi12);

/// Phi of an elliptic g of order m from 0 = Phi(g^m):
/// Phi(g) = (lambda/m) * sum_{k=1}^{m-1} sign(c_g c_{g^k} c_{g^{k+1}}), entries in the frame A.
Rat elliptic_phi(const Rat& lambda, const GroupElement& A, const GroupElement& g);

}  // namespace radsym
