#pragma once

// The w-projections psi_w : N_w -> A, their Weyl average Psi (MA-equivariant),
// the -1/2 power of psi_{w0} when w0 acts as -1, and the TA-equivariant
// average Psi~. Also the SL(3, C) closed forms used as an exact oracle.

#include <string>
#include <variant>

#include "furstenberg/flag_boundary.hpp"

namespace furstenberg {

/// psi_w(n) = pi_A(w0^{-1} n^{-1} w^{-1} iota_w(n) w0).
/// Throws NotOpposite when n is outside N_w.
TorusElement psi_w(const GroupContext& ctx, const WeylElement& w, const UnipotentElement& n);

/// Psi(n) = (prod_w w0 psi_w(n) w0^{-1})^{1/|W|}. Throws NotGeneric.
TorusElement psi_general(const GroupContext& ctx, const UnipotentElement& n);

/// Psi(n) = psi_{w0}(n)^{-1/2}; only when w0 acts as -1 on the torus.
/// Throws WrongGroupType otherwise, NotOpposite outside N_{w0}.
TorusElement psi_minus_one(const GroupContext& ctx, const UnipotentElement& n);

/// Psi~(n) = (prod_w w^{-1} Psi(iota_w(n)) w)^{1/|W|}. Throws NotGeneric.
TorusElement psi_tilde(const GroupContext& ctx, const UnipotentElement& n);

// ------------------------------------------------------------ SL(3) oracle

/// Strictly upper entries of a 3x3 unipotent: x = (1,2), y = (2,3), z = (1,3).
struct Sl3Coords {
  Complex x;
  Complex y;
  Complex z;
};

UnipotentElement to_unipotent(const Sl3Coords& c);
Sl3Coords to_sl3_coords(const UnipotentElement& n);

enum class Sl3Kind {
  IotaS, IotaT, IotaSt, IotaTs, IotaW0,
  PsiS, PsiT, PsiSt, PsiTs, PsiW0,
  Psi, PsiPrime, PsiTilde, PsiTildePrime,
};

std::string to_string(Sl3Kind kind);
Sl3Kind sl3_kind_from_string(const std::string& name);

/// The representatives s, t, st = s*t, ts = t*s, w0 = s*t*s written out for
/// SL(3) in the closed-form tables (identity for any other kind).
Matrix sl3_table_representative(Sl3Kind kind);

/// Permutation (0-based image list) of the Weyl element behind a table kind.
std::vector<int> sl3_table_permutation(Sl3Kind kind);

using Sl3Value = std::variant<Sl3Coords, TorusElement>;

/// Closed forms for SL(3, C). iota kinds return coordinates; psi kinds return
/// psi_w itself (the tabulated w0 psi_w w0^{-1} read backwards); Psi kinds
/// return the torus element. Throws FormulaDomain when a denominator among
/// x, y, z, xy - z vanishes (|.| <= tol relative to the coordinate scale).
Sl3Value sl3_reference(Sl3Kind kind, const Sl3Coords& c, double tol = 1e-12);

/// Names of the factors among "x", "y", "z", "xy-z" that vanish within tol.
std::vector<std::string> sl3_vanishing_factors(const Sl3Coords& c, double tol = 1e-9);

}  // namespace furstenberg
