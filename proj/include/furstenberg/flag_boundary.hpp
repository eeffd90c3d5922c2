#pragma once

// Points of G/P as full flags (invertible matrices modulo upper triangular
// ones), oppositeness, the chart n -> n w0 P, the twisted action iota and
// maximal flats spanned by opposite pairs.

#include <span>
#include <string>
#include <vector>

#include "furstenberg/lie_context.hpp"

namespace furstenberg {

/// A flag is stored by any representative; equality is coset equality.
class Flag {
 public:
  explicit Flag(Matrix rep) : rep_(std::move(rep)) {}
  const Matrix& rep() const noexcept { return rep_; }

 private:
  Matrix rep_;
};

/// A maximal flat g F_A, stored by a determinant-one representative g.
class FlatRep {
 public:
  explicit FlatRep(Matrix g) : g_(std::move(g)) {}
  const Matrix& g() const noexcept { return g_; }

 private:
  Matrix g_;
};

struct Oppositeness {
  bool opposite = false;
  /// Smallest relative pivot of the twisted no-pivot LU.
  double margin = 0.0;
};

/// Throws NumericallySingular when g is not safely invertible.
Flag flag_of(const GroupContext& ctx, const Matrix& g);

/// Base flag P.
Flag base_flag(const GroupContext& ctx);

/// w.rep * P for the Weyl element w.
Flag weyl_flag(const GroupContext& ctx, const WeylElement& w);

bool same_flag(const GroupContext& ctx, const Flag& x, const Flag& y);

bool same_flat(const GroupContext& ctx, const FlatRep& f, const FlatRep& h);

Oppositeness is_opposite(const GroupContext& ctx, const Flag& x, const Flag& y);

/// n -> n w0 P.
Flag chi(const GroupContext& ctx, const UnipotentElement& n);

/// The unique n with chi(n) = y; throws NotOpposite when y is not opposite P.
UnipotentElement chi_inverse(const GroupContext& ctx, const Flag& y);

/// chi^{-1}(h n w0 P); throws NotOpposite when the image leaves Opp_P.
UnipotentElement iota(const GroupContext& ctx, const Matrix& h, const UnipotentElement& n);

/// g in SL(n) with g P = x and g w0 P = y. Throws NotOpposite.
FlatRep flat_from_pair(const GroupContext& ctx, const Flag& x, const Flag& y);

/// The |W| flags g w P, in the context's Weyl order.
std::vector<Flag> flat_boundary(const GroupContext& ctx, const FlatRep& flat);

enum class GenericityMode {
  Triple,             // (x, y, z): x, y opposite and z opposite all of d F_{x,y}
  Tuple,              // every ordered distinct sub-triple passes Triple
  PairwiseOpposite,   // every pair opposite
  NOpp,               // chi^{-1}(g^{-1} z) in N_opp after moving (x, y) to (P, w0 P)
  W0Opp,              // the same coordinate in N_{w0}
};

std::string to_string(GenericityMode mode);
GenericityMode genericity_mode_from_string(const std::string& name);

struct GenericityReport {
  bool generic = false;
  /// Smallest oppositeness margin encountered.
  double margin = 0.0;
  /// Description of the first failing predicate, empty when generic.
  std::string failed;
};

/// Throws NotOpposite for NOpp / W0Opp when the base pair is not opposite,
/// InvalidArgument on an arity mismatch.
GenericityReport genericity_check(const GroupContext& ctx, GenericityMode mode,
                                  std::span<const Flag> flags);

}  // namespace furstenberg
