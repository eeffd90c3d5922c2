#include "furstenberg/flag_boundary.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "furstenberg/errors.hpp"

namespace furstenberg {

namespace {

void check_size(const GroupContext& ctx, const Matrix& m, const char* what) {
  if (m.rows() != ctx.n() || m.cols() != ctx.n()) {
    throw Error(ErrorKind::BadDimension, std::string(what) + ": matrix size does not match context");
  }
}

Matrix solve(const Matrix& a, const Matrix& b) { return a.partialPivLu().solve(b); }

std::string perm_string(const std::vector<int>& perm) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < perm.size(); ++i) out << (i ? "," : "") << perm[i] + 1;
  out << ']';
  return out.str();
}

}  // namespace

Flag flag_of(const GroupContext& ctx, const Matrix& g) {
  check_size(ctx, g, "flag_of");
  triangular_unitary_split(g, ctx.tol().cond_max);
  return Flag(g);
}

Flag base_flag(const GroupContext& ctx) { return Flag(Matrix::Identity(ctx.n(), ctx.n())); }

Flag weyl_flag(const GroupContext& /*ctx*/, const WeylElement& w) { return Flag(w.rep); }

bool same_flag(const GroupContext& ctx, const Flag& x, const Flag& y) {
  const Matrix h = solve(x.rep(), y.rep());
  const double scale = h.cwiseAbs().maxCoeff();
  const Matrix lower = h.triangularView<Eigen::StrictlyLower>();
  return lower.cwiseAbs().maxCoeff() <= ctx.tol().eq_rel * scale;
}

bool same_flat(const GroupContext& ctx, const FlatRep& f, const FlatRep& h) {
  const Matrix m = solve(f.g(), h.g());
  const double cutoff = ctx.tol().eq_rel * m.cwiseAbs().maxCoeff();
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index row_count = 0;
    Eigen::Index col_count = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(m(i, j)) > cutoff) ++row_count;
      if (std::abs(m(j, i)) > cutoff) ++col_count;
    }
    if (row_count != 1 || col_count != 1) return false;
  }
  return true;
}

Oppositeness is_opposite(const GroupContext& ctx, const Flag& x, const Flag& y) {
  check_size(ctx, x.rep(), "is_opposite");
  check_size(ctx, y.rep(), "is_opposite");
  const Matrix twisted = ctx.w0().rep.adjoint() * solve(x.rep(), y.rep());
  const double margin = lu_pivot_margin(twisted, ctx.tol().pivot_rel);
  return {margin > ctx.tol().pivot_rel, margin};
}

Flag chi(const GroupContext& ctx, const UnipotentElement& n) {
  check_size(ctx, n.matrix(), "chi");
  return Flag(n.matrix() * ctx.w0().rep);
}

UnipotentElement chi_inverse(const GroupContext& ctx, const Flag& y) {
  check_size(ctx, y.rep(), "chi_inverse");
  const Matrix& w0 = ctx.w0().rep;
  try {
    const LuFactors lu = lu_unit_lower(w0.adjoint() * y.rep(), ctx.tol().pivot_rel);
    return UnipotentElement(w0 * lu.lower * w0.adjoint(), ctx.tol().eq_rel);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PivotBreakdown) throw;
    throw Error(ErrorKind::NotOpposite, "chi_inverse: flag is not opposite to the base flag",
                e.margin());
  }
}

UnipotentElement iota(const GroupContext& ctx, const Matrix& h, const UnipotentElement& n) {
  check_size(ctx, h, "iota");
  return chi_inverse(ctx, Flag(h * n.matrix() * ctx.w0().rep));
}

FlatRep flat_from_pair(const GroupContext& ctx, const Flag& x, const Flag& y) {
  const Oppositeness opp = is_opposite(ctx, x, y);
  if (!opp.opposite) {
    throw Error(ErrorKind::NotOpposite, "flat_from_pair: flags are not opposite", opp.margin);
  }
  // Replace x.rep by the unitary factor of its QR (same coset), scaled in the
  // first column so that it has determinant one.
  Eigen::HouseholderQR<Matrix> qr(x.rep());
  Matrix k = qr.householderQ();
  const Complex det = k.determinant();
  k.col(0) /= det;
  const UnipotentElement n = chi_inverse(ctx, Flag(k.adjoint() * y.rep()));
  return FlatRep(k * n.matrix());
}

std::vector<Flag> flat_boundary(const GroupContext& ctx, const FlatRep& flat) {
  check_size(ctx, flat.g(), "flat_boundary");
  std::vector<Flag> out;
  out.reserve(ctx.weyl().size());
  for (const WeylElement& w : ctx.weyl()) out.emplace_back(flat.g() * w.rep);
  return out;
}

std::string to_string(GenericityMode mode) {
  switch (mode) {
    case GenericityMode::Triple: return "triple";
    case GenericityMode::Tuple: return "tuple";
    case GenericityMode::PairwiseOpposite: return "pairwise";
    case GenericityMode::NOpp: return "nopp";
    case GenericityMode::W0Opp: return "w0opp";
  }
  return "unknown";
}

GenericityMode genericity_mode_from_string(const std::string& name) {
  if (name == "triple") return GenericityMode::Triple;
  if (name == "tuple") return GenericityMode::Tuple;
  if (name == "pairwise" || name == "pairwise-opposite") return GenericityMode::PairwiseOpposite;
  if (name == "nopp" || name == "n-opp") return GenericityMode::NOpp;
  if (name == "w0opp" || name == "w0-opp") return GenericityMode::W0Opp;
  throw Error(ErrorKind::InvalidArgument, "unknown genericity mode '" + name + "'");
}

namespace {

void require_arity(std::span<const Flag> flags, bool exact_three) {
  if (exact_three ? flags.size() != 3 : flags.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "genericity_check: wrong number of flags");
  }
}

GenericityReport fail(double margin, std::string what) { return {false, margin, std::move(what)}; }

GenericityReport check_triple(const GroupContext& ctx, const Flag& x, const Flag& y, const Flag& z) {
  const Oppositeness base = is_opposite(ctx, x, y);
  if (!base.opposite) return fail(base.margin, "x and y are not opposite");
  double margin = base.margin;
  const FlatRep flat = flat_from_pair(ctx, x, y);
  const std::vector<Flag> boundary = flat_boundary(ctx, flat);
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const Oppositeness o = is_opposite(ctx, boundary[i], z);
    margin = std::min(margin, o.margin);
    if (!o.opposite) {
      return fail(margin, "z is not opposite to the boundary chamber w=" +
                              perm_string(ctx.weyl()[i].perm));
    }
  }
  return {true, margin, {}};
}

// Coordinates of z after (x, y) is moved to (P, w0 P); checks membership in
// N_w for the requested Weyl elements.
GenericityReport check_chart(const GroupContext& ctx, std::span<const Flag> flags, bool all_w) {
  const FlatRep flat = flat_from_pair(ctx, flags[0], flags[1]);
  const Flag moved(solve(flat.g(), flags[2].rep()));
  const Oppositeness to_base = is_opposite(ctx, base_flag(ctx), moved);
  if (!to_base.opposite) return fail(to_base.margin, "z is not opposite to x");
  double margin = to_base.margin;
  const Flag image = chi(ctx, chi_inverse(ctx, moved));
  for (std::size_t i = 0; i < ctx.weyl().size(); ++i) {
    if (!all_w && i != ctx.w0_index()) continue;
    const Oppositeness o = is_opposite(ctx, weyl_flag(ctx, ctx.weyl()[i]), image);
    margin = std::min(margin, o.margin);
    if (!o.opposite) {
      return fail(margin, "coordinate of z is outside N_w for w=" + perm_string(ctx.weyl()[i].perm));
    }
  }
  return {true, margin, {}};
}

}  // namespace

GenericityReport genericity_check(const GroupContext& ctx, GenericityMode mode,
                                  std::span<const Flag> flags) {
  switch (mode) {
    case GenericityMode::Triple:
      require_arity(flags, true);
      return check_triple(ctx, flags[0], flags[1], flags[2]);
    case GenericityMode::Tuple: {
      if (flags.size() < 3) {
        throw Error(ErrorKind::InvalidArgument, "genericity_check: tuple mode needs q >= 3");
      }
      double margin = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < flags.size(); ++i) {
        for (std::size_t j = 0; j < flags.size(); ++j) {
          for (std::size_t k = 0; k < flags.size(); ++k) {
            if (i == j || j == k || i == k) continue;
            GenericityReport r = check_triple(ctx, flags[i], flags[j], flags[k]);
            margin = std::min(margin, r.margin);
            if (!r.generic) {
              std::ostringstream what;
              what << "triple (" << i + 1 << "," << j + 1 << "," << k + 1 << "): " << r.failed;
              return fail(margin, what.str());
            }
          }
        }
      }
      return {true, margin, {}};
    }
    case GenericityMode::PairwiseOpposite: {
      require_arity(flags, false);
      double margin = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < flags.size(); ++i) {
        for (std::size_t j = i + 1; j < flags.size(); ++j) {
          const Oppositeness o = is_opposite(ctx, flags[i], flags[j]);
          margin = std::min(margin, o.margin);
          if (!o.opposite) {
            std::ostringstream what;
            what << "flags " << i + 1 << " and " << j + 1 << " are not opposite";
            return fail(margin, what.str());
          }
        }
      }
      return {true, margin, {}};
    }
    case GenericityMode::NOpp:
      require_arity(flags, true);
      return check_chart(ctx, flags, true);
    case GenericityMode::W0Opp:
      require_arity(flags, true);
      return check_chart(ctx, flags, false);
  }
  throw Error(ErrorKind::InvalidArgument, "genericity_check: unknown mode");
}

}  // namespace furstenberg
