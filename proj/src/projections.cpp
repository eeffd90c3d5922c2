#include "furstenberg/projections.hpp"

#include <sstream>

#include "furstenberg/errors.hpp"

namespace furstenberg {

namespace {

std::string describe_failure(const GroupContext& ctx, const WeylElement& w,
                             const UnipotentElement& n, std::string* witness) {
  std::ostringstream msg;
  msg << "w=[";
  for (std::size_t i = 0; i < w.perm.size(); ++i) msg << (i ? "," : "") << w.perm[i] + 1;
  msg << "]";
  std::string weyl = msg.str();
  if (ctx.n() == 3) {
    const std::vector<std::string> factors =
        sl3_vanishing_factors(to_sl3_coords(n), std::max(ctx.tol().pivot_rel, 1e-9));
    std::string joined;
    for (const std::string& f : factors) joined += (joined.empty() ? "" : ",") + f;
    *witness = joined.empty() ? weyl : joined;
  } else {
    *witness = weyl;
  }
  return weyl;
}

}  // namespace

TorusElement psi_w(const GroupContext& ctx, const WeylElement& w, const UnipotentElement& n) {
  if (n.size() != ctx.n()) throw Error(ErrorKind::BadDimension, "psi_w: size mismatch");
  const UnipotentElement twisted = iota(ctx, w.rep, n);
  const Matrix& w0 = ctx.w0().rep;
  const Matrix chain = w0.adjoint() * n.inverse() * w.rep.adjoint() * twisted.matrix() * w0;
  return project_to_torus(ctx, chain);
}

TorusElement psi_general(const GroupContext& ctx, const UnipotentElement& n) {
  Vector log_sum = Vector::Zero(ctx.n());
  for (const WeylElement& w : ctx.weyl()) {
    try {
      log_sum += conjugate(ctx.w0(), psi_w(ctx, w, n)).log();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotOpposite) throw;
      std::string witness;
      const std::string weyl = describe_failure(ctx, w, n, &witness);
      throw Error(ErrorKind::NotGeneric,
                  "psi_general: unipotent coordinate outside the domain of psi_" + weyl,
                  e.margin(), witness);
    }
  }
  return TorusElement::from_log(log_sum / static_cast<double>(ctx.weyl().size()));
}

TorusElement psi_minus_one(const GroupContext& ctx, const UnipotentElement& n) {
  if (!w0_is_minus_one(ctx)) {
    throw Error(ErrorKind::WrongGroupType,
                "psi_minus_one: the longest Weyl element does not act as -1 for SL(" +
                    std::to_string(ctx.n()) + ")");
  }
  return torus_power(psi_w(ctx, ctx.w0(), n), -0.5);
}

TorusElement psi_tilde(const GroupContext& ctx, const UnipotentElement& n) {
  Vector log_sum = Vector::Zero(ctx.n());
  for (const WeylElement& w : ctx.weyl()) {
    UnipotentElement moved = UnipotentElement::identity(ctx.n());
    try {
      moved = iota(ctx, w.rep, n);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotOpposite) throw;
      std::string witness;
      const std::string weyl = describe_failure(ctx, w, n, &witness);
      throw Error(ErrorKind::NotGeneric, "psi_tilde: iota_" + weyl + " is undefined", e.margin(),
                  witness);
    }
    try {
      log_sum += conjugate_inverse(w, psi_general(ctx, moved)).log();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotGeneric) throw;
      std::string witness;
      const std::string weyl = describe_failure(ctx, w, n, &witness);
      throw Error(ErrorKind::NotGeneric,
                  "psi_tilde: iota_" + weyl + "(n) is not generic: " + e.what(), e.margin(),
                  witness);
    }
  }
  return TorusElement::from_log(log_sum / static_cast<double>(ctx.weyl().size()));
}

}  // namespace furstenberg
