#include "furstenberg/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "furstenberg/errors.hpp"

namespace furstenberg {

SpdPoint::SpdPoint(const Matrix& mat, double eq_rel, double log_det_tol) {
  if (mat.rows() != mat.cols() || mat.rows() == 0) {
    throw Error(ErrorKind::BadDimension, "SpdPoint: matrix must be square");
  }
  if ((mat - mat.adjoint()).norm() > eq_rel * mat.norm()) {
    throw Error(ErrorKind::InvalidArgument, "SpdPoint: matrix is not Hermitian");
  }
  mat_ = hermitian_part(mat);
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  if (!(ev.minCoeff() > 0.0)) {
    throw Error(ErrorKind::NotPositiveDefinite, "SpdPoint: matrix is not positive definite");
  }
  const double log_det = ev.array().log().sum();
  if (std::abs(log_det) > log_det_tol) {
    std::ostringstream msg;
    msg << "SpdPoint: determinant " << std::exp(log_det) << " is not 1";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

SpdPoint SpdPoint::from_factor(const Matrix& f, double log_det_tol) {
  if (f.rows() != f.cols() || f.rows() == 0) {
    throw Error(ErrorKind::BadDimension, "SpdPoint: factor must be square");
  }
  if (!f.allFinite()) throw Error(ErrorKind::InvalidArgument, "SpdPoint: factor is not finite");
  const double det = std::abs(f.partialPivLu().determinant());
  if (!(det > 0.0)) throw Error(ErrorKind::NotPositiveDefinite, "SpdPoint: factor is singular");
  if (std::abs(2.0 * std::log(det)) > log_det_tol) {
    std::ostringstream msg;
    msg << "SpdPoint: determinant " << det * det << " is not 1";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  SpdPoint out;
  out.mat_ = hermitian_part(f * f.adjoint());
  out.factor_ = f;
  return out;
}

void KarcherConfig::validate() const {
  if (!(step > 0.0 && step < 2.0)) {
    throw Error(ErrorKind::InvalidArgument, "KarcherConfig: step must lie in (0, 2)");
  }
  if (!(grad_tol > 0.0) || max_iter <= 0) {
    throw Error(ErrorKind::InvalidArgument, "KarcherConfig: tolerances must be positive");
  }
}

SpdPoint spd_of_coset(const GroupContext& ctx, const Matrix& g) {
  if (g.rows() != ctx.n() || g.cols() != ctx.n()) {
    throw Error(ErrorKind::BadDimension, "spd_of_coset: size mismatch");
  }
  if (std::abs(g.determinant() - 1.0) > ctx.tol().det_abs) {
    throw Error(ErrorKind::InvalidArgument, "spd_of_coset: det(g) is not 1");
  }
  triangular_unitary_split(g, ctx.tol().cond_max);
  return SpdPoint::from_factor(g);
}

namespace {

struct RootPair {
  Matrix root;
  Matrix inverse_root;
};

RootPair square_roots(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(x);
  const Matrix& v = es.eigenvectors();
  const Vector s = es.eigenvalues().array().sqrt();
  const Vector si = s.array().inverse();
  return {hermitian_part(v * s.cast<Complex>().asDiagonal() * v.adjoint()),
          hermitian_part(v * si.cast<Complex>().asDiagonal() * v.adjoint())};
}

// The Karcher loop runs in extended precision: the logs of X^{-1/2} P X^{-1/2}
// lose about eps * cond(P), which for strongly anisotropic feet would
// otherwise put a floor near 1e-11 under the gradient norm.
using XReal = long double;
using XMatrix = Eigen::Matrix<std::complex<XReal>, Eigen::Dynamic, Eigen::Dynamic>;
using XVector = Eigen::Matrix<XReal, Eigen::Dynamic, 1>;

constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 30;

// Step acceptance: an Armijo decrease of the objective while the predicted
// decrease step * |G|^2 is resolvable against the objective's rounding
// level, and a shrinking gradient norm once it is not.
bool accept_step(XReal objective, XReal next_objective, XReal grad_norm, XReal next_grad_norm,
                 XReal step) {
  const XReal predicted = step * grad_norm * grad_norm;
  const XReal rounding = 64 * std::numeric_limits<XReal>::epsilon() * (1 + objective);
  if (predicted > rounding) return next_objective <= objective - XReal(kArmijo) * predicted;
  return next_grad_norm < grad_norm;
}

XMatrix x_hermitian(const XMatrix& m) { return (m + m.adjoint()) / XReal(2); }

XMatrix x_spectral(const XMatrix& h, XReal (*f)(XReal)) {
  Eigen::SelfAdjointEigenSolver<XMatrix> es(x_hermitian(h));
  const XVector fx = es.eigenvalues().unaryExpr(f);
  return x_hermitian(es.eigenvectors() * fx.cast<std::complex<XReal>>().asDiagonal() *
                     es.eigenvectors().adjoint());
}

XReal x_sqrt(XReal v) { return std::sqrt(v); }
XReal x_exp(XReal v) { return std::exp(v); }

// Mean of log(W^{-1} P_i W^{-*}) and the objective (1/2m) sum d(X, P_i)^2
// at X = W W^*. W need not be Hermitian: carrying it along the geodesic as
// W exp(sG/2) keeps consecutive gradients in parallel-transported frames.
struct LocalData {
  XMatrix factor;
  XMatrix gradient;
  XReal objective = 0;
};

// `points` holds factors F_i of the P_i; log(B B^*) with B = W^{-1} F_i is
// read off the SVD of B.
LocalData local_data(const std::vector<XMatrix>& points, const XMatrix& factor) {
  LocalData out{factor, XMatrix::Zero(factor.rows(), factor.cols()), 0};
  const XMatrix inverse = factor.inverse();
  for (const XMatrix& p : points) {
    const Eigen::JacobiSVD<XMatrix> svd(inverse * p, Eigen::ComputeFullU);
    const XVector logs = XReal(2) * svd.singularValues().array().log();
    const XMatrix& u = svd.matrixU();
    out.gradient += x_hermitian(u * logs.cast<std::complex<XReal>>().asDiagonal() * u.adjoint());
    out.objective += logs.squaredNorm();
  }
  const auto m = static_cast<XReal>(points.size());
  out.gradient /= m;
  out.objective /= XReal(2) * m;
  return out;
}

XReal inner(const XMatrix& a, const XMatrix& b) { return a.cwiseProduct(b.conjugate()).sum().real(); }

std::vector<XMatrix> extended(std::span<const SpdPoint> points) {
  std::vector<XMatrix> out;
  out.reserve(points.size());
  for (const SpdPoint& p : points) {
    out.push_back(p.factor() ? p.factor()->cast<std::complex<XReal>>()
                             : x_spectral(p.matrix().cast<std::complex<XReal>>(), x_sqrt));
  }
  return out;
}

Matrix rounded(const XMatrix& x) { return x.cast<Complex>(); }

}  // namespace

double spd_distance(const SpdPoint& x, const SpdPoint& y) {
  const Matrix si = square_roots(x.matrix()).inverse_root;
  return herm_pd_log(hermitian_part(si * y.matrix() * si), 0.0).norm();
}

double karcher_gradient_norm(std::span<const SpdPoint> points, const SpdPoint& at) {
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "karcher: empty point set");
  const std::vector<XMatrix> factor = extended(std::span<const SpdPoint>(&at, 1));
  return static_cast<double>(local_data(extended(points), factor.front()).gradient.norm());
}

KarcherResult karcher_solve(std::span<const SpdPoint> points, const KarcherConfig& cfg) {
  cfg.validate();
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "karcher: empty point set");
  const std::vector<XMatrix> pts = extended(points);
  LocalData here = local_data(pts, pts.front());
  const auto point = [&] { return rounded(x_hermitian(here.factor * here.factor.adjoint())); };
  XReal trial = cfg.step;
  for (int iter = 0;; ++iter) {
    const XReal grad_norm = here.gradient.norm();
    if (grad_norm < cfg.grad_tol) {
      if (iter == 0) return {points.front(), static_cast<double>(grad_norm), 0};
      return {SpdPoint::from_factor(rounded(here.factor)), static_cast<double>(grad_norm), iter};
    }
    if (iter == cfg.max_iter) break;
    XReal step = trial;
    for (int halving = 0;; ++halving) {
      LocalData there =
          local_data(pts, here.factor * x_spectral(step / 2 * here.gradient, x_exp));
      const XReal next_norm = there.gradient.norm();
      if (accept_step(here.objective, there.objective, grad_norm, next_norm, step) ||
          halving == kMaxHalvings) {
        // Secant curvature of the objective along the accepted step.
        const XReal curvature =
            inner(here.gradient - there.gradient, here.gradient) / (step * grad_norm * grad_norm);
        trial = curvature > 0 ? std::min<XReal>(cfg.step, 1 / curvature) : XReal(cfg.step);
        here = std::move(there);
        break;
      }
      step /= 2;
    }
  }
  const auto grad_norm = static_cast<double>(here.gradient.norm());
  std::ostringstream msg;
  msg << "karcher mean did not converge in " << cfg.max_iter << " iterations (gradient norm "
      << grad_norm << ")";
  throw NoConvergenceError(msg.str(), point(), grad_norm, cfg.max_iter);
}

SpdPoint karcher_mean(std::span<const SpdPoint> points, const KarcherConfig& cfg) {
  return karcher_solve(points, cfg).point;
}

namespace {

SpdPoint lift(const Matrix& g, const TorusElement& a) {
  return SpdPoint::from_factor(g * a.matrix());
}

UnipotentElement moved_coordinate(const GroupContext& ctx, const Matrix& g, const Flag& z,
                                  ErrorKind on_failure) {
  try {
    return chi_inverse(ctx, Flag(g.partialPivLu().solve(z.rep())));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotOpposite) throw;
    throw Error(on_failure, "flag is not opposite to the flat's base chamber", e.margin());
  }
}

}  // namespace

SpdPoint phi_flat(const GroupContext& ctx, const FlatRep& flat, const Flag& x) {
  const UnipotentElement n = moved_coordinate(ctx, flat.g(), x, ErrorKind::NotGeneric);
  return lift(flat.g(), psi_tilde(ctx, n));
}

std::string to_string(TripleMode mode) {
  return mode == TripleMode::Generic ? "generic" : "w0opp";
}

TripleMode triple_mode_from_string(const std::string& name) {
  if (name == "generic" || name == "triple") return TripleMode::Generic;
  if (name == "w0opp" || name == "w0-opp") return TripleMode::W0Opp;
  throw Error(ErrorKind::InvalidArgument, "unknown triple mode '" + name + "'");
}

SpdPoint phi_on_pair(const GroupContext& ctx, const Matrix& g, const Flag& z, TripleMode mode) {
  if (mode == TripleMode::W0Opp) {
    if (!w0_is_minus_one(ctx)) {
      throw Error(ErrorKind::WrongGroupType,
                  "w0opp mode needs w0 to act as -1 on the torus (SL(2) only)");
    }
    const UnipotentElement n = moved_coordinate(ctx, g, z, ErrorKind::NotOpposite);
    return lift(g, psi_minus_one(ctx, n));
  }
  const UnipotentElement n = moved_coordinate(ctx, g, z, ErrorKind::NotGeneric);
  return lift(g, psi_general(ctx, n));
}

SpdPoint phi_triple(const GroupContext& ctx, const Flag& x, const Flag& y, const Flag& z,
                    TripleMode mode) {
  return phi_on_pair(ctx, flat_from_pair(ctx, x, y).g(), z, mode);
}

std::vector<SpdPoint> bar_q_feet(const GroupContext& ctx, std::span<const Flag> flags,
                                 TripleMode mode) {
  std::vector<SpdPoint> feet;
  const std::size_t q = flags.size();
  feet.reserve(q * (q - 1) * (q - 2));
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      for (std::size_t k = 0; k < q; ++k) {
        if (i == j || j == k || i == k) continue;
        feet.push_back(phi_triple(ctx, flags[i], flags[j], flags[k], mode));
      }
    }
  }
  return feet;
}

BarycenterResult bar_q_detailed(const GroupContext& ctx, std::span<const Flag> flags,
                                TripleMode mode, const KarcherConfig& cfg) {
  if (flags.size() < 3) throw Error(ErrorKind::InvalidArgument, "bar_q needs q >= 3 flags");
  if (mode == TripleMode::W0Opp && !w0_is_minus_one(ctx)) {
    throw Error(ErrorKind::WrongGroupType, "w0opp mode needs w0 to act as -1 on the torus");
  }
  const GenericityMode check =
      mode == TripleMode::Generic ? GenericityMode::Tuple : GenericityMode::PairwiseOpposite;
  const GenericityReport report = genericity_check(ctx, check, flags);
  if (!report.generic) {
    throw Error(ErrorKind::NotGeneric, "bar_q: " + report.failed, report.margin);
  }
  const std::vector<SpdPoint> feet = bar_q_feet(ctx, flags, mode);
  KarcherResult mean = karcher_solve(feet, cfg);
  return {std::move(mean.point), feet.size(), mean.grad_norm, mean.iterations};
}

SpdPoint bar_q(const GroupContext& ctx, std::span<const Flag> flags, TripleMode mode,
               const KarcherConfig& cfg) {
  return bar_q_detailed(ctx, flags, mode, cfg).point;
}

}  // namespace furstenberg
