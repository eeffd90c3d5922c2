#include "furstenberg/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "furstenberg/errors.hpp"

namespace furstenberg {

HypBoundaryPoint HypBoundaryPoint::infinity(Eigen::Index boundary_dim) {
  if (boundary_dim < 1) throw Error(ErrorKind::BadDimension, "boundary dimension must be >= 1");
  return HypBoundaryPoint(Vector::Zero(boundary_dim), true);
}

HypBoundaryPoint HypBoundaryPoint::finite(Vector coords) {
  if (coords.size() < 1) throw Error(ErrorKind::BadDimension, "boundary dimension must be >= 1");
  if (!coords.allFinite()) throw Error(ErrorKind::InvalidArgument, "boundary point must be finite");
  return HypBoundaryPoint(std::move(coords), false);
}

HypPoint::HypPoint(Vector horizontal_part, double h)
    : horizontal(std::move(horizontal_part)), height(h) {
  if (!(height > 0.0) || !std::isfinite(height) || !horizontal.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "interior point needs finite coordinates and height > 0");
  }
}

double hyp_distance(const HypPoint& a, const HypPoint& b) {
  const double dh = a.height - b.height;
  const double chord = std::sqrt((a.horizontal - b.horizontal).squaredNorm() + dh * dh);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(a.height * b.height)));
}

HypBoundaryPoint hyp_w0_boundary(const HypBoundaryPoint& x) {
  if (x.is_infinity()) return HypBoundaryPoint::finite(Vector::Zero(x.boundary_dim()));
  const double norm2 = x.coords().squaredNorm();
  if (norm2 == 0.0) return HypBoundaryPoint::infinity(x.boundary_dim());
  Vector out = x.coords();
  out(0) = -out(0);
  return HypBoundaryPoint::finite(out / norm2);
}

HypPoint hyp_w0_interior(const HypPoint& p) {
  const double norm2 = p.horizontal.squaredNorm() + p.height * p.height;
  Vector out = p.horizontal;
  out(0) = -out(0);
  return HypPoint(out / norm2, p.height / norm2);
}

// ---------------------------------------------------------------- Mobius

Mobius Mobius::translation(const Vector& v) {
  Mobius m;
  m.word_.push_back({Op::Translate, v, 1.0});
  return m;
}

Mobius Mobius::homothety(double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidArgument, "homothety factor must be > 0");
  Mobius m;
  m.word_.push_back({Op::Scale, Vector(), lambda});
  return m;
}

Mobius Mobius::involution() {
  Mobius m;
  m.word_.push_back({Op::W0, Vector(), 1.0});
  return m;
}

Mobius Mobius::then(const Mobius& next) const {
  Mobius out = *this;
  out.word_.insert(out.word_.end(), next.word_.begin(), next.word_.end());
  return out;
}

Mobius Mobius::inverse() const {
  Mobius out;
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) {
    Step step = *it;
    if (step.op == Op::Translate) step.shift = -step.shift;
    if (step.op == Op::Scale) step.factor = 1.0 / step.factor;
    out.word_.push_back(std::move(step));
  }
  return out;
}

HypBoundaryPoint Mobius::operator()(const HypBoundaryPoint& x) const {
  HypBoundaryPoint cur = x;
  for (const Step& step : word_) {
    switch (step.op) {
      case Op::Translate:
        if (!cur.is_infinity()) cur = HypBoundaryPoint::finite(cur.coords() + step.shift);
        break;
      case Op::Scale:
        if (!cur.is_infinity()) cur = HypBoundaryPoint::finite(cur.coords() * step.factor);
        break;
      case Op::W0:
        cur = hyp_w0_boundary(cur);
        break;
    }
  }
  return cur;
}

HypPoint Mobius::operator()(const HypPoint& p) const {
  HypPoint cur = p;
  for (const Step& step : word_) {
    switch (step.op) {
      case Op::Translate:
        cur = HypPoint(cur.horizontal + step.shift, cur.height);
        break;
      case Op::Scale:
        cur = HypPoint(cur.horizontal * step.factor, cur.height * step.factor);
        break;
      case Op::W0:
        cur = hyp_w0_interior(cur);
        break;
    }
  }
  return cur;
}

// ---------------------------------------------------------------- projections

std::pair<double, double> hyp_psi(const Vector& v) {
  const double norm = v.norm();
  if (norm == 0.0) throw Error(ErrorKind::DegenerateBoundary, "hyp_psi: v = 0 is not in N_opp");
  return {1.0 / (norm * norm), norm};
}

namespace {

bool coincide(const HypBoundaryPoint& a, const HypBoundaryPoint& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
  const double scale = std::max({1.0, a.coords().norm(), b.coords().norm()});
  return (a.coords() - b.coords()).norm() <= 1e-12 * scale;
}

// Appends a translation, leaving the word untouched for a zero shift.
Mobius shift_by(const Mobius& word, const Vector& v) {
  if (v.isZero(0.0)) return word;
  return word.then(Mobius::translation(v));
}

}  // namespace

Mobius mobius_normalize(const HypBoundaryPoint& x, const HypBoundaryPoint& y) {
  if (x.boundary_dim() != y.boundary_dim()) {
    throw Error(ErrorKind::BadDimension, "mobius_normalize: dimension mismatch");
  }
  if (coincide(x, y)) throw Error(ErrorKind::DegeneratePair, "mobius_normalize: x = y");
  Mobius word;
  if (!x.is_infinity()) {
    word = shift_by(word, -x.coords()).then(Mobius::involution());
  }
  return shift_by(word, -word(y).coords());
}

HypPoint hyp_project_triple(const HypBoundaryPoint& x, const HypBoundaryPoint& y,
                            const HypBoundaryPoint& z) {
  if (coincide(x, z) || coincide(y, z)) {
    throw Error(ErrorKind::DegeneratePair, "hyp_project_triple: z is an endpoint of the geodesic");
  }
  const Mobius m = mobius_normalize(x, y);
  const HypBoundaryPoint v = m(z);
  const double norm = hyp_psi(v.coords()).second;
  return m.inverse()(HypPoint(Vector::Zero(v.boundary_dim()), norm));
}

// ---------------------------------------------------------------- Karcher

namespace {

// Hyperboloid coordinates (t, y_1..y_{n-1}, y_n) with -t^2 + |y|^2 = -1.
Vector to_hyperboloid(const HypPoint& p) {
  const Eigen::Index d = p.horizontal.size();
  const double h = p.height;
  const double r2 = p.horizontal.squaredNorm() + h * h;
  Vector out(d + 2);
  out(0) = (r2 + 1.0) / (2.0 * h);
  out.segment(1, d) = p.horizontal / h;
  out(d + 1) = (r2 - 1.0) / (2.0 * h);
  return out;
}

HypPoint from_hyperboloid(const Vector& v) {
  const Eigen::Index d = v.size() - 2;
  const double h = 1.0 / (v(0) - v(d + 1));
  return HypPoint(v.segment(1, d) * h, h);
}

double minkowski(const Vector& a, const Vector& b) { return a.tail(a.size() - 1).dot(b.tail(b.size() - 1)) - a(0) * b(0); }

Vector hyp_log(const HypPoint& base, const Vector& base_h, const HypPoint& target) {
  const double d = hyp_distance(base, target);
  if (d == 0.0) return Vector::Zero(base_h.size());
  const Vector q = to_hyperboloid(target);
  const Vector u = q + minkowski(base_h, q) * base_h;
  const double norm = std::sqrt(std::max(minkowski(u, u), 0.0));
  if (norm == 0.0) return Vector::Zero(base_h.size());
  return (d / norm) * u;
}

// Mean of the log maps at p (a tangent vector on the hyperboloid), its
// Minkowski norm and the objective (1/2m) sum d(p, q_i)^2.
struct TangentData {
  Vector base;
  Vector gradient;
  double grad_norm = 0.0;
  double objective = 0.0;
};

TangentData tangent_data(const std::vector<HypPoint>& points, const HypPoint& at) {
  TangentData out{to_hyperboloid(at), Vector(), 0.0, 0.0};
  out.gradient = Vector::Zero(out.base.size());
  for (const HypPoint& p : points) {
    out.gradient += hyp_log(at, out.base, p);
    out.objective += std::pow(hyp_distance(at, p), 2);
  }
  const auto m = static_cast<double>(points.size());
  out.gradient /= m;
  out.objective /= 2.0 * m;
  out.grad_norm = std::sqrt(std::max(minkowski(out.gradient, out.gradient), 0.0));
  return out;
}

Matrix as_row(const HypPoint& p) {
  Matrix row(1, p.horizontal.size() + 1);
  for (Eigen::Index i = 0; i < p.horizontal.size(); ++i) row(0, i) = p.horizontal(i);
  row(0, p.horizontal.size()) = p.height;
  return row;
}

}  // namespace

HypMeanResult hyp_karcher_solve(const std::vector<HypPoint>& points, const KarcherConfig& cfg) {
  cfg.validate();
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "karcher: empty point set");
  HypPoint cur = points.front();
  TangentData here = tangent_data(points, cur);
  for (int iter = 0;; ++iter) {
    const double grad_norm = here.grad_norm;
    if (grad_norm < cfg.grad_tol) return {cur, grad_norm, iter};
    if (iter == cfg.max_iter) break;
    double step = cfg.step;
    for (int halving = 0;; ++halving) {
      const double len = step * grad_norm;
      const HypPoint candidate =
          from_hyperboloid(std::cosh(len) * here.base + (std::sinh(len) / grad_norm) * here.gradient);
      TangentData there = tangent_data(points, candidate);
      const double predicted = step * grad_norm * grad_norm;
      const double rounding = 64 * std::numeric_limits<double>::epsilon() * (1.0 + here.objective);
      const bool accepted = predicted > rounding
                                ? there.objective <= here.objective - 1e-4 * predicted
                                : there.grad_norm < grad_norm;
      if (accepted || halving == 30) {
        cur = candidate;
        here = std::move(there);
        break;
      }
      step *= 0.5;
    }
  }
  std::ostringstream msg;
  msg << "hyperbolic karcher mean did not converge (gradient norm " << here.grad_norm << ")";
  throw NoConvergenceError(msg.str(), as_row(cur), here.grad_norm, cfg.max_iter);
}

HypMeanResult hyp_bar3_detailed(const HypBoundaryPoint& x, const HypBoundaryPoint& y,
                                const HypBoundaryPoint& z, const KarcherConfig& cfg) {
  if (coincide(x, y) || coincide(y, z) || coincide(x, z)) {
    throw Error(ErrorKind::DegeneratePair, "hyp_bar3: vertices must be pairwise distinct");
  }
  const std::vector<HypPoint> feet = {hyp_project_triple(x, y, z), hyp_project_triple(y, z, x),
                                      hyp_project_triple(z, x, y)};
  return hyp_karcher_solve(feet, cfg);
}

HypPoint hyp_bar3(const HypBoundaryPoint& x, const HypBoundaryPoint& y, const HypBoundaryPoint& z,
                  const KarcherConfig& cfg) {
  return hyp_bar3_detailed(x, y, z, cfg).point;
}

}  // namespace furstenberg
