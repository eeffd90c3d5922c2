#pragma once

// Real hyperbolic n-space in the upper half-space model: boundary points in
// R^{n-1} u {inf}, Mobius words built from translations, homotheties and the
// fixed involution w0, orthogonal projection of an ideal point onto a
// geodesic, and the barycenter of an ideal triangle.

#include <utility>
#include <vector>

#include "furstenberg/barycenter.hpp"

namespace furstenberg {

class HypBoundaryPoint {
 public:
  static HypBoundaryPoint infinity(Eigen::Index boundary_dim);
  static HypBoundaryPoint finite(Vector coords);

  bool is_infinity() const noexcept { return at_infinity_; }
  /// Coordinates in R^{n-1}; zero vector for the point at infinity.
  const Vector& coords() const noexcept { return coords_; }
  Eigen::Index boundary_dim() const noexcept { return coords_.size(); }

 private:
  HypBoundaryPoint(Vector coords, bool at_infinity)
      : coords_(std::move(coords)), at_infinity_(at_infinity) {}

  Vector coords_;
  bool at_infinity_ = false;
};

/// Interior point: horizontal part in R^{n-1}, height > 0 along e_n.
struct HypPoint {
  Vector horizontal;
  double height = 1.0;

  HypPoint(Vector horizontal_part, double h);
};

double hyp_distance(const HypPoint& a, const HypPoint& b);

/// x -> (x - 2 <e1, x> e1) / |x|^2 with 0 <-> inf.
HypBoundaryPoint hyp_w0_boundary(const HypBoundaryPoint& x);
/// The same involution on the interior, X = (x, h) in R^n.
HypPoint hyp_w0_interior(const HypPoint& p);

class Mobius {
 public:
  enum class Op { Translate, Scale, W0 };
  struct Step {
    Op op = Op::W0;
    Vector shift;        // Translate
    double factor = 1;   // Scale, > 0
  };

  Mobius() = default;

  static Mobius translation(const Vector& v);
  static Mobius homothety(double lambda);
  static Mobius involution();

  /// Apply `next` after this map.
  Mobius then(const Mobius& next) const;
  Mobius inverse() const;

  HypBoundaryPoint operator()(const HypBoundaryPoint& x) const;
  HypPoint operator()(const HypPoint& p) const;

  const std::vector<Step>& word() const noexcept { return word_; }

 private:
  std::vector<Step> word_;  // applied first to last
};

/// (psi_{w0}(n_v), Psi(n_v)) as homothety factors: (1/|v|^2, |v|).
/// Throws DegenerateBoundary for v = 0.
std::pair<double, double> hyp_psi(const Vector& v);

/// A word m with m(x) = inf and m(y) = 0. Throws DegeneratePair for x = y.
Mobius mobius_normalize(const HypBoundaryPoint& x, const HypBoundaryPoint& y);

/// Foot of the orthogonal projection of the ideal point z on the geodesic
/// with ends x, y.
HypPoint hyp_project_triple(const HypBoundaryPoint& x, const HypBoundaryPoint& y,
                            const HypBoundaryPoint& z);

struct HypMeanResult {
  HypPoint point;
  double grad_norm = 0.0;
  int iterations = 0;
};

/// Karcher mean of interior points (hyperboloid exponential/log maps). Each
/// iteration starts from cfg.step and halves it under the same acceptance
/// test as karcher_solve.
HypMeanResult hyp_karcher_solve(const std::vector<HypPoint>& points, const KarcherConfig& cfg = {});

/// Karcher mean of the three feet hyp_project_triple over the unordered pairs.
HypMeanResult hyp_bar3_detailed(const HypBoundaryPoint& x, const HypBoundaryPoint& y,
                                const HypBoundaryPoint& z, const KarcherConfig& cfg = {});
HypPoint hyp_bar3(const HypBoundaryPoint& x, const HypBoundaryPoint& y, const HypBoundaryPoint& z,
                  const KarcherConfig& cfg = {});

}  // namespace furstenberg
