#include "furstenberg/hyperbolic.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "furstenberg/sampling.hpp"
#include "support.hpp"

namespace furstenberg {
namespace {

using testing::vec;

HypBoundaryPoint at(std::initializer_list<double> v) { return HypBoundaryPoint::finite(vec(v)); }

HypBoundaryPoint random_boundary(Rng& rng, Eigen::Index dim, double spread = 3.0) {
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.uniform(-spread, spread);
  return HypBoundaryPoint::finite(v);
}

void expect_boundary_near(const HypBoundaryPoint& a, const HypBoundaryPoint& b, double tol) {
  ASSERT_EQ(a.is_infinity(), b.is_infinity());
  if (!a.is_infinity()) {
    EXPECT_LE((a.coords() - b.coords()).norm(), tol) << a.coords().transpose() << " vs "
                                                     << b.coords().transpose();
  }
}

// Minkowski space R^{1,n} with signature (-, +, ..., +).
double lorentz(const Vector& a, const Vector& b) {
  return a.tail(a.size() - 1).dot(b.tail(b.size() - 1)) - a(0) * b(0);
}

Vector hyperboloid(const HypPoint& p) {
  const double h = p.height;
  const double r2 = p.horizontal.squaredNorm() + h * h;
  Vector out(p.horizontal.size() + 2);
  out << (r2 + 1) / (2 * h), p.horizontal / h, (r2 - 1) / (2 * h);
  return out;
}

// Light-like vector of an ideal point (the limit of h * hyperboloid((u, h))).
Vector light_ray(const HypBoundaryPoint& x) {
  const Eigen::Index d = x.boundary_dim();
  Vector out(d + 2);
  if (x.is_infinity()) {
    out.setZero();
    out(0) = 1;
    out(d + 1) = 1;
    return out;
  }
  const double r2 = x.coords().squaredNorm();
  out << (r2 + 1) / 2, x.coords(), (r2 - 1) / 2;
  return out;
}

// Unit tangent at p pointing toward the ideal point x.
Vector toward(const Vector& p, const HypBoundaryPoint& x) {
  const Vector ray = light_ray(x);
  const Vector t = ray + lorentz(ray, p) * p;
  return t / std::sqrt(lorentz(t, t));
}

Mobius random_word(Rng& rng, Eigen::Index dim) {
  Mobius m;
  for (int i = 0; i < 4; ++i) {
    Vector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) v(k) = rng.uniform(-2, 2);
    m = m.then(Mobius::translation(v)).then(Mobius::homothety(rng.uniform(0.3, 3.0)));
    if (rng.uniform() < 0.5) m = m.then(Mobius::involution());
  }
  return m;
}

TEST(HypW0, Examples) {
  EXPECT_TRUE(hyp_w0_boundary(at({0, 0})).is_infinity());
  expect_boundary_near(hyp_w0_boundary(HypBoundaryPoint::infinity(2)), at({0, 0}), 0.0);
  expect_boundary_near(hyp_w0_boundary(at({1, 0})), at({-1, 0}), 0.0);
  expect_boundary_near(hyp_w0_boundary(at({3, 4})), at({-3.0 / 25, 4.0 / 25}), 1e-17);
}

TEST(HypW0, IsAnIsometricInvolution) {
  Rng rng(173);
  for (Eigen::Index dim : {1, 2, 3}) {
    for (int trial = 0; trial < 50; ++trial) {
      const HypBoundaryPoint x = random_boundary(rng, dim);
      expect_boundary_near(hyp_w0_boundary(hyp_w0_boundary(x)), x, 1e-12 * (1 + x.coords().norm()));
      const HypPoint p(x.coords(), rng.uniform(0.1, 3.0));
      const HypPoint q(random_boundary(rng, dim).coords(), rng.uniform(0.1, 3.0));
      const HypPoint back = hyp_w0_interior(hyp_w0_interior(p));
      EXPECT_LE(hyp_distance(back, p), 1e-12);
      EXPECT_NEAR(hyp_distance(hyp_w0_interior(p), hyp_w0_interior(q)), hyp_distance(p, q), 1e-10);
    }
  }
}

TEST(HypDistance, VerticalGeodesic) {
  EXPECT_NEAR(hyp_distance(HypPoint(vec({0}), 1), HypPoint(vec({0}), std::exp(1.5))), 1.5, 1e-14);
  EXPECT_EQ(hyp_distance(HypPoint(vec({2, 1}), 0.5), HypPoint(vec({2, 1}), 0.5)), 0.0);
}

TEST(HypPsi, Examples) {
  const auto [psi_w0, psi] = hyp_psi(vec({3, 4}));
  EXPECT_NEAR(psi_w0, 1.0 / 25, 1e-17);
  EXPECT_NEAR(psi, 5.0, 1e-15);
  const auto [unit_w0, unit] = hyp_psi(vec({0.6, 0, 0.8}));
  EXPECT_NEAR(unit_w0, 1.0, 1e-15);
  EXPECT_NEAR(unit, 1.0, 1e-15);
  EXPECT_ERROR_KIND(hyp_psi(vec({0, 0})), ErrorKind::DegenerateBoundary);
}

TEST(MobiusNormalize, Examples) {
  EXPECT_TRUE(mobius_normalize(HypBoundaryPoint::infinity(2), at({0, 0})).word().empty());
  const Mobius swap = mobius_normalize(at({0, 0}), HypBoundaryPoint::infinity(2));
  ASSERT_EQ(swap.word().size(), 1u);
  EXPECT_EQ(swap.word()[0].op, Mobius::Op::W0);

  const Mobius m = mobius_normalize(at({-1}), at({1}));
  EXPECT_TRUE(m(at({-1})).is_infinity());
  expect_boundary_near(m(at({1})), at({0}), 1e-15);
  EXPECT_ERROR_KIND(mobius_normalize(at({2}), at({2})), ErrorKind::DegeneratePair);
  EXPECT_ERROR_KIND(mobius_normalize(HypBoundaryPoint::infinity(1), HypBoundaryPoint::infinity(1)),
                    ErrorKind::DegeneratePair);
}

TEST(MobiusWord, InverseUndoesTheWord) {
  Rng rng(179);
  for (int trial = 0; trial < 50; ++trial) {
    const Mobius m = random_word(rng, 2);
    const HypBoundaryPoint x = random_boundary(rng, 2);
    expect_boundary_near(m.inverse()(m(x)), x, 1e-9 * (1 + x.coords().norm()));
    const HypPoint p(x.coords(), 0.7);
    EXPECT_LE(hyp_distance(m.inverse()(m(p)), p), 1e-9);
  }
  EXPECT_ERROR_KIND(Mobius::homothety(0.0), ErrorKind::InvalidArgument);
}

TEST(HypProjectTriple, Examples) {
  const HypPoint foot = hyp_project_triple(HypBoundaryPoint::infinity(2), at({0, 0}), at({3, 4}));
  EXPECT_EQ(foot.horizontal, vec({0, 0}));
  EXPECT_NEAR(foot.height, 5.0, 1e-15);

  const HypPoint swapped = hyp_project_triple(at({0, 0}), HypBoundaryPoint::infinity(2), at({3, 4}));
  EXPECT_LE(hyp_distance(swapped, foot), 1e-14);

  const HypPoint apex = hyp_project_triple(at({-1}), at({1}), HypBoundaryPoint::infinity(1));
  EXPECT_NEAR(apex.horizontal(0), 0.0, 1e-15);
  EXPECT_NEAR(apex.height, 1.0, 1e-15);

  EXPECT_ERROR_KIND(hyp_project_triple(at({0}), at({1}), at({1})), ErrorKind::DegeneratePair);
}

TEST(HypProjectTriple, OrthogonalityCertificate) {
  Rng rng(181);
  for (Eigen::Index dim : {1, 2, 3}) {
    for (int trial = 0; trial < 100; ++trial) {
      const HypBoundaryPoint x =
          trial % 10 == 0 ? HypBoundaryPoint::infinity(dim) : random_boundary(rng, dim);
      const HypBoundaryPoint y = random_boundary(rng, dim);
      const HypBoundaryPoint z = random_boundary(rng, dim);
      const Vector p = hyperboloid(hyp_project_triple(x, y, z));
      // On the geodesic (x, y): p lies in the span of the two light rays.
      const Vector rx = light_ray(x);
      const Vector ry = light_ray(y);
      const double a = -1.0 / lorentz(rx, ry);
      const double coeff_x = -lorentz(p, ry) * a;
      const double coeff_y = -lorentz(p, rx) * a;
      EXPECT_LE((p - coeff_x * rx - coeff_y * ry).norm() / p.norm(), 1e-9);
      // The direction toward z is orthogonal to the geodesic.
      EXPECT_LE(std::abs(lorentz(toward(p, x), toward(p, z))), 1e-9);
    }
  }
}

TEST(HypBar3, IdealTriangleAtInfinity) {
  const Vector v = vec({3, 4});
  const HypBoundaryPoint inf = HypBoundaryPoint::infinity(2);
  const HypMeanResult bar = hyp_bar3_detailed(inf, at({0, 0}), HypBoundaryPoint::finite(v));
  EXPECT_LT(bar.grad_norm, 1e-12);
  EXPECT_NEAR(bar.point.horizontal.dot(v / v.norm()), v.norm() / 2, 1e-10);
  // Feet (0, |v|), (v, |v|), (v/2, |v|/2) are reflected among themselves by the
  // bisecting hyperplane, and the mean is their unique minimizer.
  const std::vector<HypPoint> feet = {HypPoint(vec({0, 0}), 5), HypPoint(v, 5),
                                      HypPoint(v / 2, 2.5)};
  EXPECT_LE(hyp_distance(hyp_karcher_solve(feet).point, bar.point), 1e-10);
}

TEST(HypBar3, SymmetricAroundTheVerticalAxis) {
  const HypPoint bar = hyp_bar3(at({-1}), at({1}), HypBoundaryPoint::infinity(1));
  EXPECT_NEAR(bar.horizontal(0), 0.0, 1e-12);
  const std::vector<HypPoint> feet = {HypPoint(vec({0}), 1), HypPoint(vec({-1}), 2),
                                      HypPoint(vec({1}), 2)};
  EXPECT_LE(hyp_distance(hyp_karcher_solve(feet).point, bar), 1e-10);
}

TEST(HypBar3, PermutationInvarianceAndIsometryEquivariance) {
  Rng rng(191);
  for (Eigen::Index dim : {1, 2, 3}) {
    for (int trial = 0; trial < 30; ++trial) {
      const HypBoundaryPoint x = random_boundary(rng, dim);
      const HypBoundaryPoint y = random_boundary(rng, dim);
      const HypBoundaryPoint z = random_boundary(rng, dim);
      const HypPoint bar = hyp_bar3(x, y, z);
      EXPECT_LE(hyp_distance(hyp_bar3(y, z, x), bar), 1e-10);
      EXPECT_LE(hyp_distance(hyp_bar3(z, y, x), bar), 1e-10);

      const Mobius m = random_word(rng, dim);
      EXPECT_LE(hyp_distance(hyp_bar3(m(x), m(y), m(z)), m(bar)), 1e-8);
    }
  }
  EXPECT_ERROR_KIND(hyp_bar3(at({1}), at({1}), at({2})), ErrorKind::DegeneratePair);
}

}  // namespace
}  // namespace furstenberg
