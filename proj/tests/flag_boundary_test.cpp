#include "furstenberg/flag_boundary.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "furstenberg/projections.hpp"
#include "furstenberg/sampling.hpp"
#include "support.hpp"

namespace furstenberg {
namespace {

using testing::matrices_near;
using testing::real_matrix;

// Two flags are transverse when the first i columns of x together with the
// first n-i columns of y span C^n for every 0 < i < n.
bool transverse_oracle(const Matrix& x, const Matrix& y) {
  const Eigen::Index n = x.rows();
  for (Eigen::Index i = 1; i < n; ++i) {
    Matrix block(n, n);
    block << x.leftCols(i), y.leftCols(n - i);
    const double scale = x.leftCols(i).norm() * y.leftCols(n - i).norm();
    if (std::abs(block.determinant()) <= 1e-9 * std::max(scale, 1.0)) return false;
  }
  return true;
}

UnipotentElement sl3(Complex x, Complex y, Complex z) { return to_unipotent({x, y, z}); }

Matrix random_upper(const GroupContext& ctx, Rng& rng) {
  Matrix u = random_unipotent(ctx, rng).matrix();
  for (int i = 0; i < ctx.n(); ++i) u(i, i) = rng.uniform(0.5, 2.0);
  return u;
}

TEST(FlagOf, UpperTriangularRepresentsBaseFlag) {
  Rng rng(41);
  const GroupContext ctx = make_context(3, Field::Complex);
  EXPECT_TRUE(same_flag(ctx, flag_of(ctx, Matrix::Identity(3, 3)), base_flag(ctx)));
  EXPECT_TRUE(same_flag(ctx, flag_of(ctx, random_upper(ctx, rng)), base_flag(ctx)));
  const Matrix g = random_special_linear(ctx, rng);
  EXPECT_TRUE(same_flag(ctx, Flag(g), Flag(g * random_upper(ctx, rng))));
  EXPECT_FALSE(same_flag(ctx, Flag(g), base_flag(ctx)));
  EXPECT_ERROR_KIND(flag_of(ctx, Matrix::Zero(3, 3)), ErrorKind::NumericallySingular);
  EXPECT_ERROR_KIND(flag_of(ctx, Matrix::Identity(2, 2)), ErrorKind::BadDimension);
}

TEST(IsOpposite, BaseChamberExamples) {
  for (int n : {2, 3, 4}) {
    const GroupContext ctx = make_context(n, Field::Real);
    const Flag p = base_flag(ctx);
    const Flag w0p = weyl_flag(ctx, ctx.w0());
    const Oppositeness yes = is_opposite(ctx, p, w0p);
    EXPECT_TRUE(yes.opposite);
    EXPECT_DOUBLE_EQ(yes.margin, 1.0);
    EXPECT_FALSE(is_opposite(ctx, p, p).opposite);
    for (const WeylElement& w : ctx.weyl()) {
      EXPECT_EQ(is_opposite(ctx, p, weyl_flag(ctx, w)).opposite, &w == &ctx.w0());
    }
  }
}

TEST(IsOpposite, AgreesWithTransversalityOracle) {
  Rng rng(43);
  for (int n : {2, 3, 4}) {
    const GroupContext ctx = make_context(n, Field::Real);
    int agree = 0;
    for (int trial = 0; trial < 300; ++trial) {
      // Entries in {-1, 0, 1} make non-transverse pairs common.
      Matrix x(n, n), y(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          x(i, j) = std::floor(rng.uniform(-1.0, 2.0));
          y(i, j) = std::floor(rng.uniform(-1.0, 2.0));
        }
      }
      if (std::abs(x.determinant()) < 0.5 || std::abs(y.determinant()) < 0.5) continue;
      const bool expected = transverse_oracle(x, y);
      EXPECT_EQ(is_opposite(ctx, Flag(x), Flag(y)).opposite, expected) << x << "\n\n" << y;
      EXPECT_EQ(is_opposite(ctx, Flag(y), Flag(x)).opposite, expected);
      ++agree;
    }
    EXPECT_GT(agree, 50);
  }
}

TEST(IsOpposite, InvariantUnderTheGroup) {
  Rng rng(47);
  const GroupContext ctx = make_context(3, Field::Complex);
  for (int trial = 0; trial < 100; ++trial) {
    const Flag x(random_matrix(ctx, rng));
    const Flag y(random_matrix(ctx, rng));
    const Matrix g = random_special_linear(ctx, rng);
    EXPECT_EQ(is_opposite(ctx, x, y).opposite,
              is_opposite(ctx, Flag(g * x.rep()), Flag(g * y.rep())).opposite);
  }
}

TEST(Chi, Examples) {
  const GroupContext ctx = make_context(2, Field::Real);
  EXPECT_TRUE(same_flag(ctx, chi(ctx, UnipotentElement::identity(2)), weyl_flag(ctx, ctx.w0())));
  const Flag y = chi(ctx, UnipotentElement(real_matrix({{1, 1}, {0, 1}})));
  // First column spans (1, 1).
  EXPECT_NEAR(std::abs(y.rep()(0, 0) - y.rep()(1, 0)), 0.0, 1e-15);
  EXPECT_GT(std::abs(y.rep()(0, 0)), 0.5);
}

TEST(ChiInverse, Examples) {
  const GroupContext ctx = make_context(2, Field::Real);
  const UnipotentElement id = chi_inverse(ctx, weyl_flag(ctx, ctx.w0()));
  EXPECT_TRUE(matrices_near(id.matrix(), Matrix::Identity(2, 2), 1e-15));
  const UnipotentElement one = chi_inverse(ctx, Flag(real_matrix({{1, 0}, {1, 1}})));
  EXPECT_NEAR(std::abs(one.matrix()(0, 1) - 1.0), 0.0, 1e-15);
  EXPECT_ERROR_KIND(chi_inverse(ctx, base_flag(ctx)), ErrorKind::NotOpposite);
}

TEST(ChiInverse, InvertsChiAndIgnoresTheRepresentative) {
  Rng rng(53);
  for (int n : {2, 3, 4}) {
    for (Field field : {Field::Real, Field::Complex}) {
      const GroupContext ctx = make_context(n, field);
      for (int trial = 0; trial < 50; ++trial) {
        const UnipotentElement u = random_unipotent(ctx, rng);
        const Flag y = chi(ctx, u);
        EXPECT_TRUE(matrices_near(chi_inverse(ctx, y).matrix(), u.matrix(), 1e-12));
        const Flag moved(y.rep() * random_upper(ctx, rng));
        EXPECT_TRUE(matrices_near(chi_inverse(ctx, moved).matrix(), u.matrix(), 1e-11));
      }
    }
  }
}

TEST(ChiInverse, DoesNotDependOnTheW0Representative) {
  Rng rng(59);
  const GroupContext ctx = make_context(3, Field::Complex);
  const GroupContext twisted = twisted_context(ctx, rng);
  for (int trial = 0; trial < 50; ++trial) {
    const UnipotentElement u = random_unipotent(ctx, rng);
    EXPECT_TRUE(same_flag(ctx, chi(ctx, u), chi(twisted, u)));
    const Flag y(random_matrix(ctx, rng));
    if (!is_opposite(ctx, base_flag(ctx), y).opposite) continue;
    EXPECT_TRUE(matrices_near(chi_inverse(ctx, y).matrix(), chi_inverse(twisted, y).matrix(), 1e-12));
  }
}

TEST(Iota, Examples) {
  const GroupContext two = make_context(2, Field::Real);
  const UnipotentElement n4(real_matrix({{1, 4}, {0, 1}}));
  EXPECT_TRUE(matrices_near(iota(two, Matrix::Identity(2, 2), n4).matrix(), n4.matrix(), 0.0));
  const UnipotentElement flipped = iota(two, two.w0().rep, n4);
  EXPECT_NEAR(std::abs(flipped.matrix()(0, 1) - (-0.25)), 0.0, 1e-15);

  const GroupContext three = make_context(3, Field::Complex);
  const Sl3Coords c = to_sl3_coords(iota(three, three.w0().rep, sl3(1, 1, 2)));
  EXPECT_NEAR(std::abs(c.x - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.y + 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.z - 0.5), 0.0, 1e-15);
}

TEST(Iota, OutsideTheChartIsNotOpposite) {
  const GroupContext three = make_context(3, Field::Complex);
  // xy - z = 0 puts w0 n w0 P outside the chart.
  EXPECT_ERROR_KIND(iota(three, three.w0().rep, sl3(1, 1, 1)), ErrorKind::NotOpposite);
}

TEST(Iota, IsAnActionAndConjugatesOnMA) {
  Rng rng(61);
  for (int n : {2, 3, 4}) {
    const GroupContext ctx = make_context(n, Field::Complex);
    for (int trial = 0; trial < 50; ++trial) {
      const UnipotentElement u = random_generic_unipotent(ctx, rng);
      const Matrix h = random_m(ctx, rng) * random_torus(ctx, rng).matrix();
      EXPECT_TRUE(matrices_near(iota(ctx, h, u).matrix(), h * u.matrix() * h.inverse(), 1e-12));

      const Matrix h1 = random_special_linear(ctx, rng);
      const Matrix h2 = random_special_linear(ctx, rng);
      try {
        const UnipotentElement inner = iota(ctx, h2, u);
        const UnipotentElement composed = iota(ctx, h1, inner);
        EXPECT_TRUE(matrices_near(iota(ctx, h1 * h2, u).matrix(), composed.matrix(), 1e-8));
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotOpposite);
      }
    }
  }
}

TEST(Iota, MatchesSl3Tables) {
  Rng rng(67);
  const GroupContext ctx = make_context(3, Field::Complex);
  int checked = 0;
  while (checked < 100) {
    const Sl3Coords c = to_sl3_coords(random_generic_unipotent(ctx, rng, 1e-2));
    for (Sl3Kind kind : {Sl3Kind::IotaS, Sl3Kind::IotaT, Sl3Kind::IotaSt, Sl3Kind::IotaTs,
                         Sl3Kind::IotaW0}) {
      const Sl3Coords want = std::get<Sl3Coords>(sl3_reference(kind, c));
      const Sl3Coords got =
          to_sl3_coords(iota(ctx, sl3_table_representative(kind), to_unipotent(c)));
      const double scale = std::max({1.0, std::abs(want.x), std::abs(want.y), std::abs(want.z)});
      EXPECT_LE(std::abs(got.x - want.x) / scale, 1e-9) << to_string(kind);
      EXPECT_LE(std::abs(got.y - want.y) / scale, 1e-9) << to_string(kind);
      EXPECT_LE(std::abs(got.z - want.z) / scale, 1e-9) << to_string(kind);
    }
    ++checked;
  }
}

TEST(FlatFromPair, Examples) {
  const GroupContext ctx = make_context(3, Field::Real);
  const Flag p = base_flag(ctx);
  const Flag w0p = weyl_flag(ctx, ctx.w0());
  EXPECT_TRUE(same_flat(ctx, flat_from_pair(ctx, p, w0p), FlatRep(Matrix::Identity(3, 3))));
  EXPECT_TRUE(same_flat(ctx, flat_from_pair(ctx, w0p, p), FlatRep(ctx.w0().rep)));
  EXPECT_ERROR_KIND(flat_from_pair(ctx, p, p), ErrorKind::NotOpposite);
}

TEST(FlatFromPair, SendsBaseChambersToThePairAndIsEquivariant) {
  Rng rng(71);
  for (int n : {2, 3, 4}) {
    for (Field field : {Field::Real, Field::Complex}) {
      const GroupContext ctx = make_context(n, field);
      for (int trial = 0; trial < 30; ++trial) {
        const std::vector<Flag> xy =
            random_generic_flags(ctx, rng, 2, GenericityMode::PairwiseOpposite, 1e-3);
        const FlatRep flat = flat_from_pair(ctx, xy[0], xy[1]);
        EXPECT_NEAR(std::abs(flat.g().determinant() - 1.0), 0.0, 1e-12);
        EXPECT_TRUE(same_flag(ctx, Flag(flat.g()), xy[0]));
        EXPECT_TRUE(same_flag(ctx, Flag(flat.g() * ctx.w0().rep), xy[1]));

        const Matrix g = random_special_linear(ctx, rng);
        const FlatRep moved = flat_from_pair(ctx, Flag(g * xy[0].rep()), Flag(g * xy[1].rep()));
        EXPECT_TRUE(same_flat(ctx, moved, FlatRep(g * flat.g())));
        EXPECT_FALSE(same_flat(ctx, moved, FlatRep(flat.g())));
      }
    }
  }
}

TEST(FlatBoundary, Chambers) {
  const GroupContext two = make_context(2, Field::Real);
  const std::vector<Flag> b2 = flat_boundary(two, FlatRep(Matrix::Identity(2, 2)));
  ASSERT_EQ(b2.size(), 2u);
  EXPECT_TRUE(same_flag(two, b2[0], base_flag(two)));
  EXPECT_TRUE(same_flag(two, b2[1], weyl_flag(two, two.w0())));

  const GroupContext three = make_context(3, Field::Complex);
  const std::vector<Flag> b3 = flat_boundary(three, FlatRep(Matrix::Identity(3, 3)));
  ASSERT_EQ(b3.size(), 6u);
  for (std::size_t i = 0; i < b3.size(); ++i) {
    for (std::size_t j = 0; j < b3.size(); ++j) EXPECT_EQ(same_flag(three, b3[i], b3[j]), i == j);
  }
}

TEST(GenericityCheck, Sl3Examples) {
  const GroupContext ctx = make_context(3, Field::Complex);
  const Flag p = base_flag(ctx);
  const Flag w0p = weyl_flag(ctx, ctx.w0());
  const std::vector<Flag> good = {p, w0p, chi(ctx, sl3(1, 1, 2))};
  EXPECT_TRUE(genericity_check(ctx, GenericityMode::Triple, good).generic);
  EXPECT_TRUE(genericity_check(ctx, GenericityMode::NOpp, good).generic);

  const std::vector<Flag> bad = {p, w0p, chi(ctx, sl3(1, 1, 1))};
  const GenericityReport report = genericity_check(ctx, GenericityMode::Triple, bad);
  EXPECT_FALSE(report.generic);
  EXPECT_FALSE(report.failed.empty());
  EXPECT_FALSE(genericity_check(ctx, GenericityMode::NOpp, bad).generic);

  const std::vector<Flag> partial = {p, w0p, chi(ctx, sl3(0, 5, 1))};
  EXPECT_TRUE(genericity_check(ctx, GenericityMode::W0Opp, partial).generic);
  EXPECT_FALSE(genericity_check(ctx, GenericityMode::Triple, partial).generic);
}

TEST(GenericityCheck, TripleAndChartFormulationsAgree) {
  Rng rng(73);
  const GroupContext ctx = make_context(3, Field::Real);
  for (int trial = 0; trial < 200; ++trial) {
    // Small integer unipotent coordinates hit the walls x, y, z, xy - z often.
    const Sl3Coords c{std::floor(rng.uniform(-1.0, 2.0)), std::floor(rng.uniform(-1.0, 2.0)),
                      std::floor(rng.uniform(-1.0, 2.0))};
    const Matrix g = random_special_linear(ctx, rng);
    const std::vector<Flag> flags = {Flag(g), Flag(g * ctx.w0().rep),
                                     Flag(g * chi(ctx, to_unipotent(c)).rep())};
    const bool expected = sl3_vanishing_factors(c).empty();
    EXPECT_EQ(genericity_check(ctx, GenericityMode::Triple, flags).generic, expected);
    EXPECT_EQ(genericity_check(ctx, GenericityMode::NOpp, flags).generic, expected);
  }
}

TEST(GenericityCheck, ModeNamesAndArity) {
  for (GenericityMode mode : {GenericityMode::Triple, GenericityMode::Tuple,
                              GenericityMode::PairwiseOpposite, GenericityMode::NOpp,
                              GenericityMode::W0Opp}) {
    EXPECT_EQ(genericity_mode_from_string(to_string(mode)), mode);
  }
  EXPECT_ERROR_KIND(genericity_mode_from_string("sometimes"), ErrorKind::InvalidArgument);
  const GroupContext ctx = make_context(2, Field::Real);
  const std::vector<Flag> two = {base_flag(ctx), weyl_flag(ctx, ctx.w0())};
  EXPECT_ERROR_KIND(genericity_check(ctx, GenericityMode::Triple, two), ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(genericity_check(ctx, GenericityMode::Tuple, two), ErrorKind::InvalidArgument);
}

}  // namespace
}  // namespace furstenberg
