#include "furstenberg/projections.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "furstenberg/sampling.hpp"
#include "support.hpp"

namespace furstenberg {
namespace {

using testing::real_matrix;
using testing::torus_near;
using testing::vec;

UnipotentElement sl3(Complex x, Complex y, Complex z) { return to_unipotent({x, y, z}); }

UnipotentElement rank_one(double t) { return UnipotentElement(real_matrix({{1, t}, {0, 1}})); }

const WeylElement& by_kind(const GroupContext& ctx, Sl3Kind kind) {
  return ctx.weyl()[ctx.find(sl3_table_permutation(kind))];
}

// Route that avoids iota and the Iwasawa split: w n w0 = iota_w(n) w0 p with
// p in P, so the no-pivot LU of w0^{-1} w n w0 has U = p and psi_w = |diag p|^{-1}.
TorusElement psi_w_by_lu(const GroupContext& ctx, const WeylElement& w, const UnipotentElement& n) {
  const Matrix& w0 = ctx.w0().rep;
  const LuFactors lu = lu_unit_lower(w0.inverse() * w.rep * n.matrix() * w0);
  return TorusElement(lu.upper.diagonal().cwiseAbs().cwiseInverse());
}

TorusElement conjugate_by(const Matrix& u, const TorusElement& a) {
  return TorusElement((u * a.matrix() * u.inverse()).diagonal().real());
}

TEST(PsiW, IdentityElementGivesUnitTorus) {
  Rng rng(79);
  const GroupContext ctx = make_context(4, Field::Complex);
  for (int trial = 0; trial < 20; ++trial) {
    const TorusElement a = psi_w(ctx, ctx.identity_element(), random_unipotent(ctx, rng));
    EXPECT_TRUE(torus_near(a, Vector::Ones(4), 1e-12));
  }
}

TEST(PsiW, RankOneHandChain) {
  const GroupContext ctx = make_context(2, Field::Real);
  EXPECT_TRUE(torus_near(psi_w(ctx, ctx.w0(), rank_one(4)), vec({0.25, 4}), 1e-15));
  EXPECT_ERROR_KIND(psi_w(ctx, ctx.w0(), rank_one(0)), ErrorKind::NotOpposite);
}

TEST(PsiW, Sl3TableRowForS) {
  const GroupContext ctx = make_context(3, Field::Complex);
  EXPECT_TRUE(torus_near(psi_w(ctx, by_kind(ctx, Sl3Kind::PsiS), sl3(2, 1, 1)), vec({1, 0.5, 2}),
                         1e-14));
}

TEST(PsiW, AgreesWithLuShortcut) {
  Rng rng(83);
  for (int n : {2, 3, 4}) {
    for (Field field : {Field::Real, Field::Complex}) {
      const GroupContext ctx = make_context(n, field);
      for (int trial = 0; trial < 20; ++trial) {
        const UnipotentElement u = random_generic_unipotent(ctx, rng);
        for (const WeylElement& w : ctx.weyl()) {
          EXPECT_LE(psi_w(ctx, w, u).relative_error(psi_w_by_lu(ctx, w, u)), 1e-10);
        }
      }
    }
  }
}

TEST(PsiW, MInvarianceAndALaw) {
  Rng rng(89);
  for (int n : {2, 3, 4}) {
    for (Field field : {Field::Real, Field::Complex}) {
      const GroupContext ctx = make_context(n, field);
      const Matrix& w0 = ctx.w0().rep;
      for (int trial = 0; trial < 20; ++trial) {
        const UnipotentElement u = random_generic_unipotent(ctx, rng);
        const Matrix m = random_m(ctx, rng);
        const TorusElement a = random_torus(ctx, rng, 0.5);
        const UnipotentElement mu(m * u.matrix() * m.inverse());
        const UnipotentElement au(a.matrix() * u.matrix() * a.inverse().matrix());
        for (const WeylElement& w : ctx.weyl()) {
          const TorusElement base = psi_w(ctx, w, u);
          EXPECT_LE(psi_w(ctx, w, mu).relative_error(base), 1e-10);
          const TorusElement factor =
              conjugate_by(w0.inverse(), a * conjugate(w, a.inverse()));
          EXPECT_LE(psi_w(ctx, w, au).relative_error(factor * base), 1e-9);
        }
      }
    }
  }
}

TEST(WeylAverage, ConjugatesMultiplyToIdentity) {
  Rng rng(97);
  for (int n : {2, 3, 4}) {
    const GroupContext ctx = make_context(n, Field::Real);
    const TorusElement a = random_torus(ctx, rng, 2.0);
    Vector log_sum = Vector::Zero(n);
    for (const WeylElement& w : ctx.weyl()) log_sum += conjugate(w, a).log();
    EXPECT_LE(log_sum.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PsiGeneral, Examples) {
  const GroupContext two = make_context(2, Field::Real);
  EXPECT_TRUE(torus_near(psi_general(two, rank_one(4)), vec({2, 0.5}), 1e-15));

  const GroupContext three = make_context(3, Field::Complex);
  EXPECT_TRUE(torus_near(psi_general(three, sl3(1, 1, 2)),
                         vec({1, std::cbrt(2.0), 1 / std::cbrt(2.0)}), 1e-14));
}

TEST(PsiGeneral, DegenerateCoordinatesNameTheVanishingFactor) {
  const GroupContext three = make_context(3, Field::Complex);
  try {
    psi_general(three, sl3(1, 1, 1));
    FAIL() << "expected NotGeneric";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotGeneric);
    EXPECT_EQ(e.witness(), "xy-z");
    EXPECT_TRUE(e.margin().has_value());
  }
  EXPECT_ERROR_KIND(psi_general(three, sl3(0, 1, 2)), ErrorKind::NotGeneric);
}

TEST(PsiGeneral, MAEquivariance) {
  Rng rng(101);
  for (int n : {2, 3, 4}) {
    for (Field field : {Field::Real, Field::Complex}) {
      const GroupContext ctx = make_context(n, field);
      for (int trial = 0; trial < 20; ++trial) {
        const UnipotentElement u = random_generic_unipotent(ctx, rng);
        const Matrix h = random_m(ctx, rng);
        const TorusElement a = random_torus(ctx, rng, 0.5);
        const Matrix ha = h * a.matrix();
        const UnipotentElement moved(ha * u.matrix() * ha.inverse());
        EXPECT_LE(psi_general(ctx, moved).relative_error(a * psi_general(ctx, u)), 1e-9);
      }
    }
  }
}

TEST(PsiMinusOne, RankOneExamples) {
  const GroupContext two = make_context(2, Field::Real);
  EXPECT_TRUE(torus_near(psi_minus_one(two, rank_one(4)), vec({2, 0.5}), 1e-15));
  EXPECT_ERROR_KIND(psi_minus_one(two, rank_one(0)), ErrorKind::NotOpposite);
  EXPECT_ERROR_KIND(psi_minus_one(make_context(3, Field::Real), sl3(1, 1, 2)),
                    ErrorKind::WrongGroupType);
}

TEST(PsiMinusOne, CoincidesWithPsiInRankOne) {
  Rng rng(103);
  for (Field field : {Field::Real, Field::Complex}) {
    const GroupContext two = make_context(2, field);
    for (int trial = 0; trial < 100; ++trial) {
      const UnipotentElement u = random_generic_unipotent(two, rng, 1e-3, 10.0);
      EXPECT_LE(psi_minus_one(two, u).relative_error(psi_general(two, u)), 1e-10);
    }
  }
}

TEST(PsiTilde, Examples) {
  const GroupContext two = make_context(2, Field::Real);
  EXPECT_TRUE(torus_near(psi_tilde(two, rank_one(4)), vec({2, 0.5}), 1e-15));

  const GroupContext three = make_context(3, Field::Complex);
  const double sixth = std::pow(2.0, 1.0 / 6.0);
  EXPECT_TRUE(torus_near(psi_tilde(three, sl3(1, 1, 2)), vec({sixth * sixth, 1 / sixth, 1 / sixth}),
                         1e-14));
  EXPECT_ERROR_KIND(psi_tilde(three, sl3(1, 1, 1)), ErrorKind::NotGeneric);
}

TEST(PsiTilde, TAEquivarianceAndUnitProduct) {
  Rng rng(107);
  for (int n : {2, 3, 4}) {
    for (Field field : {Field::Real, Field::Complex}) {
      const GroupContext ctx = make_context(n, field);
      for (int trial = 0; trial < 10; ++trial) {
        const UnipotentElement u = random_generic_unipotent(ctx, rng);
        const TorusElement base = psi_tilde(ctx, u);
        EXPECT_NEAR(base.diag().prod(), 1.0, 1e-12);

        const Matrix t = random_t(ctx, rng);
        EXPECT_LE(psi_tilde(ctx, iota(ctx, t, u)).relative_error(conjugate_by(t, base)), 1e-9);

        const TorusElement a = random_torus(ctx, rng, 0.5);
        const UnipotentElement au(a.matrix() * u.matrix() * a.inverse().matrix());
        EXPECT_LE(psi_tilde(ctx, au).relative_error(a * base), 1e-9);
      }
    }
  }
}

TEST(RepresentativeIndependence, TwistedContextsAgree) {
  Rng rng(109);
  for (int n : {2, 3, 4}) {
    const GroupContext ctx = make_context(n, Field::Complex);
    for (int trial = 0; trial < 5; ++trial) {
      const GroupContext twisted = twisted_context(ctx, rng);
      const UnipotentElement u = random_generic_unipotent(ctx, rng);
      for (std::size_t i = 0; i < ctx.weyl().size(); ++i) {
        EXPECT_LE(psi_w(twisted, twisted.weyl()[i], u).relative_error(psi_w(ctx, ctx.weyl()[i], u)),
                  1e-10);
      }
      EXPECT_LE(psi_general(twisted, u).relative_error(psi_general(ctx, u)), 1e-10);
      EXPECT_LE(psi_tilde(twisted, u).relative_error(psi_tilde(ctx, u)), 1e-10);
    }
  }
}

TEST(Sl3Reference, Examples) {
  const Sl3Coords c{1.0, 1.0, 2.0};
  const Sl3Coords uvw = std::get<Sl3Coords>(sl3_reference(Sl3Kind::IotaW0, c));
  EXPECT_NEAR(std::abs(uvw.x - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(uvw.y + 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(uvw.z - 0.5), 0.0, 1e-15);

  EXPECT_TRUE(torus_near(std::get<TorusElement>(sl3_reference(Sl3Kind::Psi, c)),
                         vec({1, std::cbrt(2.0), 1 / std::cbrt(2.0)}), 1e-15));
  const double sixth_of_four = std::pow(4.0, 1.0 / 6.0);
  EXPECT_TRUE(torus_near(std::get<TorusElement>(sl3_reference(Sl3Kind::PsiPrime, c)),
                         vec({sixth_of_four, 1, 1 / sixth_of_four}), 1e-15));
}

TEST(Sl3Reference, DomainErrorsCarryTheFactor) {
  try {
    sl3_reference(Sl3Kind::Psi, {1.0, 1.0, 1.0});
    FAIL() << "expected FormulaDomain";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FormulaDomain);
    EXPECT_EQ(e.witness(), "xy-z");
  }
  EXPECT_ERROR_KIND(sl3_reference(Sl3Kind::IotaS, {0.0, 1.0, 1.0}), ErrorKind::FormulaDomain);
  EXPECT_EQ(sl3_vanishing_factors({0.0, 3.0, 0.0}), (std::vector<std::string>{"x", "z", "xy-z"}));
  EXPECT_TRUE(sl3_vanishing_factors({1.0, 1.0, 2.0}).empty());
}

TEST(Sl3Reference, KindNamesRoundTrip) {
  for (int k = 0; k <= static_cast<int>(Sl3Kind::PsiTildePrime); ++k) {
    const auto kind = static_cast<Sl3Kind>(k);
    EXPECT_EQ(sl3_kind_from_string(to_string(kind)), kind);
  }
  EXPECT_ERROR_KIND(sl3_kind_from_string("psi_u"), ErrorKind::InvalidArgument);
}

TEST(Sl3Reference, MatchesPipeline) {
  Rng rng(113);
  const GroupContext ctx = make_context(3, Field::Complex);
  for (int trial = 0; trial < 100; ++trial) {
    const UnipotentElement u = random_generic_unipotent(ctx, rng, 1e-2);
    const Sl3Coords c = to_sl3_coords(u);
    for (Sl3Kind kind : {Sl3Kind::PsiS, Sl3Kind::PsiT, Sl3Kind::PsiSt, Sl3Kind::PsiTs,
                         Sl3Kind::PsiW0}) {
      const TorusElement want = std::get<TorusElement>(sl3_reference(kind, c));
      EXPECT_LE(psi_w(ctx, by_kind(ctx, kind), u).relative_error(want), 1e-9) << to_string(kind);
    }
    EXPECT_LE(psi_general(ctx, u).relative_error(std::get<TorusElement>(sl3_reference(Sl3Kind::Psi, c))),
              1e-9);
    EXPECT_LE(psi_tilde(ctx, u).relative_error(
                  std::get<TorusElement>(sl3_reference(Sl3Kind::PsiTilde, c))),
              1e-9);
  }
}

// Psi' is a second MA-equivariant map; averaging it like Psi~ gives Psi~'.
TEST(Sl3Reference, PrimedMapsAreEquivariantButDifferent) {
  Rng rng(127);
  const GroupContext ctx = make_context(3, Field::Complex);
  const auto psi_prime = [](const UnipotentElement& u) {
    return std::get<TorusElement>(sl3_reference(Sl3Kind::PsiPrime, to_sl3_coords(u)));
  };
  const auto psi_tilde_prime = [](const UnipotentElement& u) {
    return std::get<TorusElement>(sl3_reference(Sl3Kind::PsiTildePrime, to_sl3_coords(u)));
  };
  for (int trial = 0; trial < 50; ++trial) {
    const UnipotentElement u = random_generic_unipotent(ctx, rng, 1e-2);
    const Matrix ma = random_m(ctx, rng) * random_torus(ctx, rng, 0.5).matrix();
    const TorusElement a(ma.diagonal().cwiseAbs());
    const UnipotentElement moved(ma * u.matrix() * ma.inverse());
    EXPECT_LE(psi_prime(moved).relative_error(a * psi_prime(u)), 1e-9);

    const Matrix t = random_t(ctx, rng);
    EXPECT_LE(psi_tilde_prime(iota(ctx, t, u)).relative_error(conjugate_by(t, psi_tilde_prime(u))),
              1e-9);

    Vector log_sum = Vector::Zero(3);
    for (const WeylElement& w : ctx.weyl()) {
      log_sum += conjugate_inverse(w, psi_prime(iota(ctx, w.rep, u))).log();
    }
    EXPECT_LE(TorusElement::from_log(log_sum / 6.0).relative_error(psi_tilde_prime(u)), 1e-9);
  }
  const TorusElement at_112 = psi_general(ctx, sl3(1, 1, 2));
  EXPECT_GT(psi_prime(sl3(1, 1, 2)).relative_error(at_112), 0.1);
}

}  // namespace
}  // namespace furstenberg
