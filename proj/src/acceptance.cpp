#include "furstenberg/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "furstenberg/barycenter.hpp"
#include "furstenberg/errors.hpp"
#include "furstenberg/hyperbolic.hpp"
#include "furstenberg/projections.hpp"
#include "furstenberg/sampling.hpp"

namespace furstenberg {

namespace {

// Tolerances, one per check.
constexpr double kTableTol = 1e-9;
constexpr double kRankOneTol = 1e-10;
constexpr double kEquivarianceTol = 1e-9;
constexpr double kRepresentativeTol = 1e-10;
constexpr double kPhiTol = 1e-8;
constexpr double kHypPsiTol = 1e-12;
constexpr double kRoundoffTol = 4e-16;
constexpr double kDictionaryTol = 1e-8;
constexpr double kPermutationTol = 1e-9;
constexpr double kBarEquivarianceTol = 1e-8;
constexpr double kGradientTol = 1e-12;

// Random samples keep this oppositeness margin from every wall, so the
// sampled points are generic with room to spare.
constexpr double kSampleMargin = 1e-3;

constexpr int kTableSamples = 1000;
constexpr int kRankOneSamples = 1000;
constexpr int kEquivarianceSamples = 200;
constexpr int kTwistSamples = 50;
constexpr int kPhiSamples = 200;
constexpr int kDictionarySamples = 200;
constexpr int kBarInstances = 3;
constexpr int kMinorSamples = 1000;

// Largest error seen against one tolerance.
class Worst {
 public:
  explicit Worst(double tol) : tol_(tol) {}
  void add(double err) {
    if (!(err <= worst_)) worst_ = err;  // NaN sticks
    ++count_;
  }
  bool ok() const { return worst_ <= tol_; }
  double value() const { return worst_; }
  std::string describe(const std::string& what) const {
    std::ostringstream out;
    out << what << " max " << worst_ << " (tol " << tol_ << ", " << count_ << " checks)";
    return out.str();
  }

 private:
  double tol_;
  double worst_ = 0.0;
  long count_ = 0;
};

CriterionResult finish(int id, std::string name, std::initializer_list<std::pair<const Worst*, std::string>> parts,
                       bool extra_ok = true, std::string extra = {}) {
  CriterionResult r{id, std::move(name), extra_ok, {}};
  std::ostringstream detail;
  bool first = true;
  for (const auto& [worst, label] : parts) {
    r.passed = r.passed && worst->ok();
    detail << (first ? "" : "; ") << worst->describe(label);
    first = false;
  }
  if (!extra.empty()) detail << (first ? "" : "; ") << extra;
  r.detail = detail.str();
  return r;
}

double coords_error(const Sl3Coords& got, const Sl3Coords& want) {
  const double scale = std::max({std::abs(want.x), std::abs(want.y), std::abs(want.z)});
  const double diff = std::max({std::abs(got.x - want.x), std::abs(got.y - want.y),
                                std::abs(got.z - want.z)});
  return diff / scale;
}

TorusElement conjugate_by(const Matrix& u, const TorusElement& a) {
  return TorusElement((u * a.matrix() * u.inverse()).diagonal().real());
}

const WeylElement& by_kind(const GroupContext& ctx, Sl3Kind kind) {
  return ctx.weyl()[ctx.find(sl3_table_permutation(kind))];
}

std::vector<UnipotentElement> sl3_samples(std::uint64_t seed) {
  Rng rng(seed);
  const GroupContext ctx = make_context(3, Field::Complex);
  std::vector<UnipotentElement> out;
  for (int i = 0; i < kTableSamples; ++i) out.push_back(random_generic_unipotent(ctx, rng, kSampleMargin));
  return out;
}

constexpr Sl3Kind kIotaKinds[] = {Sl3Kind::IotaS, Sl3Kind::IotaT, Sl3Kind::IotaSt, Sl3Kind::IotaTs,
                                  Sl3Kind::IotaW0};
constexpr Sl3Kind kPsiKinds[] = {Sl3Kind::PsiS, Sl3Kind::PsiT, Sl3Kind::PsiSt, Sl3Kind::PsiTs,
                                 Sl3Kind::PsiW0};

CriterionResult iota_tables(std::uint64_t seed) {
  const GroupContext ctx = make_context(3, Field::Complex);
  Worst worst(kTableTol);
  for (const UnipotentElement& n : sl3_samples(seed)) {
    const Sl3Coords c = to_sl3_coords(n);
    for (Sl3Kind kind : kIotaKinds) {
      const Sl3Coords want = std::get<Sl3Coords>(sl3_reference(kind, c));
      worst.add(coords_error(to_sl3_coords(iota(ctx, sl3_table_representative(kind), n)), want));
    }
  }
  return finish(1, "SL(3,C) iota tables", {{&worst, "relative error"}});
}

CriterionResult psi_tables(std::uint64_t seed) {
  const GroupContext ctx = make_context(3, Field::Complex);
  Worst worst(kTableTol);
  for (const UnipotentElement& n : sl3_samples(seed)) {
    const Sl3Coords c = to_sl3_coords(n);
    for (Sl3Kind kind : kPsiKinds) {
      const TorusElement want = std::get<TorusElement>(sl3_reference(kind, c));
      worst.add(psi_w(ctx, by_kind(ctx, kind), n).relative_error(want));
    }
  }
  return finish(2, "SL(3,C) psi_w tables", {{&worst, "relative error"}});
}

CriterionResult averaged_maps(std::uint64_t seed) {
  const GroupContext ctx = make_context(3, Field::Complex);
  Worst psi(kTableTol);
  Worst tilde(kTableTol);
  for (const UnipotentElement& n : sl3_samples(seed)) {
    const Sl3Coords c = to_sl3_coords(n);
    psi.add(psi_general(ctx, n).relative_error(std::get<TorusElement>(sl3_reference(Sl3Kind::Psi, c))));
    tilde.add(psi_tilde(ctx, n).relative_error(
        std::get<TorusElement>(sl3_reference(Sl3Kind::PsiTilde, c))));
  }
  Worst spot(kTableTol);
  const UnipotentElement n112 = to_unipotent({1.0, 1.0, 2.0});
  Vector psi_112(3);
  psi_112 << 1.0, std::cbrt(2.0), 1.0 / std::cbrt(2.0);
  Vector tilde_112(3);
  const double sixth = std::pow(2.0, 1.0 / 6.0);
  tilde_112 << sixth * sixth, 1.0 / sixth, 1.0 / sixth;
  spot.add(psi_general(ctx, n112).relative_error(TorusElement(psi_112)));
  spot.add(psi_tilde(ctx, n112).relative_error(TorusElement(tilde_112)));
  return finish(3, "SL(3,C) Psi and Psi~ closed forms",
                {{&psi, "Psi"}, {&tilde, "Psi~"}, {&spot, "values at (1,1,2)"}});
}

CriterionResult rank_one_coincidence(std::uint64_t seed) {
  Rng rng(seed);
  const GroupContext ctx = make_context(2, Field::Real);
  Worst worst(kRankOneTol);
  for (int i = 0; i < kRankOneSamples; ++i) {
    double t = 0.0;
    while (std::abs(t) < 1e-3) t = rng.uniform(-10.0, 10.0);
    Matrix m = Matrix::Identity(2, 2);
    m(0, 1) = t;
    const UnipotentElement n(m);
    worst.add(psi_general(ctx, n).relative_error(psi_minus_one(ctx, n)));
  }
  return finish(4, "SL(2,R) Psi = psi_w0^(-1/2)", {{&worst, "relative difference"}});
}

CriterionResult equivariance_suite(std::uint64_t seed) {
  Rng rng(seed);
  Worst m_inv(kEquivarianceTol);
  Worst a_law(kEquivarianceTol);
  Worst psi_ma(kEquivarianceTol);
  Worst tilde_t(kEquivarianceTol);
  for (int n : {2, 3, 4}) {
    for (Field field : {Field::Real, Field::Complex}) {
      const GroupContext ctx = make_context(n, field);
      const Matrix w0_inv = ctx.w0().rep.inverse();
      for (int i = 0; i < kEquivarianceSamples; ++i) {
        const UnipotentElement u = random_generic_unipotent(ctx, rng, kSampleMargin);
        const Matrix m = random_m(ctx, rng);
        const TorusElement a = random_torus(ctx, rng, 0.5);
        const UnipotentElement mu(m * u.matrix() * m.inverse());
        const UnipotentElement au(a.matrix() * u.matrix() * a.inverse().matrix());
        for (const WeylElement& w : ctx.weyl()) {
          const TorusElement base = psi_w(ctx, w, u);
          m_inv.add(psi_w(ctx, w, mu).relative_error(base));
          const TorusElement factor = conjugate_by(w0_inv, a * conjugate(w, a.inverse()));
          a_law.add(psi_w(ctx, w, au).relative_error(factor * base));
        }
        const Matrix ma = m * a.matrix();
        const UnipotentElement mau(ma * u.matrix() * ma.inverse());
        psi_ma.add(psi_general(ctx, mau).relative_error(a * psi_general(ctx, u)));

        const Matrix t = random_t(ctx, rng);
        const UnipotentElement moved = iota(ctx, t * a.matrix(), u);
        tilde_t.add(psi_tilde(ctx, moved).relative_error(conjugate_by(t, a * psi_tilde(ctx, u))));
      }
    }
  }
  return finish(5, "equivariance (n = 2, 3, 4; real and complex)",
                {{&m_inv, "psi_w M-invariance"},
                 {&a_law, "psi_w A-law"},
                 {&psi_ma, "Psi MA"},
                 {&tilde_t, "Psi~ TA"}});
}

CriterionResult representative_independence(std::uint64_t seed) {
  Rng rng(seed);
  Worst psi_each(kRepresentativeTol);
  Worst psi_avg(kRepresentativeTol);
  Worst tilde(kRepresentativeTol);
  for (int n : {2, 3, 4}) {
    for (Field field : {Field::Real, Field::Complex}) {
      const GroupContext ctx = make_context(n, field);
      for (int i = 0; i < kTwistSamples; ++i) {
        const GroupContext twisted = twisted_context(ctx, rng);
        const UnipotentElement u = random_generic_unipotent(ctx, rng, kSampleMargin);
        for (std::size_t k = 0; k < ctx.weyl().size(); ++k) {
          psi_each.add(psi_w(twisted, twisted.weyl()[k], u).relative_error(psi_w(ctx, ctx.weyl()[k], u)));
        }
        psi_avg.add(psi_general(twisted, u).relative_error(psi_general(ctx, u)));
        tilde.add(psi_tilde(twisted, u).relative_error(psi_tilde(ctx, u)));
      }
    }
  }
  return finish(6, "independence of Weyl representatives",
                {{&psi_each, "psi_w"}, {&psi_avg, "Psi"}, {&tilde, "Psi~"}});
}

double off_diagonal_ratio(const Matrix& g, const SpdPoint& x) {
  const Matrix ginv = g.inverse();
  const Matrix pulled = ginv * x.matrix() * ginv.adjoint();
  const Matrix off = pulled - Matrix(pulled.diagonal().asDiagonal());
  return off.norm() / pulled.norm();
}

CriterionResult phi_properties(std::uint64_t seed) {
  Rng rng(seed);
  Worst flat(kPhiTol);
  Worst equiv(kPhiTol);
  Worst well_defined(kPhiTol);
  for (int n : {2, 3}) {
    for (Field field : {Field::Real, Field::Complex}) {
      const GroupContext ctx = make_context(n, field);
      for (int i = 0; i < kPhiSamples; ++i) {
        const std::vector<Flag> f = random_generic_flags(ctx, rng, 3, GenericityMode::Triple, kSampleMargin);
        const Matrix g = flat_from_pair(ctx, f[0], f[1]).g();
        const Matrix h = random_special_linear(ctx, rng);

        const SpdPoint tri = phi_triple(ctx, f[0], f[1], f[2], TripleMode::Generic);
        flat.add(off_diagonal_ratio(g, tri));
        const SpdPoint tri_moved = phi_triple(ctx, Flag(h * f[0].rep()), Flag(h * f[1].rep()),
                                              Flag(h * f[2].rep()), TripleMode::Generic);
        equiv.add(relative_difference(tri_moved.matrix(), h * tri.matrix() * h.adjoint()));
        const Matrix ma = random_m(ctx, rng) * random_torus(ctx, rng).matrix();
        well_defined.add(spd_distance(phi_on_pair(ctx, g * ma, f[2], TripleMode::Generic), tri));

        const SpdPoint fl = phi_flat(ctx, FlatRep(g), f[2]);
        flat.add(off_diagonal_ratio(g, fl));
        const SpdPoint fl_moved = phi_flat(ctx, FlatRep(h * g), Flag(h * f[2].rep()));
        equiv.add(relative_difference(fl_moved.matrix(), h * fl.matrix() * h.adjoint()));
        const Matrix ta = random_t(ctx, rng) * random_torus(ctx, rng).matrix();
        well_defined.add(spd_distance(phi_flat(ctx, FlatRep(g * ta), f[2]), fl));
      }
    }
  }
  return finish(7, "Phi on flats and triples (n = 2, 3)",
                {{&flat, "off-flat ratio"}, {&equiv, "G-equivariance"}, {&well_defined, "MA/TA ambiguity"}});
}

HypBoundaryPoint line_point(const Flag& f) {
  const Matrix& g = f.rep();
  if (g(1, 0) == Complex(0.0)) return HypBoundaryPoint::infinity(1);
  Vector v(1);
  v(0) = (g(0, 0) / g(1, 0)).real();
  return HypBoundaryPoint::finite(v);
}

CriterionResult hyperbolic_oracle(std::uint64_t seed) {
  Rng rng(seed);
  Worst psi(kHypPsiTol);
  Worst roundoff(kRoundoffTol);
  Worst dictionary(kDictionaryTol);
  const GroupContext sl2 = make_context(2, Field::Real);
  for (int i = 0; i < kDictionarySamples; ++i) {
    // Rank one: the pipeline's psi_{w0}(n_t) and Psi(n_t) as homotheties z -> (a_1/a_2) z.
    double t = 0.0;
    while (std::abs(t) < 1e-2) t = rng.uniform(-10.0, 10.0);
    Vector v(1);
    v(0) = t;
    Matrix m = Matrix::Identity(2, 2);
    m(0, 1) = t;
    const UnipotentElement n(m);
    const auto [psi_w0, psi_avg] = hyp_psi(v);
    const Vector pw = psi_w(sl2, sl2.w0(), n).diag();
    const Vector pa = psi_general(sl2, n).diag();
    psi.add(std::abs(pw(0) / pw(1) - psi_w0) / psi_w0);
    psi.add(std::abs(pa(0) / pa(1) - psi_avg) / psi_avg);

    // Higher-dimensional boundaries against the norms directly.
    for (Eigen::Index dim : {2, 3}) {
      Vector u(dim);
      for (Eigen::Index k = 0; k < dim; ++k) u(k) = rng.uniform(-5.0, 5.0);
      const auto [a, b] = hyp_psi(u);
      psi.add(std::abs(a * u.squaredNorm() - 1.0));
      psi.add(std::abs(b / u.norm() - 1.0));
      const HypPoint foot = hyp_project_triple(HypBoundaryPoint::infinity(dim),
                                               HypBoundaryPoint::finite(Vector::Zero(dim)),
                                               HypBoundaryPoint::finite(u));
      roundoff.add(foot.horizontal.norm() / u.norm());
      roundoff.add(std::abs(foot.height - u.norm()) / u.norm());
    }

    const std::vector<Flag> f = random_generic_flags(sl2, rng, 3, GenericityMode::Triple, kSampleMargin);
    const SpdPoint phi = phi_triple(sl2, f[0], f[1], f[2], TripleMode::Generic);
    const Matrix& x = phi.matrix();
    const Complex z = (x(0, 1).real() + Complex(0.0, 1.0)) / x(1, 1).real();
    const HypPoint foot = hyp_project_triple(line_point(f[0]), line_point(f[1]), line_point(f[2]));
    dictionary.add(std::abs(z - Complex(foot.horizontal(0), foot.height)) / std::max(1.0, std::abs(z)));
  }
  return finish(8, "hyperbolic oracle and SL(2,R) dictionary",
                {{&psi, "hyp_psi"}, {&roundoff, "projection from (inf, 0)"}, {&dictionary, "phi vs H^2 foot"}});
}

CriterionResult barycenter_properties(std::uint64_t seed) {
  Rng rng(seed);
  Worst perm(kPermutationTol);
  Worst equiv(kBarEquivarianceTol);
  Worst gradient(kGradientTol);
  bool counts_ok = true;
  for (int n : {2, 3}) {
    for (Field field : {Field::Real, Field::Complex}) {
      const GroupContext ctx = make_context(n, field);
      for (std::size_t q : {3u, 4u, 5u}) {
        for (int i = 0; i < kBarInstances; ++i) {
          const std::vector<Flag> flags = random_generic_flags(ctx, rng, q, GenericityMode::Tuple, kSampleMargin);
          const BarycenterResult bar = bar_q_detailed(ctx, flags, TripleMode::Generic);
          counts_ok = counts_ok && bar.feet == q * (q - 1) * (q - 2);
          gradient.add(bar.grad_norm);

          std::vector<Flag> shuffled = flags;
          for (std::size_t k = shuffled.size() - 1; k > 0; --k) {
            std::swap(shuffled[k], shuffled[rng.index(k + 1)]);
          }
          const BarycenterResult again = bar_q_detailed(ctx, shuffled, TripleMode::Generic);
          gradient.add(again.grad_norm);
          perm.add(spd_distance(again.point, bar.point));

          const Matrix h = random_special_linear(ctx, rng);
          std::vector<Flag> moved;
          for (const Flag& f : flags) moved.emplace_back(h * f.rep());
          const BarycenterResult image = bar_q_detailed(ctx, moved, TripleMode::Generic);
          gradient.add(image.grad_norm);
          equiv.add(relative_difference(image.point.matrix(), h * bar.point.matrix() * h.adjoint()));
        }
      }
    }
  }
  return finish(9, "bar_q (q = 3, 4, 5; n = 2, 3)",
                {{&perm, "permutation distance"}, {&equiv, "G-equivariance"}, {&gradient, "Karcher gradient"}},
                counts_ok, counts_ok ? "foot counts q(q-1)(q-2)" : "foot count mismatch");
}

// ---------------------------------------------------------------- criterion 10

using IntMatrix = std::vector<std::vector<long long>>;

IntMatrix int_identity(int n) {
  IntMatrix m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix int_product(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

// Exact determinant by fraction-free (Bareiss) elimination with pivoting.
long long int_determinant(IntMatrix m) {
  const std::size_t n = m.size();
  long long sign = 1;
  long long prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const __int128 num = static_cast<__int128>(m[i][j]) * m[k][k] -
                             static_cast<__int128>(m[i][k]) * m[k][j];
        m[i][j] = static_cast<long long>(num / prev);
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

bool leading_minors_nonzero(const IntMatrix& m) {
  for (std::size_t k = 1; k <= m.size(); ++k) {
    IntMatrix block(k, std::vector<long long>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) block[i][j] = m[i][j];
    }
    if (int_determinant(block) == 0) return false;
  }
  return true;
}

Matrix to_matrix(const IntMatrix& m, double scale) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = static_cast<double>(m[i][j]) / scale;
  }
  return out;
}

struct MinorTally {
  int cases = 0;
  int opposite = 0;
  int disagreements = 0;
};

// x is a unimodular integer matrix (a product of elementary moves, so its
// inverse is known exactly), y has entries k/2 with |k| <= 2. The oracle reads
// the leading minors of w0^{-1} x^{-1} (2y) in exact integer arithmetic.
MinorTally opposite_vs_minors(int n, Rng& rng) {
  const GroupContext ctx = make_context(n, Field::Real);
  IntMatrix w0_inv(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w0_inv[i][j] = std::llround(std::conj(ctx.w0().rep(j, i)).real());
  }
  MinorTally tally;
  while (tally.cases < kMinorSamples) {
    IntMatrix x = int_identity(n);
    IntMatrix x_inv = int_identity(n);
    for (int step = 0; step < 2 * n; ++step) {
      const int i = static_cast<int>(rng.index(n));
      int j = static_cast<int>(rng.index(n - 1));
      if (j >= i) ++j;
      const long long c = rng.uniform() < 0.5 ? -1 : 1;
      IntMatrix e = int_identity(n);
      IntMatrix e_inv = int_identity(n);
      e[i][j] = c;
      e_inv[i][j] = -c;
      x = int_product(x, e);
      x_inv = int_product(e_inv, x_inv);
    }
    IntMatrix y2(n, std::vector<long long>(n));
    for (auto& row : y2) {
      for (auto& v : row) v = static_cast<long long>(rng.index(5)) - 2;
    }
    if (int_determinant(y2) == 0) continue;
    const bool exact = leading_minors_nonzero(int_product(w0_inv, int_product(x_inv, y2)));
    const bool computed = is_opposite(ctx, Flag(to_matrix(x, 1.0)), Flag(to_matrix(y2, 2.0))).opposite;
    ++tally.cases;
    if (exact) ++tally.opposite;
    if (exact != computed) ++tally.disagreements;
  }
  return tally;
}

template <class F>
std::string expect_error(ErrorKind kind, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.kind() == kind) return {};
    return std::string("got ") + std::string(to_string(e.kind()));
  } catch (const std::exception& e) {
    return std::string("got ") + e.what();
  }
  return "no error";
}

CriterionResult degeneracy(std::uint64_t seed) {
  std::vector<std::string> problems;
  const auto check = [&](const std::string& what, const std::string& outcome) {
    if (!outcome.empty()) problems.push_back(what + ": " + outcome);
  };
  const GroupContext sl3 = make_context(3, Field::Complex);
  const UnipotentElement n111 = to_unipotent({1.0, 1.0, 1.0});
  const Flag p = base_flag(sl3);
  const Flag w0p = weyl_flag(sl3, sl3.w0());
  const Flag z = chi(sl3, n111);
  check("psi_general(1,1,1)", expect_error(ErrorKind::NotGeneric, [&] { psi_general(sl3, n111); }));
  check("psi_tilde(1,1,1)", expect_error(ErrorKind::NotGeneric, [&] { psi_tilde(sl3, n111); }));
  check("phi_triple(1,1,1)",
        expect_error(ErrorKind::NotGeneric, [&] { phi_triple(sl3, p, w0p, z, TripleMode::Generic); }));
  check("sl3_reference Psi(1,1,1)",
        expect_error(ErrorKind::FormulaDomain, [&] { sl3_reference(Sl3Kind::Psi, {1.0, 1.0, 1.0}); }));
  const std::vector<Flag> triple = {p, w0p, z};
  if (genericity_check(sl3, GenericityMode::Triple, triple).generic) {
    problems.push_back("genericity_check accepted (1,1,1)");
  }
  try {
    psi_general(sl3, n111);
  } catch (const Error& e) {
    if (e.witness() != "xy-z") problems.push_back("witness '" + e.witness() + "' is not xy-z");
  }
  for (Eigen::Index dim : {1, 2, 3}) {
    check("hyp_psi(0)", expect_error(ErrorKind::DegenerateBoundary, [&] { hyp_psi(Vector::Zero(dim)); }));
  }

  Rng rng(seed);
  const MinorTally t3 = opposite_vs_minors(3, rng);
  const MinorTally t4 = opposite_vs_minors(4, rng);
  std::ostringstream detail;
  detail << "domain errors " << (problems.empty() ? "as designated" : "WRONG") << "; oppositeness vs exact minors: "
         << t3.disagreements << "/" << t3.cases << " disagreements (3x3, " << t3.opposite << " opposite), "
         << t4.disagreements << "/" << t4.cases << " (4x4, " << t4.opposite << " opposite)";
  for (const std::string& s : problems) detail << "; " << s;
  const bool ok = problems.empty() && t3.disagreements == 0 && t4.disagreements == 0;
  return {10, "degeneracy handling", ok, detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  using Criterion = std::function<CriterionResult(std::uint64_t)>;
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"SL(3,C) iota tables", iota_tables},
      {"SL(3,C) psi_w tables", psi_tables},
      {"SL(3,C) Psi and Psi~ closed forms", averaged_maps},
      {"SL(2,R) Psi = psi_w0^(-1/2)", rank_one_coincidence},
      {"equivariance (n = 2, 3, 4; real and complex)", equivariance_suite},
      {"independence of Weyl representatives", representative_independence},
      {"Phi on flats and triples (n = 2, 3)", phi_properties},
      {"hyperbolic oracle and SL(2,R) dictionary", hyperbolic_oracle},
      {"bar_q (q = 3, 4, 5; n = 2, 3)", barycenter_properties},
      {"degeneracy handling", degeneracy},
  };
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    try {
      results.push_back(criteria[i].second(seed + static_cast<std::uint64_t>(id)));
    } catch (const std::exception& e) {
      results.push_back({id, criteria[i].first, false, std::string("unexpected exception: ") + e.what()});
    }
  }
  return results;
}

std::string format_result(const CriterionResult& result) {
  std::ostringstream out;
  out << (result.passed ? "[PASS] " : "[FAIL] ") << result.id << " " << result.name << ": "
      << result.detail;
  return out.str();
}

}  // namespace furstenberg
