// Closed-form iota_w, psi_w and Psi-type projections for SL(3, C), written out
// term by term. Used as an exact oracle for the generic pipeline.

#include <algorithm>
#include <cmath>

#include "furstenberg/errors.hpp"
#include "furstenberg/projections.hpp"

namespace furstenberg {

UnipotentElement to_unipotent(const Sl3Coords& c) {
  Matrix m = Matrix::Identity(3, 3);
  m(0, 1) = c.x;
  m(1, 2) = c.y;
  m(0, 2) = c.z;
  return UnipotentElement(m);
}

Sl3Coords to_sl3_coords(const UnipotentElement& n) {
  if (n.size() != 3) throw Error(ErrorKind::BadDimension, "to_sl3_coords: need a 3x3 unipotent");
  const Matrix& m = n.matrix();
  return {m(0, 1), m(1, 2), m(0, 2)};
}

std::string to_string(Sl3Kind kind) {
  switch (kind) {
    case Sl3Kind::IotaS: return "iota_s";
    case Sl3Kind::IotaT: return "iota_t";
    case Sl3Kind::IotaSt: return "iota_st";
    case Sl3Kind::IotaTs: return "iota_ts";
    case Sl3Kind::IotaW0: return "iota_w0";
    case Sl3Kind::PsiS: return "psi_s";
    case Sl3Kind::PsiT: return "psi_t";
    case Sl3Kind::PsiSt: return "psi_st";
    case Sl3Kind::PsiTs: return "psi_ts";
    case Sl3Kind::PsiW0: return "psi_w0";
    case Sl3Kind::Psi: return "Psi";
    case Sl3Kind::PsiPrime: return "PsiPrime";
    case Sl3Kind::PsiTilde: return "PsiTilde";
    case Sl3Kind::PsiTildePrime: return "PsiTildePrime";
  }
  return "unknown";
}

Sl3Kind sl3_kind_from_string(const std::string& name) {
  for (int k = 0; k <= static_cast<int>(Sl3Kind::PsiTildePrime); ++k) {
    const auto kind = static_cast<Sl3Kind>(k);
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown SL(3) table '" + name + "'");
}

namespace {

Matrix rep_s() {
  Matrix s = Matrix::Zero(3, 3);
  s(0, 1) = -1.0;
  s(1, 0) = 1.0;
  s(2, 2) = 1.0;
  return s;
}

Matrix rep_t() {
  Matrix t = Matrix::Zero(3, 3);
  t(0, 0) = 1.0;
  t(1, 2) = -1.0;
  t(2, 1) = 1.0;
  return t;
}

}  // namespace

Matrix sl3_table_representative(Sl3Kind kind) {
  switch (kind) {
    case Sl3Kind::IotaS:
    case Sl3Kind::PsiS:
      return rep_s();
    case Sl3Kind::IotaT:
    case Sl3Kind::PsiT:
      return rep_t();
    case Sl3Kind::IotaSt:
    case Sl3Kind::PsiSt:
      return rep_s() * rep_t();
    case Sl3Kind::IotaTs:
    case Sl3Kind::PsiTs:
      return rep_t() * rep_s();
    case Sl3Kind::IotaW0:
    case Sl3Kind::PsiW0:
      return rep_s() * rep_t() * rep_s();
    default:
      return Matrix::Identity(3, 3);
  }
}

std::vector<int> sl3_table_permutation(Sl3Kind kind) {
  const Matrix rep = sl3_table_representative(kind);
  std::vector<int> perm(3);
  for (Eigen::Index j = 0; j < 3; ++j) {
    Eigen::Index row = 0;
    rep.col(j).cwiseAbs().maxCoeff(&row);
    perm[static_cast<std::size_t>(j)] = static_cast<int>(row);
  }
  return perm;
}

std::vector<std::string> sl3_vanishing_factors(const Sl3Coords& c, double tol) {
  const Complex d = c.x * c.y - c.z;
  const double scale = std::max({std::abs(c.x), std::abs(c.y), std::abs(c.z), std::abs(c.x * c.y)});
  std::vector<std::string> out;
  if (std::abs(c.x) <= tol * scale) out.emplace_back("x");
  if (std::abs(c.y) <= tol * scale) out.emplace_back("y");
  if (std::abs(c.z) <= tol * scale) out.emplace_back("z");
  if (std::abs(d) <= tol * std::max(std::abs(c.x * c.y), std::abs(c.z))) out.emplace_back("xy-z");
  if (scale == 0.0) out = {"x", "y", "z", "xy-z"};
  return out;
}

namespace {

struct Factors {
  bool x = false, y = false, z = false, d = false;
};

void require(const Sl3Coords& c, Factors needed, double tol, Sl3Kind kind) {
  const std::vector<std::string> zero = sl3_vanishing_factors(c, tol);
  auto vanishes = [&](const char* name) {
    return std::find(zero.begin(), zero.end(), name) != zero.end();
  };
  std::string hit;
  if (needed.x && vanishes("x")) hit = "x";
  else if (needed.y && vanishes("y")) hit = "y";
  else if (needed.z && vanishes("z")) hit = "z";
  else if (needed.d && vanishes("xy-z")) hit = "xy-z";
  if (!hit.empty()) {
    throw Error(ErrorKind::FormulaDomain,
                "sl3_reference(" + to_string(kind) + "): denominator " + hit + " vanishes",
                std::nullopt, hit);
  }
}

// psi_w itself from the tabulated w0 psi_w w0^{-1} diagonal.
TorusElement from_table(double a1, double a2, double a3) {
  Vector v(3);
  v << a3, a2, a1;
  return TorusElement(v);
}

TorusElement sixth_root(double a1, double a2, double a3) {
  Vector v(3);
  v << std::pow(a1, 1.0 / 6.0), std::pow(a2, 1.0 / 6.0), std::pow(a3, 1.0 / 6.0);
  return TorusElement(v);
}

}  // namespace

Sl3Value sl3_reference(Sl3Kind kind, const Sl3Coords& c, double tol) {
  const Complex x = c.x, y = c.y, z = c.z;
  const Complex d = x * y - z;
  const double ax = std::abs(x), ay = std::abs(y), az = std::abs(z), ad = std::abs(d);
  switch (kind) {
    case Sl3Kind::IotaS:
      require(c, {.x = true}, tol, kind);
      return Sl3Coords{-1.0 / x, z, -y};
    case Sl3Kind::IotaT:
      require(c, {.y = true}, tol, kind);
      return Sl3Coords{-z + x * y, -1.0 / y, z / y};
    case Sl3Kind::IotaTs:
      require(c, {.x = true, .z = true}, tol, kind);
      return Sl3Coords{(-z + x * y) / x, -1.0 / z, -y / z};
    case Sl3Kind::IotaSt:
      require(c, {.y = true, .d = true}, tol, kind);
      return Sl3Coords{1.0 / (z - x * y), z / y, 1.0 / y};
    case Sl3Kind::IotaW0:
      require(c, {.z = true, .d = true}, tol, kind);
      return Sl3Coords{-x / (x * y - z), -y / z, 1.0 / z};

    case Sl3Kind::PsiS:
      require(c, {.x = true}, tol, kind);
      return from_table(ax, 1.0 / ax, 1.0);
    case Sl3Kind::PsiT:
      require(c, {.y = true}, tol, kind);
      return from_table(1.0, ay, 1.0 / ay);
    case Sl3Kind::PsiTs:
      require(c, {.x = true, .z = true}, tol, kind);
      return from_table(ax, az / ax, 1.0 / az);
    case Sl3Kind::PsiSt:
      require(c, {.y = true, .d = true}, tol, kind);
      return from_table(ad, ay / ad, 1.0 / ay);
    case Sl3Kind::PsiW0:
      require(c, {.z = true, .d = true}, tol, kind);
      return from_table(ad, az / ad, 1.0 / az);

    case Sl3Kind::Psi:
      require(c, {.x = true, .y = true, .z = true, .d = true}, tol, kind);
      return sixth_root(ax * ax * ad * ad, (ay * ay * az * az) / (ax * ax * ad * ad),
                        1.0 / (ay * ay * az * az));
    case Sl3Kind::PsiPrime:
      require(c, {.x = true, .y = true, .z = true}, tol, kind);
      return sixth_root(ax * ax * az * az, (ay * ay) / (ax * ax), 1.0 / (ay * ay * az * az));
    case Sl3Kind::PsiTilde:
      require(c, {.x = true, .y = true, .z = true, .d = true}, tol, kind);
      return sixth_root(ad * ax * az * az / ay, ad * ay * ay / (ax * ax * az),
                        ax / (ad * ad * ay * az));
    case Sl3Kind::PsiTildePrime: {
      require(c, {.x = true, .y = true, .z = true, .d = true}, tol, kind);
      auto p = [](double base, double num, double den) { return std::pow(base, num / den); };
      return sixth_root(
          p(ad, 2, 3) * p(ax, 2, 3) * p(az, 8, 3) / p(ay, 4, 3),
          p(ad, 2, 3) * p(ay, 8, 3) / (p(ax, 4, 3) * p(az, 4, 3)),
          p(ax, 2, 3) / (p(ad, 4, 3) * p(ay, 4, 3) * p(az, 4, 3)));
    }
  }
  throw Error(ErrorKind::InvalidArgument, "sl3_reference: unknown kind");
}

}  // namespace furstenberg
