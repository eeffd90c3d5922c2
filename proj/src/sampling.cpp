#include "furstenberg/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "furstenberg/errors.hpp"

namespace furstenberg {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::index(std::size_t count) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(count)) % count;
}

Matrix random_matrix(const GroupContext& ctx, Rng& rng) {
  const int n = ctx.n();
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = rng.uniform(-1.0, 1.0);
      const double im = ctx.field() == Field::Complex ? rng.uniform(-1.0, 1.0) : 0.0;
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Matrix random_special_linear(const GroupContext& ctx, Rng& rng, double max_cond) {
  const int n = ctx.n();
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Matrix g = random_matrix(ctx, rng);
    Complex det = g.determinant();
    if (std::abs(det) < 1e-3) continue;
    if (ctx.field() == Field::Real && det.real() < 0.0) {
      g.row(0) *= -1.0;
      det = -det;
    }
    // Real positive det for the real field, so the n-th root stays real.
    const Complex root = ctx.field() == Field::Real
                             ? Complex(std::pow(det.real(), 1.0 / n), 0.0)
                             : std::pow(det, 1.0 / n);
    g /= root;
    const Matrix inv = g.inverse();
    if (g.norm() * inv.norm() < max_cond) return g;
  }
  throw Error(ErrorKind::GenerationExhausted, "random_special_linear: no sample within condition bound");
}

UnipotentElement random_unipotent(const GroupContext& ctx, Rng& rng, double scale) {
  const int n = ctx.n();
  Matrix m = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double re = rng.uniform(-scale, scale);
      const double im = ctx.field() == Field::Complex ? rng.uniform(-scale, scale) : 0.0;
      m(i, j) = Complex(re, im);
    }
  }
  return UnipotentElement(m);
}

TorusElement random_torus(const GroupContext& ctx, Rng& rng, double spread) {
  Vector log_a(ctx.n());
  for (int i = 0; i < ctx.n(); ++i) log_a(i) = rng.uniform(-spread, spread);
  return TorusElement::from_log(log_a);
}

Matrix random_m(const GroupContext& ctx, Rng& rng) {
  const int n = ctx.n();
  Matrix m = Matrix::Identity(n, n);
  if (ctx.field() == Field::Real) {
    for (int i = 0; i + 1 < n; ++i) m(i, i) = rng.uniform() < 0.5 ? -1.0 : 1.0;
    Complex prod = m.diagonal().head(n - 1).prod();
    m(n - 1, n - 1) = 1.0 / prod;
  } else {
    double total = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      const double theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
      m(i, i) = std::polar(1.0, theta);
      total += theta;
    }
    m(n - 1, n - 1) = std::polar(1.0, -total);
  }
  return m;
}

Matrix random_t(const GroupContext& ctx, Rng& rng) {
  const WeylElement& w = ctx.weyl()[rng.index(ctx.weyl().size())];
  return random_m(ctx, rng) * w.rep;
}

double nopp_margin(const GroupContext& ctx, const UnipotentElement& n) {
  const Flag image = chi(ctx, n);
  double margin = std::numeric_limits<double>::infinity();
  for (const WeylElement& w : ctx.weyl()) {
    margin = std::min(margin, is_opposite(ctx, weyl_flag(ctx, w), image).margin);
  }
  return margin;
}

UnipotentElement random_generic_unipotent(const GroupContext& ctx, Rng& rng, double min_margin,
                                          double scale, int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    UnipotentElement n = random_unipotent(ctx, rng, scale);
    if (nopp_margin(ctx, n) > min_margin) return n;
  }
  throw Error(ErrorKind::GenerationExhausted, "random_generic_unipotent: too many rejections");
}

std::vector<Flag> random_generic_flags(const GroupContext& ctx, Rng& rng, std::size_t q,
                                       GenericityMode mode, double min_margin, int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Flag> flags;
    flags.reserve(q);
    bool usable = true;
    for (std::size_t i = 0; i < q; ++i) {
      Matrix rep = random_matrix(ctx, rng);
      if (std::abs(rep.determinant()) < 1e-6) usable = false;
      flags.emplace_back(std::move(rep));
    }
    if (!usable) continue;
    const GenericityReport report = genericity_check(ctx, mode, flags);
    if (report.generic && report.margin > min_margin) return flags;
  }
  throw Error(ErrorKind::GenerationExhausted, "random_generic_flags: too many rejections");
}

GroupContext twisted_context(const GroupContext& ctx, Rng& rng) {
  std::vector<Matrix> reps;
  reps.reserve(ctx.weyl().size());
  for (const WeylElement& w : ctx.weyl()) reps.push_back(random_m(ctx, rng) * w.rep);
  return ctx.with_representatives(reps);
}

}  // namespace furstenberg
