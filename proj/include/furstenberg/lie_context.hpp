#pragma once

// The SL(n, R) / SL(n, C) instance of (G, K, P, A, N, M, T, W): Weyl group
// with determinant-one monomial representatives, the Iwasawa A-projection
// and the positive diagonal torus.

#include <cstddef>
#include <string>
#include <vector>

#include "furstenberg/matrix_kernel.hpp"

namespace furstenberg {

enum class Field { Real, Complex };

std::string to_string(Field field);
Field field_from_string(const std::string& name);

struct Tolerances {
  double pivot_rel = kDefaultPivotRel;
  double eq_rel = 1e-9;
  double cond_max = kDefaultCondMax;
  /// Allowed |det(g) - 1| for inputs that must lie in SL(n).
  double det_abs = 1e-8;
};

inline constexpr double kTorusProductTol = 1e-8;

/// Positive diagonal matrix with unit product: an element of A.
class TorusElement {
 public:
  explicit TorusElement(Vector diag, double product_tol = kTorusProductTol);

  static TorusElement identity(Eigen::Index n);
  /// exp of a log-vector; the mean is removed so the product is exactly 1.
  static TorusElement from_log(const Vector& log_diag);

  const Vector& diag() const noexcept { return diag_; }
  Eigen::Index size() const noexcept { return diag_.size(); }
  Vector log() const { return diag_.array().log(); }
  Matrix matrix() const { return diag_.cast<Complex>().asDiagonal(); }

  TorusElement operator*(const TorusElement& other) const;
  TorusElement inverse() const;
  /// Conjugation by an antidiagonal matrix: the diagonal read backwards.
  TorusElement reversed() const;

  /// max_i |a_i - b_i| / b_i against a reference b.
  double relative_error(const TorusElement& reference) const;

 private:
  Vector diag_;
};

/// Entrywise a^lam = exp(lam log a).
TorusElement torus_power(const TorusElement& a, double lam);

/// Unit upper-triangular matrix: an element of N.
class UnipotentElement {
 public:
  /// Accepts m when its diagonal is within eq_rel of 1 and its strictly
  /// lower part within eq_rel (relative to the largest entry) of 0, then
  /// stores the cleaned matrix.
  explicit UnipotentElement(const Matrix& m, double eq_rel = 1e-9);

  static UnipotentElement identity(Eigen::Index n);

  const Matrix& matrix() const noexcept { return mat_; }
  Eigen::Index size() const noexcept { return mat_.rows(); }
  /// Exact inverse by back substitution.
  Matrix inverse() const;

 private:
  Matrix mat_;
};

struct WeylElement {
  /// perm[j] is the image of basis index j: rep * e_j is a multiple of e_perm[j].
  std::vector<int> perm;
  /// Monomial matrix, entries of modulus one, determinant one.
  Matrix rep;
  int inversions = 0;
};

/// w a w^{-1}.
TorusElement conjugate(const WeylElement& w, const TorusElement& a);
/// w^{-1} a w.
TorusElement conjugate_inverse(const WeylElement& w, const TorusElement& a);

class GroupContext {
 public:
  GroupContext(int n, Field field, Tolerances tol);

  int n() const noexcept { return n_; }
  Field field() const noexcept { return field_; }
  const Tolerances& tol() const noexcept { return tol_; }

  const std::vector<WeylElement>& weyl() const noexcept { return weyl_; }
  std::size_t w0_index() const noexcept { return w0_index_; }
  const WeylElement& w0() const { return weyl_[w0_index_]; }
  const WeylElement& identity_element() const { return weyl_.front(); }
  /// Index of the element with the given permutation; throws InvalidArgument.
  std::size_t find(const std::vector<int>& perm) const;

  /// Copy of this context whose stored representatives are replaced. Each
  /// replacement must represent the same Weyl element, i.e. differ from the
  /// current one by left multiplication with an element of M.
  GroupContext with_representatives(const std::vector<Matrix>& reps) const;

 private:
  int n_;
  Field field_;
  Tolerances tol_;
  std::vector<WeylElement> weyl_;
  std::size_t w0_index_ = 0;
};

/// Throws BadDimension for n < 2.
GroupContext make_context(int n, Field field, const Tolerances& tol = {});

/// The n! Weyl elements in lexicographic permutation order; the identity is
/// first and the order reversal (w0) last.
const std::vector<WeylElement>& weyl_elements(const GroupContext& ctx);

struct IwasawaFactors {
  TorusElement a;
  UnipotentElement n;
  Matrix k;
};

/// g = diag(a) * n * k with k unitary. Requires |det g - 1| <= det_abs.
IwasawaFactors iwasawa(const GroupContext& ctx, const Matrix& g);

/// The A-component of the Iwasawa decomposition.
TorusElement project_to_torus(const GroupContext& ctx, const Matrix& g);

/// Whether w0 a w0^{-1} = a^{-1} on the torus (checked on the n-1 simple
/// coroot directions).
bool w0_is_minus_one(const GroupContext& ctx);

}  // namespace furstenberg
