#pragma once

// G/K realized as determinant-one Hermitian positive-definite matrices
// (gK -> g g^*), the projections Phi onto maximal flats, the Cartan
// (Karcher) mean and the symmetric barycenter bar_q of generic q-tuples.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "furstenberg/projections.hpp"

namespace furstenberg {

class SpdPoint {
 public:
  /// Validates Hermitian (within eq_rel), positive definite and
  /// |log det| <= log_det_tol; stores the Hermitian part.
  explicit SpdPoint(const Matrix& mat, double eq_rel = 1e-9, double log_det_tol = 1e-6);

  /// The point F F^* for an invertible F with |log |det F|^2| <= log_det_tol.
  /// F is kept: for ill-conditioned points it determines the small
  /// eigenvalues far more accurately than the rounded product does.
  static SpdPoint from_factor(const Matrix& f, double log_det_tol = 1e-6);

  const Matrix& matrix() const noexcept { return mat_; }
  Eigen::Index size() const noexcept { return mat_.rows(); }
  /// The factor given to from_factor, if any.
  const std::optional<Matrix>& factor() const noexcept { return factor_; }

 private:
  SpdPoint() = default;

  Matrix mat_;
  std::optional<Matrix> factor_;
};

struct KarcherConfig {
  double step = 1.0;
  double grad_tol = 1e-12;
  int max_iter = 200;

  /// Throws InvalidArgument unless step in (0, 2) and tolerances positive.
  void validate() const;
};

struct KarcherResult {
  SpdPoint point;
  /// ||(1/m) sum log(X^{-1/2} P_i X^{-1/2})||_F at the returned point.
  double grad_norm = 0.0;
  int iterations = 0;
};

SpdPoint spd_of_coset(const GroupContext& ctx, const Matrix& g);

/// ||log(X^{-1/2} Y X^{-1/2})||_F.
double spd_distance(const SpdPoint& x, const SpdPoint& y);

/// (1/m) sum_i log(X^{-1/2} P_i X^{-1/2}) and its Frobenius norm.
double karcher_gradient_norm(std::span<const SpdPoint> points, const SpdPoint& at);

/// Gradient iteration X <- X^{1/2} exp(s/m sum log(X^{-1/2}P_iX^{-1/2})) X^{1/2}
/// started at the first point. The trial s is cfg.step on the first iteration
/// and afterwards the inverse secant curvature along the previous step, capped
/// at cfg.step; it is halved until the objective (1/2m) sum d(X, P_i)^2 passes
/// an Armijo decrease test (a decrease of the gradient norm once the objective
/// change is below rounding). Runs in extended precision and uses the stored
/// factors of the points where present.
/// Throws NoConvergenceError after max_iter.
KarcherResult karcher_solve(std::span<const SpdPoint> points, const KarcherConfig& cfg = {});
SpdPoint karcher_mean(std::span<const SpdPoint> points, const KarcherConfig& cfg = {});

/// Phi(F, x) = g Psi~(chi^{-1}(g^{-1} x))^2 g^* with g = F.g.
SpdPoint phi_flat(const GroupContext& ctx, const FlatRep& flat, const Flag& x);

enum class TripleMode { Generic, W0Opp };

std::string to_string(TripleMode mode);
TripleMode triple_mode_from_string(const std::string& name);

/// Phi for the flat g F_A through (g P, g w0 P) and a third flag z, with g
/// given explicitly. Uses Psi (Generic) or psi_{w0}^{-1/2} (W0Opp).
SpdPoint phi_on_pair(const GroupContext& ctx, const Matrix& g, const Flag& z, TripleMode mode);

/// Phi(x, y, z) on the unique flat F_{x,y}.
SpdPoint phi_triple(const GroupContext& ctx, const Flag& x, const Flag& y, const Flag& z,
                    TripleMode mode);

struct BarycenterResult {
  SpdPoint point;
  std::size_t feet = 0;
  double grad_norm = 0.0;
  int iterations = 0;
};

/// Karcher mean of Phi(x_i, x_j, x_k) over all ordered distinct triples.
/// Checks genericity (Tuple or PairwiseOpposite) first and throws NotGeneric.
BarycenterResult bar_q_detailed(const GroupContext& ctx, std::span<const Flag> flags,
                                TripleMode mode, const KarcherConfig& cfg = {});
SpdPoint bar_q(const GroupContext& ctx, std::span<const Flag> flags, TripleMode mode,
               const KarcherConfig& cfg = {});

/// The ordered-triple feet that bar_q averages, in lexicographic (i, j, k) order.
std::vector<SpdPoint> bar_q_feet(const GroupContext& ctx, std::span<const Flag> flags,
                                 TripleMode mode);

}  // namespace furstenberg
