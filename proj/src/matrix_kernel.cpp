#include "furstenberg/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "furstenberg/errors.hpp"

namespace furstenberg {

namespace {

// Shared elimination loop. Returns false (with `margin` set) on breakdown.
bool eliminate(const Matrix& m, double rel_pivot_tol, Matrix* lower, Matrix* upper,
               double& margin, Eigen::Index& failed_step) {
  const Eigen::Index n = m.rows();
  Matrix u = m;
  Matrix l = Matrix::Identity(n, n);
  margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double scale = u.bottomRightCorner(n - k, n - k).cwiseAbs().maxCoeff();
    const double pivot = std::abs(u(k, k));
    const double ratio = scale > 0.0 ? pivot / scale : 0.0;
    margin = std::min(margin, ratio);
    if (ratio <= rel_pivot_tol) {
      failed_step = k;
      return false;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Complex factor = u(i, k) / u(k, k);
      l(i, k) = factor;
      u.row(i).tail(n - k) -= factor * u.row(k).tail(n - k);
      u(i, k) = 0.0;
    }
  }
  if (lower != nullptr) *lower = std::move(l);
  if (upper != nullptr) *upper = std::move(u);
  return true;
}

}  // namespace

LuFactors lu_unit_lower(const Matrix& m, double rel_pivot_tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::BadDimension, "lu_unit_lower: matrix must be square and nonempty");
  }
  LuFactors out;
  Eigen::Index failed_step = -1;
  if (!eliminate(m, rel_pivot_tol, &out.lower, &out.upper, out.margin, failed_step)) {
    std::ostringstream msg;
    msg << "lu_unit_lower: pivot breakdown at step " << failed_step + 1
        << " (relative pivot " << out.margin << ")";
    throw Error(ErrorKind::PivotBreakdown, msg.str(), out.margin);
  }
  return out;
}

double lu_pivot_margin(const Matrix& m, double rel_pivot_tol) {
  double margin = 0.0;
  Eigen::Index failed_step = -1;
  eliminate(m, rel_pivot_tol, nullptr, nullptr, margin, failed_step);
  return margin;
}

TriangularUnitary triangular_unitary_split(const Matrix& m, double cond_max) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n || n == 0) {
    throw Error(ErrorKind::BadDimension, "triangular_unitary_split: matrix must be square");
  }
  // M^* J = Q1 R1  =>  M = (J R1^* J) (J Q1^*), J the order reversal.
  const Matrix reversed = m.adjoint().rowwise().reverse();
  Eigen::HouseholderQR<Matrix> qr(reversed);
  const Matrix r1 = qr.matrixQR().triangularView<Eigen::Upper>();
  const Matrix q1 = qr.householderQ();

  Matrix t = r1.adjoint().reverse();
  Matrix q = q1.adjoint().colwise().reverse();

  for (Eigen::Index i = 0; i < n; ++i) {
    const double modulus = std::abs(t(i, i));
    if (modulus == 0.0 || !std::isfinite(modulus)) {
      throw Error(ErrorKind::NumericallySingular, "triangular_unitary_split: singular matrix");
    }
    const Complex phase = t(i, i) / modulus;
    t.col(i) *= std::conj(phase);
    q.row(i) *= phase;
    t(i, i) = modulus;
  }
  t = t.triangularView<Eigen::Upper>().toDenseMatrix();

  const Matrix t_inv =
      t.triangularView<Eigen::Upper>().solve(Matrix::Identity(n, n));
  const double cond = m.norm() * t_inv.norm();
  if (!std::isfinite(cond) || cond > cond_max) {
    std::ostringstream msg;
    msg << "triangular_unitary_split: condition estimate " << cond << " exceeds " << cond_max;
    throw Error(ErrorKind::NumericallySingular, msg.str());
  }
  return {std::move(t), std::move(q)};
}

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> checked_eigen(const Matrix& x, double pd_rel) {
  if (x.rows() != x.cols() || x.rows() == 0) {
    throw Error(ErrorKind::BadDimension, "expected a nonempty square matrix");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(x));
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NotPositiveDefinite, "Hermitian eigensolver failed");
  }
  const Vector& ev = es.eigenvalues();
  const double top = std::max(std::abs(ev.maxCoeff()), std::numeric_limits<double>::min());
  if (!(ev.minCoeff() > pd_rel * top)) {
    std::ostringstream msg;
    msg << "matrix is not positive definite (smallest eigenvalue " << ev.minCoeff() << ")";
    throw Error(ErrorKind::NotPositiveDefinite, msg.str(), ev.minCoeff() / top);
  }
  return es;
}

Matrix spectral(const Eigen::SelfAdjointEigenSolver<Matrix>& es, const Vector& values) {
  const Matrix& v = es.eigenvectors();
  return hermitian_part(v * values.cast<Complex>().asDiagonal() * v.adjoint());
}

}  // namespace

Matrix herm_pd_power(const Matrix& x, double lam, double pd_rel) {
  const auto es = checked_eigen(x, pd_rel);
  if (lam == 0.0) return Matrix::Identity(x.rows(), x.cols());
  if (lam == 1.0) return x;
  const Vector powered = es.eigenvalues().array().pow(lam);
  return spectral(es, powered);
}

Matrix herm_pd_log(const Matrix& x, double pd_rel) {
  const auto es = checked_eigen(x, pd_rel);
  const Vector logs = es.eigenvalues().array().log();
  return spectral(es, logs);
}

Matrix herm_exp(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  const Vector exps = es.eigenvalues().array().exp();
  return spectral(es, exps);
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

double relative_difference(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(b.norm(), std::numeric_limits<double>::min());
}

}  // namespace furstenberg
