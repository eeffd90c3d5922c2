#include "furstenberg/lie_context.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "furstenberg/errors.hpp"

namespace furstenberg {

std::string to_string(Field field) { return field == Field::Real ? "real" : "complex"; }

Field field_from_string(const std::string& name) {
  if (name == "real") return Field::Real;
  if (name == "complex") return Field::Complex;
  throw Error(ErrorKind::InvalidArgument, "unknown field '" + name + "'");
}

// ---------------------------------------------------------------- torus

TorusElement::TorusElement(Vector diag, double product_tol) : diag_(std::move(diag)) {
  if (diag_.size() == 0) throw Error(ErrorKind::BadDimension, "empty torus element");
  for (Eigen::Index i = 0; i < diag_.size(); ++i) {
    if (!(diag_(i) > 0.0) || !std::isfinite(diag_(i))) {
      throw Error(ErrorKind::InvalidArgument, "torus entries must be finite and positive");
    }
  }
  const double log_product = diag_.array().log().sum();
  if (std::abs(log_product) > product_tol) {
    std::ostringstream msg;
    msg << "torus element has product " << std::exp(log_product) << ", expected 1";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

TorusElement TorusElement::identity(Eigen::Index n) { return TorusElement(Vector::Ones(n)); }

TorusElement TorusElement::from_log(const Vector& log_diag) {
  const Vector centered = log_diag.array() - log_diag.mean();
  return TorusElement(centered.array().exp());
}

TorusElement TorusElement::operator*(const TorusElement& other) const {
  return from_log(log() + other.log());
}

TorusElement TorusElement::inverse() const { return from_log(-log()); }

TorusElement TorusElement::reversed() const { return TorusElement(diag_.reverse()); }

double TorusElement::relative_error(const TorusElement& reference) const {
  if (reference.size() != size()) {
    throw Error(ErrorKind::BadDimension, "torus size mismatch");
  }
  return ((diag_ - reference.diag_).array().abs() / reference.diag_.array()).maxCoeff();
}

TorusElement torus_power(const TorusElement& a, double lam) {
  if (lam == 0.0) return TorusElement::identity(a.size());
  return TorusElement::from_log(lam * a.log());
}

// ---------------------------------------------------------------- unipotent

UnipotentElement::UnipotentElement(const Matrix& m, double eq_rel) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n || n == 0) throw Error(ErrorKind::BadDimension, "unipotent must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(m(i, i) - 1.0) > eq_rel) {
      throw Error(ErrorKind::InvalidArgument, "unipotent diagonal must be 1");
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(m(i, j)) > eq_rel * scale) {
        throw Error(ErrorKind::InvalidArgument, "unipotent must be upper triangular");
      }
    }
  }
  mat_ = m.triangularView<Eigen::StrictlyUpper>().toDenseMatrix();
  mat_.diagonal().setOnes();
}

UnipotentElement UnipotentElement::identity(Eigen::Index n) {
  return UnipotentElement(Matrix::Identity(n, n));
}

Matrix UnipotentElement::inverse() const {
  const Eigen::Index n = size();
  return mat_.triangularView<Eigen::UnitUpper>().solve(Matrix::Identity(n, n));
}

// ---------------------------------------------------------------- Weyl group

TorusElement conjugate(const WeylElement& w, const TorusElement& a) {
  Vector out(a.size());
  for (std::size_t j = 0; j < w.perm.size(); ++j) out(w.perm[j]) = a.diag()(j);
  return TorusElement(out);
}

TorusElement conjugate_inverse(const WeylElement& w, const TorusElement& a) {
  Vector out(a.size());
  for (std::size_t j = 0; j < w.perm.size(); ++j) out(j) = a.diag()(w.perm[j]);
  return TorusElement(out);
}

namespace {

int count_inversions(const std::vector<int>& perm) {
  int count = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) ++count;
    }
  }
  return count;
}

WeylElement make_weyl_element(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  WeylElement w;
  w.perm = perm;
  w.inversions = count_inversions(perm);
  w.rep = Matrix::Zero(n, n);
  const bool is_reversal = w.inversions == n * (n - 1) / 2;
  if (is_reversal) {
    // Alternating signs down the antidiagonal; the determinant is
    // sign(reversal) * (-1)^{n(n-1)/2} = 1 for every n.
    for (int i = 0; i < n; ++i) w.rep(i, n - 1 - i) = (i % 2 == 0) ? 1.0 : -1.0;
    return w;
  }
  for (int j = 0; j < n; ++j) w.rep(perm[j], j) = 1.0;
  if (w.inversions % 2 == 1) w.rep(perm[0], 0) = -1.0;
  return w;
}

// True when rep = m * reference with m diagonal, unit modulus, det 1.
bool same_weyl_class(const Matrix& rep, const Matrix& reference, double tol) {
  const Matrix m = rep * reference.adjoint();
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) {
        if (std::abs(std::abs(m(i, i)) - 1.0) > tol) return false;
      } else if (std::abs(m(i, j)) > tol) {
        return false;
      }
    }
  }
  return std::abs(m.diagonal().prod() - 1.0) <= tol;
}

}  // namespace

GroupContext::GroupContext(int n, Field field, Tolerances tol)
    : n_(n), field_(field), tol_(tol) {
  if (n < 2) {
    throw Error(ErrorKind::BadDimension, "group context needs n >= 2, got " + std::to_string(n));
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    weyl_.push_back(make_weyl_element(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  w0_index_ = weyl_.size() - 1;
}

std::size_t GroupContext::find(const std::vector<int>& perm) const {
  for (std::size_t i = 0; i < weyl_.size(); ++i) {
    if (weyl_[i].perm == perm) return i;
  }
  throw Error(ErrorKind::InvalidArgument, "not a permutation of the context's index set");
}

GroupContext GroupContext::with_representatives(const std::vector<Matrix>& reps) const {
  if (reps.size() != weyl_.size()) {
    throw Error(ErrorKind::InvalidArgument, "with_representatives: need one matrix per element");
  }
  GroupContext out = *this;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (reps[i].rows() != n_ || reps[i].cols() != n_ ||
        !same_weyl_class(reps[i], weyl_[i].rep, 1e-12)) {
      throw Error(ErrorKind::InvalidArgument,
                  "with_representatives: replacement is not an M-translate of the stored representative");
    }
    out.weyl_[i].rep = reps[i];
  }
  return out;
}

GroupContext make_context(int n, Field field, const Tolerances& tol) {
  return GroupContext(n, field, tol);
}

const std::vector<WeylElement>& weyl_elements(const GroupContext& ctx) { return ctx.weyl(); }

// ---------------------------------------------------------------- Iwasawa

IwasawaFactors iwasawa(const GroupContext& ctx, const Matrix& g) {
  if (g.rows() != ctx.n() || g.cols() != ctx.n()) {
    throw Error(ErrorKind::BadDimension, "iwasawa: matrix size does not match context");
  }
  const Complex det = g.determinant();
  if (std::abs(det - 1.0) > ctx.tol().det_abs) {
    std::ostringstream msg;
    msg << "iwasawa: det(g) = " << det << " is not 1";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  TriangularUnitary split = triangular_unitary_split(g, ctx.tol().cond_max);
  const Vector a = split.triangular.diagonal().real();
  Matrix n = split.triangular;
  for (Eigen::Index i = 0; i < n.rows(); ++i) n.row(i) /= a(i);
  n.diagonal().setOnes();
  return {TorusElement(a), UnipotentElement(n, 1e-12), std::move(split.unitary)};
}

TorusElement project_to_torus(const GroupContext& ctx, const Matrix& g) {
  return iwasawa(ctx, g).a;
}

bool w0_is_minus_one(const GroupContext& ctx) {
  const WeylElement& w0 = ctx.w0();
  for (int k = 0; k + 1 < ctx.n(); ++k) {
    Vector log_a = Vector::Zero(ctx.n());
    log_a(k) = 1.0;
    log_a(k + 1) = -1.0;
    const TorusElement a = TorusElement::from_log(log_a);
    if (conjugate(w0, a).relative_error(a.inverse()) > 1e-12) return false;
  }
  return true;
}

}  // namespace furstenberg
