#pragma once

#include <initializer_list>
#include <string>

#include <gtest/gtest.h>

#include "furstenberg/errors.hpp"
#include "furstenberg/lie_context.hpp"

namespace furstenberg::testing {

inline Matrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = static_cast<Eigen::Index>(rows.begin()->size());
  Matrix m(n_rows, n_cols);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

inline ::testing::AssertionResult matrices_near(const Matrix& actual, const Matrix& expected,
                                                double rel_tol) {
  if (actual.rows() != expected.rows() || actual.cols() != expected.cols()) {
    return ::testing::AssertionFailure() << "shape mismatch";
  }
  const double err = relative_difference(actual, expected);
  if (err <= rel_tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "relative error " << err << " > " << rel_tol
                                       << "\nactual:\n" << actual << "\nexpected:\n" << expected;
}

inline ::testing::AssertionResult torus_near(const TorusElement& actual, const Vector& expected,
                                             double rel_tol) {
  if (actual.size() != expected.size()) return ::testing::AssertionFailure() << "size mismatch";
  const double err = actual.relative_error(TorusElement(expected, 1e-6));
  if (err <= rel_tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "relative error " << err << " > " << rel_tol
                                       << "\nactual:   " << actual.diag().transpose()
                                       << "\nexpected: " << expected.transpose();
}

}  // namespace furstenberg::testing

// Expects `statement` to throw furstenberg::Error of the given kind.
#define EXPECT_ERROR_KIND(statement, expected_kind)                                   \
  do {                                                                                \
    bool thrown_ = false;                                                             \
    try {                                                                             \
      statement;                                                                      \
    } catch (const ::furstenberg::Error& e_) {                                        \
      thrown_ = true;                                                                 \
      EXPECT_EQ(e_.kind(), expected_kind) << e_.what();                               \
    }                                                                                 \
    EXPECT_TRUE(thrown_) << "expected " << ::furstenberg::to_string(expected_kind);   \
  } while (false)
