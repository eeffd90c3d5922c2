#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace furstenberg {

enum class ErrorKind {
  PivotBreakdown,
  NumericallySingular,
  NotPositiveDefinite,
  BadDimension,
  InvalidArgument,
  NotOpposite,
  NotGeneric,
  WrongGroupType,
  FormulaDomain,
  NoConvergence,
  DegenerateBoundary,
  DegeneratePair,
  GenerationExhausted,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. Domain violations carry the pivot
/// margin that triggered them and, when it can be named, the vanishing
/// quantity (e.g. "xy-z" for SL(3)).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<double> margin = std::nullopt, std::string witness = {})
      : std::runtime_error(message),
        kind_(kind),
        margin_(margin),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<double> margin() const noexcept { return margin_; }
  const std::string& witness() const noexcept { return witness_; }

  /// True for the kinds that mean "input lies outside the map's domain".
  bool is_domain_error() const noexcept;

 private:
  ErrorKind kind_;
  std::optional<double> margin_;
  std::string witness_;
};

/// Raised by the barycenter iterations; keeps the last iterate so callers
/// can inspect how far they got. For hyperbolic means the iterate is stored
/// as a 1 x n row (horizontal coordinates, then height).
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& message, Eigen::MatrixXcd last_iterate,
                     double gradient_norm, int iterations)
      : Error(ErrorKind::NoConvergence, message),
        last_iterate_(std::move(last_iterate)),
        gradient_norm_(gradient_norm),
        iterations_(iterations) {}

  const Eigen::MatrixXcd& last_iterate() const noexcept { return last_iterate_; }
  double gradient_norm() const noexcept { return gradient_norm_; }
  int iterations() const noexcept { return iterations_; }

 private:
  Eigen::MatrixXcd last_iterate_;
  double gradient_norm_;
  int iterations_;
};

}  // namespace furstenberg
