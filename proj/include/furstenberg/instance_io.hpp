#pragma once

// JSON instance documents. Matrices are row-major arrays of rows; a complex
// entry is written [re, im], and documents for the real field carry plain
// numbers. Doubles are written in shortest round-trip form, so an emitted
// document re-parses to an identical value.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "furstenberg/barycenter.hpp"

namespace furstenberg {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";
/// Largest n accepted in a document (the Weyl group has n! elements).
inline constexpr int kMaxDocumentRank = 6;

/// A point of the ideal boundary of hyperbolic space as written in a
/// document: a coordinate array, or the string "inf".
struct HypBoundaryInput {
  bool at_infinity = false;
  std::vector<double> coords;

  bool operator==(const HypBoundaryInput&) const = default;
};

struct InstanceOptions {
  std::optional<std::string> mode;
  double pivot_rel = kDefaultPivotRel;
  double eq_rel = 1e-9;
  KarcherConfig karcher;
};

struct InstanceDoc {
  std::string schema_version = kSchemaVersion;
  /// Absent only for documents that carry nothing but hyperbolic data.
  std::optional<int> n;
  Field field = Field::Real;
  std::vector<Matrix> flags;
  std::optional<Matrix> matrix;
  std::optional<Matrix> unipotent;
  std::optional<Matrix> flat;
  std::vector<HypBoundaryInput> hyperbolic;
  InstanceOptions options;
};

bool operator==(const InstanceOptions& a, const InstanceOptions& b);
bool operator==(const InstanceDoc& a, const InstanceDoc& b);

/// Thrown for anything that is not a well-formed document.
class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

InstanceDoc parse_instance(const Json& doc);
InstanceDoc parse_instance(const std::string& text);
Json to_json(const InstanceDoc& doc);

/// Matrix and scalar encoders shared with the result documents.
Json encode_matrix(const Matrix& m, Field field);
Json encode_complex(Complex z, Field field);
Json encode_vector(const Vector& v);
/// rows x cols matrix; real-field documents reject nonzero imaginary parts.
Matrix decode_matrix(const Json& j, Field field, Eigen::Index rows, Eigen::Index cols,
                     const std::string& where);

}  // namespace furstenberg
