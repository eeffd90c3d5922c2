#include "furstenberg/instance_io.hpp"

#include <cmath>
#include <set>

#include "furstenberg/errors.hpp"

namespace furstenberg {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw MalformedInput(what); }

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) malformed(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) malformed(where + ": number is not finite");
  return v;
}

Complex entry(const Json& j, Field field, const std::string& where) {
  if (j.is_number()) return {number(j, where), 0.0};
  if (!j.is_array() || j.size() != 2) malformed(where + ": expected a number or [re, im]");
  const Complex z(number(j[0], where), number(j[1], where));
  if (field == Field::Real && z.imag() != 0.0) {
    malformed(where + ": complex entry in a real-field document");
  }
  return z;
}

void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) malformed(where + ": unknown key '" + item.key() + "'");
  }
}

const Json* member(const Json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double positive(const Json& j, const std::string& where) {
  const double v = number(j, where);
  if (!(v > 0.0)) malformed(where + ": must be positive");
  return v;
}

InstanceOptions parse_options(const Json& j) {
  if (!j.is_object()) malformed("options: expected an object");
  reject_unknown_keys(j, {"mode", "tolerances", "karcher"}, "options");
  InstanceOptions opts;
  if (const Json* mode = member(j, "mode")) {
    if (!mode->is_string()) malformed("options.mode: expected a string");
    opts.mode = mode->get<std::string>();
  }
  if (const Json* tol = member(j, "tolerances")) {
    if (!tol->is_object()) malformed("options.tolerances: expected an object");
    reject_unknown_keys(*tol, {"pivot_rel", "eq_rel"}, "options.tolerances");
    if (const Json* v = member(*tol, "pivot_rel")) opts.pivot_rel = positive(*v, "pivot_rel");
    if (const Json* v = member(*tol, "eq_rel")) opts.eq_rel = positive(*v, "eq_rel");
  }
  if (const Json* k = member(j, "karcher")) {
    if (!k->is_object()) malformed("options.karcher: expected an object");
    reject_unknown_keys(*k, {"step", "grad_tol", "max_iter"}, "options.karcher");
    if (const Json* v = member(*k, "step")) opts.karcher.step = number(*v, "karcher.step");
    if (const Json* v = member(*k, "grad_tol")) opts.karcher.grad_tol = number(*v, "karcher.grad_tol");
    if (const Json* v = member(*k, "max_iter")) {
      if (!v->is_number_integer()) malformed("karcher.max_iter: expected an integer");
      opts.karcher.max_iter = v->get<int>();
    }
    try {
      opts.karcher.validate();
    } catch (const Error& e) {
      malformed(std::string("options.karcher: ") + e.what());
    }
  }
  return opts;
}

HypBoundaryInput parse_boundary_point(const Json& j, const std::string& where) {
  HypBoundaryInput p;
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") malformed(where + ": the only named point is \"inf\"");
    p.at_infinity = true;
    return p;
  }
  if (!j.is_array() || j.empty()) malformed(where + ": expected a coordinate array or \"inf\"");
  for (const Json& c : j) p.coords.push_back(number(c, where));
  return p;
}

}  // namespace

Json encode_complex(Complex z, Field field) {
  if (field == Field::Real) return z.real();
  return Json::array({z.real(), z.imag()});
}

Json encode_matrix(const Matrix& m, Field field) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(encode_complex(m(i, j), field));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json encode_vector(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix decode_matrix(const Json& j, Field field, Eigen::Index rows, Eigen::Index cols,
                     const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    malformed(where + ": expected " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      malformed(where + ": row " + std::to_string(i) + " must have " + std::to_string(cols) +
                " entries");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = entry(row[static_cast<std::size_t>(k)], field, where);
    }
  }
  return m;
}

InstanceDoc parse_instance(const Json& j) {
  if (!j.is_object()) malformed("document: expected a JSON object");
  reject_unknown_keys(j,
                      {"schema_version", "context", "flags", "matrix", "unipotent", "flat",
                       "hyperbolic", "options"},
                      "document");
  InstanceDoc doc;
  const Json* version = member(j, "schema_version");
  if (version == nullptr || !version->is_string()) malformed("schema_version: missing");
  doc.schema_version = version->get<std::string>();
  if (doc.schema_version != kSchemaVersion) {
    malformed("schema_version: unsupported version '" + doc.schema_version + "'");
  }

  if (const Json* ctx = member(j, "context")) {
    if (!ctx->is_object()) malformed("context: expected an object");
    reject_unknown_keys(*ctx, {"n", "field"}, "context");
    const Json* n = member(*ctx, "n");
    if (n == nullptr || !n->is_number_integer()) malformed("context.n: expected an integer");
    doc.n = n->get<int>();
    if (*doc.n < 2 || *doc.n > kMaxDocumentRank) {
      malformed("context.n: must lie in [2, " + std::to_string(kMaxDocumentRank) + "]");
    }
    const Json* field = member(*ctx, "field");
    if (field == nullptr || !field->is_string()) malformed("context.field: expected a string");
    const std::string name = field->get<std::string>();
    if (name != "real" && name != "complex") malformed("context.field: '" + name + "'");
    doc.field = field_from_string(name);
  }

  const auto square = [&](const Json& m, const std::string& where) {
    if (!doc.n) malformed(where + ": needs a context");
    return decode_matrix(m, doc.field, *doc.n, *doc.n, where);
  };
  if (const Json* flags = member(j, "flags")) {
    if (!flags->is_array()) malformed("flags: expected an array of matrices");
    for (std::size_t i = 0; i < flags->size(); ++i) {
      doc.flags.push_back(square((*flags)[i], "flags[" + std::to_string(i) + "]"));
    }
  }
  if (const Json* m = member(j, "matrix")) doc.matrix = square(*m, "matrix");
  if (const Json* m = member(j, "unipotent")) doc.unipotent = square(*m, "unipotent");
  if (const Json* m = member(j, "flat")) doc.flat = square(*m, "flat");

  if (const Json* hyp = member(j, "hyperbolic")) {
    if (!hyp->is_object()) malformed("hyperbolic: expected an object");
    reject_unknown_keys(*hyp, {"points"}, "hyperbolic");
    const Json* points = member(*hyp, "points");
    if (points == nullptr || !points->is_array()) malformed("hyperbolic.points: expected an array");
    for (std::size_t i = 0; i < points->size(); ++i) {
      doc.hyperbolic.push_back(
          parse_boundary_point((*points)[i], "hyperbolic.points[" + std::to_string(i) + "]"));
    }
  }

  if (const Json* opts = member(j, "options")) doc.options = parse_options(*opts);
  return doc;
}

InstanceDoc parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  return parse_instance(j);
}

Json to_json(const InstanceDoc& doc) {
  Json j;
  j["schema_version"] = doc.schema_version;
  if (doc.n) j["context"] = {{"n", *doc.n}, {"field", to_string(doc.field)}};
  if (!doc.flags.empty()) {
    Json flags = Json::array();
    for (const Matrix& f : doc.flags) flags.push_back(encode_matrix(f, doc.field));
    j["flags"] = std::move(flags);
  }
  if (doc.matrix) j["matrix"] = encode_matrix(*doc.matrix, doc.field);
  if (doc.unipotent) j["unipotent"] = encode_matrix(*doc.unipotent, doc.field);
  if (doc.flat) j["flat"] = encode_matrix(*doc.flat, doc.field);
  if (!doc.hyperbolic.empty()) {
    Json points = Json::array();
    for (const HypBoundaryInput& p : doc.hyperbolic) {
      points.push_back(p.at_infinity ? Json("inf") : Json(p.coords));
    }
    j["hyperbolic"] = {{"points", std::move(points)}};
  }
  Json opts;
  if (doc.options.mode) opts["mode"] = *doc.options.mode;
  opts["tolerances"] = {{"pivot_rel", doc.options.pivot_rel}, {"eq_rel", doc.options.eq_rel}};
  opts["karcher"] = {{"step", doc.options.karcher.step},
                     {"grad_tol", doc.options.karcher.grad_tol},
                     {"max_iter", doc.options.karcher.max_iter}};
  j["options"] = std::move(opts);
  return j;
}

bool operator==(const InstanceOptions& a, const InstanceOptions& b) {
  return a.mode == b.mode && a.pivot_rel == b.pivot_rel && a.eq_rel == b.eq_rel &&
         a.karcher.step == b.karcher.step && a.karcher.grad_tol == b.karcher.grad_tol &&
         a.karcher.max_iter == b.karcher.max_iter;
}

bool operator==(const InstanceDoc& a, const InstanceDoc& b) {
  const auto same = [](const std::optional<Matrix>& x, const std::optional<Matrix>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->rows() == y->rows() && x->cols() == y->cols() && *x == *y);
  };
  if (a.flags.size() != b.flags.size()) return false;
  for (std::size_t i = 0; i < a.flags.size(); ++i) {
    if (!same(a.flags[i], b.flags[i])) return false;
  }
  return a.schema_version == b.schema_version && a.n == b.n &&
         (!a.n || a.field == b.field) && same(a.matrix, b.matrix) &&
         same(a.unipotent, b.unipotent) && same(a.flat, b.flat) && a.hyperbolic == b.hyperbolic &&
         a.options == b.options;
}

}  // namespace furstenberg
