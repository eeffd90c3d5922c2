#include "furstenberg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "furstenberg/acceptance.hpp"
#include "furstenberg/errors.hpp"
#include "furstenberg/hyperbolic.hpp"
#include "furstenberg/sampling.hpp"

namespace furstenberg {

InstanceDoc generate_instance(const InstanceRequest& request, std::uint64_t seed, double pivot_rel) {
  const std::string mode_name = request.mode == "generic" ? "tuple" : request.mode;
  const GenericityMode mode = genericity_mode_from_string(mode_name);
  const bool three = mode == GenericityMode::Triple || mode == GenericityMode::NOpp ||
                     mode == GenericityMode::W0Opp;
  if (three && request.q != 3) {
    throw Error(ErrorKind::InvalidArgument, "gen: mode '" + request.mode + "' needs q = 3");
  }
  if (mode == GenericityMode::Tuple && request.q < 3) {
    throw Error(ErrorKind::InvalidArgument, "gen: tuple genericity needs q >= 3");
  }
  if (mode == GenericityMode::PairwiseOpposite && request.q < 2) {
    throw Error(ErrorKind::InvalidArgument, "gen: pairwise genericity needs q >= 2");
  }
  if (request.n < 2 || request.n > kMaxDocumentRank) {
    throw Error(ErrorKind::BadDimension, "gen: n must lie in [2, " +
                                             std::to_string(kMaxDocumentRank) + "]");
  }

  Tolerances tol;
  tol.pivot_rel = pivot_rel;
  const GroupContext ctx = make_context(request.n, request.field, tol);
  Rng rng(seed);
  const std::vector<Flag> flags = random_generic_flags(ctx, rng, request.q, mode, 10.0 * pivot_rel);

  InstanceDoc doc;
  doc.n = request.n;
  doc.field = request.field;
  for (const Flag& f : flags) doc.flags.push_back(f.rep());
  doc.options.mode = request.mode;
  doc.options.pivot_rel = pivot_rel;
  return doc;
}

namespace {

struct Settings {
  std::optional<double> tol_pivot;
  std::optional<double> tol_eq;
  std::optional<double> karcher_step;
  std::optional<double> karcher_tol;
  std::optional<int> karcher_max_iter;
  std::string output = "pretty";
  std::string input;

  std::string mode;
  std::string map;
  std::string weyl;
  std::string op;

  std::uint64_t seed = 0;
  int n = 2;
  std::string field = "real";
  std::size_t q = 3;
  std::optional<std::uint64_t> selftest_seed;
};

class Session {
 public:
  Session(const Settings& settings, InstanceDoc doc) : s_(settings), doc_(std::move(doc)) {
    if (s_.tol_pivot) doc_.options.pivot_rel = *s_.tol_pivot;
    if (s_.tol_eq) doc_.options.eq_rel = *s_.tol_eq;
    if (s_.karcher_step) doc_.options.karcher.step = *s_.karcher_step;
    if (s_.karcher_tol) doc_.options.karcher.grad_tol = *s_.karcher_tol;
    if (s_.karcher_max_iter) doc_.options.karcher.max_iter = *s_.karcher_max_iter;
    doc_.options.karcher.validate();
  }

  Json decompose() {
    if (!doc_.matrix) throw MalformedInput("decompose: document needs a \"matrix\"");
    const IwasawaFactors f = iwasawa(context(), *doc_.matrix);
    return {{"a", encode_vector(f.a.diag())},
            {"n", matrix(f.n.matrix())},
            {"k", matrix(f.k)}};
  }

  Json opposite() {
    const std::vector<Flag> x = flags(2, 2);
    const Oppositeness o = is_opposite(context(), x[0], x[1]);
    return {{"opposite", o.opposite}, {"margin", o.margin}};
  }

  Json generic() {
    const std::string name = mode_or("tuple");
    const GenericityMode mode = genericity_mode_from_string(name == "generic" ? "tuple" : name);
    const std::vector<Flag> x = flags(2, static_cast<std::size_t>(-1));
    Json out = {{"mode", to_string(mode)}};
    try {
      const GenericityReport r = genericity_check(context(), mode, x);
      out["generic"] = r.generic;
      out["margin"] = r.margin;
      out["failed"] = r.failed;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotOpposite) throw;
      out["generic"] = false;
      out["margin"] = e.margin().value_or(0.0);
      out["failed"] = e.what();
    }
    return out;
  }

  Json project() {
    const GroupContext& ctx = context();
    const UnipotentElement n = unipotent_input();
    TorusElement a = TorusElement::identity(ctx.n());
    const std::string& map = s_.map;
    if (map == "psi_w") {
      if (s_.weyl.empty()) throw MalformedInput("project: --map psi_w needs --weyl");
      a = psi_w(ctx, ctx.weyl()[weyl_index(ctx, s_.weyl)], n);
    } else if (map == "Psi") {
      a = psi_general(ctx, n);
    } else if (map == "PsiMinusOne") {
      a = psi_minus_one(ctx, n);
    } else if (map == "PsiTilde") {
      a = psi_tilde(ctx, n);
    } else {
      throw MalformedInput("project: unknown map '" + map + "'");
    }
    return {{"map", map}, {"unipotent", matrix(n.matrix())}, {"torus", encode_vector(a.diag())}};
  }

  Json phi() {
    const GroupContext& ctx = context();
    const std::string mode = mode_or("triple");
    if (mode == "flat") {
      if (!doc_.flat) throw MalformedInput("phi --mode flat: document needs a \"flat\"");
      const std::vector<Flag> x = flags(1, 1);
      return {{"point", matrix(phi_flat(ctx, FlatRep(*doc_.flat), x[0]).matrix())}};
    }
    const TripleMode triple = triple_mode(mode);
    const std::vector<Flag> x = flags(3, 3);
    return {{"point", matrix(phi_triple(ctx, x[0], x[1], x[2], triple).matrix())}};
  }

  Json barq() {
    const TripleMode mode = triple_mode(mode_or("generic"));
    const std::vector<Flag> x = flags(3, static_cast<std::size_t>(-1));
    const BarycenterResult r = bar_q_detailed(context(), x, mode, doc_.options.karcher);
    return {{"point", matrix(r.point.matrix())},
            {"feet", r.feet},
            {"grad_norm", r.grad_norm},
            {"iterations", r.iterations}};
  }

  Json hyp() {
    std::vector<HypBoundaryPoint> pts;
    for (const HypBoundaryInput& p : doc_.hyperbolic) {
      if (p.at_infinity) {
        pts.push_back(HypBoundaryPoint::infinity(1));
      } else {
        pts.push_back(HypBoundaryPoint::finite(Eigen::Map<const Vector>(
            p.coords.data(), static_cast<Eigen::Index>(p.coords.size()))));
      }
    }
    Eigen::Index dim = 0;
    for (const HypBoundaryInput& p : doc_.hyperbolic) {
      if (p.at_infinity) continue;
      const auto d = static_cast<Eigen::Index>(p.coords.size());
      if (dim != 0 && d != dim) throw MalformedInput("hyp: points of different dimensions");
      dim = d;
    }
    if (dim == 0) dim = 1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (doc_.hyperbolic[i].at_infinity) pts[i] = HypBoundaryPoint::infinity(dim);
    }
    const auto arity = [&](std::size_t k) {
      if (pts.size() != k) {
        throw MalformedInput("hyp --op " + s_.op + ": needs " + std::to_string(k) + " points");
      }
    };

    if (s_.op == "w0") {
      arity(1);
      return {{"point", boundary(hyp_w0_boundary(pts[0]))}};
    }
    if (s_.op == "psi") {
      arity(1);
      if (pts[0].is_infinity()) throw MalformedInput("hyp --op psi: v must be finite");
      const auto [psi_w0, psi] = hyp_psi(pts[0].coords());
      return {{"psi_w0", psi_w0}, {"Psi", psi}};
    }
    if (s_.op == "project") {
      arity(3);
      return {{"point", interior(hyp_project_triple(pts[0], pts[1], pts[2]))}};
    }
    if (s_.op == "bar3") {
      arity(3);
      const HypMeanResult r = hyp_bar3_detailed(pts[0], pts[1], pts[2], doc_.options.karcher);
      return {{"point", interior(r.point)}, {"grad_norm", r.grad_norm}, {"iterations", r.iterations}};
    }
    throw MalformedInput("hyp: unknown op '" + s_.op + "'");
  }

 private:
  const GroupContext& context() {
    if (!ctx_) {
      if (!doc_.n) throw MalformedInput("document needs a \"context\"");
      Tolerances tol;
      tol.pivot_rel = doc_.options.pivot_rel;
      tol.eq_rel = doc_.options.eq_rel;
      ctx_.emplace(make_context(*doc_.n, doc_.field, tol));
    }
    return *ctx_;
  }

  std::string mode_or(const std::string& fallback) const {
    if (!s_.mode.empty()) return s_.mode;
    return doc_.options.mode.value_or(fallback);
  }

  static TripleMode triple_mode(const std::string& name) {
    if (name == "generic" || name == "triple" || name == "tuple") return TripleMode::Generic;
    if (name == "w0opp" || name == "pairwise") return TripleMode::W0Opp;
    throw MalformedInput("unknown triple mode '" + name + "'");
  }

  std::vector<Flag> flags(std::size_t lo, std::size_t hi) {
    const std::size_t count = doc_.flags.size();
    if (count < lo || count > hi) {
      std::ostringstream msg;
      msg << "expected " << lo;
      if (hi != lo) msg << (hi == static_cast<std::size_t>(-1) ? " or more" : " to " + std::to_string(hi));
      msg << " flags, got " << count;
      throw MalformedInput(msg.str());
    }
    std::vector<Flag> out;
    for (const Matrix& rep : doc_.flags) out.push_back(flag_of(context(), rep));
    return out;
  }

  UnipotentElement unipotent_input() {
    const GroupContext& ctx = context();
    if (doc_.unipotent) {
      try {
        return UnipotentElement(*doc_.unipotent, doc_.options.eq_rel);
      } catch (const Error& e) {
        throw MalformedInput(std::string("unipotent: ") + e.what());
      }
    }
    if (doc_.flags.size() == 1) return chi_inverse(ctx, flag_of(ctx, doc_.flags[0]));
    if (doc_.flags.size() == 3) {
      const std::vector<Flag> x = flags(3, 3);
      const FlatRep flat = flat_from_pair(ctx, x[0], x[1]);
      return chi_inverse(ctx, Flag(flat.g().inverse() * x[2].rep()));
    }
    throw MalformedInput("project: document needs \"unipotent\", one flag or three flags");
  }

  // "id", "w0", or a one-based permutation such as "3,1,2".
  static std::size_t weyl_index(const GroupContext& ctx, const std::string& text) {
    if (text == "id") return 0;
    if (text == "w0") return ctx.w0_index();
    std::vector<int> perm;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        perm.push_back(v - 1);
      } catch (const std::logic_error&) {
        throw MalformedInput("--weyl: cannot read '" + text + "'");
      }
    }
    try {
      return ctx.find(perm);
    } catch (const Error&) {
      throw MalformedInput("--weyl: '" + text + "' is not a permutation of 1.." +
                           std::to_string(ctx.n()));
    }
  }

  Json matrix(const Matrix& m) const { return encode_matrix(m, doc_.field); }

  static Json boundary(const HypBoundaryPoint& p) {
    if (p.is_infinity()) return "inf";
    return encode_vector(p.coords());
  }

  static Json interior(const HypPoint& p) {
    return {{"horizontal", encode_vector(p.horizontal)}, {"height", p.height}};
  }

  const Settings& s_;
  InstanceDoc doc_;
  std::optional<GroupContext> ctx_;
};

Json error_object(const std::string& kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

Json domain_error(const Error& e) {
  Json out = {{"error", std::string(to_string(e.kind()))}, {"predicate", e.what()}};
  out["margin"] = e.margin() ? Json(*e.margin()) : Json(nullptr);
  out["witness"] = e.witness().empty() ? Json(nullptr) : Json(e.witness());
  return out;
}

std::string read_all(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

InstanceDoc read_document(const Settings& s, std::istream& in) {
  std::string text;
  if (!s.input.empty() && s.input != "-") {
    std::ifstream file(s.input);
    if (!file) throw MalformedInput("cannot open input file '" + s.input + "'");
    text = read_all(file);
  } else {
    text = read_all(in);
  }
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw MalformedInput("empty input document");
  }
  return parse_instance(text);
}

void add_common_options(CLI::App& app, Settings& s) {
  app.add_option("--tol-pivot", s.tol_pivot, "relative pivot tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-eq", s.tol_eq, "relative equality tolerance")->check(CLI::PositiveNumber);
  app.add_option("--karcher-step", s.karcher_step, "initial Karcher step in (0, 2)");
  app.add_option("--karcher-tol", s.karcher_tol, "Karcher gradient tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--karcher-max-iter", s.karcher_max_iter, "Karcher iteration limit")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", s.output, "pretty or compact")
      ->check(CLI::IsMember({"pretty", "compact"}));
  app.add_option("-i,--input", s.input, "read the document from a file instead of stdin");
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out) {
  Settings s;
  CLI::App app{"Equivariant projections onto maximal flats and ideal barycenters"};
  app.name("furst");
  app.require_subcommand(1, 1);
  add_common_options(app, s);

  auto* decompose = app.add_subcommand("decompose", "Iwasawa decomposition of \"matrix\"");
  auto* opposite = app.add_subcommand("opposite", "whether two flags are opposite");
  auto* generic = app.add_subcommand("generic", "genericity check of the flags");
  generic->add_option("--mode", s.mode)
      ->check(CLI::IsMember({"triple", "tuple", "generic", "pairwise", "nopp", "w0opp"}));
  auto* project = app.add_subcommand("project", "a projection N -> A");
  project->add_option("--map", s.map)
      ->required()
      ->check(CLI::IsMember({"psi_w", "Psi", "PsiMinusOne", "PsiTilde"}));
  project->add_option("--weyl", s.weyl, "id, w0 or a one-based permutation like 3,1,2");
  auto* phi = app.add_subcommand("phi", "projection of a flag onto a flat");
  phi->add_option("--mode", s.mode)->check(CLI::IsMember({"flat", "triple", "w0opp"}));
  auto* barq = app.add_subcommand("barq", "barycenter of a generic q-tuple of flags");
  barq->add_option("--mode", s.mode)->check(CLI::IsMember({"generic", "w0opp"}));
  auto* hyp = app.add_subcommand("hyp", "upper half-space hyperbolic operations");
  hyp->add_option("--op", s.op)->required()->check(
      CLI::IsMember({"w0", "psi", "project", "bar3"}));
  auto* gen = app.add_subcommand("gen", "seeded random generic instance");
  gen->add_option("--seed", s.seed)->required();
  gen->add_option("--n", s.n)->check(CLI::Range(2, kMaxDocumentRank));
  gen->add_option("--field", s.field)->check(CLI::IsMember({"real", "complex"}));
  gen->add_option("--q", s.q)->check(CLI::PositiveNumber);
  gen->add_option("--mode", s.mode)
      ->check(CLI::IsMember({"generic", "tuple", "triple", "pairwise", "nopp", "w0opp"}));
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--seed", s.selftest_seed);
  for (CLI::App* sub : {decompose, opposite, generic, project, phi, barq, hyp, gen, selftest}) {
    sub->fallthrough();
  }

  const auto emit = [&](const Json& doc) {
    out << (s.output == "compact" ? doc.dump() : doc.dump(2)) << '\n';
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    emit(error_object("MalformedInput", e.what()));
    return kExitMalformed;
  }

  Field doc_field = Field::Real;
  try {
    if (selftest->parsed()) {
      const std::vector<CriterionResult> results = run_acceptance(s.selftest_seed.value_or(kAcceptanceSeed));
      Json criteria = Json::array();
      bool all = true;
      for (const CriterionResult& r : results) {
        criteria.push_back(
            {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        all = all && r.passed;
      }
      emit({{"passed", all}, {"criteria", std::move(criteria)}});
      return all ? kExitOk : kExitSelftestFailed;
    }
    if (gen->parsed()) {
      InstanceRequest request;
      request.n = s.n;
      request.field = field_from_string(s.field);
      request.q = s.q;
      if (!s.mode.empty()) request.mode = s.mode;
      emit(to_json(generate_instance(request, s.seed, s.tol_pivot.value_or(kDefaultPivotRel))));
      return kExitOk;
    }

    InstanceDoc doc = read_document(s, in);
    doc_field = doc.field;
    Session session(s, std::move(doc));
    const std::vector<std::pair<CLI::App*, std::function<Json()>>> handlers = {
        {decompose, [&] { return session.decompose(); }},
        {opposite, [&] { return session.opposite(); }},
        {generic, [&] { return session.generic(); }},
        {project, [&] { return session.project(); }},
        {phi, [&] { return session.phi(); }},
        {barq, [&] { return session.barq(); }},
        {hyp, [&] { return session.hyp(); }},
    };
    for (const auto& [sub, handler] : handlers) {
      if (sub->parsed()) {
        emit(handler());
        return kExitOk;
      }
    }
    emit(error_object("MalformedInput", "no subcommand"));
    return kExitMalformed;
  } catch (const MalformedInput& e) {
    emit(error_object("MalformedInput", e.what()));
    return kExitMalformed;
  } catch (const NoConvergenceError& e) {
    Json err = error_object(std::string(to_string(e.kind())), e.what());
    err["gradient_norm"] = e.gradient_norm();
    err["iterations"] = e.iterations();
    err["last_iterate"] = encode_matrix(e.last_iterate(), doc_field);
    emit(err);
    return kExitNoConvergence;
  } catch (const Error& e) {
    if (e.is_domain_error() || e.kind() == ErrorKind::GenerationExhausted) {
      emit(domain_error(e));
      return kExitDomain;
    }
    emit(error_object(std::string(to_string(e.kind())), e.what()));
    return kExitMalformed;
  } catch (const std::exception& e) {
    emit(error_object("MalformedInput", e.what()));
    return kExitMalformed;
  }
}

}  // namespace furstenberg
