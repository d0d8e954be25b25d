#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "gridhopf/classify.hpp"
#include "gridhopf/coalgebra.hpp"
#include "gridhopf/comodules.hpp"
#include "gridhopf/error.hpp"
#include "gridhopf/hopf_bmn.hpp"
#include "gridhopf/quiver.hpp"

namespace gridhopf::cli {
namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  long m = 0, n = 0;
  std::string lambda = "1", s = "0", t = "0", k = "0";
  std::string to;  // second parameter tuple for `iso`
  std::string rule = "tables";
  long radius = 2;
  std::size_t max_dim = 6;
  int cover_bound = 6;
  unsigned seed = 20240601;
  std::size_t samples = 300;
  bool separability = true;
  std::string output;
  std::vector<std::string> inputs;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

BmnParams params_of(const RunConfig& c) {
  return validate_params(c.m, c.n, CycScalar::parse(c.lambda), CycScalar::parse(c.s),
                         CycScalar::parse(c.t), CycScalar::parse(c.k));
}

// "m,n,lambda,s,t,k"; commas inside parentheses belong to the scalar.
BmnParams params_of_tuple(const std::string& text) {
  std::vector<std::string> parts(1);
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0)
      parts.emplace_back();
    else
      parts.back() += ch;
  }
  if (parts.size() != 6) fail(ErrorCode::ParseError, "expected m,n,lambda,s,t,k in '" + text + "'");
  long m = 0, n = 0;
  try {
    m = std::stol(trim(parts[0]));
    n = std::stol(trim(parts[1]));
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad integers in '" + text + "'");
  }
  return validate_params(m, n, CycScalar::parse(trim(parts[2])), CycScalar::parse(trim(parts[3])),
                         CycScalar::parse(trim(parts[4])), CycScalar::parse(trim(parts[5])));
}

IsoRule rule_of(const RunConfig& c) {
  if (c.rule == "tables") return IsoRule::Tables;
  if (c.rule == "relations") return IsoRule::Relations;
  fail(ErrorCode::ParseError, "unknown rule '" + c.rule + "'");
}

json params_json(const BmnParams& p) {
  return {{"m", p.m}, {"n", p.n}, {"lambda", p.lambda.to_string()}, {"s", p.s.to_string()},
          {"t", p.t.to_string()}, {"k", p.k.to_string()}};
}

json witness_json(const IsoWitness& w) {
  return {{"type", w.swap ? "psi" : "phi"}, {"alpha", w.alpha.to_string()},
          {"beta", w.beta.to_string()}, {"text", w.to_string()}};
}

json quiver_json(const Quiver& q) { return json::parse(q.to_json()); }

bool is_param_law(ErrorCode c) {
  return c == ErrorCode::ForbiddenPair || c == ErrorCode::ParityViolation ||
         c == ErrorCode::LambdaOrderViolation || c == ErrorCode::ConstraintViolation;
}

json error_json(ErrorCode code, const std::string& detail) {
  json j{{"error", std::string(code_name(code))}, {"detail", detail}};
  if (is_param_law(code)) j["kind"] = "InvalidParams";
  return j;
}

struct Outcome {
  json body;
  int code = 0;
};

Outcome cmd_verify_hopf(const RunConfig& c) {
  BmnParams p = params_of(c);
  HopfReport r = verify_hopf_axioms(p, c.radius, c.seed, c.samples);
  json axioms = json::array();
  for (const auto& a : r.axioms) {
    json j{{"name", a.name}, {"passed", a.passed}, {"checked", a.checked}};
    if (!a.passed) j["witness"] = a.witness;
    axioms.push_back(j);
  }
  return {{{"params", params_json(p)}, {"radius", c.radius}, {"seed", c.seed}, {"ok", r.ok},
           {"axioms", axioms}},
          r.ok ? 0 : kExitNegative};
}

Outcome cmd_classify(const RunConfig& c) {
  BmnParams p = params_of(c);
  CanonicalForm cf = canonical_form(p, rule_of(c));
  return {{{"family", cf.family}, {"canonical_params", params_json(cf.params)},
           {"witness", witness_json(cf.witness)}},
          0};
}

Outcome cmd_iso(const RunConfig& c) {
  BmnParams p = params_of(c);
  BmnParams q = c.to.empty() ? p : params_of_tuple(c.to);
  auto w = are_isomorphic(p, q, rule_of(c));
  json j{{"from", params_json(p)}, {"to", params_json(q)}, {"isomorphic", w.has_value()}};
  if (w) {
    j["witness"] = witness_json(*w);
    j["witness_verified"] = verify_witness(*w, p, q);
  }
  return {j, w ? 0 : kExitNegative};
}

Outcome cmd_aut(const RunConfig& c) {
  BmnParams p = params_of(c);
  AutDescription a = automorphism_group(p, rule_of(c));
  json j{{"table", a.table},           {"row", a.row},
         {"group_name", a.group_name}, {"constraints", a.constraints},
         {"includes_swap", a.includes_swap}};
  if (a.includes_swap) j["swap_constraints"] = a.swap_constraints;
  j["finite"] = a.finite;
  if (a.finite) {
    json el = json::array();
    for (const auto& w : aut_elements(a)) el.push_back(w.to_string());
    j["elements"] = el;
  }
  return {j, 0};
}

json comodule_entry(const Comodule& m) {
  json j = json::parse(comodule_to_json(m));
  j["socle_series"] = socle_series(m);
  j["loewy_length"] = loewy_length(m);
  // End(M) is local: certificate of indecomposability
  j["end_dim"] = hom(m, m).dim();
  return j;
}

Outcome cmd_enumerate(const RunConfig& c, std::ostream& log) {
  BmnParams p = params_of(c);
  if (!discrete_predicate(p.m, p.n)) {
    DiscreteDecision d = decide_discrete(p, true);
    json wit = json::array();
    for (const auto& m : d.witness) wit.push_back(json::parse(comodule_to_json(m)));
    json e = error_json(ErrorCode::NotDiscreteParams,
                        "m = n != 0: band comodules give infinitely many indecomposables "
                        "with one dimension vector");
    e["witness"] = wit;
    e["witness_verified"] = d.witness_verified;
    return {e, kExitError};
  }
  log << "enumerating " << p.to_string() << " radius " << c.radius << " max-dim " << c.max_dim
      << "\n";
  auto mods = enumerate_indecomposables(p, c.radius, c.max_dim);
  json list = json::array();
  std::map<std::size_t, std::size_t> by_dim;
  for (const auto& m : mods) {
    list.push_back(comodule_entry(m));
    ++by_dim[m.dim()];
  }
  json counts = json::object();
  for (const auto& [d, k] : by_dim) counts[std::to_string(d)] = k;
  return {{{"params", params_json(p)},
           {"radius", c.radius},
           {"max_dim", c.max_dim},
           {"count", mods.size()},
           {"count_by_dimension", counts},
           {"modules", list}},
          0};
}

Quiver read_quiver(const std::string& path) {
  std::string text = read_file(path);
  auto b = text.find_first_not_of(" \t\r\n");
  if (b != std::string::npos && text[b] == '{') return Quiver::from_json(text);
  return Quiver::parse_text(text);
}

Outcome cmd_quiver(const RunConfig& c) {
  if (c.inputs.size() != 1) fail(ErrorCode::ParseError, "quiver expects one quiver file");
  Quiver q = read_quiver(c.inputs[0]);
  GraphClass gc = graph_class(q);
  HomogeneityReport h = check_homogeneous(q);
  json hj{{"is_homogeneous", h.is_homogeneous}, {"out_degree", h.out_degree},
          {"in_degree", h.in_degree},           {"loops", h.loops},
          {"failures", h.failures}};
  auto cov = find_nondynkin_cover(q, c.cover_bound);
  json cj{{"bound", c.cover_bound}, {"found", cov.has_value()}};
  if (cov) {
    cj["class"] = {{"kind", to_string(cov->cls.kind)}, {"name", cov->cls.name}};
    cj["cover"] = quiver_json(cov->cover);
    cj["image"] = quiver_json(cov->image);
    json vm = json::object();
    for (const auto& v : cov->cover.vertices()) vm[v] = cov->map.vertex_map.at(v);
    cj["vertex_map"] = vm;
  }
  return {{{"quiver", quiver_json(q)},
           {"graph_class", {{"kind", to_string(gc.kind)}, {"name", gc.name}}},
           {"connected", is_connected(q)},
           {"schurian", is_schurian(q)},
           {"bipartite_orientation", is_bipartite_orientation(q)},
           {"homogeneity", hj},
           {"nondynkin_cover", cj},
           {"verdict", cov ? "infinite type" : "no non-Dynkin cover within bound"}},
          0};
}

// Coalgebra file: quiver lines (`v`, `a`), then either `c <element>` lines
// spanning the subcoalgebra or `paths <L>` for all paths of length <= L.
struct CoalgebraFile {
  std::shared_ptr<const Quiver> q;
  SubCoalgebra c;
  std::vector<CoElement> listed;
};

CoalgebraFile read_coalgebra(const std::string& path) {
  std::string text = read_file(path);
  std::string qtext;
  std::vector<std::string> elems;
  std::optional<int> len;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string l = trim(line.substr(0, line.find('#')));
    if (l.empty()) continue;
    if (l.rfind("c ", 0) == 0)
      elems.push_back(trim(l.substr(2)));
    else if (l.rfind("paths ", 0) == 0)
      len = std::stoi(l.substr(6));
    else
      qtext += l + "\n";
  }
  CoalgebraFile f;
  f.q = std::make_shared<const Quiver>(Quiver::parse_text(qtext));
  if (!elems.empty()) {
    for (const auto& e : elems) f.listed.push_back(parse_element(*f.q, e));
    f.c = SubCoalgebra(f.q, f.listed);
  } else {
    f.c = path_coalgebra(f.q, len.value_or(static_cast<int>(f.q->num_vertices())));
    f.listed = f.c.basis();
  }
  return f;
}

Outcome cmd_covering(const RunConfig& c) {
  if (c.inputs.size() != 3)
    fail(ErrorCode::ParseError, "covering expects <domain> <codomain> <map> files");
  CoalgebraFile dom = read_coalgebra(c.inputs[0]);
  CoalgebraFile cod = read_coalgebra(c.inputs[1]);
  // map file: `<domain element> -> <codomain element>`, the left sides forming B
  std::vector<std::pair<CoElement, CoElement>> assign;
  std::vector<CoElement> b;
  std::istringstream in(read_file(c.inputs[2]));
  std::string line;
  while (std::getline(in, line)) {
    std::string l = trim(line.substr(0, line.find('#')));
    if (l.empty()) continue;
    auto arrow = l.find("->");
    if (arrow == std::string::npos) fail(ErrorCode::ParseError, "map line without '->': " + l);
    CoElement x = parse_element(*dom.q, trim(l.substr(0, arrow)));
    CoElement y = parse_element(*cod.q, trim(l.substr(arrow + 2)));
    assign.emplace_back(x, y);
    b.push_back(x);
  }
  CoalgebraMap pi = make_map(dom.c, cod.c, assign);
  CoveringCheck r = verify_covering(pi, b, cod.listed);
  json j{{"domain_dim", dom.c.dim()}, {"codomain_dim", cod.c.dim()}, {"is_covering", r.is_covering}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.counterexample) {
    auto [i, k] = *r.counterexample;
    j["counterexample"] = {element_to_string(*dom.q, b[i]), element_to_string(*dom.q, b[k])};
  }
  bool ok = r.is_covering;
  if (r.is_covering && c.separability) {
    SeparabilityReport s = separability_check(pi, b, cod.listed);
    j["separability"] = {{"separable", s.separable}, {"unit_ok", s.unit_ok},
                         {"central_ok", s.central_ok}, {"tensor_dim", s.tensor_dim},
                         {"detail", s.detail}};
    ok = ok && s.separable;
  }
  return {j, ok ? 0 : kExitNegative};
}

void add_param_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("-m", c.m, "exponent m of a^m = b^n");
  sub->add_option("-n", c.n, "exponent n of a^m = b^n");
  sub->add_option("--lambda", c.lambda, "scalar lambda")->capture_default_str();
  sub->add_option("--s", c.s, "scalar s")->capture_default_str();
  sub->add_option("--t", c.t, "scalar t")->capture_default_str();
  sub->add_option("--k", c.k, "scalar k")->capture_default_str();
}

void add_rule_flag(CLI::App* sub, RunConfig& c) {
  sub->add_option("--rule", c.rule, "swap rule: tables or relations")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& log) {
  RunConfig c;
  CLI::App app{"Pointed Hopf algebras B^{m,n}: verification, classification, comodules, quivers"};
  app.require_subcommand(1);
  app.add_option("-o,--output", c.output, "write JSON here instead of stdout");

  auto* verify = app.add_subcommand("verify-hopf", "check the Hopf axioms on a window");
  add_param_flags(verify, c);
  verify->add_option("-N", c.radius, "window radius")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--seed", c.seed, "seed for sampled axioms")->capture_default_str();
  verify->add_option("--samples", c.samples, "sample count")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "canonical family and witness");
  add_param_flags(classify, c);
  add_rule_flag(classify, c);

  auto* iso = app.add_subcommand("iso", "decide isomorphism with a second tuple");
  add_param_flags(iso, c);
  add_rule_flag(iso, c);
  iso->add_option("--to", c.to, "second parameters as m,n,lambda,s,t,k (default: the same)");

  auto* aut = app.add_subcommand("aut", "automorphism group of a canonical representative");
  add_param_flags(aut, c);
  add_rule_flag(aut, c);

  auto* enumerate = app.add_subcommand("enumerate", "indecomposable comodules on a window");
  add_param_flags(enumerate, c);
  enumerate->add_option("-N", c.radius, "window radius")->capture_default_str()->check(CLI::PositiveNumber);
  enumerate->add_option("--max-dim", c.max_dim, "total dimension bound")->capture_default_str();

  auto* quiver = app.add_subcommand("quiver", "graph class, homogeneity and non-Dynkin covers");
  quiver->add_option("file", c.inputs, "quiver file (text or JSON)")->required();
  quiver->add_option("--bound", c.cover_bound, "vertex bound for the cover search")->capture_default_str();

  auto* covering = app.add_subcommand("covering", "covering and separability check");
  covering->add_option("files", c.inputs, "<domain> <codomain> <map>")->required()->expected(3);
  covering->add_flag("!--no-separability", c.separability, "skip the separability check");

  for (auto* sub : {verify, classify, iso, aut, enumerate, quiver, covering})
    sub->add_option("-o,--output", c.output, "write JSON here instead of stdout");

  std::vector<std::string> args = raw_args;
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back

  Outcome res;
  try {
    app.parse(args);
    if (verify->parsed()) res = cmd_verify_hopf(c);
    else if (classify->parsed()) res = cmd_classify(c);
    else if (iso->parsed()) res = cmd_iso(c);
    else if (aut->parsed()) res = cmd_aut(c);
    else if (enumerate->parsed()) res = cmd_enumerate(c, log);
    else if (quiver->parsed()) res = cmd_quiver(c);
    else res = cmd_covering(c);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    res = {error_json(ErrorCode::ParseError, e.what()), kExitError};
  } catch (const Error& e) {
    res = {error_json(e.code(), e.detail()), kExitError};
  }

  std::string text = res.body.dump(2) + "\n";
  if (c.output.empty()) {
    out << text;
  } else {
    std::ofstream f(c.output);
    if (!f) {
      out << error_json(ErrorCode::ParseError, "cannot write " + c.output).dump(2) << "\n";
      return kExitError;
    }
    f << text;
    log << "wrote " << c.output << "\n";
  }
  return res.code;
}

}  // namespace gridhopf::cli
