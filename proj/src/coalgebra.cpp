#include "gridhopf/coalgebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "gridhopf/error.hpp"

namespace gridhopf {

int path_source(const Quiver& /*q*/, const Path& p) { return p.start; }

int path_target(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return p.start;
  return q.vertex_index(q.arrow_at(p.arrows.back()).dst);
}

Path trivial_path(const Quiver& q, const std::string& v) { return Path{q.vertex_index(v), {}}; }

Path arrow_path(const Quiver& q, const std::string& id) {
  int a = q.arrow_index(id);
  return Path{q.vertex_index(q.arrow_at(a).src), {a}};
}

Path make_path(const Quiver& q, const std::vector<std::string>& ids) {
  if (ids.empty()) fail(ErrorCode::InvalidMorphism, "make_path needs at least one arrow");
  Path p = arrow_path(q, ids[0]);
  for (std::size_t k = 1; k < ids.size(); ++k) {
    int a = q.arrow_index(ids[k]);
    if (q.arrow_at(a).src != q.arrow_at(p.arrows.back()).dst)
      fail(ErrorCode::InvalidMorphism, "arrows " + ids[k - 1] + " and " + ids[k] + " do not compose");
    p.arrows.push_back(a);
  }
  return p;
}

Path concat(const Quiver& q, const Path& a, const Path& b) {
  if (path_target(q, a) != b.start) fail(ErrorCode::InvalidMorphism, "paths do not compose");
  Path out = a;
  out.arrows.insert(out.arrows.end(), b.arrows.begin(), b.arrows.end());
  return out;
}

CoElement element(const Path& p, const CycScalar& c) {
  CoElement x;
  if (!c.is_zero()) x.emplace(p, c);
  return x;
}

std::string path_to_string(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e_" + q.vertex_at(p.start);
  std::string s = "(";
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) s += "|";
    s += q.arrow_at(p.arrows[k]).id;
  }
  return s + ")";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Does the scalar string need parentheses when used as a coefficient?
bool compound(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '^') return true;
  return false;
}

}  // namespace

Path parse_path(const Quiver& q, const std::string& text) {
  std::string t = trim(text);
  if (t.rfind("e_", 0) == 0) {
    std::string v = t.substr(2);
    if (!q.has_vertex(v)) fail(ErrorCode::ParseError, "unknown vertex in path " + t);
    return trivial_path(q, v);
  }
  if (t.size() < 3 || t.front() != '(' || t.back() != ')')
    fail(ErrorCode::ParseError, "bad path " + t);
  std::vector<std::string> ids;
  std::string cur;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] == '|') {
      ids.push_back(trim(cur));
      cur.clear();
    } else {
      cur += t[i];
    }
  }
  ids.push_back(trim(cur));
  for (const auto& id : ids)
    if (!q.has_arrow(id)) fail(ErrorCode::ParseError, "unknown arrow '" + id + "' in path " + t);
  try {
    return make_path(q, ids);
  } catch (const Error& e) {
    fail(ErrorCode::ParseError, e.detail());
  }
}

std::string element_to_string(const Quiver& q, const CoElement& x) {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [p, c] : x) {
    std::string ps = path_to_string(q, p);
    bool neg = false;
    std::string cs = c.to_string();
    if (!compound(cs) && cs[0] == '-') {
      neg = true;
      cs = cs.substr(1);
    }
    std::string term;
    if (cs == "1")
      term = ps;
    else if (compound(cs))
      term = "(" + cs + ")*" + ps;
    else
      term = cs + "*" + ps;
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? "-" : "+") + term;
  }
  return out;
}

CoElement parse_element(const Quiver& q, const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) fail(ErrorCode::ParseError, "empty element");
  if (t == "0") return {};
  // split into signed terms at top-level + and -
  std::vector<std::pair<bool, std::string>> terms;
  int depth = 0;
  bool neg = false;
  std::string cur;
  auto flush = [&]() {
    std::string s = trim(cur);
    if (s.empty()) fail(ErrorCode::ParseError, "empty term in " + t);
    terms.emplace_back(neg, s);
    cur.clear();
  };
  std::size_t i = 0;
  if (t[0] == '-' || t[0] == '+') {
    neg = t[0] == '-';
    i = 1;
  }
  char prev = 0;
  for (; i < t.size(); ++i) {
    char ch = t[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-') && prev != '^' && prev != '*' && prev != '/' &&
        !trim(cur).empty()) {
      flush();
      neg = ch == '-';
    } else {
      cur += ch;
    }
    if (!std::isspace(static_cast<unsigned char>(ch))) prev = ch;
  }
  flush();
  CoElement out;
  for (const auto& [minus, term] : terms) {
    // coefficient is everything before the last top-level '*'
    int d = 0;
    std::size_t star = std::string::npos;
    for (std::size_t k = 0; k < term.size(); ++k) {
      if (term[k] == '(') ++d;
      if (term[k] == ')') --d;
      if (term[k] == '*' && d == 0) star = k;
    }
    CycScalar c(1L);
    std::string ps = term;
    if (star != std::string::npos) {
      c = CycScalar::parse(term.substr(0, star));
      ps = term.substr(star + 1);
    }
    if (minus) c = -c;
    add_entry(out, parse_path(q, ps), c);
  }
  return out;
}

Tensor delta(const Quiver& q, const CoElement& x) {
  Tensor out;
  for (const auto& [p, c] : x) {
    int v = p.start;
    for (std::size_t k = 0; k <= p.arrows.size(); ++k) {
      Path left{p.start, std::vector<int>(p.arrows.begin(), p.arrows.begin() + k)};
      Path right{v, std::vector<int>(p.arrows.begin() + k, p.arrows.end())};
      add_entry(out, PathPair{left, right}, c);
      if (k < p.arrows.size()) v = q.vertex_index(q.arrow_at(p.arrows[k]).dst);
    }
  }
  return out;
}

CycScalar counit(const CoElement& x) {
  CycScalar s;
  for (const auto& [p, c] : x)
    if (p.arrows.empty()) s += c;
  return s;
}

std::optional<std::pair<int, int>> diamond_ends(const Quiver& q, const CoElement& x) {
  if (x.empty()) return std::nullopt;
  int s = path_source(q, x.begin()->first), t = path_target(q, x.begin()->first);
  for (const auto& [p, c] : x)
    if (path_source(q, p) != s || path_target(q, p) != t) return std::nullopt;
  return std::pair{s, t};
}

SubCoalgebra::SubCoalgebra(std::shared_ptr<const Quiver> q, const std::vector<CoElement>& spanning,
                           bool check_closure)
    : q_(std::move(q)) {
  SparseSpan<Path> probe;
  for (const auto& x : spanning)
    if (probe.insert(x)) {
      basis_.push_back(x);
      span_.insert(x);
    }
  if (!check_closure) return;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (!tensor_coords(delta(*q_, basis_[k])))
      fail(ErrorCode::NotClosedUnderDelta,
           "Delta(" + element_to_string(*q_, basis_[k]) + ") leaves C (x) C");
  }
}

std::optional<std::vector<CycScalar>> SubCoalgebra::coords(const CoElement& x) const {
  auto combo = span_.express(x);
  if (!combo) return std::nullopt;
  std::vector<CycScalar> v(basis_.size());
  for (const auto& [i, c] : *combo) v[i] = c;
  return v;
}

std::optional<Matrix> SubCoalgebra::tensor_coords(const Tensor& t) const {
  const std::size_t n = basis_.size();
  // T = sum_r L_r (x) r ; L_r = sum_i lam_{i,r} b_i ; then R_i = sum_r lam_{i,r} r
  std::map<Path, CoElement> by_right;
  for (const auto& [pp, c] : t) by_right[pp.second].emplace(pp.first, c);
  std::vector<CoElement> right(n);
  for (const auto& [r, left] : by_right) {
    auto lam = coords(left);
    if (!lam) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
      if (!(*lam)[i].is_zero()) add_entry(right[i], r, (*lam)[i]);
  }
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (right[i].empty()) continue;
    auto mu = coords(right[i]);
    if (!mu) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = (*mu)[j];
  }
  return m;
}

Matrix SubCoalgebra::delta_coords(std::size_t k) const {
  auto m = tensor_coords(delta(*q_, basis_.at(k)));
  if (!m) fail(ErrorCode::NotClosedUnderDelta, "basis element " + std::to_string(k));
  return *m;
}

bool SubCoalgebra::has_vertex(const std::string& v) const {
  return q_->has_vertex(v) && contains(element(trivial_path(*q_, v)));
}

std::vector<std::string> SubCoalgebra::grouplikes() const {
  std::vector<std::string> out;
  for (const auto& v : q_->vertices())
    if (has_vertex(v)) out.push_back(v);
  return out;
}

SubCoalgebra path_coalgebra_1(std::shared_ptr<const Quiver> q) {
  std::vector<CoElement> basis;
  for (const auto& v : q->vertices()) basis.push_back(element(trivial_path(*q, v)));
  for (const auto& a : q->arrows()) basis.push_back(element(arrow_path(*q, a.id)));
  return SubCoalgebra(q, basis, false);
}

SubCoalgebra path_coalgebra(std::shared_ptr<const Quiver> q, int max_len) {
  std::vector<CoElement> basis;
  std::vector<Path> layer;
  for (const auto& v : q->vertices()) layer.push_back(trivial_path(*q, v));
  for (int len = 0; len <= max_len && !layer.empty(); ++len) {
    std::vector<Path> next;
    for (const auto& p : layer) {
      basis.push_back(element(p));
      for (int a : q->out_arrows(q->vertex_at(path_target(*q, p)))) {
        Path r = p;
        r.arrows.push_back(a);
        next.push_back(r);
      }
    }
    layer = std::move(next);
  }
  return SubCoalgebra(q, basis, false);
}

namespace {

// Diamond basis grouped by (source, target) vertex indices.
std::map<std::pair<int, int>, std::vector<CoElement>> diamond_components(const SubCoalgebra& c) {
  const Quiver& q = c.quiver();
  std::map<std::pair<int, int>, SparseSpan<Path>> spans;
  for (const auto& b : c.basis()) {
    std::map<std::pair<int, int>, CoElement> parts;
    for (const auto& [p, s] : b) parts[{path_source(q, p), path_target(q, p)}].emplace(p, s);
    for (const auto& [st, part] : parts) spans[st].insert(part);
  }
  std::map<std::pair<int, int>, std::vector<CoElement>> out;
  std::size_t total = 0;
  for (const auto& [st, span] : spans) {
    out[st] = span.basis();
    total += span.rank();
  }
  if (total != c.dim())
    fail(ErrorCode::NotClosedUnderDelta, "source/target components do not lie in C");
  return out;
}

}  // namespace

std::vector<Diamond> diamond_basis(const SubCoalgebra& c) {
  const Quiver& q = c.quiver();
  auto comps = diamond_components(c);
  // vertices first, then by component
  std::vector<Diamond> out;
  for (const auto& [st, elems] : comps)
    for (const auto& e : elems)
      if (e.size() == 1 && e.begin()->first.arrows.empty())
        out.push_back({e, q.vertex_at(st.first), q.vertex_at(st.second)});
  for (std::size_t len = 1;; ++len) {
    bool any_longer = false;
    for (const auto& [st, elems] : comps)
      for (const auto& e : elems) {
        std::size_t l = e.begin()->first.length();
        if (l > len) any_longer = true;
        if (l == len) out.push_back({e, q.vertex_at(st.first), q.vertex_at(st.second)});
      }
    if (!any_longer) break;
  }
  return out;
}

std::vector<CoElement> elements_of(const std::vector<Diamond>& d) {
  std::vector<CoElement> out;
  for (const auto& x : d) out.push_back(x.elem);
  return out;
}

namespace {

std::vector<CoElement> skew_primitives_in(const Quiver& q,
                                          const std::vector<CoElement>& candidates,
                                          const Path& eg, const Path& eh) {
  SparseSpan<PathPair> cols;
  for (const auto& x : candidates) {
    Tensor t = delta(q, x);
    for (const auto& [p, c] : x) {
      add_entry(t, PathPair{eg, p}, -c);
      add_entry(t, PathPair{p, eh}, -c);
    }
    cols.insert(t);
  }
  std::vector<CoElement> out;
  for (const auto& rel : cols.relations()) {
    CoElement x;
    for (const auto& [i, c] : rel) axpy(x, c, candidates[i]);
    if (!x.empty()) out.push_back(x);
  }
  return out;
}

std::vector<CoElement> primitive_candidates(
    const std::map<std::pair<int, int>, std::vector<CoElement>>& comps, int g, int h) {
  std::vector<CoElement> cand;
  std::set<std::pair<int, int>> keys{{g, h}, {g, g}, {h, h}};
  for (const auto& k : keys) {
    auto it = comps.find(k);
    if (it != comps.end()) cand.insert(cand.end(), it->second.begin(), it->second.end());
  }
  return cand;
}

}  // namespace

std::vector<CoElement> skew_primitives(const SubCoalgebra& c, const std::string& g,
                                       const std::string& h) {
  if (!c.has_vertex(g)) fail(ErrorCode::NotGrouplike, "e_" + g + " not in C");
  if (!c.has_vertex(h)) fail(ErrorCode::NotGrouplike, "e_" + h + " not in C");
  const Quiver& q = c.quiver();
  int gi = q.vertex_index(g), hi = q.vertex_index(h);
  auto comps = diamond_components(c);
  return skew_primitives_in(q, primitive_candidates(comps, gi, hi), trivial_path(q, g),
                            trivial_path(q, h));
}

Quiver ext_quiver(const SubCoalgebra& c) {
  const Quiver& q = c.quiver();
  auto comps = diamond_components(c);
  auto vs = c.grouplikes();
  std::set<int> present;
  for (const auto& v : vs) present.insert(q.vertex_index(v));
  for (const auto& [st, elems] : comps)
    if (!present.count(st.first) || !present.count(st.second))
      fail(ErrorCode::NotPointed, "component without its grouplikes");
  Quiver out;
  for (const auto& v : vs) out.add_vertex(v);
  for (const auto& [st, elems] : comps) {
    auto [g, h] = st;
    bool nontrivial = false;
    for (const auto& e : elems)
      if (e.begin()->first.length() > 0) nontrivial = true;
    if (!nontrivial) continue;
    auto prims = skew_primitives_in(q, primitive_candidates(comps, g, h), Path{g, {}}, Path{h, {}});
    std::size_t count = prims.size() - (g != h ? 1 : 0);
    // label arrows by the nontrivial parts of the primitives
    SparseSpan<Path> parts;
    for (const auto& x : prims) {
      CoElement y;
      for (const auto& [p, s] : x)
        if (p.length() > 0) y.emplace(p, s);
      parts.insert(y);
    }
    auto rows = parts.basis();
    for (std::size_t k = 0; k < count; ++k) {
      std::string id;
      if (k < rows.size() && rows[k].size() == 1 && rows[k].begin()->first.length() == 1 &&
          rows[k].begin()->second.is_one())
        id = q.arrow_at(rows[k].begin()->first.arrows[0]).id;
      else
        id = q.vertex_at(g) + "->" + q.vertex_at(h) + "#" + std::to_string(k + 1);
      out.add_arrow(id, q.vertex_at(g), q.vertex_at(h));
    }
  }
  return out;
}

std::vector<std::size_t> CoradicalFiltration::dims() const {
  std::vector<std::size_t> d;
  for (const auto& l : layers) d.push_back(l.dim());
  return d;
}

CoradicalFiltration coradical_filtration(const SubCoalgebra& c) {
  const Quiver& q = c.quiver();
  auto qp = c.quiver_ptr();
  CoradicalFiltration f;
  std::vector<CoElement> c0;
  for (const auto& v : c.grouplikes()) c0.push_back(element(trivial_path(q, v)));
  f.layers.emplace_back(qp, c0, false);
  SparseSpan<Path> span0;
  for (const auto& x : c0) span0.insert(x);
  while (f.layers.back().dim() < c.dim()) {
    if (f.layers.size() > c.dim() + 1) fail(ErrorCode::NotPointed, "coradical filtration does not exhaust C");
    SparseSpan<Path> span_i;
    for (const auto& x : f.layers.back().basis()) span_i.insert(x);
    SparseSpan<PathPair> images;
    for (const auto& b : c.basis()) {
      Tensor img;
      for (const auto& [pp, s] : delta(q, b)) {
        CoElement l = span_i.reduce(element(pp.first));
        if (l.empty()) continue;
        CoElement r = span0.reduce(element(pp.second));
        if (r.empty()) continue;
        for (const auto& [lp, lc] : l)
          for (const auto& [rp, rc] : r) add_entry(img, PathPair{lp, rp}, s * lc * rc);
      }
      images.insert(img);
    }
    std::vector<CoElement> next = f.layers.back().basis();
    for (const auto& rel : images.relations()) {
      CoElement x;
      for (const auto& [i, s] : rel) axpy(x, s, c.basis()[i]);
      if (!x.empty()) next.push_back(x);
    }
    SubCoalgebra layer(qp, next, false);
    if (layer.dim() == f.layers.back().dim())
      fail(ErrorCode::NotPointed, "coradical filtration stalls");
    f.layers.push_back(std::move(layer));
  }
  return f;
}

CoElement CoalgebraMap::apply(const CoElement& x) const {
  auto v = domain.coords(x);
  if (!v) fail(ErrorCode::InvalidMorphism, "element outside the domain");
  CoElement out;
  for (std::size_t k = 0; k < v->size(); ++k) axpy(out, (*v)[k], images[k]);
  return out;
}

CoalgebraMap make_map(const SubCoalgebra& domain, const SubCoalgebra& codomain,
                      const std::vector<std::pair<CoElement, CoElement>>& assignments) {
  std::vector<CoElement> pre, img;
  for (const auto& [a, b] : assignments) {
    if (!domain.contains(a)) fail(ErrorCode::InvalidMorphism, "preimage outside the domain");
    if (!codomain.contains(b)) fail(ErrorCode::InvalidMorphism, "image outside the codomain");
    pre.push_back(a);
    img.push_back(b);
  }
  SubCoalgebra dom(domain.quiver_ptr(), pre, false);
  if (dom.dim() != pre.size() || dom.dim() != domain.dim())
    fail(ErrorCode::InvalidMorphism, "listed preimages are not a basis of the domain");
  return CoalgebraMap{dom, codomain, img};
}

bool is_coalgebra_map(const CoalgebraMap& f, std::string* why) {
  const Quiver& qd = f.domain.quiver();
  const Quiver& qc = f.codomain.quiver();
  (void)qd;
  for (std::size_t k = 0; k < f.domain.dim(); ++k) {
    Matrix m = f.domain.delta_coords(k);
    Tensor lhs = delta(qc, f.images[k]);
    Tensor rhs;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m.at(i, j).is_zero()) continue;
        for (const auto& [p, a] : f.images[i])
          for (const auto& [r, b] : f.images[j]) add_entry(rhs, PathPair{p, r}, m.at(i, j) * a * b);
      }
    if (lhs != rhs) {
      if (why) *why = "Delta does not commute on " + element_to_string(qd, f.domain.basis()[k]);
      return false;
    }
    if (counit(f.images[k]) != counit(f.domain.basis()[k])) {
      if (why) *why = "counit not preserved on " + element_to_string(qd, f.domain.basis()[k]);
      return false;
    }
  }
  return true;
}

namespace {

void check_diamond_basis(const SubCoalgebra& c, const std::vector<CoElement>& b, const char* name) {
  const Quiver& q = c.quiver();
  SparseSpan<Path> span;
  for (const auto& x : b) {
    if (!diamond_ends(q, x))
      fail(ErrorCode::BasisNotDiamond, std::string(name) + ": not a diamond: " + element_to_string(q, x));
    if (!c.contains(x))
      fail(ErrorCode::BasisNotDiamond, std::string(name) + ": element outside the coalgebra");
    if (!span.insert(x)) fail(ErrorCode::BasisNotDiamond, std::string(name) + ": dependent elements");
  }
  if (span.rank() != c.dim()) fail(ErrorCode::BasisNotDiamond, std::string(name) + ": does not span");
  std::set<CoElement> members(b.begin(), b.end());
  for (const auto& v : q.vertices()) {
    CoElement e = element(trivial_path(q, v));
    if (c.contains(e) && !members.count(e))
      fail(ErrorCode::BasisNotDiamond, std::string(name) + ": missing vertex " + v);
  }
  for (const auto& a : q.arrows()) {
    CoElement e = element(arrow_path(q, a.id));
    if (c.contains(e) && !members.count(e))
      fail(ErrorCode::BasisNotDiamond, std::string(name) + ": missing arrow " + a.id);
  }
}

}  // namespace

CoveringCheck verify_covering(const CoalgebraMap& pi, const std::vector<CoElement>& b,
                              const std::vector<CoElement>& b_prime) {
  check_diamond_basis(pi.domain, b, "B");
  check_diamond_basis(pi.codomain, b_prime, "B'");
  CoveringCheck r;
  std::string why;
  if (!is_coalgebra_map(pi, &why)) {
    r.reason = why;
    return r;
  }
  const Quiver& q = pi.domain.quiver();
  std::vector<CoElement> img;
  for (const auto& x : b) img.push_back(pi.apply(x));
  std::set<CoElement> target(b_prime.begin(), b_prime.end()), hit;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!target.count(img[i])) {
      r.reason = "pi(" + element_to_string(q, b[i]) + ") is not in B'";
      return r;
    }
    hit.insert(img[i]);
  }
  if (hit.size() != target.size()) {
    r.reason = "pi(B) misses part of B'";
    return r;
  }
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      if (img[i] != img[j]) continue;
      auto ei = *diamond_ends(q, b[i]), ej = *diamond_ends(q, b[j]);
      if (ei.first == ej.first || ei.second == ej.second) {
        r.reason = element_to_string(q, b[i]) + " and " + element_to_string(q, b[j]) +
                   " share an end and an image";
        r.counterexample = std::pair{i, j};
        return r;
      }
    }
  r.is_covering = true;
  return r;
}

CoElement push_forward(const Quiver& from, const Quiver& to, const QuiverMorphism& f,
                       const CoElement& x) {
  CoElement out;
  for (const auto& [p, c] : x) {
    Path r{to.vertex_index(f.vertex_map.at(from.vertex_at(p.start))), {}};
    for (int a : p.arrows) r.arrows.push_back(to.arrow_index(f.arrow_map.at(from.arrow_at(a).id)));
    add_entry(out, r, c);
  }
  return out;
}

InducedCovering induced_quotient_covering(const SubCoalgebra& c,
                                          std::shared_ptr<const Quiver> target,
                                          const QuiverMorphism& q) {
  const Quiver& from = c.quiver();
  if (!is_morphism(from, *target, q)) fail(ErrorCode::InvalidMorphism, "not a quiver morphism");
  std::set<std::string> arrow_images;
  for (const auto& a : from.arrows())
    if (!arrow_images.insert(q.arrow_map.at(a.id)).second)
      fail(ErrorCode::InvalidMorphism, "arrow map is not injective");
  InducedCovering out;
  out.basis = elements_of(diamond_basis(c));
  std::vector<CoElement> images;
  std::set<CoElement> seen;
  for (const auto& b : out.basis) {
    CoElement y = push_forward(from, *target, q, b);
    images.push_back(y);
    if (seen.insert(y).second) out.image_basis.push_back(y);
  }
  out.image = SubCoalgebra(target, out.image_basis);
  if (out.image.dim() != out.image_basis.size())
    fail(ErrorCode::InvalidMorphism, "images of the diamond basis are dependent");
  SubCoalgebra dom(c.quiver_ptr(), out.basis, false);
  out.map = CoalgebraMap{dom, out.image, images};
  return out;
}

std::vector<CycScalar> DualAlgebra::multiply(const std::vector<CycScalar>& a,
                                             const std::vector<CycScalar>& b) const {
  std::vector<CycScalar> out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (b[j].is_zero()) continue;
      CycScalar ab = a[i] * b[j];
      for (const auto& [k, c] : mult[i][j]) out[k] += ab * c;
    }
  }
  return out;
}

Matrix DualAlgebra::left_mult(const std::vector<CycScalar>& a) const {
  Matrix m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<CycScalar> e(dim);
    e[j] = CycScalar(1L);
    auto col = multiply(a, e);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = col[i];
  }
  return m;
}

bool DualAlgebra::is_associative() const {
  auto unit_vec = [&](std::size_t i) {
    std::vector<CycScalar> e(dim);
    e[i] = CycScalar(1L);
    return e;
  };
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      auto ij = multiply(unit_vec(i), unit_vec(j));
      for (std::size_t k = 0; k < dim; ++k)
        if (multiply(ij, unit_vec(k)) != multiply(unit_vec(i), multiply(unit_vec(j), unit_vec(k))))
          return false;
    }
  return true;
}

DualAlgebra dualize(const SubCoalgebra& c) {
  const Quiver& q = c.quiver();
  DualAlgebra a;
  a.dim = c.dim();
  a.mult.assign(a.dim, std::vector<SparseVec<std::size_t>>(a.dim));
  for (std::size_t k = 0; k < a.dim; ++k) {
    Matrix m = c.delta_coords(k);
    for (std::size_t i = 0; i < a.dim; ++i)
      for (std::size_t j = 0; j < a.dim; ++j)
        if (!m.at(i, j).is_zero()) a.mult[i][j].emplace(k, m.at(i, j));
  }
  for (const auto& b : c.basis()) {
    a.labels.push_back(element_to_string(q, b) + "*");
    a.unit.push_back(counit(b));
  }
  for (const auto& v : c.grouplikes()) {
    Path e = trivial_path(q, v);
    std::vector<CycScalar> ev(a.dim);
    for (std::size_t k = 0; k < a.dim; ++k) {
      auto it = c.basis()[k].find(e);
      if (it != c.basis()[k].end()) ev[k] = it->second;
    }
    a.idempotents.emplace_back(v, ev);
  }
  return a;
}

namespace {

SparseVec<std::size_t> to_sparse(const std::vector<CycScalar>& v) {
  SparseVec<std::size_t> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace(i, v[i]);
  return s;
}

std::vector<std::vector<CycScalar>> span_basis(const std::vector<std::vector<CycScalar>>& vs,
                                               std::size_t n) {
  SparseSpan<std::size_t> span;
  std::vector<std::vector<CycScalar>> out;
  for (const auto& v : vs)
    if (span.insert(to_sparse(v))) out.push_back(v);
  (void)n;
  return out;
}

}  // namespace

std::vector<std::vector<CycScalar>> radical(const DualAlgebra& a) {
  const std::size_t n = a.dim;
  std::vector<CycScalar> tau(n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = 0; k < n; ++k) {
      auto it = a.mult[l][k].find(k);
      if (it != a.mult[l][k].end()) tau[l] += it->second;
    }
  Matrix t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      CycScalar s;
      for (const auto& [l, c] : a.mult[i][j]) s += c * tau[l];
      t.at(i, j) = s;
    }
  return nullspace(t);
}

std::vector<std::size_t> radical_series(const DualAlgebra& a) {
  auto j = radical(a);
  std::vector<std::size_t> dims;
  auto cur = j;
  while (!cur.empty()) {
    dims.push_back(cur.size());
    if (dims.size() > a.dim + 1) fail(ErrorCode::NotPointed, "radical not nilpotent");
    std::vector<std::vector<CycScalar>> prods;
    for (const auto& x : cur)
      for (const auto& y : j) prods.push_back(a.multiply(x, y));
    cur = span_basis(prods, a.dim);
  }
  return dims;
}

Quiver gabriel_quiver(const DualAlgebra& a) {
  auto j = radical(a);
  std::vector<std::vector<CycScalar>> j2;
  for (const auto& x : j)
    for (const auto& y : j) j2.push_back(a.multiply(x, y));
  j2 = span_basis(j2, a.dim);
  Quiver out;
  for (const auto& [v, e] : a.idempotents) out.add_vertex(v);
  auto sandwich_rank = [&](const std::vector<std::vector<CycScalar>>& vs,
                           const std::vector<CycScalar>& es, const std::vector<CycScalar>& et) {
    std::vector<std::vector<CycScalar>> img;
    for (const auto& x : vs) img.push_back(a.multiply(a.multiply(es, x), et));
    SparseSpan<std::size_t> span;
    for (const auto& v : img) span.insert(to_sparse(v));
    return span.rank();
  };
  for (const auto& [s, es] : a.idempotents)
    for (const auto& [t, et] : a.idempotents) {
      std::size_t n = sandwich_rank(j, es, et) - sandwich_rank(j2, es, et);
      for (std::size_t k = 0; k < n; ++k)
        out.add_arrow(s + "->" + t + (k ? "#" + std::to_string(k + 1) : ""), s, t);
    }
  return out;
}

DualAlgebra localize(const DualAlgebra& a, const std::vector<std::string>& vertices) {
  if (vertices.empty()) fail(ErrorCode::EmptySubset, "localize needs at least one idempotent");
  std::vector<CycScalar> e(a.dim);
  std::vector<std::pair<std::string, std::vector<CycScalar>>> chosen;
  for (const auto& v : vertices) {
    auto it = std::find_if(a.idempotents.begin(), a.idempotents.end(),
                           [&](const auto& p) { return p.first == v; });
    if (it == a.idempotents.end()) fail(ErrorCode::UnknownVertex, v);
    for (std::size_t k = 0; k < a.dim; ++k) e[k] += it->second[k];
    chosen.push_back(*it);
  }
  SparseSpan<std::size_t> span;
  std::vector<std::vector<CycScalar>> basis;
  std::vector<std::string> labels;
  std::map<std::size_t, std::size_t> slot;  // insertion index -> basis index
  for (std::size_t i = 0; i < a.dim; ++i) {
    std::vector<CycScalar> fi(a.dim);
    fi[i] = CycScalar(1L);
    auto w = a.multiply(a.multiply(e, fi), e);
    if (span.insert(to_sparse(w))) {
      slot[i] = basis.size();
      basis.push_back(w);
      labels.push_back(w == fi ? a.labels[i] : "e" + a.labels[i] + "e");
    }
  }
  auto coords = [&](const std::vector<CycScalar>& v) {
    auto c = span.express(to_sparse(v));
    if (!c) fail(ErrorCode::NotClosed, "eAe not closed under multiplication");
    std::vector<CycScalar> out(basis.size());
    for (const auto& [i, x] : *c) out[slot.at(i)] = x;
    return out;
  };
  DualAlgebra out;
  out.dim = basis.size();
  out.labels = labels;
  out.mult.assign(out.dim, std::vector<SparseVec<std::size_t>>(out.dim));
  for (std::size_t i = 0; i < out.dim; ++i)
    for (std::size_t j = 0; j < out.dim; ++j) out.mult[i][j] = to_sparse(coords(a.multiply(basis[i], basis[j])));
  out.unit = coords(e);
  for (const auto& [v, ev] : chosen) out.idempotents.emplace_back(v, coords(ev));
  return out;
}

SeparabilityReport separability_check(const CoalgebraMap& pi, const std::vector<CoElement>& b,
                                      const std::vector<CoElement>& b_prime) {
  auto cov = verify_covering(pi, b, b_prime);
  if (!cov.is_covering) fail(ErrorCode::NotACovering, cov.reason);
  const std::size_t n = pi.domain.dim();
  if (n > kSeparabilityCapacity)
    fail(ErrorCode::CapacityExceeded, "dual algebra of dimension " + std::to_string(n));
  DualAlgebra a = dualize(pi.domain);
  // image of D* in C*: pi*(f'_j)(b_k) = j-th coordinate of pi(b_k)
  const std::size_t m = pi.codomain.dim();
  std::vector<std::vector<CycScalar>> sub(m, std::vector<CycScalar>(n));
  for (std::size_t k = 0; k < n; ++k) {
    auto c = pi.codomain.coords(pi.images[k]);
    if (!c) fail(ErrorCode::NotACovering, "image outside the codomain");
    for (std::size_t j = 0; j < m; ++j) sub[j][k] = (*c)[j];
  }
  using Key = std::pair<std::size_t, std::size_t>;
  auto tensor = [&](const std::vector<CycScalar>& u, const std::vector<CycScalar>& w) {
    SparseVec<Key> t;
    for (std::size_t p = 0; p < n; ++p) {
      if (u[p].is_zero()) continue;
      for (std::size_t q = 0; q < n; ++q)
        if (!w[q].is_zero()) t.emplace(Key{p, q}, u[p] * w[q]);
    }
    return t;
  };
  auto unit_vec = [&](std::size_t i) {
    std::vector<CycScalar> e(n);
    e[i] = CycScalar(1L);
    return e;
  };
  // balancing relations a s (x) a' - a (x) s a'
  SparseSpan<Key> rel;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& s : sub) {
      auto as = a.multiply(unit_vec(i), s);
      for (std::size_t j = 0; j < n; ++j) {
        auto t = tensor(as, unit_vec(j));
        axpy(t, CycScalar(-1L), tensor(unit_vec(i), a.multiply(s, unit_vec(j))));
        if (!t.empty()) rel.insert(t);
      }
    }
  SeparabilityReport r;
  r.tensor_dim = n * n - rel.rank();
  std::vector<CycScalar> ue(n);
  SparseVec<Key> e;
  for (const auto& [v, ev] : a.idempotents) {
    auto sq = a.multiply(ev, ev);
    for (std::size_t k = 0; k < n; ++k) ue[k] += sq[k];
    axpy(e, CycScalar(1L), tensor(ev, ev));
  }
  r.unit_ok = ue == a.unit;
  r.central_ok = true;
  for (std::size_t k = 0; k < n && r.central_ok; ++k) {
    auto x = unit_vec(k);
    SparseVec<Key> diff;
    for (const auto& [v, ev] : a.idempotents) {
      axpy(diff, CycScalar(1L), tensor(a.multiply(x, ev), ev));
      axpy(diff, CycScalar(-1L), tensor(ev, a.multiply(ev, x)));
    }
    if (!rel.contains(diff)) {
      r.central_ok = false;
      r.detail = "x e != e x for x = " + a.labels[k];
    }
  }
  r.separable = r.unit_ok && r.central_ok;
  if (!r.unit_ok) r.detail = "u(e) != 1";
  return r;
}

}  // namespace gridhopf
