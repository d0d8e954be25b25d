#include "gridhopf/comodules.hpp"

#include <algorithm>
#include <random>
#include <set>

#include <json.hpp>

#include "gridhopf/error.hpp"

namespace gridhopf {

namespace {

Tensor tensor_of(const CoElement& a, const CoElement& b) {
  Tensor t;
  for (const auto& [p1, c1] : a)
    for (const auto& [p2, c2] : b) add_entry(t, PathPair{p1, p2}, c1 * c2);
  return t;
}

CoElement scaled(const CoElement& x, const CycScalar& c) { return scale(x, c); }

// Nullspace of a homogeneous sparse system in `unknowns` variables.
std::vector<std::vector<CycScalar>> solve_homogeneous(const std::vector<SparseVec<std::size_t>>& eqs,
                                                      std::size_t unknowns) {
  SparseSpan<std::size_t> span;
  for (const auto& e : eqs)
    if (!e.empty()) span.insert(e);
  auto rows = span.basis();
  Matrix a(std::max<std::size_t>(rows.size(), 1), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [k, c] : rows[r]) a.at(r, k) = c;
  return nullspace(a);
}

}  // namespace

void check_comodule(const Comodule& m) {
  if (!m.ambient) fail(ErrorCode::InvalidSpec, "comodule without ambient coalgebra");
  const Quiver& q = m.quiver();
  const std::size_t d = m.dim();
  for (const auto& row : m.coaction)
    if (row.size() != d) fail(ErrorCode::InvalidSpec, "coaction matrix is not square");
  if (!m.labels.empty() && m.labels.size() != d) fail(ErrorCode::InvalidSpec, "label count");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const CoElement& c = m.coaction[i][j];
      if (!m.ambient->contains(c))
        fail(ErrorCode::InvalidSpec, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                         ") not in the coalgebra");
      if (counit(c) != CycScalar(i == j ? 1L : 0L))
        fail(ErrorCode::InvalidSpec, "counit fails at (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
      Tensor rhs;
      for (std::size_t k = 0; k < d; ++k) {
        Tensor t = tensor_of(m.coaction[i][k], m.coaction[k][j]);
        for (const auto& [pp, v] : t) add_entry(rhs, pp, v);
      }
      if (delta(q, c) != rhs)
        fail(ErrorCode::InvalidSpec, "coassociativity fails at (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
    }
}

Comodule make_comodule(std::shared_ptr<const SubCoalgebra> ambient,
                       std::vector<std::vector<CoElement>> coaction, std::vector<std::string> labels,
                       std::string name) {
  Comodule m{std::move(ambient), std::move(coaction), std::move(labels), std::move(name)};
  check_comodule(m);
  return m;
}

Comodule direct_sum(const Comodule& m, const Comodule& n) {
  if (m.ambient->quiver_ptr() != n.ambient->quiver_ptr())
    fail(ErrorCode::AmbientMismatch, "direct sum over different coalgebras");
  const std::size_t d = m.dim() + n.dim();
  std::vector<std::vector<CoElement>> c(d, std::vector<CoElement>(d));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) c[i][j] = m.coaction[i][j];
  for (std::size_t i = 0; i < n.dim(); ++i)
    for (std::size_t j = 0; j < n.dim(); ++j) c[m.dim() + i][m.dim() + j] = n.coaction[i][j];
  std::vector<std::string> labels;
  if (!m.labels.empty() && !n.labels.empty()) {
    labels = m.labels;
    labels.insert(labels.end(), n.labels.begin(), n.labels.end());
  }
  Comodule out{m.ambient, std::move(c), std::move(labels), m.name + " + " + n.name};
  return out;
}

Comodule change_basis(const Comodule& m, const Matrix& p) {
  const std::size_t d = m.dim();
  auto inv = inverse(p);
  if (p.rows() != d || p.cols() != d || !inv) fail(ErrorCode::InvalidSpec, "basis change not invertible");
  // c' = P c P^-1 entrywise
  std::vector<std::vector<CoElement>> pc(d, std::vector<CoElement>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) axpy(pc[a][j], p.at(a, i), m.coaction[i][j]);
  std::vector<std::vector<CoElement>> out(d, std::vector<CoElement>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t j = 0; j < d; ++j) axpy(out[a][b], inv->at(j, b), pc[a][j]);
  return Comodule{m.ambient, std::move(out), {}, m.name};
}

std::map<std::string, std::size_t> dimension_vector(const Comodule& m) {
  const Quiver& q = m.quiver();
  const std::size_t d = m.dim();
  std::map<std::string, Matrix> proj;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [p, c] : m.coaction[i][j]) {
        if (p.length() != 0) continue;
        const std::string& v = q.vertex_at(p.start);
        auto it = proj.find(v);
        if (it == proj.end()) it = proj.emplace(v, Matrix(d, d)).first;
        it->second.at(i, j) = c;
      }
  std::map<std::string, std::size_t> out;
  for (auto& [v, e] : proj) {
    std::size_t r = rank(e);
    if (r) out[v] = r;
  }
  return out;
}

SubCoalgebra coefficient_coalgebra(const Comodule& m) {
  std::vector<CoElement> entries;
  for (const auto& row : m.coaction)
    for (const auto& c : row)
      if (!c.empty()) entries.push_back(c);
  return SubCoalgebra(m.ambient->quiver_ptr(), entries, true);
}

bool is_hom(const Comodule& m, const Comodule& n, const Matrix& f) {
  const std::size_t dm = m.dim(), dn = n.dim();
  if (f.rows() != dn || f.cols() != dm) return false;
  for (std::size_t j = 0; j < dm; ++j)
    for (std::size_t l = 0; l < dn; ++l) {
      CoElement lhs, rhs;
      for (std::size_t i = 0; i < dn; ++i) axpy(lhs, f.at(i, j), n.coaction[i][l]);
      for (std::size_t k = 0; k < dm; ++k) axpy(rhs, f.at(l, k), m.coaction[j][k]);
      if (lhs != rhs) return false;
    }
  return true;
}

HomSpace hom(const Comodule& m, const Comodule& n) {
  if (m.ambient->quiver_ptr() != n.ambient->quiver_ptr())
    fail(ErrorCode::AmbientMismatch, "hom between comodules over different coalgebras");
  const std::size_t dm = m.dim(), dn = n.dim();
  auto var = [&](std::size_t i, std::size_t j) { return i * dm + j; };
  // For every (j, l): sum_i F(i,j) cN(i,l) = sum_k F(l,k) cM(j,k).
  std::vector<SparseVec<std::size_t>> eqs;
  for (std::size_t j = 0; j < dm; ++j)
    for (std::size_t l = 0; l < dn; ++l) {
      std::map<Path, SparseVec<std::size_t>> by_path;
      for (std::size_t i = 0; i < dn; ++i)
        for (const auto& [p, c] : n.coaction[i][l]) add_entry(by_path[p], var(i, j), c);
      for (std::size_t k = 0; k < dm; ++k)
        for (const auto& [p, c] : m.coaction[j][k]) add_entry(by_path[p], var(l, k), -c);
      for (auto& [p, e] : by_path)
        if (!e.empty()) eqs.push_back(std::move(e));
    }
  HomSpace out;
  out.rows = dn;
  out.cols = dm;
  if (dm == 0 || dn == 0) return out;
  for (const auto& v : solve_homogeneous(eqs, dn * dm)) out.basis.push_back(Matrix::from_flat(dn, dm, v));
  return out;
}

bool is_indecomposable(const Comodule& m) {
  if (m.dim() == 0) return false;
  HomSpace e = hom(m, m);
  const std::size_t r = e.dim();
  Matrix gram(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b) {
      gram.at(a, b) = trace(e.basis[a] * e.basis[b]);
      gram.at(b, a) = gram.at(a, b);
    }
  return rank(gram) == 1;
}

bool comodules_isomorphic(const Comodule& m, const Comodule& n) {
  if (m.dim() != n.dim()) return false;
  if (m.dim() == 0) return true;
  HomSpace f = hom(m, n);
  if (f.dim() == 0) return false;
  const std::size_t d = m.dim();
  if (is_indecomposable(m)) {
    // End(M) is local, so some g f is invertible iff M and N are isomorphic.
    HomSpace g = hom(n, m);
    for (const auto& fa : f.basis)
      for (const auto& gb : g.basis)
        if (rank(gb * fa) == d) return true;
    return false;
  }
  std::mt19937 rng(12345);
  std::uniform_int_distribution<long> coef(-50, 50);
  for (int trial = 0; trial < 4; ++trial) {
    Matrix s(d, d);
    for (const auto& fa : f.basis) s = s + fa.scaled(CycScalar(coef(rng)));
    if (rank(s) == d) return true;
  }
  return false;
}

std::vector<std::size_t> socle_series(const Comodule& m) {
  const std::size_t d = m.dim();
  std::vector<std::size_t> out;
  if (d == 0) return out;
  for (std::size_t k = 1;; ++k) {
    // soc^k M: coefficients avoid paths of length >= k
    std::vector<SparseVec<std::size_t>> eqs;
    for (std::size_t j = 0; j < d; ++j) {
      std::map<Path, SparseVec<std::size_t>> by_path;
      for (std::size_t i = 0; i < d; ++i)
        for (const auto& [p, c] : m.coaction[i][j])
          if (p.length() >= k) add_entry(by_path[p], i, c);
      for (auto& [p, e] : by_path)
        if (!e.empty()) eqs.push_back(std::move(e));
    }
    std::size_t dim = solve_homogeneous(eqs, d).size();
    out.push_back(dim);
    if (dim == d) return out;
  }
}

std::size_t loewy_length(const Comodule& m) { return socle_series(m).size(); }

bool is_uniserial(const Comodule& m) {
  std::size_t prev = 0;
  for (std::size_t s : socle_series(m)) {
    if (s - prev != 1) return false;
    prev = s;
  }
  return true;
}

WindowPtr make_window(const BmnParams& p, long radius) {
  return std::make_shared<const BmnWindow>(truncate_to_subcoalgebra(p, radius));
}

std::shared_ptr<const SubCoalgebra> window_coalgebra(const WindowPtr& w) {
  return std::shared_ptr<const SubCoalgebra>(w, &w->coalgebra);
}

namespace {

bool in_group(const BmnWindow& w, const GroupElem& g) {
  return std::binary_search(w.group.begin(), w.group.end(), g);
}

CoElement arrow_elem(const BmnWindow& w, const GroupElem& g, char gen) {
  if (!w.has_arrow(GridArrow{g, gen}))
    fail(ErrorCode::WindowTooSmall, "arrow " + grid_arrow_label(g, gen) + " outside the window");
  return element(w.path({GridArrow{g, gen}}));
}

CoElement vertex_elem(const BmnWindow& w, const GroupElem& g) {
  return element(trivial_path(*w.quiver, w.vertex(g)));
}

// Comodule from a support: vertices and arrows (with coefficients) between them.
struct Support {
  std::vector<GroupElem> verts;
  std::map<std::pair<std::size_t, std::size_t>, CoElement> edges;  // (source, target)
};

Comodule from_support(const WindowPtr& w, const Support& s, const std::string& name) {
  const std::size_t d = s.verts.size();
  std::vector<std::vector<CoElement>> c(d, std::vector<CoElement>(d));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) {
    c[i][i] = vertex_elem(*w, s.verts[i]);
    labels.push_back(w->vertex(s.verts[i]));
  }
  for (const auto& [e, x] : s.edges) c[e.first][e.second] = x;
  return make_comodule(window_coalgebra(w), std::move(c), std::move(labels), name);
}

GroupElem step(const BmnWindow& w, const GroupElem& g, char gen, int dir) {
  const BmnParams& p = w.alg->params();
  long di = gen == 'x' ? dir : 0, dj = gen == 'y' ? dir : 0;
  return group_canonical(p, g.i + di, g.j + dj);
}

}  // namespace

Comodule build_simple(const WindowPtr& w, const GroupElem& g) {
  GroupElem c = group_canonical(w->alg->params(), g.i, g.j);
  if (!in_group(*w, c)) fail(ErrorCode::WindowTooSmall, group_label(c) + " outside the window");
  Support s;
  s.verts.push_back(c);
  return from_support(w, s, "simple " + group_label(c));
}

Comodule build_string(const WindowPtr& w, const StringSpec& spec) {
  const BmnParams& p = w->alg->params();
  GroupElem cur = group_canonical(p, spec.start.i, spec.start.j);
  if (!in_group(*w, cur)) fail(ErrorCode::WindowTooSmall, group_label(cur) + " outside the window");
  Support s;
  s.verts.push_back(cur);
  for (std::size_t k = 0; k < spec.word.size(); ++k) {
    char ch = spec.word[k];
    char gen = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (gen != 'x' && gen != 'y') fail(ErrorCode::InvalidSpec, std::string("bad letter ") + ch);
    bool fwd = ch == gen;
    if (k > 0) {
      char prev = spec.word[k - 1];
      bool pfwd = std::islower(static_cast<unsigned char>(prev)) != 0;
      char pgen = static_cast<char>(std::tolower(static_cast<unsigned char>(prev)));
      if (pfwd == fwd || pgen == gen) fail(ErrorCode::InvalidSpec, "word " + spec.word + " does not alternate");
    }
    GroupElem next = step(*w, cur, gen, fwd ? 1 : -1);
    if (!in_group(*w, next)) fail(ErrorCode::WindowTooSmall, group_label(next) + " outside the window");
    if (std::find(s.verts.begin(), s.verts.end(), next) != s.verts.end())
      fail(ErrorCode::InvalidSpec, "string " + spec.word + " revisits " + group_label(next));
    s.verts.push_back(next);
    std::size_t a = s.verts.size() - 2, b = s.verts.size() - 1;
    if (fwd)
      s.edges[{a, b}] = arrow_elem(*w, cur, gen);
    else
      s.edges[{b, a}] = arrow_elem(*w, next, gen);
    cur = next;
  }
  return from_support(w, s, "string " + group_label(s.verts.front()) + ":" + spec.word);
}

Comodule build_diamond(const WindowPtr& w, long i, long j) {
  const BmnParams& p = w->alg->params();
  GroupElem g = group_canonical(p, i, j), ga = step(*w, g, 'x', 1), gb = step(*w, g, 'y', 1),
            gab = step(*w, ga, 'y', 1);
  for (const auto& v : {g, ga, gb, gab})
    if (!in_group(*w, v)) fail(ErrorCode::WindowTooSmall, group_label(v) + " outside the window");
  Support s;
  s.verts = {g, ga, gb, gab};
  s.edges[{0, 1}] = arrow_elem(*w, g, 'x');
  s.edges[{0, 2}] = arrow_elem(*w, g, 'y');
  s.edges[{1, 3}] = arrow_elem(*w, ga, 'y');
  s.edges[{2, 3}] = scaled(arrow_elem(*w, gb, 'x'), -p.lambda);
  s.edges[{0, 3}] = w->embed_key(BasisKey{g, 1, 1});
  return from_support(w, s, "diamond " + group_label(g));
}

Comodule build_band(const WindowPtr& w, const BandSpec& spec) {
  const BmnParams& p = w->alg->params();
  if (p.m != p.n || p.m == 0) fail(ErrorCode::RequiresMEqualsN, "bands need m = n != 0");
  if (spec.length < 1) fail(ErrorCode::InvalidSpec, "band length must be positive");
  if (spec.mu.is_zero()) fail(ErrorCode::InvalidSpec, "band parameter must be nonzero");
  const long n = p.n, l = spec.length;
  // tops t_k = (ab^-1)^k, socles s_k = t_k a; t_k -> s_k along x, t_k -> s_{k-1} along y,
  // and the closing edge t_0 -> s_{n-1} (since a^n = b^n) carries the Jordan block J_l(mu).
  std::vector<GroupElem> tops, socs;
  for (long k = 0; k < n; ++k) {
    tops.push_back(group_canonical(p, k, -k));
    socs.push_back(group_canonical(p, k + 1, -k));
  }
  Support s;
  auto top = [&](long k, long r) { return static_cast<std::size_t>(k * l + r); };
  auto soc = [&](long k, long r) { return static_cast<std::size_t>(n * l + k * l + r); };
  for (long k = 0; k < n; ++k)
    for (long r = 0; r < l; ++r) s.verts.push_back(tops[k]);
  for (long k = 0; k < n; ++k)
    for (long r = 0; r < l; ++r) s.verts.push_back(socs[k]);
  for (const auto& v : s.verts)
    if (!in_group(*w, v)) fail(ErrorCode::WindowTooSmall, group_label(v) + " outside the window");
  for (long k = 0; k < n; ++k) {
    CoElement ax = arrow_elem(*w, tops[k], 'x'), ay = arrow_elem(*w, tops[k], 'y');
    for (long r = 0; r < l; ++r) {
      s.edges[{top(k, r), soc(k, r)}] = ax;
      if (k > 0) s.edges[{top(k, r), soc(k - 1, r)}] = ay;
    }
    if (k == 0)
      for (long r = 0; r < l; ++r) {
        s.edges[{top(0, r), soc(n - 1, r)}] = scaled(ay, spec.mu);
        if (r + 1 < l) s.edges[{top(0, r), soc(n - 1, r + 1)}] = ay;
      }
  }
  return from_support(w, s, "band length " + std::to_string(l) + " mu=" + spec.mu.to_string());
}

std::vector<Comodule> build_band_family(const BmnParams& p, long length, const std::vector<CycScalar>& mus) {
  if (p.m != p.n || p.m == 0) fail(ErrorCode::RequiresMEqualsN, "bands need m = n != 0");
  for (std::size_t a = 0; a < mus.size(); ++a) {
    if (mus[a].is_zero()) fail(ErrorCode::InvalidSpec, "band parameter must be nonzero");
    for (std::size_t b = 0; b < a; ++b)
      if (mus[a] == mus[b]) fail(ErrorCode::InvalidSpec, "band parameters must be distinct");
  }
  WindowPtr w = make_window(p, p.n);
  std::vector<Comodule> out;
  for (const auto& mu : mus) out.push_back(build_band(w, BandSpec{length, mu}));
  return out;
}

bool discrete_predicate(long m, long n) {
  auto [mm, nn] = sign_normalize(m, n);
  return mm != nn || mm == 0;
}

namespace {

std::string support_key(const Comodule& m) {
  std::vector<std::string> parts;
  for (const auto& row : m.coaction)
    for (const auto& c : row)
      for (const auto& [p, v] : c) parts.push_back(path_to_string(m.quiver(), p));
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  std::string key;
  for (const auto& s : parts) key += s + ";";
  return key;
}

}  // namespace

std::vector<Comodule> enumerate_indecomposables(const BmnParams& p, long radius, std::size_t max_total_dim) {
  if (!discrete_predicate(p.m, p.n))
    fail(ErrorCode::NotDiscreteParams, "m = n != 0 gives band families");
  return enumerate_indecomposables(make_window(p, radius), max_total_dim);
}

std::vector<Comodule> enumerate_indecomposables(const WindowPtr& w, std::size_t max_total_dim) {
  const BmnParams& p = w->alg->params();
  if (!discrete_predicate(p.m, p.n))
    fail(ErrorCode::NotDiscreteParams, "m = n != 0 gives band families");
  std::vector<Comodule> found;
  std::set<std::string> seen;
  auto add = [&](Comodule c) {
    if (!seen.insert(support_key(c)).second) return;
    found.push_back(std::move(c));
  };
  if (max_total_dim >= 1)
    for (const auto& g : w->group) add(build_simple(w, g));
  for (const auto& g : w->group)
    for (const std::string first : {"x", "y", "X", "Y"}) {
      std::string word = first;
      while (word.size() + 1 <= max_total_dim) {
        try {
          add(build_string(w, StringSpec{g, word}));
        } catch (const Error& e) {
          if (e.code() == ErrorCode::WindowTooSmall || e.code() == ErrorCode::InvalidSpec) break;
          throw;
        }
        char last = word.back();
        char gen = std::tolower(static_cast<unsigned char>(last)) == 'x' ? 'y' : 'x';
        word += std::islower(static_cast<unsigned char>(last)) ? static_cast<char>(std::toupper(gen)) : gen;
      }
    }
  if (max_total_dim >= 4)
    for (const auto& g : w->group) {
      try {
        add(build_diamond(w, g.i, g.j));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::WindowTooSmall) throw;
      }
    }
  // Safety net: every module must be End-local and no two may be isomorphic.
  std::vector<std::map<std::string, std::size_t>> dv;
  for (const auto& c : found) {
    if (!is_indecomposable(c)) fail(ErrorCode::AxiomFailure, c.name + " is decomposable");
    dv.push_back(dimension_vector(c));
  }
  std::vector<Comodule> out;
  std::vector<std::size_t> kept;
  for (std::size_t a = 0; a < found.size(); ++a) {
    bool dup = false;
    for (std::size_t b : kept)
      if (dv[a] == dv[b] && comodules_isomorphic(found[a], found[b])) dup = true;
    if (!dup) {
      kept.push_back(a);
      out.push_back(found[a]);
    }
  }
  return out;
}

bool verify_band_witness(const std::vector<Comodule>& family) {
  if (family.size() < 3) return false;
  auto dv0 = dimension_vector(family.front());
  for (std::size_t a = 0; a < family.size(); ++a) {
    if (!is_indecomposable(family[a])) return false;
    if (dimension_vector(family[a]) != dv0) return false;
    for (std::size_t b = 0; b < family.size(); ++b) {
      if (a == b) continue;
      if (hom(family[a], family[b]).dim() != 0) return false;
    }
  }
  return true;
}

DiscreteDecision decide_discrete(const BmnParams& p, bool build_witness) {
  DiscreteDecision d;
  d.discrete = discrete_predicate(p.m, p.n);
  if (d.discrete || !build_witness) return d;
  d.witness = build_band_family(p, 1, {CycScalar(1L), CycScalar(2L), CycScalar(3L)});
  d.witness_verified = verify_band_witness(d.witness);
  return d;
}

std::string comodule_to_json(const Comodule& m) {
  nlohmann::ordered_json j;
  j["name"] = m.name;
  j["dimension"] = m.dim();
  j["labels"] = m.labels;
  nlohmann::ordered_json dvj = nlohmann::ordered_json::object();
  for (const auto& [v, k] : dimension_vector(m)) dvj[v] = k;
  j["dimension_vector"] = dvj;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c)
      if (!m.coaction[r][c].empty())
        entries.push_back({{"row", r}, {"col", c}, {"value", element_to_string(m.quiver(), m.coaction[r][c])}});
  j["coaction"] = entries;
  return j.dump();
}

}  // namespace gridhopf
