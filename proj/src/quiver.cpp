#include "gridhopf/quiver.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gridhopf/error.hpp"

namespace gridhopf {

void Quiver::add_vertex(const std::string& label) {
  if (label.empty()) fail(ErrorCode::ParseError, "empty vertex label");
  if (vindex_.count(label)) fail(ErrorCode::ParseError, "duplicate vertex " + label);
  vindex_[label] = static_cast<int>(vertices_.size());
  vertices_.push_back(label);
}

void Quiver::add_arrow(const std::string& id, const std::string& src, const std::string& dst) {
  if (id.empty()) fail(ErrorCode::ParseError, "empty arrow id");
  if (aindex_.count(id)) fail(ErrorCode::ParseError, "duplicate arrow " + id);
  if (!vindex_.count(src)) fail(ErrorCode::UnknownVertex, src);
  if (!vindex_.count(dst)) fail(ErrorCode::UnknownVertex, dst);
  aindex_[id] = static_cast<int>(arrows_.size());
  arrows_.push_back({id, src, dst});
}

int Quiver::vertex_index(const std::string& v) const {
  auto it = vindex_.find(v);
  if (it == vindex_.end()) fail(ErrorCode::UnknownVertex, v);
  return it->second;
}

int Quiver::arrow_index(const std::string& id) const {
  auto it = aindex_.find(id);
  if (it == aindex_.end()) fail(ErrorCode::InvalidMorphism, "unknown arrow " + id);
  return it->second;
}

std::vector<int> Quiver::out_arrows(const std::string& v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].src == v) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> Quiver::in_arrows(const std::string& v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].dst == v) out.push_back(static_cast<int>(i));
  return out;
}

Quiver Quiver::parse_text(const std::string& text) {
  Quiver q;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    std::vector<std::string> fields;
    for (std::string f; ls >> f;) fields.push_back(f);
    if (kind == "v" && fields.size() == 1) {
      q.add_vertex(fields[0]);
    } else if (kind == "a" && fields.size() == 3) {
      q.add_arrow(fields[0], fields[1], fields[2]);
    } else {
      fail(ErrorCode::ParseError, "quiver line " + std::to_string(lineno) + ": " + line);
    }
  }
  return q;
}

std::string Quiver::to_text() const {
  std::string out;
  for (const auto& v : vertices_) out += "v " + v + "\n";
  for (const auto& a : arrows_) out += "a " + a.id + " " + a.src + " " + a.dst + "\n";
  return out;
}

std::string Quiver::to_json() const {
  nlohmann::ordered_json j;
  j["vertices"] = vertices_;
  j["arrows"] = nlohmann::ordered_json::array();
  for (const auto& a : arrows_)
    j["arrows"].push_back({{"id", a.id}, {"src", a.src}, {"dst", a.dst}});
  return j.dump();
}

Quiver Quiver::from_json(const std::string& text) {
  Quiver q;
  try {
    auto j = nlohmann::json::parse(text);
    for (const auto& v : j.at("vertices")) q.add_vertex(v.get<std::string>());
    for (const auto& a : j.at("arrows"))
      q.add_arrow(a.at("id").get<std::string>(), a.at("src").get<std::string>(),
                  a.at("dst").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  return q;
}

bool is_morphism(const Quiver& q, const Quiver& target, const QuiverMorphism& f) {
  for (const auto& v : q.vertices()) {
    auto it = f.vertex_map.find(v);
    if (it == f.vertex_map.end() || !target.has_vertex(it->second)) return false;
  }
  for (const auto& a : q.arrows()) {
    auto it = f.arrow_map.find(a.id);
    if (it == f.arrow_map.end() || !target.has_arrow(it->second)) return false;
    const Arrow& b = target.arrow(it->second);
    if (b.src != f.vertex_map.at(a.src) || b.dst != f.vertex_map.at(a.dst)) return false;
  }
  return true;
}

std::string grid_vertex_label(const GroupElem& g) { return group_label(g); }

std::string grid_arrow_label(const GroupElem& g, char gen) {
  std::string p = (g.i == 0 && g.j == 0) ? "" : group_label(g);
  return p + gen;
}

namespace {

std::set<GroupElem> grid_window(long m, long n, long radius) {
  if (radius < 0) fail(ErrorCode::InvalidParams, "negative radius");
  std::set<GroupElem> w;
  for (long i = -radius; i <= radius; ++i)
    for (long j = -radius; j <= radius; ++j) w.insert(group_canonical(m, n, i, j));
  return w;
}

void check_pair(long m, long n) {
  if ((m == 1 && n == 1) || (m == -1 && n == -1))
    fail(ErrorCode::ForbiddenPair, "(m,n) = +-(1,1)");
}

}  // namespace

Quiver grid_quiver(long m, long n, long radius) {
  check_pair(m, n);
  auto w = grid_window(m, n, radius);
  Quiver q;
  for (const auto& g : w) q.add_vertex(grid_vertex_label(g));
  for (const auto& g : w) {
    GroupElem ga = group_canonical(m, n, g.i + 1, g.j);
    GroupElem gb = group_canonical(m, n, g.i, g.j + 1);
    if (w.count(ga)) q.add_arrow(grid_arrow_label(g, 'x'), grid_vertex_label(g), grid_vertex_label(ga));
    if (w.count(gb)) q.add_arrow(grid_arrow_label(g, 'y'), grid_vertex_label(g), grid_vertex_label(gb));
  }
  return q;
}

std::vector<std::string> grid_interior(long m, long n, long radius) {
  check_pair(m, n);
  auto w = grid_window(m, n, radius);
  std::vector<std::string> out;
  for (const auto& g : w) {
    bool inside = true;
    for (auto [di, dj] : {std::pair{1L, 0L}, {-1L, 0L}, {0L, 1L}, {0L, -1L}})
      inside = inside && w.count(group_canonical(m, n, g.i + di, g.j + dj));
    if (inside) out.push_back(grid_vertex_label(g));
  }
  return out;
}

Quiver star(const Quiver& q, const std::string& v) {
  if (!q.has_vertex(v)) fail(ErrorCode::UnknownVertex, v);
  std::set<std::string> keep{v};
  for (const auto& a : q.arrows()) {
    if (a.src == v) keep.insert(a.dst);
    if (a.dst == v) keep.insert(a.src);
  }
  Quiver s;
  for (const auto& u : q.vertices())
    if (keep.count(u)) s.add_vertex(u);
  for (const auto& a : q.arrows())
    if (a.src == v || a.dst == v) s.add_arrow(a.id, a.src, a.dst);
  return s;
}

namespace {

std::vector<std::vector<int>> arrow_counts(const Quiver& q) {
  const std::size_t n = q.num_vertices();
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (const auto& a : q.arrows()) ++c[q.vertex_index(a.src)][q.vertex_index(a.dst)];
  return c;
}

}  // namespace

std::optional<std::map<std::string, std::string>> find_isomorphism(
    const Quiver& a, const Quiver& b, const std::map<std::string, std::string>& fixed) {
  const std::size_t n = a.num_vertices();
  if (n != b.num_vertices() || a.num_arrows() != b.num_arrows()) return std::nullopt;
  auto ca = arrow_counts(a), cb = arrow_counts(b);
  auto signature = [](const std::vector<std::vector<int>>& c, std::size_t v) {
    int out = 0, in = 0;
    for (std::size_t u = 0; u < c.size(); ++u) {
      out += c[v][u];
      in += c[u][v];
    }
    return std::tuple{out, in, c[v][v]};
  };
  std::vector<int> f(n, -1);
  std::vector<bool> used(n, false);
  for (const auto& [x, y] : fixed) {
    int i = a.vertex_index(x), j = b.vertex_index(y);
    if (used[j]) return std::nullopt;
    f[i] = j;
    used[j] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (f[i] >= 0 && signature(ca, i) != signature(cb, f[i])) return std::nullopt;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (f[i] < 0) order.push_back(i);

  auto consistent = [&](std::size_t i) {
    for (std::size_t u = 0; u < n; ++u) {
      if (f[u] < 0) continue;
      if (ca[i][u] != cb[f[i]][f[u]] || ca[u][i] != cb[f[u]][f[i]]) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < n; ++i)
    if (f[i] >= 0 && !consistent(i)) return std::nullopt;

  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == order.size()) return true;
    std::size_t i = order[k];
    auto sig = signature(ca, i);
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || signature(cb, j) != sig) continue;
      f[i] = static_cast<int>(j);
      used[j] = true;
      if (consistent(i) && rec(k + 1)) return true;
      used[j] = false;
      f[i] = -1;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < n; ++i) out[a.vertex_at(i)] = b.vertex_at(f[i]);
  return out;
}

HomogeneityReport check_homogeneous(const Quiver& q, const std::vector<std::string>& focus) {
  HomogeneityReport r;
  std::vector<std::string> vs = focus.empty() ? q.vertices() : focus;
  auto c = arrow_counts(q);
  for (const auto& v : vs) {
    int i = q.vertex_index(v);
    VertexDegrees d{v, 0, 0, c[i][i]};
    for (std::size_t u = 0; u < q.num_vertices(); ++u) {
      if (static_cast<int>(u) == i) continue;
      if (c[i][u] > 0) ++d.out_distinct;
      if (c[u][i] > 0) ++d.in_distinct;
    }
    r.degrees.push_back(d);
  }
  if (r.degrees.empty()) {
    r.is_homogeneous = true;
    return r;
  }
  const auto& first = r.degrees.front();
  bool same = std::all_of(r.degrees.begin(), r.degrees.end(), [&](const VertexDegrees& d) {
    return d.out_distinct == first.out_distinct && d.in_distinct == first.in_distinct &&
           d.loops == first.loops;
  });
  if (same) {
    r.out_degree = first.out_distinct;
    r.in_degree = first.in_distinct;
    r.loops = first.loops;
  } else {
    r.failures.push_back("degree counts differ");
  }
  r.reference = first.vertex;
  Quiver ref = star(q, first.vertex);
  for (std::size_t k = 1; k < r.degrees.size(); ++k) {
    const auto& v = r.degrees[k].vertex;
    auto iso = find_isomorphism(ref, star(q, v), {{first.vertex, v}});
    if (iso)
      r.star_iso_witnesses.emplace_back(v, *iso);
    else
      r.failures.push_back("star(" + first.vertex + ") !~ star(" + v + ")");
  }
  r.is_homogeneous = r.failures.empty();
  return r;
}

bool is_schurian(const Quiver& q) {
  for (const auto& row : arrow_counts(q))
    for (int c : row)
      if (c > 1) return false;
  return true;
}

bool is_connected(const Quiver& q) {
  const std::size_t n = q.num_vertices();
  if (n == 0) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& a : q.arrows()) parent[find(q.vertex_index(a.src))] = find(q.vertex_index(a.dst));
  int root = find(0);
  for (std::size_t i = 1; i < n; ++i)
    if (find(static_cast<int>(i)) != root) return false;
  return true;
}

bool is_bipartite_orientation(const Quiver& q) {
  for (const auto& v : q.vertices()) {
    bool has_out = false, has_in = false;
    for (const auto& a : q.arrows()) {
      if (a.src == v) has_out = true;
      if (a.dst == v) has_in = true;
    }
    if (has_out && has_in) return false;
  }
  return true;
}

std::string to_string(GraphKind k) {
  switch (k) {
    case GraphKind::Dynkin: return "Dynkin";
    case GraphKind::Euclidean: return "Euclidean";
    case GraphKind::Other: return "Other";
  }
  return "Other";
}

GraphClass graph_class(const Quiver& q) {
  if (!is_connected(q)) fail(ErrorCode::Disconnected, "graph_class needs a connected quiver");
  const int n = static_cast<int>(q.num_vertices());
  const int e = static_cast<int>(q.num_arrows());
  const GraphClass other{GraphKind::Other, ""};
  std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
  for (const auto& a : q.arrows()) {
    int u = q.vertex_index(a.src), v = q.vertex_index(a.dst);
    if (u == v) return other;
    ++adj[u][v];
    ++adj[v][u];
  }
  if (n == 0) return other;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (adj[u][v] > 1) {
        if (n == 2 && e == 2) return {GraphKind::Euclidean, "A~1"};
        return other;
      }
  std::vector<int> deg(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) deg[u] += adj[u][v];

  if (e == n) {
    if (std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; }))
      return {GraphKind::Euclidean, "A~" + std::to_string(n - 1)};
    return other;
  }
  if (e != n - 1) return other;

  // tree
  int maxdeg = *std::max_element(deg.begin(), deg.end());
  if (maxdeg <= 2) return {GraphKind::Dynkin, "A" + std::to_string(n)};
  std::vector<int> branch;
  for (int u = 0; u < n; ++u)
    if (deg[u] >= 3) branch.push_back(u);

  // vertices in the arm leaving `center` through `first`
  auto arm_length = [&](int center, int first) {
    int len = 1, prev = center, cur = first;
    while (deg[cur] == 2) {
      int next = -1;
      for (int v = 0; v < n; ++v)
        if (adj[cur][v] && v != prev) next = v;
      prev = cur;
      cur = next;
      ++len;
    }
    return std::pair{len, deg[cur] == 1};
  };

  if (branch.size() == 1) {
    int c = branch[0];
    std::vector<int> arms;
    for (int v = 0; v < n; ++v)
      if (adj[c][v]) arms.push_back(arm_length(c, v).first);
    std::sort(arms.begin(), arms.end());
    if (arms.size() == 4)
      return arms == std::vector<int>{1, 1, 1, 1} ? GraphClass{GraphKind::Euclidean, "D~4"} : other;
    if (arms.size() != 3) return other;
    int p = arms[0], r = arms[1], s = arms[2];
    if (p == 1 && r == 1) return {GraphKind::Dynkin, "D" + std::to_string(n)};
    if (p == 1 && r == 2 && s <= 4) return {GraphKind::Dynkin, "E" + std::to_string(n)};
    if (p == 2 && r == 2 && s == 2) return {GraphKind::Euclidean, "E~6"};
    if (p == 1 && r == 3 && s == 3) return {GraphKind::Euclidean, "E~7"};
    if (p == 1 && r == 2 && s == 5) return {GraphKind::Euclidean, "E~8"};
    return other;
  }
  if (branch.size() == 2) {
    for (int c : branch) {
      if (deg[c] != 3) return other;
      int leaves = 0;
      for (int v = 0; v < n; ++v)
        if (adj[c][v] && deg[v] == 1) ++leaves;
      if (leaves != 2) return other;
    }
    return {GraphKind::Euclidean, "D~" + std::to_string(n - 1)};
  }
  return other;
}

std::pair<Quiver, QuiverMorphism> quotient(const Quiver& q,
                                           const std::vector<std::vector<std::string>>& partition) {
  QuiverMorphism f;
  Quiver out;
  for (const auto& block : partition) {
    if (block.empty()) fail(ErrorCode::InvalidPartition, "empty block");
    for (const auto& v : block) {
      if (!q.has_vertex(v)) fail(ErrorCode::InvalidPartition, "unknown vertex " + v);
      if (f.vertex_map.count(v)) fail(ErrorCode::InvalidPartition, "vertex in two blocks: " + v);
      f.vertex_map[v] = block.front();
    }
  }
  for (const auto& v : q.vertices())
    if (!f.vertex_map.count(v)) fail(ErrorCode::InvalidPartition, "vertex not covered: " + v);
  // blocks listed in order of their first vertex in q
  std::set<std::string> seen;
  for (const auto& v : q.vertices()) {
    const auto& b = f.vertex_map[v];
    if (seen.insert(b).second) out.add_vertex(b);
  }
  for (const auto& a : q.arrows()) {
    out.add_arrow(a.id, f.vertex_map[a.src], f.vertex_map[a.dst]);
    f.arrow_map[a.id] = a.id;
  }
  return {out, f};
}

namespace {

// All set partitions of {0..k-1} as restricted growth strings.
void set_partitions(int k, std::vector<std::vector<int>>& out) {
  std::vector<int> rgs(k, 0);
  std::function<void(int, int)> rec = [&](int pos, int maxv) {
    if (pos == k) {
      out.push_back(rgs);
      return;
    }
    for (int v = 0; v <= maxv + 1; ++v) {
      rgs[pos] = v;
      rec(pos + 1, std::max(maxv, v));
    }
  };
  if (k == 0) {
    out.push_back({});
    return;
  }
  rgs[0] = 0;
  rec(1, 0);
}

int blocks_of(const std::vector<int>& rgs) {
  return rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
}

}  // namespace

std::optional<Cover> find_nondynkin_cover(const Quiver& target, int size_bound) {
  const int e = static_cast<int>(target.num_arrows());
  // A non-Dynkin connected graph contains a Euclidean one, and a Euclidean
  // graph with k edges has k or k+1 vertices; searching those is exhaustive.
  for (int k = 1; k <= std::min(e, size_bound); ++k) {
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      // ends at each touched vertex
      std::vector<std::string> touched;
      std::map<std::string, std::pair<std::vector<int>, std::vector<int>>> ends;  // (in, out)
      for (int idx : pick) {
        const Arrow& a = target.arrow_at(idx);
        ends[a.dst].first.push_back(idx);
        ends[a.src].second.push_back(idx);
      }
      for (const auto& v : target.vertices())
        if (ends.count(v)) touched.push_back(v);

      Quiver image;
      for (const auto& v : touched) image.add_vertex(v);
      for (int idx : pick) {
        const Arrow& a = target.arrow_at(idx);
        image.add_arrow(a.id, a.src, a.dst);
      }
      int min_vertices = 0;
      for (const auto& [v, io] : ends) min_vertices += !io.first.empty() + !io.second.empty();

      if (is_connected(image) && min_vertices <= std::min(k + 1, size_bound)) {
        // slots: (vertex, side) with the candidate partitions of its ends
        struct Slot {
          std::string v;
          bool in;
          std::vector<int> arrows;
          std::vector<std::vector<int>> parts;
        };
        std::vector<Slot> slots;
        for (const auto& v : touched) {
          const auto& io = ends[v];
          if (!io.first.empty()) {
            Slot s{v, true, io.first, {}};
            set_partitions(static_cast<int>(io.first.size()), s.parts);
            slots.push_back(std::move(s));
          }
          if (!io.second.empty()) {
            Slot s{v, false, io.second, {}};
            set_partitions(static_cast<int>(io.second.size()), s.parts);
            slots.push_back(std::move(s));
          }
        }
        std::vector<std::size_t> choice(slots.size(), 0);
        std::optional<Cover> found;
        std::function<void(std::size_t, int)> rec = [&](std::size_t si, int used) {
          if (found) return;
          if (si == slots.size()) {
            if (used != k && used != k + 1) return;
            if (used > size_bound) return;
            // build the cover; in-groups named first at each vertex
            std::map<std::pair<int, bool>, std::string> end_vertex;  // (arrow, is_head)
            Quiver cov;
            QuiverMorphism f;
            std::map<std::string, int> primes;
            std::vector<std::pair<std::string, std::string>> vlist;
            for (const auto& v : touched) {
              for (int side = 0; side < 2; ++side) {
                bool in = side == 0;
                for (std::size_t s = 0; s < slots.size(); ++s) {
                  if (slots[s].v != v || slots[s].in != in) continue;
                  const auto& rgs = slots[s].parts[choice[s]];
                  for (int b = 0; b < blocks_of(rgs); ++b) {
                    std::string name = v + std::string(primes[v]++, '\'');
                    cov.add_vertex(name);
                    f.vertex_map[name] = v;
                    for (std::size_t t = 0; t < rgs.size(); ++t)
                      if (rgs[t] == b) end_vertex[{slots[s].arrows[t], in}] = name;
                  }
                }
              }
            }
            for (int idx : pick) {
              const Arrow& a = target.arrow_at(idx);
              cov.add_arrow(a.id, end_vertex.at({idx, false}), end_vertex.at({idx, true}));
              f.arrow_map[a.id] = a.id;
            }
            if (!is_connected(cov)) return;
            GraphClass cls = graph_class(cov);
            if (cls.kind == GraphKind::Dynkin) return;
            found = Cover{cov, image, f, cls};
            return;
          }
          for (std::size_t p = 0; p < slots[si].parts.size() && !found; ++p) {
            int add = blocks_of(slots[si].parts[p]);
            int remaining_min = 0;
            for (std::size_t t = si + 1; t < slots.size(); ++t) ++remaining_min;
            if (used + add + remaining_min > std::min(k + 1, size_bound)) continue;
            choice[si] = p;
            rec(si + 1, used + add);
          }
        };
        rec(0, 0);
        if (found) return found;
      }

      // next combination
      int i = k - 1;
      while (i >= 0 && pick[i] == e - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

LinkComponent classify_link_component(long m, long n, int num_generators,
                                      std::optional<long> cyclic_order) {
  LinkComponent r;
  switch (num_generators) {
    case 0:
      r.case_tag = 1;
      r.description = "single vertex";
      r.representative.add_vertex("1");
      return r;
    case 1: {
      if (cyclic_order) {
        if (*cyclic_order < 1) fail(ErrorCode::InvalidDescription, "cyclic order must be >= 1");
        r.case_tag = 2;
        r.description = "oriented cycle A~" + std::to_string(*cyclic_order - 1);
        for (long i = 0; i < *cyclic_order; ++i) r.representative.add_vertex(group_label({i, 0}));
        for (long i = 0; i < *cyclic_order; ++i)
          r.representative.add_arrow(grid_arrow_label({i, 0}, 'x'), group_label({i, 0}),
                                     group_label({(i + 1) % *cyclic_order, 0}));
      } else {
        r.case_tag = 3;
        r.description = "infinite line";
        const long w = 3;
        for (long i = -w; i <= w; ++i) r.representative.add_vertex(group_label({i, 0}));
        for (long i = -w; i < w; ++i)
          r.representative.add_arrow(grid_arrow_label({i, 0}, 'x'), group_label({i, 0}),
                                     group_label({i + 1, 0}));
      }
      return r;
    }
    case 2: {
      if ((m == 1 && n == 1) || (m == -1 && n == -1))
        fail(ErrorCode::InvalidDescription, "(m,n) = +-(1,1) does not describe a grid");
      auto [mm, nn] = sign_normalize(m, n);
      r.case_tag = 4;
      r.description = "grid Q^{" + std::to_string(mm) + "," + std::to_string(nn) + "}";
      r.representative = grid_quiver(mm, nn, 2);
      return r;
    }
    default:
      fail(ErrorCode::InvalidDescription, "number of generators must be 0, 1 or 2");
  }
}

}  // namespace gridhopf
