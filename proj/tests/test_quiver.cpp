#include <doctest.h>

#include <gmpxx.h>

#include <random>

#include "gridhopf/error.hpp"
#include "gridhopf/quiver.hpp"

using namespace gridhopf;

namespace {

Quiver from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Quiver q;
  for (int i = 0; i < n; ++i) q.add_vertex(std::to_string(i));
  int k = 0;
  for (auto [u, v] : edges) q.add_arrow("e" + std::to_string(k++), std::to_string(u), std::to_string(v));
  return q;
}

Quiver path_quiver(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return from_edges(n, e);
}

Quiver cycle_quiver(int n, bool alternate) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    if (alternate && i % 2 == 1)
      e.emplace_back(j, i);
    else
      e.emplace_back(i, j);
  }
  return from_edges(n, e);
}

// Oracle: signature of the Tits form 2I - A by rational symmetric elimination.
// 0 = positive definite, 1 = semidefinite singular, 2 = indefinite.
int tits_signature(const Quiver& q) {
  const std::size_t n = q.num_vertices();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 2;
  for (const auto& a : q.arrows()) {
    int u = q.vertex_index(a.src), v = q.vertex_index(a.dst);
    m[u][v] -= 1;
    m[v][u] -= 1;
  }
  bool singular = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(m[k][k]) < 0) return 2;
    if (sgn(m[k][k]) == 0) {
      for (std::size_t j = k; j < n; ++j)
        if (sgn(m[k][j]) != 0) return 2;
      singular = true;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      mpq_class f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return singular ? 1 : 0;
}

}  // namespace

TEST_CASE("group canonical form") {
  CHECK(group_canonical(3, 1, 4, 0) == GroupElem{1, 1});
  CHECK(group_canonical(0, 0, -2, 5) == GroupElem{-2, 5});
  CHECK(group_canonical(2, -2, 3, 0) == GroupElem{1, -2});
  CHECK(group_canonical(0, 3, 1, -1) == GroupElem{1, 2});
  CHECK(group_canonical(-3, -1, 4, 0) == GroupElem{1, 1});
  for (long m : {0L, 1L, 2L, 3L, -2L})
    for (long n : {0L, 2L, -1L, 4L})
      for (long i = -5; i <= 5; ++i)
        for (long j = -5; j <= 5; ++j) {
          GroupElem g = group_canonical(m, n, i, j);
          CHECK(group_canonical(m, n, g.i, g.j) == g);
          // shifting by the relation does not change the class
          CHECK(group_canonical(m, n, i + m, j - n) == g);
        }
  CHECK(group_label({0, 0}) == "1");
  CHECK(group_label({2, -1}) == "a^2b^-1");
  CHECK(group_label({1, 1}) == "ab");
}

TEST_CASE("grid quivers") {
  Quiver g = grid_quiver(0, 0, 1);
  CHECK(g.num_vertices() == 9);
  CHECK(g.num_arrows() == 12);
  CHECK_THROWS_AS(grid_quiver(1, 1, 1), Error);
  CHECK_THROWS_AS(grid_quiver(-1, -1, 1), Error);

  Quiver l = grid_quiver(1, 0, 1);
  for (const auto& v : l.vertices()) {
    int loops = 0;
    for (int a : l.out_arrows(v))
      if (l.arrow_at(a).dst == v) ++loops;
    CHECK(loops == 1);
  }
  CHECK(l.has_arrow("x"));
  CHECK(l.arrow("x").src == "1");
  CHECK(l.arrow("x").dst == "1");

  Quiver t = grid_quiver(1, -1, 1);
  // a = b^-1: 2-cycles 1 <-> b^-1 (x, b^-1y) and 1 <-> b (y, bx)
  CHECK(t.arrow("x").dst == "b^-1");
  CHECK(t.arrow("b^-1y").dst == "1");
  CHECK(t.arrow("y").dst == "b");
  CHECK(t.arrow("bx").dst == "1");
}

TEST_CASE("star and homogeneity") {
  Quiver g = grid_quiver(0, 0, 2);
  Quiver s = star(g, "1");
  CHECK(s.num_vertices() == 5);
  CHECK(s.in_arrows("1").size() == 2);
  CHECK(s.out_arrows("1").size() == 2);
  CHECK_THROWS_AS(star(g, "zz"), Error);

  Quiver single;
  single.add_vertex("v");
  CHECK(star(single, "v") == single);

  auto rep = check_homogeneous(grid_quiver(0, 0, 5), grid_interior(0, 0, 5));
  CHECK(rep.is_homogeneous);
  CHECK(rep.out_degree == 2);
  CHECK(rep.in_degree == 2);
  CHECK(rep.loops == 0);
  CHECK(rep.star_iso_witnesses.size() == 80);

  CHECK_FALSE(check_homogeneous(path_quiver(3)).is_homogeneous);
  auto cyc = check_homogeneous(cycle_quiver(4, false));
  CHECK(cyc.is_homogeneous);
  CHECK(cyc.out_degree == 1);
  CHECK(cyc.loops == 0);

  // loops included in the star of Q^{1,0}
  Quiver l = grid_quiver(1, 0, 1);
  CHECK(star(l, "1").has_arrow("x"));
}

TEST_CASE("graph classification names") {
  CHECK(graph_class(path_quiver(4)).name == "A4");
  CHECK(graph_class(cycle_quiver(6, true)).name == "A~5");
  CHECK(graph_class(cycle_quiver(6, false)).kind == GraphKind::Euclidean);
  CHECK(graph_class(from_edges(4, {{0, 1}, {0, 2}, {0, 3}})).name == "D4");
  CHECK(graph_class(from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})).name == "D~4");
  CHECK(graph_class(from_edges(6, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}})).name == "E6");
  CHECK(graph_class(from_edges(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}})).name == "E~6");
  CHECK(graph_class(from_edges(2, {{0, 1}, {0, 1}})).name == "A~1");
  CHECK(graph_class(from_edges(3, {{0, 1}, {0, 1}, {1, 2}})).kind == GraphKind::Other);
  CHECK(graph_class(from_edges(1, {{0, 0}})).kind == GraphKind::Other);
  CHECK_THROWS_AS(graph_class(from_edges(2, {})), Error);
  // the localized example: a tree with branch vertices 2 and 7
  Quiver d;
  for (auto v : {"1", "2", "4", "5", "6", "7", "8", "9"}) d.add_vertex(v);
  d.add_arrow("v", "2", "1");
  d.add_arrow("u", "4", "2");
  d.add_arrow("p", "2", "5");
  d.add_arrow("q", "6", "5");
  d.add_arrow("r", "6", "7");
  d.add_arrow("x", "8", "7");
  d.add_arrow("y", "7", "9");
  CHECK(graph_class(d).name == "D~7");
}

TEST_CASE("graph classification agrees with the Tits form") {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int it = 0; it < 3000; ++it) {
    int n = 1 + static_cast<int>(rng() % 9);
    int extra = static_cast<int>(rng() % 3);
    std::vector<std::pair<int, int>> e;
    // random spanning tree, then a few extra edges
    for (int v = 1; v < n; ++v) {
      int u = static_cast<int>(rng() % v);
      if (rng() % 2) e.emplace_back(u, v); else e.emplace_back(v, u);
    }
    for (int k = 0; k < extra && n > 1; ++k) {
      int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
      if (u != v) e.emplace_back(u, v);
    }
    Quiver q = from_edges(n, e);
    int sig = tits_signature(q);
    GraphKind k = graph_class(q).kind;
    GraphKind expect = sig == 0 ? GraphKind::Dynkin : sig == 1 ? GraphKind::Euclidean : GraphKind::Other;
    CHECK(k == expect);
    ++checked;
  }
  CHECK(checked == 3000);
}

TEST_CASE("quotients") {
  Quiver c = cycle_quiver(4, false);
  auto [id, fid] = quotient(c, {{"0"}, {"1"}, {"2"}, {"3"}});
  CHECK(id == c);
  CHECK(is_morphism(c, id, fid));
  auto [pt, fpt] = quotient(c, {{"0", "1", "2", "3"}});
  CHECK(pt.num_vertices() == 1);
  CHECK(pt.num_arrows() == 4);
  CHECK(is_morphism(c, pt, fpt));
  CHECK_THROWS_AS(quotient(c, {{"0", "1"}, {"1", "2", "3"}}), Error);
  CHECK_THROWS_AS(quotient(c, {{"0", "1"}}), Error);
  CHECK_THROWS_AS(quotient(c, {{"0", "1"}, {}, {"2", "3"}}), Error);

  // property: arrow count preserved under random partitions
  std::mt19937 rng(5);
  Quiver g = grid_quiver(0, 0, 2);
  for (int it = 0; it < 50; ++it) {
    int blocks = 1 + static_cast<int>(rng() % 6);
    std::vector<std::vector<std::string>> part(blocks);
    for (const auto& v : g.vertices()) part[rng() % blocks].push_back(v);
    part.erase(std::remove_if(part.begin(), part.end(), [](auto& b) { return b.empty(); }), part.end());
    auto [qq, f] = quotient(g, part);
    CHECK(qq.num_arrows() == g.num_arrows());
    CHECK(is_morphism(g, qq, f));
  }
}

TEST_CASE("non-Dynkin covers") {
  // the square with loops at 2 and 3
  Quiver target = Quiver::parse_text(
      "v 1\nv 2\nv 3\nv 4\na a12 1 2\na a24 2 4\na a34 3 4\na a13 1 3\na l2 2 2\na l3 3 3\n");
  auto cov = find_nondynkin_cover(target, 6);
  REQUIRE(cov.has_value());
  CHECK(cov->cover.num_vertices() == 6);
  CHECK(cov->cls.name == "A~5");
  CHECK(is_bipartite_orientation(cov->cover));
  CHECK(is_morphism(cov->cover, target, cov->map));
  // gluing back recovers the target
  std::map<std::string, std::vector<std::string>> blocks;
  for (const auto& v : cov->cover.vertices()) blocks[cov->map.vertex_map.at(v)].push_back(v);
  std::vector<std::vector<std::string>> part;
  for (const auto& v : target.vertices()) part.push_back(blocks[v]);
  auto [glued, f] = quotient(cov->cover, part);
  CHECK(find_isomorphism(glued, target).has_value());
  CHECK_FALSE(find_nondynkin_cover(target, 5).has_value());

  CHECK_FALSE(find_nondynkin_cover(path_quiver(2), 8).has_value());
  Quiver kr = from_edges(2, {{0, 1}, {0, 1}});
  auto kc = find_nondynkin_cover(kr, 2);
  REQUIRE(kc.has_value());
  CHECK(kc->cls.name == "A~1");
  CHECK(find_isomorphism(kc->cover, kr).has_value());
}

TEST_CASE("link components") {
  CHECK(classify_link_component(0, 0, 0, std::nullopt).case_tag == 1);
  auto c = classify_link_component(0, 0, 1, 5L);
  CHECK(c.case_tag == 2);
  CHECK(c.representative.num_vertices() == 5);
  CHECK(graph_class(c.representative).name == "A~4");
  CHECK(classify_link_component(0, 0, 1, std::nullopt).case_tag == 3);
  auto g = classify_link_component(2, 0, 2, std::nullopt);
  CHECK(g.case_tag == 4);
  CHECK(g.representative == grid_quiver(2, 0, 2));
  CHECK_THROWS_AS(classify_link_component(0, 0, 3, std::nullopt), Error);
  CHECK_THROWS_AS(classify_link_component(0, 0, 1, 0L), Error);
}

TEST_CASE("quiver text and json") {
  Quiver g = grid_quiver(2, 0, 1);
  CHECK(Quiver::parse_text(g.to_text()) == g);
  CHECK(Quiver::from_json(g.to_json()) == g);
  CHECK_THROWS_AS(Quiver::parse_text("v 1\na x 1 2\n"), Error);
  CHECK_THROWS_AS(Quiver::parse_text("w 1\n"), Error);
  CHECK_THROWS_AS(Quiver::from_json("{\"vertices\":3}"), Error);
}
