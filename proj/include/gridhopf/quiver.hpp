#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridhopf/group.hpp"

namespace gridhopf {

struct Arrow {
  std::string id;
  std::string src;
  std::string dst;
  bool operator==(const Arrow&) const = default;
};

// Finite quiver with labelled vertices and arrows, both kept in insertion order.
class Quiver {
public:
  Quiver() = default;

  void add_vertex(const std::string& label);
  void add_arrow(const std::string& id, const std::string& src, const std::string& dst);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_arrows() const { return arrows_.size(); }

  bool has_vertex(const std::string& v) const { return vindex_.count(v) != 0; }
  bool has_arrow(const std::string& id) const { return aindex_.count(id) != 0; }
  int vertex_index(const std::string& v) const;
  int arrow_index(const std::string& id) const;
  const Arrow& arrow(const std::string& id) const { return arrows_[arrow_index(id)]; }
  const Arrow& arrow_at(int idx) const { return arrows_[idx]; }
  const std::string& vertex_at(int idx) const { return vertices_[idx]; }

  std::vector<int> out_arrows(const std::string& v) const;
  std::vector<int> in_arrows(const std::string& v) const;

  bool operator==(const Quiver&) const = default;

  // `v <label>` / `a <id> <src> <dst>` lines; '#' starts a comment.
  static Quiver parse_text(const std::string& text);
  std::string to_text() const;
  std::string to_json() const;
  static Quiver from_json(const std::string& json);

private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, int> vindex_;
  std::map<std::string, int> aindex_;
};

struct QuiverMorphism {
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, std::string> arrow_map;
};

// True iff f is a quiver morphism Q -> Q'.
bool is_morphism(const Quiver& q, const Quiver& target, const QuiverMorphism& f);

// Finite window of the grid quiver on <a,b | ab=ba, a^m=b^n>: canonical
// vertices a^i b^j with |i|,|j| <= radius, arrows gx: g -> ga and gy: g -> gb.
Quiver grid_quiver(long m, long n, long radius);
std::string grid_vertex_label(const GroupElem& g);
std::string grid_arrow_label(const GroupElem& g, char gen);

Quiver star(const Quiver& q, const std::string& v);

// Vertex bijection preserving arrow counts between every ordered pair, with
// optional forced assignments. Returns the map on vertex labels.
std::optional<std::map<std::string, std::string>> find_isomorphism(
    const Quiver& a, const Quiver& b, const std::map<std::string, std::string>& fixed = {});

struct VertexDegrees {
  std::string vertex;
  int out_distinct = 0;  // neighbours h != g with an arrow g -> h
  int in_distinct = 0;   // neighbours h != g with an arrow h -> g
  int loops = 0;
};

struct HomogeneityReport {
  std::vector<VertexDegrees> degrees;
  int out_degree = -1;  // common value, -1 if vertices disagree
  int in_degree = -1;
  int loops = -1;
  bool is_homogeneous = false;
  // star of `reference` mapped onto the star of each other vertex
  std::string reference;
  std::vector<std::pair<std::string, std::map<std::string, std::string>>> star_iso_witnesses;
  std::vector<std::string> failures;
};

// Checks the listed vertices (all vertices when focus is empty).
HomogeneityReport check_homogeneous(const Quiver& q, const std::vector<std::string>& focus = {});

// At most one arrow between any ordered pair of vertices.
bool is_schurian(const Quiver& q);

// Vertices of the grid window whose four neighbours all lie in the window.
std::vector<std::string> grid_interior(long m, long n, long radius);

enum class GraphKind { Dynkin, Euclidean, Other };

struct GraphClass {
  GraphKind kind = GraphKind::Other;
  std::string name;  // "A4", "D5", "E6", "A~5", "D~7", "E~8", or "" for Other
};

GraphClass graph_class(const Quiver& q);
std::string to_string(GraphKind k);

bool is_connected(const Quiver& q);
// Every vertex is a sink or a source.
bool is_bipartite_orientation(const Quiver& q);

// Glue the blocks of a vertex partition; arrows keep their ids. Each block is
// named after its first listed vertex.
std::pair<Quiver, QuiverMorphism> quotient(const Quiver& q,
                                           const std::vector<std::vector<std::string>>& partition);

struct Cover {
  Quiver cover;
  Quiver image;  // subquiver of the target
  QuiverMorphism map;
  GraphClass cls;
};

// Smallest bipartite non-Dynkin quiver with at most size_bound vertices that
// maps onto a subquiver of target by a quotient morphism.
std::optional<Cover> find_nondynkin_cover(const Quiver& target, int size_bound);

struct LinkComponent {
  int case_tag = 0;  // 1 single vertex, 2 oriented cycle, 3 infinite line, 4 grid
  std::string description;
  Quiver representative;
};

// cyclic_order is absent for an infinite cyclic group.
LinkComponent classify_link_component(long m, long n, int num_generators,
                                      std::optional<long> cyclic_order);

}  // namespace gridhopf
