#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridhopf/linalg.hpp"
#include "gridhopf/quiver.hpp"
#include "gridhopf/scalar.hpp"

namespace gridhopf {

// Path in a fixed quiver: start vertex index plus arrow indices. Ordered by
// length first, so row reduction pivots on the shortest paths.
struct Path {
  int start = 0;
  std::vector<int> arrows;

  std::size_t length() const { return arrows.size(); }
  bool operator==(const Path&) const = default;
  bool operator<(const Path& o) const {
    if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
    if (start != o.start) return start < o.start;
    return arrows < o.arrows;
  }
};

using CoElement = SparseVec<Path>;
using PathPair = std::pair<Path, Path>;
using Tensor = SparseVec<PathPair>;

int path_source(const Quiver& q, const Path& p);
int path_target(const Quiver& q, const Path& p);
Path trivial_path(const Quiver& q, const std::string& v);
Path arrow_path(const Quiver& q, const std::string& id);
// Composable arrow sequence; InvalidMorphism when arrows do not compose.
Path make_path(const Quiver& q, const std::vector<std::string>& ids);
Path concat(const Quiver& q, const Path& a, const Path& b);

CoElement element(const Path& p, const CycScalar& c = CycScalar(1L));

std::string path_to_string(const Quiver& q, const Path& p);
Path parse_path(const Quiver& q, const std::string& text);
// `<scalar>*<path>` terms joined by + / -; `e_<v>` or `(<id>|<id>|...)`.
std::string element_to_string(const Quiver& q, const CoElement& x);
CoElement parse_element(const Quiver& q, const std::string& text);

Tensor delta(const Quiver& q, const CoElement& x);
CycScalar counit(const CoElement& x);

// Source and target vertex of x if all its paths share them.
std::optional<std::pair<int, int>> diamond_ends(const Quiver& q, const CoElement& x);

// Finite-dimensional subcoalgebra of KQ with a chosen basis.
class SubCoalgebra {
public:
  SubCoalgebra() = default;
  // Keeps the independent members of `spanning` (in order) as the basis and
  // checks closure under comultiplication.
  SubCoalgebra(std::shared_ptr<const Quiver> q, const std::vector<CoElement>& spanning,
               bool check_closure = true);

  const Quiver& quiver() const { return *q_; }
  std::shared_ptr<const Quiver> quiver_ptr() const { return q_; }
  const std::vector<CoElement>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

  bool contains(const CoElement& x) const { return span_.contains(x); }
  std::optional<std::vector<CycScalar>> coords(const CoElement& x) const;
  // Coordinates of T in basis (x) basis, or nullopt if T is not in C (x) C.
  std::optional<Matrix> tensor_coords(const Tensor& t) const;
  // Delta of basis element k in basis (x) basis.
  Matrix delta_coords(std::size_t k) const;

  bool has_vertex(const std::string& v) const;
  // Vertices v with e_v in C, in quiver order.
  std::vector<std::string> grouplikes() const;

private:
  std::shared_ptr<const Quiver> q_;
  std::vector<CoElement> basis_;
  SparseSpan<Path> span_;
};

// KQ_1: vertices and arrows of q.
SubCoalgebra path_coalgebra_1(std::shared_ptr<const Quiver> q);
// Span of all paths of length <= max_len (finite when q is acyclic or max_len bounded).
SubCoalgebra path_coalgebra(std::shared_ptr<const Quiver> q, int max_len);

struct Diamond {
  CoElement elem;
  std::string source;
  std::string target;
};

std::vector<Diamond> diamond_basis(const SubCoalgebra& c);
std::vector<CoElement> elements_of(const std::vector<Diamond>& d);

std::vector<CoElement> skew_primitives(const SubCoalgebra& c, const std::string& g,
                                       const std::string& h);

Quiver ext_quiver(const SubCoalgebra& c);

struct CoradicalFiltration {
  std::vector<SubCoalgebra> layers;  // C_0 subset C_1 subset ...
  std::size_t loewy_length() const { return layers.size(); }
  std::vector<std::size_t> dims() const;
};

CoradicalFiltration coradical_filtration(const SubCoalgebra& c);

// Linear map given on the domain basis.
struct CoalgebraMap {
  SubCoalgebra domain;
  SubCoalgebra codomain;
  std::vector<CoElement> images;  // images[k] = pi(domain.basis()[k])

  CoElement apply(const CoElement& x) const;
};

// Domain basis taken from the listed preimages; they must be a basis of the domain.
CoalgebraMap make_map(const SubCoalgebra& domain, const SubCoalgebra& codomain,
                      const std::vector<std::pair<CoElement, CoElement>>& assignments);

bool is_coalgebra_map(const CoalgebraMap& f, std::string* why = nullptr);

struct CoveringCheck {
  bool is_covering = false;
  std::string reason;
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;  // indices into B
};

CoveringCheck verify_covering(const CoalgebraMap& pi, const std::vector<CoElement>& b,
                              const std::vector<CoElement>& b_prime);

struct InducedCovering {
  SubCoalgebra image;
  CoalgebraMap map;
  std::vector<CoElement> basis;        // diamond basis of the domain
  std::vector<CoElement> image_basis;  // {q(b)}
};

CoElement push_forward(const Quiver& from, const Quiver& to, const QuiverMorphism& f,
                       const CoElement& x);

InducedCovering induced_quotient_covering(const SubCoalgebra& c,
                                          std::shared_ptr<const Quiver> target,
                                          const QuiverMorphism& q);

// Dual algebra C* on the dual basis of a coalgebra basis: (f*g)(c) = (f (x) g)(Delta c).
struct DualAlgebra {
  std::size_t dim = 0;
  std::vector<std::string> labels;
  // mult[i][j] = coordinates of b_i^* b_j^*
  std::vector<std::vector<SparseVec<std::size_t>>> mult;
  std::vector<CycScalar> unit;
  std::vector<std::pair<std::string, std::vector<CycScalar>>> idempotents;

  std::vector<CycScalar> multiply(const std::vector<CycScalar>& a,
                                  const std::vector<CycScalar>& b) const;
  Matrix left_mult(const std::vector<CycScalar>& a) const;
  bool is_associative() const;
};

DualAlgebra dualize(const SubCoalgebra& c);

// Basis of the Jacobson radical (trace-form radical; characteristic zero).
std::vector<std::vector<CycScalar>> radical(const DualAlgebra& a);
// dims of J, J^2, ... until zero
std::vector<std::size_t> radical_series(const DualAlgebra& a);
// Arrows s -> t counted by dim E_s (J/J^2) E_t.
Quiver gabriel_quiver(const DualAlgebra& a);

DualAlgebra localize(const DualAlgebra& a, const std::vector<std::string>& vertices);

struct SeparabilityReport {
  bool separable = false;
  bool unit_ok = false;
  bool central_ok = false;
  std::size_t tensor_dim = 0;  // dim of C* (x)_{D*} C*
  std::string detail;
};

SeparabilityReport separability_check(const CoalgebraMap& pi, const std::vector<CoElement>& b,
                                      const std::vector<CoElement>& b_prime);

inline constexpr std::size_t kSeparabilityCapacity = 40;

}  // namespace gridhopf
