#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gridhopf/coalgebra.hpp"
#include "gridhopf/group.hpp"
#include "gridhopf/scalar.hpp"

namespace gridhopf {

struct BmnParams {
  long m = 0;
  long n = 0;
  CycScalar lambda{1L};
  CycScalar s, t, k;

  bool operator==(const BmnParams& o) const {
    return m == o.m && n == o.n && lambda == o.lambda && s == o.s && t == o.t && k == o.k;
  }
  std::string to_string() const;  // "(m,n,lambda,s,t,k)"
};

// Sign-normalizes (m, n) and checks every constraint on the parameters.
BmnParams validate_params(long m, long n, const CycScalar& lambda, const CycScalar& s,
                          const CycScalar& t, const CycScalar& k);

GroupElem group_canonical(const BmnParams& p, long i, long j);

// Canonical group elements a^i b^j with |i|, |j| <= radius, sorted.
std::vector<GroupElem> group_window(const BmnParams& p, long radius);

// Basis element g x^p y^q.
struct BasisKey {
  GroupElem g;
  int p = 0;
  int q = 0;
  auto operator<=>(const BasisKey&) const = default;
};

std::string key_label(const BasisKey& key);  // "1", "a^2*b^-1*x*y", "y"

class BmnAlgebra;
using BmnAlgebraPtr = std::shared_ptr<const BmnAlgebra>;

class BmnElement {
public:
  BmnElement() = default;
  explicit BmnElement(BmnAlgebraPtr alg) : alg_(std::move(alg)) {}
  BmnElement(BmnAlgebraPtr alg, const BasisKey& key, const CycScalar& c = CycScalar(1L));

  const BmnAlgebraPtr& algebra() const { return alg_; }
  const SparseVec<BasisKey>& terms() const { return terms_; }
  SparseVec<BasisKey>& terms() { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  CycScalar coeff(const BasisKey& key) const;

  BmnElement& operator+=(const BmnElement& o);
  BmnElement& operator-=(const BmnElement& o);
  friend BmnElement operator+(BmnElement a, const BmnElement& b) { return a += b; }
  friend BmnElement operator-(BmnElement a, const BmnElement& b) { return a -= b; }
  friend BmnElement operator*(const CycScalar& c, const BmnElement& u);
  friend BmnElement operator*(const BmnElement& u, const BmnElement& v);
  BmnElement operator-() const;
  bool operator==(const BmnElement& o) const { return terms_ == o.terms_; }

  std::string to_string() const;

private:
  BmnAlgebraPtr alg_;
  SparseVec<BasisKey> terms_;
};

using KeyPair = std::pair<BasisKey, BasisKey>;
using BmnTensor = SparseVec<KeyPair>;

class BmnAlgebra : public std::enable_shared_from_this<BmnAlgebra> {
public:
  static BmnAlgebraPtr create(const BmnParams& p);

  const BmnParams& params() const { return p_; }
  GroupElem canon(long i, long j) const { return group_canonical(p_, i, j); }
  GroupElem mul(const GroupElem& g, const GroupElem& h) const { return canon(g.i + h.i, g.j + h.j); }

  BmnElement one() const { return elem({}); }
  BmnElement a(long e = 1) const { return elem({canon(e, 0), 0, 0}); }
  BmnElement b(long e = 1) const { return elem({canon(0, e), 0, 0}); }
  BmnElement x() const { return elem({{}, 1, 0}); }
  BmnElement y() const { return elem({{}, 0, 1}); }
  BmnElement elem(const BasisKey& key, const CycScalar& c = CycScalar(1L)) const;

  // Products of basis elements, in normal form.
  SparseVec<BasisKey> multiply_keys(const BasisKey& u, const BasisKey& v) const;
  BmnElement multiply(const BmnElement& u, const BmnElement& v) const;
  BmnTensor comultiply(const BmnElement& u) const;
  CycScalar counit(const BmnElement& u) const;
  BmnElement antipode(const BmnElement& u) const;

  BmnTensor tensor_multiply(const BmnTensor& u, const BmnTensor& v) const;
  // m(f (x) g) for the two linear maps given on basis keys
  BmnElement contract(const BmnTensor& t, bool antipode_left, bool antipode_right) const;

  // Generators a, b, x, y, a^-1, b^-1 with integer exponents, scalar literals,
  // '*', '+' and '-'.
  BmnElement parse(const std::string& text) const;

  explicit BmnAlgebra(const BmnParams& p);

private:
  // scalar c with letter * g = c * g * letter
  CycScalar chi(char letter, const GroupElem& g) const;
  SparseVec<BasisKey> reduce_word(const std::string& w) const;

  BmnParams p_;
  std::map<std::string, SparseVec<BasisKey>> words_;  // all words in x, y of length <= 4
  std::map<BasisKey, BmnTensor> delta_unit_;          // Delta(x^p y^q)
};

std::string tensor_to_string(const BmnTensor& t);

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::string witness;  // element on which the axiom failed
};

struct HopfReport {
  bool ok = true;
  std::vector<AxiomResult> axioms;
};

// Coassociativity, counit and antipode laws on every basis element over the
// window, associativity and multiplicativity of Delta and eps on seeded samples.
HopfReport verify_hopf_axioms(const BmnParams& p, long radius, unsigned seed = 20240601,
                              std::size_t samples = 300);

struct GridArrow {
  GroupElem src;
  char gen = 'x';
  auto operator<=>(const GridArrow&) const = default;
};

// Image of cf(T_N) inside the path coalgebra of the grid quiver.
struct BmnWindow {
  BmnAlgebraPtr alg;
  long radius = 0;
  std::vector<GroupElem> group;      // G_N
  std::vector<BasisKey> keys;        // basis of cf(T_N)
  std::shared_ptr<const Quiver> quiver;
  std::map<GridArrow, std::string> arrow_ids;
  std::map<std::string, GroupElem> vertex_elems;
  SubCoalgebra coalgebra;            // spanned by the images of keys

  CoElement embed_key(const BasisKey& key) const;
  CoElement embed(const BmnElement& u) const;
  std::string vertex(const GroupElem& g) const { return grid_vertex_label(g); }
  bool has_arrow(const GridArrow& a) const { return arrow_ids.count(a) != 0; }
  Path path(const std::vector<GridArrow>& arrows) const;  // WindowTooSmall if missing
  // rank of the images of g x^p y^q for g in G_N
  std::size_t window_rank() const;
};

BmnWindow truncate_to_subcoalgebra(const BmnParams& p, long radius);

// c1 (gx|gay) + c2 (gy|gbx) with g = a^i b^j in the window.
bool contains_path_combination(const BmnWindow& w, long i, long j, const CycScalar& c1,
                               const CycScalar& c2);
bool contains_path(const BmnWindow& w, const std::vector<GridArrow>& arrows);

std::vector<GridArrow> translate(const BmnParams& p, const GroupElem& g,
                                 const std::vector<GridArrow>& path);
// Same on a window path; WindowTooSmall when the translate leaves the window.
Path translate(const BmnWindow& w, const GroupElem& g, const Path& path);

}  // namespace gridhopf
