#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gridhopf/coalgebra.hpp"
#include "gridhopf/hopf_bmn.hpp"
#include "gridhopf/linalg.hpp"

namespace gridhopf {

// Finite-dimensional left comodule given by a comatrix: on the basis m_1..m_d
// the coaction is m_i -> sum_j c_ij (x) m_j, with Delta(c_ij) = sum_k c_ik (x) c_kj
// and eps(c_ij) = delta_ij.
struct Comodule {
  std::shared_ptr<const SubCoalgebra> ambient;
  std::vector<std::vector<CoElement>> coaction;
  std::vector<std::string> labels;  // vertex of each basis vector, when known
  std::string name;

  std::size_t dim() const { return coaction.size(); }
  const Quiver& quiver() const { return ambient->quiver(); }
};

// Checks the comatrix identities and that every entry lies in the ambient.
// InvalidSpec on failure.
void check_comodule(const Comodule& m);
Comodule make_comodule(std::shared_ptr<const SubCoalgebra> ambient,
                       std::vector<std::vector<CoElement>> coaction,
                       std::vector<std::string> labels = {}, std::string name = {});

Comodule direct_sum(const Comodule& m, const Comodule& n);
// New basis m'_a = sum_i p(a,i) m_i; p must be invertible.
Comodule change_basis(const Comodule& m, const Matrix& p);

// Vertex -> multiplicity of the simple comodule at that vertex.
std::map<std::string, std::size_t> dimension_vector(const Comodule& m);

SubCoalgebra coefficient_coalgebra(const Comodule& m);

// Comodule maps f with f(m_j) = sum_i F(i,j) n_i; F is dim N x dim M.
struct HomSpace {
  std::size_t rows = 0, cols = 0;
  std::vector<Matrix> basis;
  std::size_t dim() const { return basis.size(); }
};

HomSpace hom(const Comodule& m, const Comodule& n);
bool is_hom(const Comodule& m, const Comodule& n, const Matrix& f);

// End(M)/J(End(M)) one-dimensional, with J the radical of (f, g) -> tr(fg).
bool is_indecomposable(const Comodule& m);
bool comodules_isomorphic(const Comodule& m, const Comodule& n);

// dims of soc^1 M, soc^2 M, ..., ending at dim M
std::vector<std::size_t> socle_series(const Comodule& m);
std::size_t loewy_length(const Comodule& m);
bool is_uniserial(const Comodule& m);

using WindowPtr = std::shared_ptr<const BmnWindow>;
WindowPtr make_window(const BmnParams& p, long radius);
std::shared_ptr<const SubCoalgebra> window_coalgebra(const WindowPtr& w);

// Letters x, y step forward along an arrow out of the current vertex; X, Y
// step backward along an arrow into it. Case and letter alternate.
struct StringSpec {
  GroupElem start;
  std::string word;
};

struct BandSpec {
  long length = 1;  // size of the Jordan block on the closing edge
  CycScalar mu{1L};
};

Comodule build_simple(const WindowPtr& w, const GroupElem& g);
Comodule build_string(const WindowPtr& w, const StringSpec& spec);
// Support g, ga, gb, gab with g = a^i b^j.
Comodule build_diamond(const WindowPtr& w, long i, long j);
Comodule build_band(const WindowPtr& w, const BandSpec& spec);
std::vector<Comodule> build_band_family(const BmnParams& p, long length,
                                        const std::vector<CycScalar>& mus);

std::vector<Comodule> enumerate_indecomposables(const BmnParams& p, long radius,
                                                std::size_t max_total_dim);
std::vector<Comodule> enumerate_indecomposables(const WindowPtr& w, std::size_t max_total_dim);

struct DiscreteDecision {
  bool discrete = true;
  std::vector<Comodule> witness;  // band family when not discrete
  bool witness_verified = false;
};

bool discrete_predicate(long m, long n);
DiscreteDecision decide_discrete(const BmnParams& p, bool build_witness = true);

// Indecomposable, equal dimension vectors, hom zero in both directions pairwise.
bool verify_band_witness(const std::vector<Comodule>& family);

std::string comodule_to_json(const Comodule& m);

}  // namespace gridhopf
