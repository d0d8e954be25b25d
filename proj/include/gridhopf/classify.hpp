#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridhopf/hopf_bmn.hpp"
#include "gridhopf/linalg.hpp"

namespace gridhopf {

// phi_{alpha,beta}: a -> a', b -> b', x -> alpha x', y -> beta y'
// psi_{alpha,beta}: a -> b', b -> a', x -> alpha y', y -> beta x'
struct IsoWitness {
  bool swap = false;
  CycScalar alpha{1L};
  CycScalar beta{1L};

  bool operator==(const IsoWitness& o) const {
    return swap == o.swap && alpha == o.alpha && beta == o.beta;
  }
  std::string to_string() const;  // "phi(2,3)" / "psi(1,-1)"
};

IsoWitness inverse(const IsoWitness& w);
// Apply f first, then g.
IsoWitness then(const IsoWitness& f, const IsoWitness& g);
inline IsoWitness operator*(const IsoWitness& f, const IsoWitness& g) { return then(f, g); }

// Which swap isomorphisms are admitted. Tables: psi needs lambda = lambda' = 1.
// Relations: psi needs lambda lambda' = 1 and k = lambda alpha beta k', which is
// exactly when psi respects every defining relation; the two differ only at
// lambda != 1.
enum class IsoRule { Tables, Relations };

std::optional<IsoWitness> are_isomorphic(const BmnParams& p, const BmnParams& q,
                                         IsoRule rule = IsoRule::Tables);

// Relation-level check that w defines a Hopf map B(p) -> B(q) on generators.
bool verify_witness(const IsoWitness& w, const BmnParams& p, const BmnParams& q,
                    std::string* why = nullptr);

struct CanonicalForm {
  std::string family;  // "1", "2", ..., "5A", "5B", "6", "6'", "7", "7'", "8"
  BmnParams params;
  IsoWitness witness;  // B(input) -> B(params)
};

CanonicalForm canonical_form(const BmnParams& p, IsoRule rule = IsoRule::Tables);

struct AutDescription {
  std::string table;  // "I" when m+n != 0, "II" otherwise
  std::string row;    // row tag in that table, e.g. "1A", "5B", "6'"
  std::string group_name;
  std::vector<std::string> constraints;       // on phi_{alpha,beta}
  std::vector<std::string> swap_constraints;  // on psi_{alpha,beta}, when present
  bool includes_swap = false;
  bool finite = false;
};

AutDescription automorphism_group(const BmnParams& p, IsoRule rule = IsoRule::Tables);
bool satisfies(const AutDescription& a, const IsoWitness& w);
// All elements when the group is finite; otherwise elements with alpha, beta
// drawn from a small fixed pool of scalars.
std::vector<IsoWitness> aut_elements(const AutDescription& a);

Matrix rho(const IsoWitness& w);
std::vector<Matrix> rho_representation(const std::vector<IsoWitness>& elems);

// [G : C] for C the phi-type elements of G; NotClosed unless G is closed
// under products.
std::size_t centralizer_index(const std::vector<IsoWitness>& elems);

}  // namespace gridhopf
