#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gridhopf/scalar.hpp"

namespace gridhopf::testing {

struct TableRow {
  std::string table, row;
  CycScalar lambda, s, t, k;
  std::string group;
  std::set<std::string> phi;
  bool swap;
};

// Both tables of the classification theorem, transcribed row by row.
inline std::vector<std::pair<std::pair<long, long>, TableRow>> expected_rows() {
  auto lit = [](long v) { return CycScalar(v); };
  auto zeta = [](int n, long e = 1) { return CycScalar::zeta(n, e); };
  std::set<std::string> none, a2{"alpha^2=1"}, b2{"beta^2=1"}, ab{"alpha^2=1", "beta^2=1"},
      abk{"alpha^2=1", "beta^2=1", "alpha*beta=1"}, a2k{"alpha^2=1", "alpha*beta=1"},
      b2k{"beta^2=1", "alpha*beta=1"}, k1{"alpha*beta=1"};
  std::pair<long, long> I{4, 2}, II{2, -2};
  return {
      {I, {"I", "1", zeta(4, 2), lit(0), lit(0), lit(0), "K^x x K^x", none, false}},
      {I, {"I", "2", lit(-1), lit(0), lit(1), lit(0), "K^x x Z/2", b2, false}},
      {I, {"I", "3", lit(-1), lit(1), lit(0), lit(0), "K^x x Z/2", a2, false}},
      {I, {"I", "4", lit(-1), lit(1), lit(1), lit(0), "Z/2 x Z/2", ab, false}},
      {I, {"I", "5A", lit(1), lit(1), lit(1), lit(0), "Z/2 x Z/2", ab, false}},
      {I, {"I", "5B", lit(1), lit(1), lit(1), lit(7), "Z/2", abk, false}},
      {I, {"I", "6", lit(1), lit(1), lit(0), lit(0), "K^x x Z/2", a2, false}},
      {I, {"I", "6'", lit(1), lit(0), lit(1), lit(0), "K^x x Z/2", b2, false}},
      {I, {"I", "7", lit(1), lit(1), lit(0), lit(1), "Z/2", a2k, false}},
      {I, {"I", "7'", lit(1), lit(0), lit(1), lit(1), "Z/2", b2k, false}},
      {I, {"I", "8", lit(1), lit(0), lit(0), lit(1), "K^x", k1, false}},
      {II, {"II", "1A", lit(1), lit(0), lit(0), lit(0), "(K^x x K^x) x| Z/2", none, true}},
      {II, {"II", "1B", lit(-1), lit(0), lit(0), lit(0), "K^x x K^x", none, false}},
      {II, {"II", "2", lit(-1), lit(0), lit(1), lit(0), "K^x x Z/2", b2, false}},
      {II, {"II", "3", lit(-1), lit(1), lit(0), lit(0), "K^x x Z/2", a2, false}},
      {II, {"II", "4", lit(-1), lit(1), lit(1), lit(0), "Z/2 x Z/2", ab, false}},
      {II, {"II", "5A", lit(1), lit(1), lit(1), lit(0), "D_4", ab, true}},
      {II, {"II", "5B", lit(1), lit(1), lit(1), zeta(3), "Z/2 x Z/2", abk, true}},
      {II, {"II", "6", lit(1), lit(1), lit(0), lit(0), "K^x x Z/2", a2, false}},
      {II, {"II", "7", lit(1), lit(1), lit(0), lit(1), "Z/2", a2k, false}},
      {II, {"II", "8", lit(1), lit(0), lit(0), lit(1), "Dih(K^x)", k1, true}},
  };
}

}  // namespace gridhopf::testing
