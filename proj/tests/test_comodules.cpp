#include <doctest.h>

#include <chrono>
#include <set>

#include "extension_search.hpp"
#include "gridhopf/comodules.hpp"
#include "gridhopf/error.hpp"

using namespace gridhopf;

namespace {

CycScalar S(long v) { return CycScalar(v); }

BmnParams P(long m, long n, CycScalar l = S(1), CycScalar s = S(0), CycScalar t = S(0),
            CycScalar k = S(0)) {
  return validate_params(m, n, l, s, t, k);
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

// Dense oracle for dim hom(M, N): the commutation identity expanded on basis
// vectors and solved by rank.
std::size_t hom_dim_oracle(const Comodule& m, const Comodule& n) {
  const std::size_t dm = m.dim(), dn = n.dim();
  // Rows of the linear system, one per (j, l, path), built as dense vectors.
  std::vector<std::vector<CycScalar>> rows;
  for (std::size_t j = 0; j < dm; ++j)
    for (std::size_t l = 0; l < dn; ++l) {
      std::set<Path> paths;
      for (std::size_t i = 0; i < dn; ++i)
        for (const auto& [p, c] : n.coaction[i][l]) paths.insert(p);
      for (std::size_t k = 0; k < dm; ++k)
        for (const auto& [p, c] : m.coaction[j][k]) paths.insert(p);
      for (const auto& p : paths) {
        std::vector<CycScalar> row(dm * dn);
        for (std::size_t i = 0; i < dn; ++i) {
          auto it = n.coaction[i][l].find(p);
          if (it != n.coaction[i][l].end()) row[i * dm + j] += it->second;
        }
        for (std::size_t k = 0; k < dm; ++k) {
          auto it = m.coaction[j][k].find(p);
          if (it != m.coaction[j][k].end()) row[l * dm + k] -= it->second;
        }
        rows.push_back(row);
      }
    }
  Matrix a(rows.size(), dm * dn);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < dm * dn; ++c) a.at(r, c) = rows[r][c];
  return dm * dn - rank(a);
}

}  // namespace

TEST_CASE("simple comodules and hom between them") {
  auto w = make_window(P(0, 0), 1);
  auto s1 = build_simple(w, {0, 0});
  auto s2 = build_simple(w, {1, 0});
  CHECK(s1.dim() == 1);
  CHECK(s1.coaction[0][0] == element(trivial_path(*w->quiver, "1")));
  CHECK(hom(s1, s1).dim() == 1);
  CHECK(hom(s1, s2).dim() == 0);
  CHECK(is_indecomposable(s1));
  CHECK(is_uniserial(s1));
  CHECK(coefficient_coalgebra(s1).dim() == 1);
  auto ss = direct_sum(s1, s1);
  CHECK_FALSE(is_indecomposable(ss));
  CHECK(hom(ss, ss).dim() == 4);
  CHECK(code_of([&] { build_simple(w, {2, 0}); }) == ErrorCode::WindowTooSmall);
  auto other = make_window(P(0, 0), 1);
  CHECK(code_of([&] { hom(s1, build_simple(other, {0, 0})); }) == ErrorCode::AmbientMismatch);
}

TEST_CASE("diamond comodules") {
  for (const auto& prm : {P(0, 0), P(0, 0, S(-1), S(1), S(1)), P(3, 1, S(1), S(1), S(1), S(2))}) {
    auto w = make_window(prm, 1);
    auto d = build_diamond(w, 0, 0);
    CHECK(d.dim() == 4);
    CHECK(is_indecomposable(d));
    CHECK(loewy_length(d) == 3);
    CHECK(socle_series(d) == std::vector<std::size_t>{1, 3, 4});
    CHECK_FALSE(is_uniserial(d));
    auto dv = dimension_vector(d);
    CHECK(dv.size() == 4);
    // socle is the simple at ab
    auto sab = build_simple(w, group_canonical(prm, 1, 1));
    CHECK(hom(sab, d).dim() == 1);
    CHECK(hom(d, sab).dim() == 0);
    CHECK(hom(d, build_simple(w, {0, 0})).dim() == 1);
    CHECK(hom_dim_oracle(d, d) == hom(d, d).dim());
    CHECK(hom(d, d).dim() == 1);
    CHECK(coefficient_coalgebra(d).dim() == 9);
  }
}

TEST_CASE("string comodules") {
  auto w = make_window(P(0, 0), 1);
  auto s = build_string(w, {{0, 0}, "xY"});  // 1 -> a <- a b^-1
  CHECK(s.dim() == 3);
  CHECK(socle_series(s) == std::vector<std::size_t>{1, 3});
  CHECK_FALSE(is_uniserial(s));
  CHECK(is_indecomposable(s));
  auto v = build_string(w, {{0, 0}, "Xy"});  // a^-1 -> 1, then 1 -> b
  CHECK(socle_series(v) == std::vector<std::size_t>{2, 3});
  CHECK(is_indecomposable(v));
  auto one = build_string(w, {{0, 0}, "x"});
  CHECK(is_uniserial(one));
  CHECK(loewy_length(one) == 2);
  auto far = build_string(w, {{-1, 0}, "y"});
  CHECK(hom(one, far).dim() == 0);
  CHECK(hom(far, one).dim() == 0);
  CHECK(hom_dim_oracle(s, v) == hom(s, v).dim());
  CHECK(code_of([&] { build_string(w, {{0, 0}, "xx"}); }) == ErrorCode::InvalidSpec);
  CHECK(code_of([&] { build_string(w, {{0, 0}, "xX"}); }) == ErrorCode::InvalidSpec);
  CHECK(code_of([&] { build_string(w, {{0, 0}, "q"}); }) == ErrorCode::InvalidSpec);
  CHECK(code_of([&] { build_string(w, {{1, 0}, "x"}); }) == ErrorCode::WindowTooSmall);
}

TEST_CASE("hom agrees with a dense oracle on random pairs") {
  auto w = make_window(P(0, 0), 1);
  auto inv = enumerate_indecomposables(w, 4);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto& a = inv[rng() % inv.size()];
    const auto& b = inv[rng() % inv.size()];
    auto h = hom(a, b);
    CHECK(h.dim() == hom_dim_oracle(a, b));
    for (const auto& f : h.basis) CHECK(is_hom(a, b, f));
  }
}

TEST_CASE("basis change preserves the isomorphism class") {
  auto w = make_window(P(0, 0), 1);
  auto d = build_diamond(w, -1, -1);
  Matrix p(4, 4);
  long vals[4][4] = {{1, 2, 0, -1}, {0, 1, 1, 0}, {3, 0, 1, 1}, {0, 0, 2, 1}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) p.at(i, j) = S(vals[i][j]);
  auto e = change_basis(d, p);
  CHECK_NOTHROW(check_comodule(e));
  CHECK(comodules_isomorphic(d, e));
  CHECK(dimension_vector(d) == dimension_vector(e));
  CHECK(socle_series(e) == socle_series(d));
  CHECK_FALSE(comodules_isomorphic(d, build_diamond(w, 0, 0)));
  auto sum = direct_sum(d, build_simple(w, {1, 1}));
  CHECK(coefficient_coalgebra(sum).dim() == coefficient_coalgebra(d).dim() + 1);
}

TEST_CASE("invalid coactions are rejected") {
  auto w = make_window(P(0, 0), 1);
  auto amb = window_coalgebra(w);
  const Quiver& q = *w->quiver;
  auto e1 = element(trivial_path(q, "1")), ea = element(trivial_path(q, "a"));
  auto x = element(arrow_path(q, grid_arrow_label({0, 0}, 'x')));
  CHECK_NOTHROW(make_comodule(amb, {{e1, x}, {{}, ea}}));
  CHECK(code_of([&] { make_comodule(amb, {{e1, x}, {{}, e1}}); }) == ErrorCode::InvalidSpec);
  CHECK(code_of([&] { make_comodule(amb, {{ea, x}, {{}, ea}}); }) == ErrorCode::InvalidSpec);
  CHECK(code_of([&] { make_comodule(amb, {{e1, e1}, {{}, ea}}); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("enumeration over the unfolded grid") {
  auto p = P(0, 0);
  CHECK(enumerate_indecomposables(p, 1, 1).size() == 9);
  auto inv = enumerate_indecomposables(p, 1, 4);
  std::size_t diamonds = 0, strings = 0;
  for (const auto& m : inv) {
    if (m.name.rfind("diamond", 0) == 0) ++diamonds;
    if (m.name.rfind("string", 0) == 0) ++strings;
    CHECK(is_indecomposable(m));
  }
  CHECK(diamonds == 4);
  // staircases inside the 3x3 window: count them directly
  std::size_t expect = 0;
  for (long i = -1; i <= 1; ++i)
    for (long j = -1; j <= 1; ++j) {
      // lengths 1..3 from each start and each first letter; each string counted from both ends
      for (std::string first : {"x", "y", "X", "Y"}) {
        long ci = i, cj = j;
        std::string word;
        char letter = first[0];
        for (int len = 1; len <= 3; ++len) {
          bool fwd = std::islower(static_cast<unsigned char>(letter));
          bool isx = std::tolower(static_cast<unsigned char>(letter)) == 'x';
          long ni = ci + (isx ? (fwd ? 1 : -1) : 0), nj = cj + (isx ? 0 : (fwd ? 1 : -1));
          if (ni < -1 || ni > 1 || nj < -1 || nj > 1) break;
          ++expect;
          ci = ni;
          cj = nj;
          letter = fwd ? (isx ? 'Y' : 'X') : (isx ? 'y' : 'x');
        }
      }
    }
  CHECK(strings * 2 == expect);
  // pairwise non-isomorphic
  for (std::size_t a = 0; a < inv.size(); ++a)
    for (std::size_t b = a + 1; b < inv.size(); ++b)
      if (inv[a].dim() == inv[b].dim()) CHECK_FALSE(comodules_isomorphic(inv[a], inv[b]));
}

TEST_CASE("enumeration on a folded grid") {
  auto p = P(3, 1, S(1), S(1), S(1), S(1));
  auto inv1 = enumerate_indecomposables(p, 1, 4);
  auto inv2 = enumerate_indecomposables(p, 2, 4);
  CHECK(inv2.size() > inv1.size());
  // every module of the small window reappears in the larger one, same counts per dimension vector
  std::map<std::map<std::string, std::size_t>, std::size_t> c1, c2;
  for (const auto& m : inv1) ++c1[dimension_vector(m)];
  for (const auto& m : inv2) ++c2[dimension_vector(m)];
  for (const auto& [dv, k] : c1) CHECK(c2[dv] == k);
  for (const auto& m : inv2)
    for (const auto& l : m.labels) {
      // labels are canonical group elements
      CHECK_FALSE(l.empty());
    }
  CHECK(code_of([] { enumerate_indecomposables(P(2, 2), 1, 2); }) == ErrorCode::NotDiscreteParams);
}

TEST_CASE("band families") {
  for (long n : {2L, 4L}) {
    auto p = P(n, n);
    auto fam = build_band_family(p, 1, {S(1), S(2), S(3)});
    CHECK(fam.size() == 3);
    for (const auto& m : fam) {
      CHECK(m.dim() == static_cast<std::size_t>(2 * n));
      CHECK(is_indecomposable(m));
      CHECK(loewy_length(m) == 2);
    }
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        std::size_t h = hom(fam[a], fam[b]).dim();
        CHECK(h == hom_dim_oracle(fam[a], fam[b]));
        CHECK(h == (a == b ? 1u : 0u));
      }
    CHECK(verify_band_witness(fam));
    auto w = make_window(p, n);
    auto b2 = build_band(w, BandSpec{1, S(2)});
    CHECK(comodules_isomorphic(b2, build_band(w, BandSpec{1, S(2)})));
    CHECK_FALSE(comodules_isomorphic(b2, build_band(w, BandSpec{1, S(-2)})));
    CHECK(dimension_vector(b2) == dimension_vector(fam[0]));
  }
  auto p = P(2, 2);
  auto jordan = build_band_family(p, 2, {S(1), S(5)});
  for (const auto& m : jordan) {
    CHECK(m.dim() == 8);
    CHECK(is_indecomposable(m));
  }
  CHECK(code_of([] { build_band_family(P(0, 0), 1, {S(1)}); }) == ErrorCode::RequiresMEqualsN);
  CHECK(code_of([] { build_band_family(P(4, 2), 1, {S(1)}); }) == ErrorCode::RequiresMEqualsN);
  CHECK(code_of([&] { build_band_family(p, 1, {S(1), S(1)}); }) == ErrorCode::InvalidSpec);
  CHECK(code_of([&] { build_band_family(p, 1, {S(0)}); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("discreteness decision") {
  CHECK(decide_discrete(P(0, 0)).discrete);
  CHECK(decide_discrete(P(3, 1)).discrete);
  auto d = decide_discrete(P(2, 2));
  CHECK_FALSE(d.discrete);
  CHECK(d.witness.size() == 3);
  CHECK(d.witness_verified);
  for (long m = -6; m <= 6; ++m)
    for (long n = -6; n <= 6; ++n) {
      BmnParams p;
      try {
        p = P(m, n);
      } catch (const Error&) {
        continue;
      }
      bool expect = !(p.m == p.n && p.m != 0);
      CHECK(decide_discrete(p, false).discrete == expect);
    }
}

TEST_CASE("brute-force extension search finds nothing new") {
  auto t0 = std::chrono::steady_clock::now();
  auto rep = testing::extension_search(P(0, 0), 1, 6, 1500, 99);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("valid " << rep.valid << ", indecomposable " << rep.indecomposable << ", by Loewy length "
                   << rep.by_loewy[1] << "/" << rep.by_loewy[2] << "/" << rep.by_loewy[3] << " in " << secs
                   << " s");
  CHECK(rep.missing == 0);
  CHECK(rep.by_loewy[2] > 0);
  CHECK(rep.by_loewy[3] > 0);
  if (rep.missing) MESSAGE(rep.first_missing);
}

TEST_CASE("json export") {
  auto w = make_window(P(0, 0), 1);
  auto j = comodule_to_json(build_diamond(w, 0, 0));
  CHECK(j.find("\"dimension\":4") != std::string::npos);
  CHECK(j.find("coaction") != std::string::npos);
}
