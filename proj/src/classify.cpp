#include "gridhopf/classify.hpp"

#include <algorithm>

#include "gridhopf/error.hpp"

namespace gridhopf {

namespace {

const CycScalar kOne{1L};

bool positive_lead(const CycScalar& c) {
  CycScalar m = c.minimal();
  for (const auto& q : m.coeffs())
    if (q != 0) return q > 0;
  return true;
}

CycScalar normalize_sign(const CycScalar& c) { return positive_lead(c) ? c : -c; }

CycScalar sqrt_or_fail(const CycScalar& c) {
  auto r = try_sqrt(c);
  if (!r) fail(ErrorCode::SquareRootUnavailable, "no square root of " + c.to_string() + " found");
  return *r;
}

bool same_pair(long m, long n, long m2, long n2) {
  return sign_normalize(m, n) == sign_normalize(m2, n2);
}

// alpha, beta with s = alpha^2 s2, t = beta^2 t2, k = alpha beta k2.
std::optional<std::pair<CycScalar, CycScalar>> solve_scaling(const CycScalar& s, const CycScalar& t,
                                                             const CycScalar& k, const CycScalar& s2,
                                                             const CycScalar& t2, const CycScalar& k2) {
  if (s.is_zero() != s2.is_zero() || t.is_zero() != t2.is_zero() || k.is_zero() != k2.is_zero())
    return std::nullopt;
  std::optional<CycScalar> a, b;
  if (!s.is_zero()) a = normalize_sign(sqrt_or_fail(s / s2));
  if (!t.is_zero()) b = normalize_sign(sqrt_or_fail(t / t2));
  if (k.is_zero()) return std::make_pair(a.value_or(kOne), b.value_or(kOne));
  CycScalar r = k / k2;  // alpha beta
  if (!a && !b) return std::make_pair(kOne, r);
  if (a && !b) return std::make_pair(*a, r / *a);
  if (!a && b) return std::make_pair(r / *b, *b);
  CycScalar sign = r / (*a * *b);
  if (sign == kOne) return std::make_pair(*a, *b);
  if (sign == -kOne) return std::make_pair(*a, -*b);
  return std::nullopt;
}

BmnElement power(const BmnElement& u, long e) {
  BmnElement r = u.algebra()->one();
  for (long i = 0; i < e; ++i) r = r * u;
  return r;
}

BmnTensor tensor_of(const BmnElement& u, const BmnElement& v) {
  BmnTensor t;
  for (const auto& [k1, c1] : u.terms())
    for (const auto& [k2, c2] : v.terms()) add_entry(t, KeyPair{k1, k2}, c1 * c2);
  return t;
}

}  // namespace

std::string IsoWitness::to_string() const {
  return std::string(swap ? "psi(" : "phi(") + alpha.to_string() + "," + beta.to_string() + ")";
}

IsoWitness inverse(const IsoWitness& w) {
  if (!w.swap) return {false, w.alpha.inv(), w.beta.inv()};
  return {true, w.beta.inv(), w.alpha.inv()};
}

IsoWitness then(const IsoWitness& f, const IsoWitness& g) {
  if (!f.swap && !g.swap) return {false, f.alpha * g.alpha, f.beta * g.beta};
  if (!f.swap && g.swap) return {true, f.alpha * g.alpha, f.beta * g.beta};
  if (f.swap && !g.swap) return {true, f.alpha * g.beta, f.beta * g.alpha};
  return {false, f.alpha * g.beta, f.beta * g.alpha};
}

std::optional<IsoWitness> are_isomorphic(const BmnParams& p, const BmnParams& q, IsoRule rule) {
  // both must be valid; validation also sign-normalizes
  BmnParams a = validate_params(p.m, p.n, p.lambda, p.s, p.t, p.k);
  BmnParams b = validate_params(q.m, q.n, q.lambda, q.s, q.t, q.k);
  if (same_pair(a.m, a.n, b.m, b.n) && a.lambda == b.lambda)
    if (auto r = solve_scaling(a.s, a.t, a.k, b.s, b.t, b.k)) return IsoWitness{false, r->first, r->second};
  bool swap_lambda = rule == IsoRule::Tables ? a.lambda == kOne && b.lambda == kOne : a.lambda * b.lambda == kOne;
  if (same_pair(a.m, a.n, b.n, b.m) && swap_lambda)
    if (auto r = solve_scaling(a.s, a.t, a.k, b.t, b.s, a.lambda * b.k)) return IsoWitness{true, r->first, r->second};
  return std::nullopt;
}

bool verify_witness(const IsoWitness& w, const BmnParams& p, const BmnParams& q, std::string* why) {
  auto note = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (w.alpha.is_zero() || w.beta.is_zero()) return note("zero scalar");
  auto dst = BmnAlgebra::create(q);
  // images of a, b, a^-1, b^-1, x, y
  BmnElement ia = w.swap ? dst->b() : dst->a(), ib = w.swap ? dst->a() : dst->b();
  BmnElement ia_inv = w.swap ? dst->b(-1) : dst->a(-1), ib_inv = w.swap ? dst->a(-1) : dst->b(-1);
  BmnElement ix = w.alpha * (w.swap ? dst->y() : dst->x());
  BmnElement iy = w.beta * (w.swap ? dst->x() : dst->y());
  BmnElement one = dst->one();
  const CycScalar& l = p.lambda;

  if (!(ia * ia_inv == one && ib * ib_inv == one)) return note("grouplike inverses");
  if (!(ia * ib == ib * ia)) return note("ab = ba");
  BmnElement am = p.m >= 0 ? power(ia, p.m) : power(ia_inv, -p.m);
  BmnElement bn = p.n >= 0 ? power(ib, p.n) : power(ib_inv, -p.n);
  if (!(am == bn)) return note("a^m = b^n");
  if (!(ix * iy + l * (iy * ix) == p.k * (one - ia * ib))) return note("xy + lambda yx = k(1 - ab)");
  if (!(ia * ix + ix * ia).is_zero()) return note("ax + xa = 0");
  if (!(l * (ib * ix) + ix * ib).is_zero()) return note("lambda bx + xb = 0");
  if (!(ix * ix == p.s * (one - ia * ia))) return note("x^2 = s(1 - a^2)");
  if (!(ib * iy + iy * ib).is_zero()) return note("by + yb = 0");
  if (!(ia * iy + l * (iy * ia)).is_zero()) return note("ay + lambda ya = 0");
  if (!(iy * iy == p.t * (one - ib * ib))) return note("y^2 = t(1 - b^2)");

  // Delta, eps and S on generators
  for (const auto& [g, name] : {std::pair{ia, "a"}, std::pair{ib, "b"}}) {
    if (dst->comultiply(g) != tensor_of(g, g)) return note(std::string("Delta(") + name + ")");
    if (dst->counit(g) != kOne) return note(std::string("eps(") + name + ")");
  }
  BmnTensor dx = tensor_of(one, ix);
  for (const auto& [k, c] : tensor_of(ix, ia)) add_entry(dx, k, c);
  if (dst->comultiply(ix) != dx) return note("Delta(x)");
  BmnTensor dy = tensor_of(one, iy);
  for (const auto& [k, c] : tensor_of(iy, ib)) add_entry(dy, k, c);
  if (dst->comultiply(iy) != dy) return note("Delta(y)");
  if (!dst->counit(ix).is_zero() || !dst->counit(iy).is_zero()) return note("eps(x), eps(y)");
  if (dst->antipode(ia) != ia_inv || dst->antipode(ib) != ib_inv) return note("S(a), S(b)");
  if (dst->antipode(ix) != -(ix * ia_inv)) return note("S(x)");
  if (dst->antipode(iy) != -(iy * ib_inv)) return note("S(y)");
  return true;
}

CanonicalForm canonical_form(const BmnParams& in, IsoRule rule) {
  BmnParams p = validate_params(in.m, in.n, in.lambda, in.s, in.t, in.k);
  if (p.m == p.n && p.m != 0) fail(ErrorCode::NotDiscreteParams, "m = n != 0");
  const bool zs = p.s.is_zero(), zt = p.t.is_zero(), zk = p.k.is_zero();
  const bool swap_ok = p.m + p.n == 0;  // (m,n) = -(n,m)
  BmnParams c = p;
  auto set = [&](long s, long t, CycScalar k) {
    c.s = CycScalar(s);
    c.t = CycScalar(t);
    c.k = std::move(k);
  };
  const bool rel = rule == IsoRule::Relations;
  std::string fam;
  if (zs && zt && zk) {
    fam = "1";
    // lambda and 1/lambda are swapped into each other
    if (rel && swap_ok && p.lambda.inv() < p.lambda) c.lambda = p.lambda.inv();
  } else if (p.lambda == -kOne) {
    bool fold = rel && swap_ok && zs && !zt;
    fam = !zs && !zt ? "4" : (!zs || fold ? "3" : "2");
    set(zs && !fold ? 0 : 1, zt || fold ? 0 : 1, CycScalar());
  } else if (!zs && !zt) {
    // s = alpha^2, t = beta^2, k = alpha beta k~; k~ is defined up to sign
    CycScalar a = sqrt_or_fail(p.s), b = sqrt_or_fail(p.t);
    CycScalar kk = normalize_sign(p.k / (a * b));
    fam = kk.is_zero() ? "5A" : "5B";
    set(1, 1, kk);
  } else if (!zs && zt) {
    fam = zk ? "6" : "7";
    set(1, 0, zk ? CycScalar() : kOne);
  } else if (zs && !zt) {
    if (swap_ok) {
      fam = zk ? "6" : "7";
      set(1, 0, zk ? CycScalar() : kOne);
    } else {
      fam = zk ? "6'" : "7'";
      set(0, 1, zk ? CycScalar() : kOne);
    }
  } else {
    fam = "8";
    set(0, 0, kOne);
  }
  auto w = are_isomorphic(p, c, rule);
  if (!w) fail(ErrorCode::AxiomFailure, "no witness onto the representative of family " + fam);
  return {fam, c, *w};
}

namespace {

std::string family_row(const std::string& fam, const BmnParams& p) {
  if (fam == "1") return p.m + p.n == 0 ? (p.lambda == kOne ? "1A" : "1B") : "1";
  return fam;
}

}  // namespace

AutDescription automorphism_group(const BmnParams& p, IsoRule rule) {
  BmnParams v = validate_params(p.m, p.n, p.lambda, p.s, p.t, p.k);
  // table representatives stay valid inputs under the exact rule
  CanonicalForm cf = canonical_form(v, IsoRule::Tables);
  if (!(cf.params == v) && rule == IsoRule::Relations) cf = canonical_form(v, rule);
  if (!(cf.params == v)) fail(ErrorCode::NotCanonical, v.to_string() + " is not a listed representative");
  AutDescription a;
  a.table = v.m + v.n == 0 ? "II" : "I";
  a.row = family_row(cf.family, v);
  // phi_{alpha,beta} in Aut iff s = alpha^2 s, t = beta^2 t, k = alpha beta k
  if (!v.s.is_zero()) a.constraints.push_back("alpha^2=1");
  if (!v.t.is_zero()) a.constraints.push_back("beta^2=1");
  if (!v.k.is_zero()) a.constraints.push_back("alpha*beta=1");
  // psi_{alpha,beta}: s = alpha^2 t, t = beta^2 s, k = lambda alpha beta k
  bool swap_lambda = rule == IsoRule::Tables ? v.lambda == kOne : v.lambda * v.lambda == kOne;
  a.includes_swap = v.m + v.n == 0 && swap_lambda && v.s.is_zero() == v.t.is_zero();
  if (a.includes_swap) {
    if (!v.s.is_zero()) {
      a.swap_constraints.push_back("alpha^2=" + (v.s / v.t).to_string());
      a.swap_constraints.push_back("beta^2=" + (v.t / v.s).to_string());
    }
    if (!v.k.is_zero()) a.swap_constraints.push_back("alpha*beta=" + v.lambda.inv().to_string());
  }
  const std::size_t nc = a.constraints.size();
  const bool sq = !v.s.is_zero() && !v.t.is_zero();
  std::string phi_group;
  if (nc == 0) phi_group = "K^x x K^x";
  else if (nc == 1) phi_group = v.k.is_zero() ? "K^x x Z/2" : "K^x";
  else if (nc == 2 && sq) phi_group = "Z/2 x Z/2";
  else phi_group = "Z/2";  // alpha = beta = +-1
  a.finite = nc >= 2;
  if (!a.includes_swap) {
    a.group_name = phi_group;
  } else if (phi_group == "K^x x K^x") {
    a.group_name = "(K^x x K^x) x| Z/2";
  } else if (phi_group == "K^x") {
    a.group_name = "Dih(K^x)";
  } else {
    // finite: order 2|phi-part|; name from element orders and commutativity
    auto elems = aut_elements(a);
    bool abelian = true;
    std::size_t max_order = 1;
    for (const auto& x : elems) {
      for (const auto& y : elems)
        if (!(x * y == y * x)) abelian = false;
      IsoWitness e{}, cur = x;
      std::size_t ord = 1;
      while (!(cur == e)) {
        cur = cur * x;
        ++ord;
      }
      max_order = std::max(max_order, ord);
    }
    if (elems.size() == 8 && !abelian) a.group_name = "D_4";
    else if (elems.size() == 4 && abelian && max_order == 2) a.group_name = "Z/2 x Z/2";
    else if (elems.size() == 4 && abelian) a.group_name = "Z/4";
    else a.group_name = "order " + std::to_string(elems.size());
  }
  return a;
}

bool satisfies(const AutDescription& a, const IsoWitness& w) {
  if (w.alpha.is_zero() || w.beta.is_zero()) return false;
  if (w.swap && !a.includes_swap) return false;
  const auto& cs = w.swap ? a.swap_constraints : a.constraints;
  for (const auto& c : cs) {
    auto eq = c.find('=');
    std::string lhs = c.substr(0, eq);
    CycScalar rhs = CycScalar::parse(c.substr(eq + 1));
    CycScalar val = lhs == "alpha^2" ? w.alpha * w.alpha : lhs == "beta^2" ? w.beta * w.beta : w.alpha * w.beta;
    if (val != rhs) return false;
  }
  return true;
}

std::vector<IsoWitness> aut_elements(const AutDescription& a) {
  std::vector<CycScalar> pool;
  if (a.finite) {
    pool = {kOne, -kOne};
    // psi may need other roots; include square roots of the swap constraints
    for (const auto& c : a.swap_constraints) {
      auto eq = c.find('=');
      if (auto r = try_sqrt(CycScalar::parse(c.substr(eq + 1)))) {
        pool.push_back(*r);
        pool.push_back(-*r);
      }
    }
  } else {
    pool = {kOne, -kOne, CycScalar(2L), CycScalar::rational(1, 2), CycScalar(3L), CycScalar::rational(1, 3),
            CycScalar(-2L), CycScalar::rational(-1, 2)};
  }
  std::vector<IsoWitness> out;
  for (bool sw : {false, true}) {
    if (sw && !a.includes_swap) continue;
    for (const auto& x : pool)
      for (const auto& y : pool) {
        IsoWitness w{sw, x, y};
        if (!satisfies(a, w)) continue;
        if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
      }
  }
  return out;
}

Matrix rho(const IsoWitness& w) {
  Matrix m(2, 2);
  if (!w.swap) {
    m.at(0, 0) = w.alpha;
    m.at(1, 1) = w.beta;
  } else {
    m.at(0, 1) = w.alpha;
    m.at(1, 0) = w.beta;
  }
  return m;
}

std::vector<Matrix> rho_representation(const std::vector<IsoWitness>& elems) {
  std::vector<Matrix> out;
  for (const auto& e : elems) out.push_back(rho(e));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j)
      if (rho(elems[i] * elems[j]) != out[i] * out[j])
        fail(ErrorCode::AxiomFailure, "rho is not multiplicative on " + elems[i].to_string() + ", " +
                                          elems[j].to_string());
  return out;
}

std::size_t centralizer_index(const std::vector<IsoWitness>& elems) {
  if (elems.empty()) fail(ErrorCode::NotClosed, "empty set");
  auto has = [&](const IsoWitness& w) { return std::find(elems.begin(), elems.end(), w) != elems.end(); };
  for (const auto& x : elems)
    for (const auto& y : elems)
      if (!has(x * y)) fail(ErrorCode::NotClosed, x.to_string() + " * " + y.to_string() + " missing");
  std::size_t phi = 0;
  for (const auto& x : elems)
    if (!x.swap) ++phi;
  std::size_t idx = elems.size() / phi;
  if (idx * phi != elems.size() || idx > 2) fail(ErrorCode::AxiomFailure, "index exceeds 2");
  return idx;
}

}  // namespace gridhopf
