#include "gridhopf/hopf_bmn.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "gridhopf/error.hpp"

namespace gridhopf {

std::string BmnParams::to_string() const {
  return "(" + std::to_string(m) + "," + std::to_string(n) + "," + lambda.to_string() + "," +
         s.to_string() + "," + t.to_string() + "," + k.to_string() + ")";
}

BmnParams validate_params(long m, long n, const CycScalar& lambda, const CycScalar& s,
                          const CycScalar& t, const CycScalar& k) {
  auto [mm, nn] = sign_normalize(m, n);
  if (mm == 1 && nn == 1) fail(ErrorCode::ForbiddenPair, "(m,n) = +-(1,1)");
  if ((mm + nn) % 2 != 0)
    fail(ErrorCode::ParityViolation, "m + n = " + std::to_string(mm + nn) + " is odd");
  if (lambda.is_zero()) fail(ErrorCode::InvalidParams, "lambda must be nonzero");
  if (mm != 0 || nn != 0) {
    long d = std::gcd(mm, nn);
    if (!lambda.pow(d).is_one())
      fail(ErrorCode::LambdaOrderViolation,
           "lambda^" + std::to_string(d) + " != 1 (gcd(m,n) = " + std::to_string(d) + ")");
  }
  const CycScalar minus_one(-1L);
  bool ok = lambda.is_one() || (lambda == minus_one && k.is_zero()) ||
            (k.is_zero() && s.is_zero() && t.is_zero());
  if (!ok) {
    std::string why = lambda == minus_one ? "lambda = -1 requires k = 0"
                                          : "lambda != +-1 requires k = s = t = 0";
    fail(ErrorCode::ConstraintViolation, why);
  }
  return BmnParams{mm, nn, lambda, s, t, k};
}

GroupElem group_canonical(const BmnParams& p, long i, long j) {
  return gridhopf::group_canonical(p.m, p.n, i, j);
}

std::vector<GroupElem> group_window(const BmnParams& p, long radius) {
  if (radius < 0) fail(ErrorCode::WindowTooSmall, "negative radius");
  std::set<GroupElem> w;
  for (long i = -radius; i <= radius; ++i)
    for (long j = -radius; j <= radius; ++j) w.insert(group_canonical(p, i, j));
  return {w.begin(), w.end()};
}

std::string key_label(const BasisKey& key) {
  std::vector<std::string> parts;
  auto gen = [&](char c, long e) {
    if (e == 0) return;
    parts.push_back(e == 1 ? std::string(1, c) : std::string(1, c) + "^" + std::to_string(e));
  };
  gen('a', key.g.i);
  gen('b', key.g.j);
  if (key.p) parts.emplace_back("x");
  if (key.q) parts.emplace_back("y");
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
  return out;
}

// ---------------------------------------------------------------------------
// elements

BmnElement::BmnElement(BmnAlgebraPtr alg, const BasisKey& key, const CycScalar& c)
    : alg_(std::move(alg)) {
  if (!c.is_zero()) terms_.emplace(key, c);
}

CycScalar BmnElement::coeff(const BasisKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? CycScalar() : it->second;
}

namespace {

const BmnAlgebraPtr& common(const BmnAlgebraPtr& a, const BmnAlgebraPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (!(a->params() == b->params()))
    fail(ErrorCode::ParamMismatch, a->params().to_string() + " vs " + b->params().to_string());
  return a;
}

}  // namespace

BmnElement& BmnElement::operator+=(const BmnElement& o) {
  alg_ = common(alg_, o.alg_);
  axpy(terms_, CycScalar(1L), o.terms_);
  return *this;
}

BmnElement& BmnElement::operator-=(const BmnElement& o) {
  alg_ = common(alg_, o.alg_);
  axpy(terms_, CycScalar(-1L), o.terms_);
  return *this;
}

BmnElement operator*(const CycScalar& c, const BmnElement& u) {
  BmnElement out(u.alg_);
  axpy(out.terms_, c, u.terms_);
  return out;
}

BmnElement operator*(const BmnElement& u, const BmnElement& v) {
  const auto& alg = common(u.alg_, v.alg_);
  if (!alg) fail(ErrorCode::ParamMismatch, "element without an algebra");
  return alg->multiply(u, v);
}

BmnElement BmnElement::operator-() const { return CycScalar(-1L) * *this; }

namespace {

bool compound(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '^') return true;
  return false;
}

template <typename Map, typename Label>
std::string linear_to_string(const Map& terms, Label label) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : terms) {
    std::string cs = c.to_string();
    bool neg = false;
    if (!compound(cs) && cs[0] == '-') {
      neg = true;
      cs = cs.substr(1);
    }
    std::string ks = label(key);
    std::string term;
    if (compound(cs))
      cs = "(" + cs + ")";
    if (ks == "1")
      term = cs;
    else if (cs == "1")
      term = ks;
    else
      term = cs + "*" + ks;
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace

std::string BmnElement::to_string() const { return linear_to_string(terms_, key_label); }

std::string tensor_to_string(const BmnTensor& t) {
  return linear_to_string(t, [](const KeyPair& kp) {
    return "(" + key_label(kp.first) + ")(x)(" + key_label(kp.second) + ")";
  });
}

// ---------------------------------------------------------------------------
// the algebra

BmnAlgebraPtr BmnAlgebra::create(const BmnParams& p) { return std::make_shared<const BmnAlgebra>(p); }

BmnAlgebra::BmnAlgebra(const BmnParams& p) : p_(p) {
  std::vector<std::string> words{""};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::string> next;
    for (const auto& w : words)
      if (w.size() == static_cast<std::size_t>(len - 1)) {
        next.push_back(w + "x");
        next.push_back(w + "y");
      }
    words.insert(words.end(), next.begin(), next.end());
  }
  // shortest first so reductions only look up shorter or fewer-inversion words
  std::stable_sort(words.begin(), words.end(),
                   [](const auto& u, const auto& v) { return u.size() < v.size(); });
  for (const auto& w : words) words_[w] = reduce_word(w);

  // Delta(x^p y^q) from Delta(x) = 1(x)x + x(x)a and Delta(y) = 1(x)y + y(x)b
  BasisKey one{}, x{{}, 1, 0}, y{{}, 0, 1}, a{canon(1, 0), 0, 0}, b{canon(0, 1), 0, 0};
  BmnTensor dx{{KeyPair{one, x}, CycScalar(1L)}, {KeyPair{x, a}, CycScalar(1L)}};
  BmnTensor dy{{KeyPair{one, y}, CycScalar(1L)}, {KeyPair{y, b}, CycScalar(1L)}};
  BmnTensor d1{{KeyPair{one, one}, CycScalar(1L)}};
  delta_unit_[one] = d1;
  delta_unit_[x] = dx;
  delta_unit_[y] = dy;
  delta_unit_[BasisKey{{}, 1, 1}] = tensor_multiply(dx, dy);
}

BmnElement BmnAlgebra::elem(const BasisKey& key, const CycScalar& c) const {
  return BmnElement(shared_from_this(), key, c);
}

CycScalar BmnAlgebra::chi(char letter, const GroupElem& g) const {
  // x a = -a x, x b = -lambda b x, y a = -lambda^-1 a y, y b = -b y
  const CycScalar minus_one(-1L);
  if (letter == 'x') return minus_one.pow(g.i) * (-p_.lambda).pow(g.j);
  return (-p_.lambda.inv()).pow(g.i) * minus_one.pow(g.j);
}

SparseVec<BasisKey> BmnAlgebra::reduce_word(const std::string& w) const {
  std::size_t pos = std::string::npos;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (!(w[i] == 'x' && w[i + 1] == 'y')) {
      pos = i;
      break;
    }
  if (pos == std::string::npos) {
    // "", "x", "y", "xy"
    BasisKey key{};
    for (char c : w) (c == 'x' ? key.p : key.q) = 1;
    return {{key, CycScalar(1L)}};
  }
  const std::string prefix = w.substr(0, pos), suffix = w.substr(pos + 2);
  SparseVec<BasisKey> out;
  // c * (prefix h suffix) = c * chi_prefix(h) * h * (prefix suffix)
  auto add_with_group = [&](const GroupElem& h, const CycScalar& c, const std::string& word) {
    if (c.is_zero()) return;
    CycScalar f = c;
    for (char l : prefix) f *= chi(l, h);
    for (const auto& [key, v] : words_.at(word))
      add_entry(out, BasisKey{mul(h, key.g), key.p, key.q}, f * v);
  };
  const GroupElem e{};
  const std::string ps = prefix + suffix;
  std::string pair = w.substr(pos, 2);
  if (pair == "yx") {
    // yx = lambda^-1 k (1 - ab) - lambda^-1 xy
    CycScalar li = p_.lambda.inv();
    add_with_group(e, li * p_.k, ps);
    add_with_group(canon(1, 1), -(li * p_.k), ps);
    add_with_group(e, -li, prefix + "xy" + suffix);
  } else if (pair == "xx") {
    add_with_group(e, p_.s, ps);
    add_with_group(canon(2, 0), -p_.s, ps);
  } else {
    add_with_group(e, p_.t, ps);
    add_with_group(canon(0, 2), -p_.t, ps);
  }
  return out;
}

SparseVec<BasisKey> BmnAlgebra::multiply_keys(const BasisKey& u, const BasisKey& v) const {
  // (g x^p y^q)(h x^p' y^q') = chi(h) g h (x^p y^q x^p' y^q')
  CycScalar f(1L);
  std::string w;
  if (u.p) {
    f *= chi('x', v.g);
    w += 'x';
  }
  if (u.q) {
    f *= chi('y', v.g);
    w += 'y';
  }
  if (v.p) w += 'x';
  if (v.q) w += 'y';
  GroupElem gh = mul(u.g, v.g);
  SparseVec<BasisKey> out;
  for (const auto& [key, c] : words_.at(w)) add_entry(out, BasisKey{mul(gh, key.g), key.p, key.q}, f * c);
  return out;
}

BmnElement BmnAlgebra::multiply(const BmnElement& u, const BmnElement& v) const {
  BmnElement out(shared_from_this());
  for (const auto& [ku, cu] : u.terms())
    for (const auto& [kv, cv] : v.terms()) axpy(out.terms(), cu * cv, multiply_keys(ku, kv));
  return out;
}

BmnTensor BmnAlgebra::tensor_multiply(const BmnTensor& u, const BmnTensor& v) const {
  BmnTensor out;
  for (const auto& [pu, cu] : u)
    for (const auto& [pv, cv] : v) {
      auto l = multiply_keys(pu.first, pv.first);
      if (l.empty()) continue;
      auto r = multiply_keys(pu.second, pv.second);
      CycScalar c = cu * cv;
      for (const auto& [kl, vl] : l)
        for (const auto& [kr, vr] : r) add_entry(out, KeyPair{kl, kr}, c * vl * vr);
    }
  return out;
}

BmnTensor BmnAlgebra::comultiply(const BmnElement& u) const {
  BmnTensor out;
  for (const auto& [key, c] : u.terms()) {
    // Delta(g w) = (g (x) g) Delta(w); left multiplication by g only shifts
    for (const auto& [kp, v] : delta_unit_.at(BasisKey{{}, key.p, key.q}))
      add_entry(out,
                KeyPair{BasisKey{mul(key.g, kp.first.g), kp.first.p, kp.first.q},
                        BasisKey{mul(key.g, kp.second.g), kp.second.p, kp.second.q}},
                c * v);
  }
  return out;
}

CycScalar BmnAlgebra::counit(const BmnElement& u) const {
  CycScalar s;
  for (const auto& [key, c] : u.terms())
    if (key.p == 0 && key.q == 0) s += c;
  return s;
}

BmnElement BmnAlgebra::antipode(const BmnElement& u) const {
  // S(g x^p y^q) = S(y)^q S(x)^p g^-1 with S(x) = -x a^-1, S(y) = -y b^-1
  BmnElement sx = -multiply(x(), a(-1));
  BmnElement sy = -multiply(y(), b(-1));
  BmnElement out(shared_from_this());
  for (const auto& [key, c] : u.terms()) {
    BmnElement r = elem(BasisKey{canon(-key.g.i, -key.g.j), 0, 0});
    if (key.p) r = multiply(sx, r);
    if (key.q) r = multiply(sy, r);
    axpy(out.terms(), c, r.terms());
  }
  return out;
}

BmnElement BmnAlgebra::contract(const BmnTensor& t, bool antipode_left, bool antipode_right) const {
  BmnElement out(shared_from_this());
  for (const auto& [kp, c] : t) {
    BmnElement l = elem(kp.first), r = elem(kp.second);
    if (antipode_left) l = antipode(l);
    if (antipode_right) r = antipode(r);
    axpy(out.terms(), c, multiply(l, r).terms());
  }
  return out;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

class ElementParser {
public:
  ElementParser(const BmnAlgebra& alg, const std::string& s) : alg_(alg), s_(s) {}

  BmnElement run() {
    BmnElement e = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorCode::ParseError, what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected integer");
    if (pos_ - start > 9) error("integer too large");
    long v = std::stol(s_.substr(start, pos_ - start));
    return neg ? -v : v;
  }
  BmnElement expr() {
    BmnElement e = term();
    for (;;) {
      if (eat('+'))
        e += term();
      else if (eat('-'))
        e -= term();
      else
        return e;
    }
  }
  BmnElement term() {
    BmnElement e = factor();
    for (;;) {
      if (eat('*')) {
        e = e * factor();
      } else if (eat('/')) {
        BmnElement d = factor();
        if (d.terms().size() != 1 || !(d.terms().begin()->first == BasisKey{}))
          error("division by a non-scalar");
        e = d.terms().begin()->second.inv() * e;
      } else {
        return e;
      }
    }
  }
  BmnElement power(const BmnElement& base, long e) {
    if (e < 0) {
      if (base.terms().size() != 1) error("negative power of a non-monomial");
      auto [key, c] = *base.terms().begin();
      if (key.p || key.q) error("negative power of a non-grouplike");
      return alg_.elem(BasisKey{alg_.canon(-key.g.i * -e, -key.g.j * -e), 0, 0}, c.inv().pow(-e));
    }
    BmnElement r = alg_.one();
    for (long k = 0; k < e; ++k) r = r * base;
    return r;
  }
  BmnElement factor() {
    if (eat('-')) return -factor();
    skip();
    if (pos_ >= s_.size()) error("unexpected end");
    BmnElement base;
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!eat(')')) error("missing ')'");
    } else if (c == 'a' || c == 'b' || c == 'x' || c == 'y') {
      ++pos_;
      if (c == 'a') base = alg_.a();
      if (c == 'b') base = alg_.b();
      if (c == 'x') base = alg_.x();
      if (c == 'y') base = alg_.y();
    } else if (c == 'z') {
      ++pos_;
      long n = integer();
      if (n < 1 || n > kMaxConductor) error("bad root of unity order");
      long e = 1;
      if (eat('^')) e = integer();
      return alg_.elem(BasisKey{}, CycScalar::zeta(static_cast<int>(n), e));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      base = alg_.elem(BasisKey{}, CycScalar(integer()));
    } else {
      error("unexpected '" + std::string(1, c) + "'");
    }
    if (eat('^')) return power(base, integer());
    return base;
  }

  const BmnAlgebra& alg_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

BmnElement BmnAlgebra::parse(const std::string& text) const { return ElementParser(*this, text).run(); }

// ---------------------------------------------------------------------------
// axioms

namespace {

using KeyTriple = std::tuple<BasisKey, BasisKey, BasisKey>;

void prune(std::map<KeyTriple, CycScalar>& m) {
  for (auto it = m.begin(); it != m.end();) it = it->second.is_zero() ? m.erase(it) : std::next(it);
}

}  // namespace

HopfReport verify_hopf_axioms(const BmnParams& p, long radius, unsigned seed, std::size_t samples) {
  auto alg = BmnAlgebra::create(p);
  std::vector<BasisKey> keys;
  for (const auto& g : group_window(p, radius))
    for (int px = 0; px < 2; ++px)
      for (int qy = 0; qy < 2; ++qy) keys.push_back(BasisKey{g, px, qy});

  HopfReport rep;
  AxiomResult coassoc{"coassociativity", true, 0, ""}, counit_law{"counit", true, 0, ""}, antipode_law{"antipode", true, 0, ""};
  AxiomResult assoc{"associativity", true, 0, ""}, delta_mult{"delta_multiplicative", true, 0, ""}, eps_mult{"counit_multiplicative", true, 0, ""};
  auto fail_on = [](AxiomResult& r, const std::string& w) {
    if (r.passed) r.witness = w;
    r.passed = false;
  };

  for (const auto& key : keys) {
    BmnElement u = alg->elem(key);
    BmnTensor d = alg->comultiply(u);
    std::map<KeyTriple, CycScalar> l, r;
    for (const auto& [kp, c] : d) {
      for (const auto& [kq, e] : alg->comultiply(alg->elem(kp.first)))
        l[{kq.first, kq.second, kp.second}] += c * e;
      for (const auto& [kq, e] : alg->comultiply(alg->elem(kp.second)))
        r[{kp.first, kq.first, kq.second}] += c * e;
    }
    prune(l);
    prune(r);
    ++coassoc.checked;
    if (l != r) fail_on(coassoc, key_label(key));

    BmnElement el(alg), er(alg);
    for (const auto& [kp, c] : d) {
      if (kp.first.p == 0 && kp.first.q == 0) axpy(el.terms(), c, alg->elem(kp.second).terms());
      if (kp.second.p == 0 && kp.second.q == 0) axpy(er.terms(), c, alg->elem(kp.first).terms());
    }
    ++counit_law.checked;
    if (!(el == u) || !(er == u)) fail_on(counit_law, key_label(key));

    BmnElement unit = alg->counit(u) * alg->one();
    ++antipode_law.checked;
    if (!(alg->contract(d, true, false) == unit) || !(alg->contract(d, false, true) == unit))
      fail_on(antipode_law, key_label(key));
  }

  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  auto random_elem = [&]() {
    BmnElement u(alg);
    for (int k = 0; k < 2; ++k) axpy(u.terms(), CycScalar(coef(rng)), alg->elem(keys[pick(rng)]).terms());
    return u;
  };
  for (std::size_t trial = 0; trial < samples; ++trial) {
    BmnElement u = random_elem(), v = random_elem(), w = random_elem();
    BmnElement uv = u * v;
    ++assoc.checked;
    if (!(uv * w == u * (v * w))) fail_on(assoc, "(" + u.to_string() + "), (" + v.to_string() + "), (" + w.to_string() + ")");
    ++delta_mult.checked;
    if (alg->comultiply(uv) != alg->tensor_multiply(alg->comultiply(u), alg->comultiply(v)))
      fail_on(delta_mult, "(" + u.to_string() + "), (" + v.to_string() + ")");
    ++eps_mult.checked;
    if (alg->counit(uv) != alg->counit(u) * alg->counit(v))
      fail_on(eps_mult, "(" + u.to_string() + "), (" + v.to_string() + ")");
  }

  rep.axioms = {coassoc, counit_law, antipode_law, assoc, delta_mult, eps_mult};
  for (const auto& a : rep.axioms) rep.ok = rep.ok && a.passed;
  return rep;
}

// ---------------------------------------------------------------------------
// window inside the grid path coalgebra

CoElement BmnWindow::embed_key(const BasisKey& key) const {
  const Quiver& q = *quiver;
  const GroupElem& g = key.g;
  if (!q.has_vertex(vertex(g))) fail(ErrorCode::WindowTooSmall, key_label(key) + " outside the window");
  if (!key.p && !key.q) return element(trivial_path(q, vertex(g)));
  if (key.p && key.q) {
    // gxy -> (gx | gay) - lambda (gy | gbx)
    GroupElem ga = alg->mul(g, alg->canon(1, 0)), gb = alg->mul(g, alg->canon(0, 1));
    CoElement out = element(path({{g, 'x'}, {ga, 'y'}}));
    add_entry(out, path({{g, 'y'}, {gb, 'x'}}), -alg->params().lambda);
    return out;
  }
  return element(path({{g, key.p ? 'x' : 'y'}}));
}

CoElement BmnWindow::embed(const BmnElement& u) const {
  CoElement out;
  for (const auto& [key, c] : u.terms()) axpy(out, c, embed_key(key));
  return out;
}

Path BmnWindow::path(const std::vector<GridArrow>& arrows) const {
  std::vector<std::string> ids;
  for (const auto& a : arrows) {
    auto it = arrow_ids.find(a);
    if (it == arrow_ids.end())
      fail(ErrorCode::WindowTooSmall, "arrow " + grid_arrow_label(a.src, a.gen) + " outside the window");
    ids.push_back(it->second);
  }
  return make_path(*quiver, ids);
}

std::size_t BmnWindow::window_rank() const {
  SparseSpan<Path> span;
  for (const auto& g : group)
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) span.insert(embed_key(BasisKey{g, p, q}));
  return span.rank();
}

BmnWindow truncate_to_subcoalgebra(const BmnParams& p, long radius) {
  if (radius < 0) fail(ErrorCode::WindowTooSmall, "negative radius");
  BmnWindow w;
  w.alg = BmnAlgebra::create(p);
  w.radius = radius;
  w.group = group_window(p, radius);
  const auto& alg = *w.alg;
  const GroupElem a = alg.canon(1, 0), b = alg.canon(0, 1);
  // cf(T_N): coefficients of gxy, gay, gbx, gab for g in G_N
  std::set<BasisKey> keys;
  std::set<GroupElem> vertices;
  std::set<GridArrow> arrows;
  for (const auto& g : w.group) {
    GroupElem ga = alg.mul(g, a), gb = alg.mul(g, b), gab = alg.mul(ga, b);
    for (const auto& k : {BasisKey{g, 0, 0}, BasisKey{g, 1, 0}, BasisKey{g, 0, 1}, BasisKey{g, 1, 1},
                          BasisKey{ga, 0, 0}, BasisKey{gb, 0, 0}, BasisKey{gab, 0, 0},
                          BasisKey{ga, 0, 1}, BasisKey{gb, 1, 0}})
      keys.insert(k);
    vertices.insert({g, ga, gb, gab});
    arrows.insert({GridArrow{g, 'x'}, GridArrow{g, 'y'}, GridArrow{ga, 'y'}, GridArrow{gb, 'x'}});
  }
  w.keys.assign(keys.begin(), keys.end());
  auto q = std::make_shared<Quiver>();
  for (const auto& v : vertices) {
    q->add_vertex(grid_vertex_label(v));
    w.vertex_elems[grid_vertex_label(v)] = v;
  }
  for (const auto& ar : arrows) {
    GroupElem dst = alg.mul(ar.src, ar.gen == 'x' ? a : b);
    std::string id = grid_arrow_label(ar.src, ar.gen);
    q->add_arrow(id, grid_vertex_label(ar.src), grid_vertex_label(dst));
    w.arrow_ids[ar] = id;
  }
  w.quiver = q;
  std::vector<CoElement> span;
  for (const auto& k : w.keys) span.push_back(w.embed_key(k));
  w.coalgebra = SubCoalgebra(w.quiver, span);
  return w;
}

bool contains_path_combination(const BmnWindow& w, long i, long j, const CycScalar& c1,
                               const CycScalar& c2) {
  const auto& alg = *w.alg;
  GroupElem g = alg.canon(i, j);
  if (!std::binary_search(w.group.begin(), w.group.end(), g))
    fail(ErrorCode::WindowTooSmall, grid_vertex_label(g) + " outside the window");
  GroupElem ga = alg.mul(g, alg.canon(1, 0)), gb = alg.mul(g, alg.canon(0, 1));
  CoElement x = element(w.path({{g, 'x'}, {ga, 'y'}}), c1);
  add_entry(x, w.path({{g, 'y'}, {gb, 'x'}}), c2);
  return w.coalgebra.contains(x);
}

bool contains_path(const BmnWindow& w, const std::vector<GridArrow>& arrows) {
  return w.coalgebra.contains(element(w.path(arrows)));
}

std::vector<GridArrow> translate(const BmnParams& p, const GroupElem& g,
                                 const std::vector<GridArrow>& path) {
  std::vector<GridArrow> out;
  for (const auto& a : path)
    out.push_back(GridArrow{group_canonical(p, g.i + a.src.i, g.j + a.src.j), a.gen});
  return out;
}

Path translate(const BmnWindow& w, const GroupElem& g, const Path& path) {
  const Quiver& q = *w.quiver;
  std::map<std::string, GridArrow> by_id;
  for (const auto& [ga, id] : w.arrow_ids) by_id.emplace(id, ga);
  std::vector<GridArrow> arrows;
  for (int a : path.arrows) arrows.push_back(by_id.at(q.arrow_at(a).id));
  if (arrows.empty()) {
    auto it = w.vertex_elems.find(q.vertex_at(path.start));
    GroupElem gh = w.alg->mul(g, it->second);
    if (!q.has_vertex(grid_vertex_label(gh)))
      fail(ErrorCode::WindowTooSmall, grid_vertex_label(gh) + " outside the window");
    return trivial_path(q, grid_vertex_label(gh));
  }
  return w.path(translate(w.alg->params(), g, arrows));
}

}  // namespace gridhopf
