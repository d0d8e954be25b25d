#include "gridhopf/scalar.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <mutex>
#include <numeric>

#include "gridhopf/error.hpp"

namespace gridhopf {

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

namespace {

struct FieldData {
  int n = 1;
  int phi = 1;
  std::vector<long> cyclo;            // monic, degree phi
  std::vector<std::vector<long>> pw;  // pw[k] = x^k mod Phi_n, k < n
};

std::vector<long> poly_divide_exact(std::vector<long> num,
                                         const std::vector<long>& den) {
  // den is monic; coefficients low to high
  const size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (size_t i = num.size(); i-- > dn;) {
    long c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

const FieldData& field(int n);

FieldData build_field(int n) {
  FieldData f;
  f.n = n;
  f.phi = euler_phi(n);
  std::vector<long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d : divisors(n)) {
    if (d == n) continue;
    p = poly_divide_exact(p, field(d).cyclo);
  }
  f.cyclo = p;
  f.pw.assign(n, std::vector<long>(f.phi, 0));
  std::vector<long> cur(f.phi, 0);
  cur[0] = 1;
  for (int k = 0; k < n; ++k) {
    f.pw[k] = cur;
    // multiply by x
    long top = cur[f.phi - 1];
    for (int i = f.phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (int i = 0; i < f.phi; ++i) cur[i] -= top * f.cyclo[i];
  }
  return f;
}

std::array<std::atomic<const FieldData*>, kMaxConductor + 1> g_fields{};
std::recursive_mutex g_field_mutex;

const FieldData& field(int n) {
  if (n < 1 || n > kMaxConductor)
    fail(ErrorCode::CapacityExceeded, "conductor " + std::to_string(n) + " out of range");
  const FieldData* f = g_fields[n].load(std::memory_order_acquire);
  if (f) return *f;
  std::lock_guard<std::recursive_mutex> lock(g_field_mutex);
  f = g_fields[n].load(std::memory_order_acquire);
  if (!f) {
    f = new FieldData(build_field(n));
    g_fields[n].store(f, std::memory_order_release);
  }
  return *f;
}

int lcm_checked(int a, int b) {
  long long l = std::lcm<long long>(a, b);
  if (l > kMaxConductor)
    fail(ErrorCode::CapacityExceeded, "conductor " + std::to_string(l) + " out of range");
  return static_cast<int>(l);
}

// Solve A x = b over Q, A given column-wise (rows = b.size()). Returns nullopt
// if inconsistent. Free variables are set to zero.
std::optional<std::vector<mpq_class>> solve_rational(std::vector<std::vector<mpq_class>> cols,
                                                     std::vector<mpq_class> b) {
  const size_t rows = b.size();
  const size_t ncols = cols.size();
  std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(ncols + 1));
  for (size_t j = 0; j < ncols; ++j)
    for (size_t i = 0; i < rows; ++i) a[i][j] = cols[j][i];
  for (size_t i = 0; i < rows; ++i) a[i][ncols] = b[i];
  std::vector<int> pivcol;
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    mpq_class inv = 1 / a[r][c];
    for (size_t j = c; j <= ncols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      mpq_class f = a[i][c];
      for (size_t j = c; j <= ncols; ++j) a[i][j] -= f * a[r][j];
    }
    pivcol.push_back(static_cast<int>(c));
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (sgn(a[i][ncols]) != 0) return std::nullopt;
  std::vector<mpq_class> x(ncols, 0);
  for (size_t i = 0; i < r; ++i) x[pivcol[i]] = a[i][ncols];
  return x;
}

}  // namespace

CycScalar::CycScalar() : n_(1), c_{mpq_class(0)} {}
CycScalar::CycScalar(long v) : n_(1), c_{mpq_class(v)} {}
CycScalar::CycScalar(const mpq_class& v) : n_(1), c_{v} { c_[0].canonicalize(); }
CycScalar::CycScalar(int n, std::vector<mpq_class> c) : n_(n), c_(std::move(c)) { normalize(); }

CycScalar CycScalar::rational(long num, long den) {
  if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return CycScalar(q);
}

CycScalar CycScalar::zeta(int n, long e) {
  if (n < 1) fail(ErrorCode::ParseError, "conductor must be positive");
  if (n % 4 == 2) {
    // zeta_n = -zeta_h^{(h+1)/2} with h = n/2 odd
    int h = n / 2;
    long ee = ((e % n) + n) % n;
    CycScalar r = zeta(h, (ee * ((h + 1) / 2)) % h);
    return (ee % 2 == 1) ? -r : r;
  }
  const FieldData& f = field(n);
  long k = ((e % n) + n) % n;
  std::vector<mpq_class> c(f.phi);
  for (int i = 0; i < f.phi; ++i) c[i] = f.pw[k][i];
  return CycScalar(n, std::move(c));
}

void CycScalar::normalize() {
  if (n_ == 1) return;
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return;
  n_ = 1;
  c_.resize(1);
}

bool CycScalar::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpq_class& v) { return sgn(v) == 0; });
}

bool CycScalar::is_one() const {
  if (c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](const mpq_class& v) { return sgn(v) == 0; });
}

CycScalar CycScalar::operator-() const {
  CycScalar r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

CycScalar CycScalar::promote(int m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) fail(ErrorCode::InvalidParams, "promote target must be a multiple");
  const FieldData& f = field(m);
  std::vector<mpq_class> out(f.phi, 0);
  int step = m / n_;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    const auto& row = f.pw[(i * step) % m];
    for (int j = 0; j < f.phi; ++j)
      if (row[j] != 0) out[j] += c_[i] * row[j];
  }
  CycScalar r;
  r.n_ = m;
  r.c_ = std::move(out);
  return r;  // not normalized on purpose: caller wants conductor m
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  if (n_ == 1 && o.n_ == 1) {
    c_[0] += o.c_[0];
    return *this;
  }
  int m = lcm_checked(n_, o.n_);
  if (n_ != m) *this = promote(m);
  if (o.n_ == m) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  } else {
    CycScalar p = o.promote(m);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += p.c_[i];
  }
  normalize();
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) { return *this += -o; }

CycScalar operator*(const CycScalar& a, const CycScalar& b) {
  if (a.n_ == 1 && b.n_ == 1) return CycScalar(mpq_class(a.c_[0] * b.c_[0]));
  if (a.n_ == 1 || b.n_ == 1) {
    const CycScalar& r = a.n_ == 1 ? a : b;
    const CycScalar& v = a.n_ == 1 ? b : a;
    if (sgn(r.c_[0]) == 0) return CycScalar();
    CycScalar out = v;
    for (auto& c : out.c_) c *= r.c_[0];
    return out;
  }
  int m = lcm_checked(a.n_, b.n_);
  CycScalar pa = a.promote(m), pb = b.promote(m);
  const FieldData& f = field(m);
  const int phi = f.phi;
  std::vector<mpq_class> conv(2 * phi - 1, 0);
  for (int i = 0; i < phi; ++i) {
    if (sgn(pa.c_[i]) == 0) continue;
    for (int j = 0; j < phi; ++j) {
      if (sgn(pb.c_[j]) == 0) continue;
      conv[i + j] += pa.c_[i] * pb.c_[j];
    }
  }
  std::vector<mpq_class> out(phi, 0);
  for (int k = 0; k < 2 * phi - 1; ++k) {
    if (sgn(conv[k]) == 0) continue;
    if (k < phi) {
      out[k] += conv[k];
      continue;
    }
    const auto& row = f.pw[k % m];
    for (int j = 0; j < phi; ++j)
      if (row[j] != 0) out[j] += conv[k] * row[j];
  }
  return CycScalar(m, std::move(out));
}

CycScalar& CycScalar::operator*=(const CycScalar& o) {
  *this = *this * o;
  return *this;
}

CycScalar CycScalar::inv() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  if (n_ == 1) return CycScalar(mpq_class(1 / c_[0]));
  const FieldData& f = field(n_);
  std::vector<std::vector<mpq_class>> cols;
  for (int j = 0; j < f.phi; ++j) {
    std::vector<mpq_class> basis(f.phi, 0);
    basis[j] = 1;
    CycScalar xj(n_, basis);
    CycScalar prod = (*this * xj).promote(n_);
    cols.push_back(prod.c_);
  }
  std::vector<mpq_class> rhs(f.phi, 0);
  rhs[0] = 1;
  auto sol = solve_rational(cols, rhs);
  if (!sol) fail(ErrorCode::DivisionByZero, "singular multiplication matrix");
  return CycScalar(n_, *sol);
}

CycScalar& CycScalar::operator/=(const CycScalar& o) {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
  *this = *this * o.inv();
  return *this;
}

bool operator==(const CycScalar& a, const CycScalar& b) {
  if (a.n_ == b.n_) return a.c_ == b.c_;
  int m = lcm_checked(a.n_, b.n_);
  return a.promote(m).c_ == b.promote(m).c_;
}

CycScalar CycScalar::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  CycScalar result(1L), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::optional<CycScalar> CycScalar::descend(int d) const {
  if (d < 1 || n_ % d != 0) return std::nullopt;
  if (d == n_) return *this;
  if (n_ == 1) return *this;
  if (d % 4 == 2) return std::nullopt;
  const FieldData& f = field(n_);
  const int phid = euler_phi(d);
  const int step = n_ / d;
  std::vector<std::vector<mpq_class>> cols;
  for (int i = 0; i < phid; ++i) {
    const auto& row = f.pw[(i * step) % n_];
    cols.emplace_back(row.begin(), row.end());
  }
  auto sol = solve_rational(cols, c_);
  if (!sol) return std::nullopt;
  return CycScalar(d, *sol);
}

CycScalar CycScalar::minimal() const {
  if (n_ == 1) return *this;
  for (int d : divisors(n_)) {
    if (d == 1 || d % 4 == 2) continue;
    if (d == n_) break;
    if (auto r = descend(d)) return *r;
  }
  return *this;
}

bool operator<(const CycScalar& a, const CycScalar& b) {
  CycScalar ma = a.minimal(), mb = b.minimal();
  if (ma.n_ != mb.n_) return ma.n_ < mb.n_;
  return ma.c_ < mb.c_;
}

std::string CycScalar::to_string() const {
  CycScalar m = minimal();
  if (m.n_ == 1) return m.c_[0].get_str();
  std::string out;
  for (size_t i = 0; i < m.c_.size(); ++i) {
    const mpq_class& c = m.c_[i];
    if (sgn(c) == 0) continue;
    std::string term;
    bool neg = sgn(c) < 0;
    mpq_class ac = neg ? mpq_class(-c) : c;
    if (i == 0) {
      term = ac.get_str();
    } else {
      std::string z = "z" + std::to_string(m.n_) + "^" + std::to_string(i);
      term = (ac == 1) ? z : ac.get_str() + "*" + z;
    }
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? "-" : "+") + term;
  }
  return out;
}

std::string to_string(const CycScalar& a) { return a.to_string(); }

namespace {

class ScalarParser {
public:
  explicit ScalarParser(std::string_view s) : s_(s) {}

  CycScalar run() {
    CycScalar v = expr();
    skip();
    if (pos_ != s_.size()) error("trailing input");
    return v;
  }

private:
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorCode::ParseError,
         "scalar '" + std::string(s_) + "': " + what + " at " + std::to_string(pos_));
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
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected integer");
    if (pos_ - start > 17) error("integer too large");
    long v = std::stol(std::string(s_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }
  CycScalar expr() {
    CycScalar v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  CycScalar term() {
    CycScalar v = factor();
    for (;;) {
      if (eat('*')) {
        v *= factor();
      } else if (eat('/')) {
        CycScalar d = factor();
        if (d.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero in scalar literal");
        v /= d;
      } else {
        return v;
      }
    }
  }
  CycScalar factor() {
    if (eat('-')) return -factor();
    CycScalar base = primary();
    if (eat('^')) base = base.pow(integer());
    return base;
  }
  CycScalar primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      CycScalar v = expr();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    if (c == 'z') {
      ++pos_;
      long n = integer();
      if (n < 1 || n > kMaxConductor) error("bad conductor");
      return CycScalar::zeta(static_cast<int>(n));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpq_class q(std::string(s_.substr(start, pos_ - start)), 10);
      return CycScalar(q);
    }
    error("unexpected character");
  }

  std::string_view s_;
  size_t pos_ = 0;
};

long mod_pow(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// Square root of a positive squarefree integer or of -1, via Gauss sums.
std::optional<CycScalar> sqrt_prime(long p, int cap) {
  if (p == -1) return CycScalar::zeta(4);
  if (p == 2) {
    if (8 > cap) return std::nullopt;
    return CycScalar::zeta(8, 1) + CycScalar::zeta(8, 7);
  }
  long cond = (p % 4 == 1) ? p : 4 * p;
  if (cond > cap) return std::nullopt;
  CycScalar g;
  for (long a = 1; a < p; ++a) {
    long leg = mod_pow(a, (p - 1) / 2, p);
    CycScalar z = CycScalar::zeta(static_cast<int>(p), a);
    if (leg == 1)
      g += z;
    else
      g -= z;
  }
  if (p % 4 == 1) return g;
  return -(CycScalar::zeta(4) * g);
}

CycScalar sign_normalize(const CycScalar& r) {
  CycScalar m = r.minimal();
  for (const auto& c : m.coeffs()) {
    if (sgn(c) == 0) continue;
    return sgn(c) < 0 ? -m : m;
  }
  return m;
}

}  // namespace

CycScalar CycScalar::parse(std::string_view text) { return ScalarParser(text).run(); }

std::optional<long> root_of_unity_order(const CycScalar& a) {
  if (a.is_zero()) fail(ErrorCode::ZeroInput, "root_of_unity_order of zero");
  CycScalar m = a.minimal();
  long l = std::lcm<long>(2, m.conductor());
  if (!m.pow(l).is_one()) return std::nullopt;
  for (int d : divisors(static_cast<int>(l)))
    if (m.pow(d).is_one()) return d;
  return l;
}

std::optional<CycScalar> try_sqrt(const CycScalar& c, int cap) {
  if (c.is_zero()) return CycScalar();
  CycScalar m = c.minimal();
  const int l = std::lcm(2, m.conductor());
  std::optional<long> exponent;
  mpq_class r;
  for (long e = 0; e < l; ++e) {
    CycScalar q = m * CycScalar::zeta(l, -e);
    if (q.is_rational()) {
      exponent = e;
      r = q.rational_value();
      break;
    }
  }
  if (!exponent) return std::nullopt;

  // sqrt(zeta_l^e)
  CycScalar root_unit = (*exponent % 2 == 0) ? CycScalar::zeta(l, *exponent / 2)
                                             : CycScalar::zeta(2 * l, *exponent);
  if (root_unit.conductor() > cap) return std::nullopt;

  // sqrt(r) = sqrt(num*den)/den, num*den = square * squarefree
  bool negative = sgn(r) < 0;
  mpz_class prod = abs(r.get_num()) * r.get_den();
  mpz_class square = 1, free = 1;
  mpz_class rest = prod;
  for (unsigned long p = 2; mpz_class(p) * p <= rest; ++p) {
    int cnt = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      ++cnt;
    }
    for (int i = 0; i < cnt / 2; ++i) square *= p;
    if (cnt % 2) free *= p;
    if (p > 1000000) return std::nullopt;
  }
  free *= rest;
  CycScalar result = root_unit * CycScalar(mpq_class(square, r.get_den()));
  if (negative) {
    auto s = sqrt_prime(-1, cap);
    if (!s) return std::nullopt;
    result *= *s;
  }
  if (!free.fits_slong_p()) return std::nullopt;
  long f = free.get_si();
  for (long p = 2; f > 1 && p <= f; ++p) {
    if (f % p != 0) continue;
    f /= p;
    auto s = sqrt_prime(p, cap);
    if (!s) return std::nullopt;
    if (std::lcm(result.conductor(), s->conductor()) > cap) return std::nullopt;
    result *= *s;
  }
  result = sign_normalize(result);
  if (result.conductor() > cap) return std::nullopt;
  if (result * result != c) return std::nullopt;
  return result;
}

}  // namespace gridhopf
