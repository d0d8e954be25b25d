#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gridhopf {

// Conductors above this are refused (the reduction tables grow as N*phi(N)).
inline constexpr int kMaxConductor = 1024;

int euler_phi(int n);
std::vector<int> divisors(int n);

// Element of Q(zeta_N), stored in the power basis 1, z, ..., z^{phi(N)-1}
// modulo the N-th cyclotomic polynomial. Results of arithmetic live in the
// field of conductor lcm(N, N'); rational results are collapsed to N = 1.
class CycScalar {
public:
  CycScalar();
  CycScalar(long v);  // NOLINT(google-explicit-constructor)
  CycScalar(const mpq_class& v);  // NOLINT(google-explicit-constructor)

  static CycScalar rational(long num, long den = 1);
  static CycScalar zeta(int n, long e = 1);

  int conductor() const { return n_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const { return n_ == 1; }
  const mpq_class& rational_value() const { return c_[0]; }

  CycScalar operator-() const;
  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o);
  CycScalar& operator/=(const CycScalar& o);
  friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
  friend CycScalar operator*(const CycScalar& a, const CycScalar& b);
  friend CycScalar operator/(CycScalar a, const CycScalar& b) { return a /= b; }
  friend bool operator==(const CycScalar& a, const CycScalar& b);
  friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

  CycScalar inv() const;
  CycScalar pow(long e) const;

  // Same element written over conductor m (n | m required).
  CycScalar promote(int m) const;
  // Same element written over conductor d | N, if it lies there.
  std::optional<CycScalar> descend(int d) const;
  // Representation over the smallest conductor containing the element.
  CycScalar minimal() const;

  // Total order on values (by minimal representation); for deterministic sorting.
  friend bool operator<(const CycScalar& a, const CycScalar& b);

  std::string to_string() const;
  static CycScalar parse(std::string_view text);

private:
  CycScalar(int n, std::vector<mpq_class> c);
  void normalize();

  int n_;
  std::vector<mpq_class> c_;
};

// Least d >= 1 with a^d = 1, or nullopt when a is not a root of unity.
std::optional<long> root_of_unity_order(const CycScalar& a);

// A square root of c inside some cyclotomic field of conductor <= cap.
// Covers every c of the form (rational) * (root of unity); the returned root
// has positive leading coefficient in its minimal representation.
std::optional<CycScalar> try_sqrt(const CycScalar& c, int cap = kMaxConductor);

std::string to_string(const CycScalar& a);

}  // namespace gridhopf
