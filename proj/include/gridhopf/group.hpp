#pragma once

#include <compare>
#include <string>
#include <utility>

namespace gridhopf {

// Element a^i b^j of <a, b | ab = ba, a^m = b^n>, kept in canonical form
// relative to the (sign-normalized) pair it was reduced with.
struct GroupElem {
  long i = 0;
  long j = 0;
  auto operator<=>(const GroupElem&) const = default;
};

// B^{m,n} and B^{-m,-n} present the same group; pick m >= 0, and n >= 0 if m = 0.
std::pair<long, long> sign_normalize(long m, long n);

// Reduce (i, j) modulo the subgroup generated by (m, -n).
GroupElem group_canonical(long m, long n, long i, long j);

// "1", "a", "a^2b^-1", ...
std::string group_label(const GroupElem& g);

}  // namespace gridhopf
