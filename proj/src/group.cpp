#include "gridhopf/group.hpp"

namespace gridhopf {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::string power(char gen, long e) {
  if (e == 0) return "";
  if (e == 1) return std::string(1, gen);
  return std::string(1, gen) + "^" + std::to_string(e);
}

}  // namespace

std::pair<long, long> sign_normalize(long m, long n) {
  if (m < 0 || (m == 0 && n < 0)) return {-m, -n};
  return {m, n};
}

GroupElem group_canonical(long m, long n, long i, long j) {
  auto [mm, nn] = sign_normalize(m, n);
  if (mm > 0) {
    long q = floor_div(i, mm);
    return {i - q * mm, j + q * nn};
  }
  if (nn > 0) {
    long r = j % nn;
    if (r < 0) r += nn;
    return {i, r};
  }
  return {i, j};
}

std::string group_label(const GroupElem& g) {
  std::string s = power('a', g.i) + power('b', g.j);
  return s.empty() ? "1" : s;
}

}  // namespace gridhopf
