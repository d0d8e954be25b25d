#include "gridhopf/linalg.hpp"

#include "gridhopf/error.hpp"

namespace gridhopf {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = CycScalar(1L);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_) fail(ErrorCode::InvalidParams, "matrix shape mismatch");
  Matrix out(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const CycScalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.c_; ++j) {
        const CycScalar& b = o.at(k, j);
        if (!b.is_zero()) out.at(i, j) += a * b;
      }
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) fail(ErrorCode::InvalidParams, "matrix shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(CycScalar(-1L)); }

Matrix Matrix::scaled(const CycScalar& s) const {
  Matrix out = *this;
  for (auto& v : out.a_) v *= s;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

bool Matrix::is_zero() const {
  for (const auto& v : a_)
    if (!v.is_zero()) return false;
  return true;
}

Matrix Matrix::from_flat(std::size_t rows, std::size_t cols, const std::vector<CycScalar>& v) {
  Matrix m(rows, cols);
  m.a_ = v;
  m.a_.resize(rows * cols);
  return m;
}

std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m.at(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    CycScalar inv = m.at(r, c).inv();
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      CycScalar f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m.at(r, j).is_zero()) m.at(i, j) -= f * m.at(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

std::vector<std::vector<CycScalar>> nullspace(Matrix m) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<std::vector<CycScalar>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<CycScalar> v(m.cols());
    v[f] = CycScalar(1L);
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m.at(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<CycScalar>> solve(const Matrix& m, const std::vector<CycScalar>& b) {
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  std::vector<CycScalar> x(m.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(i, m.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = CycScalar(1L);
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

CycScalar trace(const Matrix& m) {
  CycScalar t;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m.at(i, i);
  return t;
}

}  // namespace gridhopf
