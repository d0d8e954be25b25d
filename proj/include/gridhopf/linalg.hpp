#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "gridhopf/scalar.hpp"

namespace gridhopf {

template <class Key>
using SparseVec = std::map<Key, CycScalar>;

// y += a*x, dropping entries that cancel.
template <class Key>
void axpy(SparseVec<Key>& y, const CycScalar& a, const SparseVec<Key>& x) {
  if (a.is_zero()) return;
  for (const auto& [k, v] : x) {
    auto it = y.find(k);
    if (it == y.end()) {
      y.emplace(k, a * v);
    } else {
      it->second += a * v;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

template <class Key>
SparseVec<Key> scale(const SparseVec<Key>& x, const CycScalar& a) {
  SparseVec<Key> out;
  if (a.is_zero()) return out;
  for (const auto& [k, v] : x) out.emplace(k, a * v);
  return out;
}

template <class Key>
void add_entry(SparseVec<Key>& y, const Key& k, const CycScalar& v) {
  if (v.is_zero()) return;
  auto it = y.find(k);
  if (it == y.end()) {
    y.emplace(k, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) y.erase(it);
  }
}

// Incremental reduced row echelon form over sparse vectors. Each stored row
// has a pivot (its smallest key, coefficient 1) that vanishes in every other
// row. Rows remember how they were built from the inserted vectors, so
// membership queries can also return coefficients on the originals.
template <class Key>
class SparseSpan {
public:
  using Vec = SparseVec<Key>;
  using Combo = std::map<std::size_t, CycScalar>;

  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return count_; }

  // Returns true when v enlarged the span. Otherwise the linear relation
  // among the originals (v itself included) is appended to relations().
  bool insert(const Vec& v) {
    Combo combo{{count_, CycScalar(1L)}};
    ++count_;
    Vec r = v;
    reduce_tracked(r, combo);
    if (r.empty()) {
      relations_.push_back(std::move(combo));
      return false;
    }
    Key pivot = r.begin()->first;
    CycScalar inv = r.begin()->second.inv();
    for (auto& [k, c] : r) c *= inv;
    for (auto& [k, c] : combo) c *= inv;
    for (auto& [p, row] : rows_) {
      auto it = row.v.find(pivot);
      if (it == row.v.end()) continue;
      CycScalar f = -it->second;
      axpy(row.v, f, r);
      axpy(row.combo, f, combo);
    }
    rows_.emplace(pivot, Row{std::move(r), std::move(combo)});
    return true;
  }

  Vec reduce(Vec v) const {
    reduce_impl(v, nullptr);
    return v;
  }

  bool contains(const Vec& v) const { return reduce(v).empty(); }

  // Coefficients c_i with v = sum c_i * original_i, if v lies in the span.
  std::optional<Combo> express(const Vec& v) const {
    Vec r = v;
    Combo combo;
    reduce_impl(r, &combo);
    if (!r.empty()) return std::nullopt;
    for (auto& [k, c] : combo) c = -c;
    return combo;
  }

  const std::vector<Combo>& relations() const { return relations_; }

  std::vector<Vec> basis() const {
    std::vector<Vec> out;
    for (const auto& [p, row] : rows_) out.push_back(row.v);
    return out;
  }

  std::vector<Key> pivots() const {
    std::vector<Key> out;
    for (const auto& [p, row] : rows_) out.push_back(p);
    return out;
  }

private:
  struct Row {
    Vec v;
    Combo combo;
  };

  // v -= sum of pivot rows; when tracking, combo accumulates -(row combos).
  void reduce_impl(Vec& v, Combo* combo) const {
    if (v.empty() || rows_.empty()) return;
    std::vector<std::pair<const Row*, CycScalar>> hits;
    if (v.size() <= rows_.size()) {
      for (const auto& [k, c] : v) {
        auto it = rows_.find(k);
        if (it != rows_.end()) hits.emplace_back(&it->second, c);
      }
    } else {
      for (const auto& [p, row] : rows_) {
        auto it = v.find(p);
        if (it != v.end()) hits.emplace_back(&row, it->second);
      }
    }
    for (const auto& [row, c] : hits) {
      CycScalar f = -c;
      axpy(v, f, row->v);
      if (combo) axpy(*combo, f, row->combo);
    }
  }

  void reduce_tracked(Vec& v, Combo& combo) const { reduce_impl(v, &combo); }

  std::map<Key, Row> rows_;
  std::size_t count_ = 0;
  std::vector<Combo> relations_;
};

// Dense matrix over cyclotomic scalars, row-major.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  CycScalar& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const CycScalar& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const CycScalar& s) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;

  // Flattened row-major entries.
  std::vector<CycScalar> flatten() const { return a_; }
  static Matrix from_flat(std::size_t rows, std::size_t cols, const std::vector<CycScalar>& v);

private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<CycScalar> a_;
};

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m);
std::size_t rank(Matrix m);
// Basis of {x : m x = 0}.
std::vector<std::vector<CycScalar>> nullspace(Matrix m);
// Some x with m x = b (free variables zero), or nullopt.
std::optional<std::vector<CycScalar>> solve(const Matrix& m, const std::vector<CycScalar>& b);
std::optional<Matrix> inverse(const Matrix& m);
CycScalar trace(const Matrix& m);

}  // namespace gridhopf
