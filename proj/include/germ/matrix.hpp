// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Dense matrices over a polynomial ring: block concatenation, determinants,
// and ideals of k x k minors.

#pragma once

#include <functional>

#include "germ/groebner.hpp"

namespace germ {

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, size_t rows, size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols),
        at_(rows * cols, Polynomial::zero(ring_)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
  }

  static PolyMatrix identity(const RingPtr& ring, size_t n) {
    PolyMatrix m(ring, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Polynomial::constant(ring, Rat(1));
    return m;
  }

  static PolyMatrix from_rows(const RingPtr& ring, const std::vector<std::vector<Polynomial>>& rows) {
    if (rows.empty() || rows[0].empty()) throw std::invalid_argument("matrix dimensions must be positive");
    PolyMatrix m(ring, rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged matrix rows");
      for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  const RingPtr& ring() const { return ring_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Polynomial& at(size_t i, size_t j) { return at_[i * cols_ + j]; }
  const Polynomial& at(size_t i, size_t j) const { return at_[i * cols_ + j]; }

  std::vector<Polynomial> column(size_t j) const {
    std::vector<Polynomial> c;
    c.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) c.push_back(at(i, j));
    return c;
  }

  std::vector<Polynomial> row(size_t i) const {
    std::vector<Polynomial> r(at_.begin() + i * cols_, at_.begin() + (i + 1) * cols_);
    return r;
  }

  PolyMatrix transposed() const {
    PolyMatrix t(ring_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

 private:
  RingPtr ring_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<Polynomial> at_;
};

enum class ConcatAxis { Horizontal, Vertical };

inline PolyMatrix matrix_concat(const PolyMatrix& a, const PolyMatrix& b, ConcatAxis axis) {
  if (axis == ConcatAxis::Horizontal) {
    if (a.rows() != b.rows()) throw std::invalid_argument("row count mismatch in concat");
    PolyMatrix m(a.ring(), a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
      for (size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
      for (size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
  }
  if (a.cols() != b.cols()) throw std::invalid_argument("column count mismatch in concat");
  PolyMatrix m(a.ring(), a.rows() + b.rows(), a.cols());
  for (size_t j = 0; j < a.cols(); ++j) {
    for (size_t i = 0; i < a.rows(); ++i) m.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows(); ++i) m.at(a.rows() + i, j) = b.at(i, j);
  }
  return m;
}

namespace detail {

// Determinant of the submatrix (rows, first |rows| columns of cols) by
// expansion along the last chosen column, memoized on the row subset.
class MinorTable {
 public:
  MinorTable(const PolyMatrix& m, std::vector<size_t> cols) : m_(m), cols_(std::move(cols)) {}

  Polynomial det(const std::vector<size_t>& rows) { return det_rec(rows, rows.size()); }

 private:
  Polynomial det_rec(const std::vector<size_t>& rows, size_t k) {
    if (k == 0) return Polynomial::constant(m_.ring(), Rat(1));
    uint64_t key = 0;
    for (size_t i = 0; i < k; ++i) key |= 1ULL << rows[i];
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    // Expand along column cols_[k-1].
    Polynomial d = Polynomial::zero(m_.ring());
    for (size_t i = 0; i < k; ++i) {
      const Polynomial& e = m_.at(rows[i], cols_[k - 1]);
      int sign = ((k - 1 + i) % 2 == 0) ? 1 : -1;
      if (!e.is_zero_poly()) {
        std::vector<size_t> sub;
        sub.reserve(k - 1);
        for (size_t jj = 0; jj < k; ++jj)
          if (jj != i) sub.push_back(rows[jj]);
        Polynomial minor = det_rec(sub, k - 1);
        Polynomial contrib = e * minor;
        if (sign < 0) contrib.negate_inplace();
        d = d + contrib;
      }
    }
    cache_.emplace(key, d);
    return d;
  }

  const PolyMatrix& m_;
  std::vector<size_t> cols_;
  std::unordered_map<uint64_t, Polynomial> cache_;
};

inline void for_each_subset(size_t n, size_t k, const std::function<void(const std::vector<size_t>&)>& fn) {
  if (k > n) return;
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  if (k == 0) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - k) break;
      if (i == 0) return;
    }
    if (idx[i] == i + n - k) return;
    ++idx[i];
    for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

inline Polynomial determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  std::vector<size_t> cols(m.cols());
  for (size_t j = 0; j < m.cols(); ++j) cols[j] = j;
  detail::MinorTable t(m, cols);
  std::vector<size_t> rows(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) rows[i] = i;
  return t.det(rows);
}

// Ideal of all k x k minors, deduplicated up to scalar.
inline Ideal minors(const PolyMatrix& m, size_t k) {
  if (k < 1 || k > std::min(m.rows(), m.cols()))
    throw std::invalid_argument("minor size out of range");
  if (m.rows() > 64) throw std::invalid_argument("minors: too many rows");
  std::vector<Polynomial> gens;
  std::unordered_map<size_t, std::vector<size_t>> seen;  // hash(monic) -> gen indices
  detail::for_each_subset(m.cols(), k, [&](const std::vector<size_t>& cols) {
    detail::MinorTable t(m, cols);
    detail::for_each_subset(m.rows(), k, [&](const std::vector<size_t>& rows) {
      Polynomial d = t.det(rows);
      if (d.is_zero_poly()) return;
      Polynomial md = monic(d);
      size_t h = hash_poly(md);
      auto& bucket = seen[h];
      for (size_t idx : bucket)
        if (monic(gens[idx]) == md) return;
      bucket.push_back(gens.size());
      gens.push_back(std::move(d));
    });
  });
  return Ideal(m.ring(), std::move(gens));
}

inline std::vector<std::vector<std::string>> matrix_strings(const PolyMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out[i].push_back(print_poly(m.at(i, j)));
  return out;
}

inline PolyMatrix parse_matrix(const RingPtr& ring,
                               const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Polynomial>> ps;
  for (const auto& row : rows) {
    ps.emplace_back();
    for (const auto& s : row) ps.back().push_back(parse_poly(ring, s));
  }
  return PolyMatrix::from_rows(ring, ps);
}

}  // namespace germ
