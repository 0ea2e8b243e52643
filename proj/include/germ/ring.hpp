// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Polynomial rings: named variables plus a monomial order. Rings are
// immutable and shared via RingPtr; all polynomial values reference one.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace germ {

// Exponent vector, length == number of ring variables. Stored inline (no
// heap traffic in the reduction loops); entries at positions >= size() are
// kept zero so that comparison and hashing can run over the whole array.
class Expo {
 public:
  static constexpr size_t kMaxVars = 16;
  using value_type = uint16_t;

  Expo() = default;
  explicit Expo(size_t n, uint16_t fill = 0) : n_(static_cast<uint8_t>(n)) {
    if (n > kMaxVars) throw std::invalid_argument("too many ring variables (max 16)");
    if (fill) e_.fill(fill);
  }
  Expo(std::initializer_list<uint16_t> init) : n_(static_cast<uint8_t>(init.size())) {
    if (init.size() > kMaxVars) throw std::invalid_argument("too many ring variables (max 16)");
    size_t i = 0;
    for (uint16_t v : init) e_[i++] = v;
  }

  size_t size() const { return n_; }
  uint16_t operator[](size_t i) const { return e_[i]; }
  uint16_t& operator[](size_t i) { return e_[i]; }
  uint16_t at(size_t i) const {
    if (i >= n_) throw std::out_of_range("exponent index");
    return e_[i];
  }
  uint16_t& at(size_t i) {
    if (i >= n_) throw std::out_of_range("exponent index");
    return e_[i];
  }
  const uint16_t* begin() const { return e_.data(); }
  const uint16_t* end() const { return e_.data() + n_; }

  bool operator==(const Expo& o) const { return n_ == o.n_ && e_ == o.e_; }
  bool operator!=(const Expo& o) const { return !(*this == o); }
  bool operator<(const Expo& o) const {  // container ordering only
    if (n_ != o.n_) return n_ < o.n_;
    return e_ < o.e_;
  }

 private:
  std::array<uint16_t, kMaxVars> e_{};
  uint8_t n_ = 0;
};

enum class OrderKind {
  Lex,       // pure lexicographic
  GrevLex,   // graded reverse lexicographic
  Weighted,  // weighted degree, grevlex tie-break
  Block,     // eliminates the first `block` variables: grevlex x grevlex
};

struct MonomialOrder {
  OrderKind kind = OrderKind::GrevLex;
  std::vector<int64_t> weights;  // Weighted only; positive, one per variable
  size_t block = 0;              // Block only; size of the leading block

  static MonomialOrder lex() { return {OrderKind::Lex, {}, 0}; }
  static MonomialOrder grevlex() { return {OrderKind::GrevLex, {}, 0}; }
  static MonomialOrder weighted(std::vector<int64_t> w) {
    for (int64_t wi : w)
      if (wi <= 0) throw std::invalid_argument("weights must be positive");
    return {OrderKind::Weighted, std::move(w), 0};
  }
  static MonomialOrder elimination_block(size_t k) { return {OrderKind::Block, {}, k}; }

  bool operator==(const MonomialOrder& o) const {
    return kind == o.kind && weights == o.weights && block == o.block;
  }
};

class Ring {
 public:
  Ring(std::vector<std::string> vars, MonomialOrder order)
      : vars_(std::move(vars)), order_(std::move(order)) {
    if (vars_.size() > Expo::kMaxVars)
      throw std::invalid_argument("too many ring variables (max 16)");
    for (size_t i = 0; i < vars_.size(); ++i)
      for (size_t j = i + 1; j < vars_.size(); ++j)
        if (vars_[i] == vars_[j]) throw std::invalid_argument("duplicate variable " + vars_[i]);
    if (order_.kind == OrderKind::Weighted && order_.weights.size() != vars_.size())
      throw std::invalid_argument("weight count != variable count");
    if (order_.kind == OrderKind::Block && order_.block > vars_.size())
      throw std::invalid_argument("elimination block larger than ring");
  }

  size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& var_name(size_t i) const { return vars_[i]; }
  const MonomialOrder& order() const { return order_; }

  // -1 when absent.
  int var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return static_cast<int>(i);
    return -1;
  }

  bool same_vars(const Ring& o) const { return vars_ == o.vars_; }
  bool operator==(const Ring& o) const { return vars_ == o.vars_ && order_ == o.order_; }

  static int64_t total_degree(const Expo& e) {
    int64_t d = 0;
    for (uint32_t x : e) d += x;
    return d;
  }

  int64_t weighted_degree(const Expo& e, const std::vector<int64_t>& w) const {
    int64_t d = 0;
    for (size_t i = 0; i < e.size(); ++i) d += static_cast<int64_t>(e[i]) * w[i];
    return d;
  }

  // Degree used by the S-pair selection strategy: weighted degree for
  // weighted orders, total degree otherwise.
  int64_t strategy_degree(const Expo& e) const {
    if (order_.kind == OrderKind::Weighted) return weighted_degree(e, order_.weights);
    return total_degree(e);
  }

  // cmp > 0 iff a > b in the ring order.
  int cmp(const Expo& a, const Expo& b) const {
    switch (order_.kind) {
      case OrderKind::Lex:
        return cmp_lex(a, b, 0, a.size());
      case OrderKind::GrevLex:
        return cmp_grevlex(a, b, 0, a.size());
      case OrderKind::Weighted: {
        int64_t da = weighted_degree(a, order_.weights), db = weighted_degree(b, order_.weights);
        if (da != db) return da < db ? -1 : 1;
        return cmp_grevlex(a, b, 0, a.size());
      }
      case OrderKind::Block: {
        int c = cmp_grevlex(a, b, 0, order_.block);
        if (c != 0) return c;
        return cmp_grevlex(a, b, order_.block, a.size());
      }
    }
    return 0;
  }

  bool less(const Expo& a, const Expo& b) const { return cmp(a, b) < 0; }

 private:
  static int cmp_lex(const Expo& a, const Expo& b, size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }
  static int cmp_grevlex(const Expo& a, const Expo& b, size_t lo, size_t hi) {
    int64_t da = 0, db = 0;
    for (size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = hi; i-- > lo;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;  // smaller in last differing slot wins
    return 0;
  }

  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> vars,
                         MonomialOrder order = MonomialOrder::grevlex()) {
  return std::make_shared<Ring>(std::move(vars), std::move(order));
}

// Same variables under a different order.
inline RingPtr with_order(const RingPtr& r, MonomialOrder order) {
  return make_ring(r->vars(), std::move(order));
}

// Monomial helpers.
inline Expo expo_zero(size_t n) { return Expo(n, 0); }

inline Expo expo_mul(const Expo& a, const Expo& b) {
  Expo r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline bool expo_divides(const Expo& a, const Expo& b) {  // a | b
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Expo expo_div(const Expo& a, const Expo& b) {  // a / b, assumes b | a
  Expo r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Expo expo_lcm(const Expo& a, const Expo& b) {
  Expo r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline bool expo_coprime(const Expo& a, const Expo& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

inline bool expo_is_one(const Expo& a) {
  for (uint32_t x : a)
    if (x) return false;
  return true;
}

struct ExpoHash {
  size_t operator()(const Expo& e) const {
    size_t h = 14695981039346656037ULL;
    for (uint32_t x : e) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

}  // namespace germ
