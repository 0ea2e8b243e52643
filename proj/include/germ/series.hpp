// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Truncated univariate power series over an exact coefficient field, branch
// parametrizations of curve germs, and the linear-algebra closures used by
// the delta invariant and the lifted vector field module. Every series
// carries its own validity order; operations propagate it so that division
// by a positive-valuation denominator honestly shrinks what is known.

#pragma once

#include <functional>

#include "germ/polynomial.hpp"
#include "germ/qext.hpp"

namespace germ {

template <class F>
class Series {
 public:
  using K = typename F::Elem;

  Series() = default;
  explicit Series(int order) : order_(order), c_(static_cast<size_t>(std::max(order, 0))) {
    for (auto& x : c_) x = F::zero();
  }

  static Series zero(int order) { return Series(order); }
  static Series constant(int order, const K& v) {
    Series s(order);
    if (order > 0) s.c_[0] = v;
    return s;
  }
  static Series t_power(int order, int k, const K& v) {
    Series s(order);
    if (k < order) s.c_[static_cast<size_t>(k)] = v;
    return s;
  }

  int order() const { return order_; }
  const K& coeff(int k) const { return c_[static_cast<size_t>(k)]; }
  K& coeff(int k) { return c_[static_cast<size_t>(k)]; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!F::is_zero(x)) return false;
    return true;
  }

  // valuation: order() when zero to all known places
  int valuation() const {
    for (int k = 0; k < order_; ++k)
      if (!F::is_zero(c_[static_cast<size_t>(k)])) return k;
    return order_;
  }

  Series truncated(int order) const {
    Series s(std::min(order, order_));
    for (int k = 0; k < s.order_; ++k) s.c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)];
    return s;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series s(std::min(a.order_, b.order_));
    for (int k = 0; k < s.order_; ++k)
      s.c_[static_cast<size_t>(k)] =
          F::add(a.c_[static_cast<size_t>(k)], b.c_[static_cast<size_t>(k)]);
    return s;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series s(std::min(a.order_, b.order_));
    for (int k = 0; k < s.order_; ++k)
      s.c_[static_cast<size_t>(k)] =
          F::sub(a.c_[static_cast<size_t>(k)], b.c_[static_cast<size_t>(k)]);
    return s;
  }
  friend Series operator*(const Series& a, const Series& b) {
    int va = a.valuation(), vb = b.valuation();
    int ord = std::min(a.order_ + vb, b.order_ + va);
    ord = std::min(ord, std::max(a.order_, b.order_) + std::min(va, vb));
    Series s(ord);
    for (int i = va; i < a.order_ && i < ord; ++i) {
      if (F::is_zero(a.c_[static_cast<size_t>(i)])) continue;
      for (int j = vb; j < b.order_ && i + j < ord; ++j)
        s.c_[static_cast<size_t>(i + j)] =
            F::add(s.c_[static_cast<size_t>(i + j)],
                   F::mul(a.c_[static_cast<size_t>(i)], b.c_[static_cast<size_t>(j)]));
    }
    return s;
  }

  Series scaled(const K& v) const {
    Series s(order_);
    for (int k = 0; k < order_; ++k) s.c_[static_cast<size_t>(k)] = F::mul(c_[static_cast<size_t>(k)], v);
    return s;
  }

  Series derivative() const {
    Series s(std::max(order_ - 1, 0));
    for (int k = 1; k < order_; ++k)
      s.c_[static_cast<size_t>(k - 1)] =
          F::mul(c_[static_cast<size_t>(k)], F::from_rat(Rat(k)));
    return s;
  }

  // Exact division; the denominator valuation must not exceed ours, and
  // every coefficient below it must vanish. Valid order shrinks by val(b).
  friend Series divide(const Series& a, const Series& b) {
    int vb = b.valuation();
    if (vb >= b.order()) throw std::domain_error("series division by zero");
    for (int k = 0; k < std::min(vb, a.order()); ++k)
      if (!F::is_zero(a.c_[static_cast<size_t>(k)]))
        throw std::domain_error("series division is not exact");
    int ord = std::min(a.order(), b.order()) - vb;
    Series q(ord);
    std::vector<K> rem;
    for (int k = vb; k < a.order(); ++k) rem.push_back(a.c_[static_cast<size_t>(k)]);
    for (int k = 0; k < ord; ++k) {
      K c = F::div(rem[static_cast<size_t>(k)], b.c_[static_cast<size_t>(vb)]);
      q.c_[static_cast<size_t>(k)] = c;
      for (int j = 0; k + j - vb < static_cast<int>(rem.size()) && vb + j < b.order(); ++j) {
        int idx = k + j;
        if (idx < static_cast<int>(rem.size()))
          rem[static_cast<size_t>(idx)] =
              F::sub(rem[static_cast<size_t>(idx)], F::mul(c, b.c_[static_cast<size_t>(vb + j)]));
      }
    }
    return q;
  }

  std::string str() const {
    std::string s;
    bool first = true;
    for (int k = 0; k < order_; ++k) {
      if (F::is_zero(c_[static_cast<size_t>(k)])) continue;
      if (!first) s += " + ";
      s += "(" + F::str(c_[static_cast<size_t>(k)]) + ")*t^" + std::to_string(k);
      first = false;
    }
    if (first) s = "0";
    return s + " [O(t^" + std::to_string(order_) + ")]";
  }

 private:
  int order_ = 0;
  std::vector<K> c_;
};

// One branch of a parametrized curve: a tuple of series, one per ambient
// coordinate, sharing a truncation order.
template <class F>
struct Branch {
  std::vector<Series<F>> coords;
};

template <class F>
struct BranchParam {
  std::vector<Branch<F>> branches;
  int order = 0;  // common truncation order of the input series
};

// Evaluate an ambient polynomial (rational coefficients) along a branch.
template <class F>
Series<F> eval_on_branch(const Polynomial& p, const Branch<F>& br, int order) {
  Series<F> acc = Series<F>::zero(order);
  for (const auto& t : p.terms()) {
    Series<F> m = Series<F>::constant(order, F::from_rat(t.coeff));
    for (size_t v = 0; v < t.exp.size(); ++v)
      for (uint32_t e = 0; e < t.exp[v]; ++e) m = m * br.coords[v];
    acc = acc + m.truncated(order);
  }
  return acc.truncated(order);
}

// Verifies that substituting each branch into every generator vanishes to
// the working order (the BranchParam invariant).
template <class F>
bool branches_lie_on(const BranchParam<F>& bp, const Ideal& curve) {
  for (const auto& br : bp.branches)
    for (const auto& g : curve.gens())
      if (!eval_on_branch(g, br, bp.order).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// echelon spans over F

template <class F>
class EchelonSpan {
 public:
  using K = typename F::Elem;

  explicit EchelonSpan(size_t dim) : dim_(dim) {}

  size_t rank() const { return rows_.size(); }

  // Reduces v against the span; returns true (and absorbs it) when v adds a
  // new direction.
  bool insert(std::vector<K> v) {
    reduce(v);
    size_t p = pivot(v);
    if (p == dim_) return false;
    K inv = F::div(F::one(), v[p]);
    for (auto& x : v) x = F::mul(x, inv);
    rows_.push_back({p, std::move(v)});
    std::sort(rows_.begin(), rows_.end(),
              [](const Row& a, const Row& b) { return a.pivot < b.pivot; });
    return true;
  }

  bool contains(std::vector<K> v) const {
    reduce(v);
    return pivot(v) == dim_;
  }

 private:
  struct Row {
    size_t pivot;
    std::vector<K> v;
  };

  size_t pivot(const std::vector<K>& v) const {
    for (size_t i = 0; i < dim_; ++i)
      if (!F::is_zero(v[i])) return i;
    return dim_;
  }

  void reduce(std::vector<K>& v) const {
    for (const auto& r : rows_) {
      if (F::is_zero(v[r.pivot])) continue;
      K f = v[r.pivot];
      for (size_t i = r.pivot; i < dim_; ++i) v[i] = F::sub(v[i], F::mul(f, r.v[i]));
    }
  }

  size_t dim_;
  std::vector<Row> rows_;
};

// ---------------------------------------------------------------------------
// delta invariant

// Codimension, inside the direct sum of truncated series rings, of the
// subalgebra generated by the pulled-back generator functions. `gens` are
// polynomials in the ambient coordinates (typically the coordinates
// themselves). Works at the given truncation; callers stabilize.
template <class F>
int64_t delta_dimension_at_order(const BranchParam<F>& bp,
                                 const std::vector<Polynomial>& gens, int order) {
  size_t r = bp.branches.size();
  size_t dim = r * static_cast<size_t>(order);
  auto pack = [&](const std::vector<Series<F>>& tuple) {
    std::vector<typename F::Elem> v(dim, F::zero());
    for (size_t i = 0; i < r; ++i)
      for (int k = 0; k < order; ++k) v[i * static_cast<size_t>(order) + static_cast<size_t>(k)] =
          tuple[i].coeff(k);
    return v;
  };
  std::vector<std::vector<Series<F>>> pulled;
  for (const auto& g : gens) {
    std::vector<Series<F>> tuple;
    for (const auto& br : bp.branches) tuple.push_back(eval_on_branch(g, br, order));
    pulled.push_back(std::move(tuple));
  }
  std::vector<Series<F>> unit;
  for (size_t i = 0; i < r; ++i) unit.push_back(Series<F>::constant(order, F::one()));
  EchelonSpan<F> span(dim);
  std::vector<std::vector<Series<F>>> worklist;
  if (span.insert(pack(unit))) worklist.push_back(unit);
  while (!worklist.empty()) {
    auto cur = std::move(worklist.back());
    worklist.pop_back();
    for (const auto& g : pulled) {
      std::vector<Series<F>> prod;
      for (size_t i = 0; i < r; ++i) prod.push_back((cur[i] * g[i]).truncated(order));
      if (span.insert(pack(prod))) worklist.push_back(prod);
    }
  }
  return static_cast<int64_t>(dim) - static_cast<int64_t>(span.rank());
}

struct DeltaResult {
  int64_t delta = 0;
  int stabilized_order = 0;
};

// delta = dim O_normalization / (pulled-back subalgebra), stabilized in the
// truncation order (values at N and N+2 must agree).
template <class F>
DeltaResult delta_invariant(const BranchParam<F>& bp, const std::vector<Polynomial>& gens,
                            int start_order = 6, int max_order = 64) {
  for (const auto& br : bp.branches) {
    bool nonconstant = false;
    for (const auto& s : br.coords)
      if (s.valuation() < s.order() && s.valuation() > 0) nonconstant = true;
    if (!nonconstant) throw std::invalid_argument("delta: branch is constant");
  }
  int64_t prev = -1;
  for (int N = start_order; N + 2 <= std::max(max_order, start_order + 2); N += 2) {
    if (N > bp.order) break;
    int64_t d = delta_dimension_at_order(bp, gens, N);
    if (d == prev) return {d, N};
    prev = d;
  }
  throw std::runtime_error("delta: no stabilization before the truncation cap");
}

}  // namespace germ
