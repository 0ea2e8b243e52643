// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Geobucket accumulator for polynomial reduction. The working polynomial is
// a sum of scale * segment pairs with segments sorted descending and sizes
// kept within geometric buckets, so one reduction step costs O(|reducer| +
// log) instead of a full rebuild. Works fraction-free: the global rescaling
// of a reduction step multiplies the per-segment scales only.

#pragma once

#include <optional>

#include "germ/numeric.hpp"
#include "germ/ring.hpp"

namespace germ {
namespace detail {

// TermT must expose .coeff (Int) and compare keys via the Cmp functor
// (returns >0 / 0 / <0 like Ring::cmp). Segments are descending.
template <class TermT, class Cmp>
class Geobucket {
 public:
  explicit Geobucket(Cmp cmp) : cmp_(std::move(cmp)) {}

  bool has_pending() const {
    for (const auto& s : segs_)
      if (s.cur < s.terms.size()) return true;
    return false;
  }

  void clear() { segs_.clear(); }

  // Adds scale * terms to the accumulator.
  void add(std::vector<TermT> terms, Int scale) {
    if (terms.empty() || scale == 0) return;
    Seg s;
    s.terms = std::move(terms);
    s.scale = std::move(scale);
    segs_.push_back(std::move(s));
    coalesce();
  }

  // Multiplies the whole accumulator by a.
  void rescale(const Int& a) {
    for (auto& s : segs_) s.scale *= a;
  }

  // Pops the maximal term (with combined coefficient); skips cancellations.
  std::optional<TermT> pop_max() {
    while (true) {
      int best = -1;
      for (size_t i = 0; i < segs_.size(); ++i) {
        auto& s = segs_[i];
        if (s.cur >= s.terms.size()) continue;
        if (best < 0 || cmp_(s.terms[s.cur], segs_[static_cast<size_t>(best)].terms[segs_[static_cast<size_t>(best)].cur]) > 0)
          best = static_cast<int>(i);
      }
      if (best < 0) return std::nullopt;
      TermT top = segs_[static_cast<size_t>(best)].terms[segs_[static_cast<size_t>(best)].cur];
      Int coeff = top.coeff * segs_[static_cast<size_t>(best)].scale;
      segs_[static_cast<size_t>(best)].cur++;
      for (auto& s : segs_) {
        if (s.cur >= s.terms.size()) continue;
        if (cmp_(s.terms[s.cur], top) == 0) {
          coeff += s.terms[s.cur].coeff * s.scale;
          s.cur++;
        }
      }
      prune();
      if (coeff == 0) continue;
      top.coeff = std::move(coeff);
      return top;
    }
  }

  // Puts a term back on top (must compare >= everything pending).
  void push_front(TermT t) {
    Seg s;
    t.coeff = t.coeff;  // scale 1
    s.terms.push_back(std::move(t));
    s.scale = 1;
    segs_.push_back(std::move(s));
  }

  // gcd of all pending coefficients (with scales applied); 0 when empty.
  Int content() const {
    Int g(0);
    for (const auto& s : segs_) {
      if (s.cur >= s.terms.size() || s.scale == 0) continue;
      Int sg(0);
      for (size_t i = s.cur; i < s.terms.size(); ++i) {
        mpz_gcd(sg.get_mpz_t(), sg.get_mpz_t(), s.terms[i].coeff.get_mpz_t());
        if (sg == 1) break;
      }
      sg *= abs(s.scale);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), sg.get_mpz_t());
      if (g == 1) return g;
    }
    return g;
  }

  // Divides every pending coefficient by d (must divide the content).
  void divide(const Int& d) {
    if (d == 1) return;
    for (auto& s : segs_) {
      if (s.scale % d == 0) {
        s.scale /= d;
      } else {
        Int g;
        mpz_gcd(g.get_mpz_t(), s.scale.get_mpz_t(), d.get_mpz_t());
        Int rest = d / g;
        s.scale /= g;
        for (size_t i = s.cur; i < s.terms.size(); ++i) s.terms[i].coeff /= rest;
      }
    }
  }

  // Max bit size of pending scales (cheap blowup detector).
  size_t scale_bits() const {
    size_t b = 0;
    for (const auto& s : segs_) b = std::max(b, mpz_sizeinbase(s.scale.get_mpz_t(), 2));
    return b;
  }

 private:
  struct Seg {
    std::vector<TermT> terms;
    size_t cur = 0;
    Int scale = 1;
  };

  void prune() {
    segs_.erase(std::remove_if(segs_.begin(), segs_.end(),
                               [](const Seg& s) { return s.cur >= s.terms.size() || s.scale == 0; }),
                segs_.end());
  }

  // Keeps the number of segments logarithmic: merge the two smallest when
  // there are too many.
  void coalesce() {
    prune();
    while (segs_.size() > 12) {
      // merge the two smallest segments
      size_t a = 0, b = 1;
      if (seg_len(segs_[a]) > seg_len(segs_[b])) std::swap(a, b);
      for (size_t i = 2; i < segs_.size(); ++i) {
        if (seg_len(segs_[i]) < seg_len(segs_[a])) {
          b = a;
          a = i;
        } else if (seg_len(segs_[i]) < seg_len(segs_[b])) {
          b = i;
        }
      }
      Seg merged;
      merged.scale = 1;
      const Seg &sa = segs_[a], &sb = segs_[b];
      merged.terms.reserve(seg_len(sa) + seg_len(sb));
      size_t i = sa.cur, j = sb.cur;
      while (i < sa.terms.size() || j < sb.terms.size()) {
        int which;
        if (i >= sa.terms.size())
          which = 1;
        else if (j >= sb.terms.size())
          which = -1;
        else
          which = -cmp_(sa.terms[i], sb.terms[j]);
        if (which < 0) {
          TermT t = sa.terms[i++];
          t.coeff *= sa.scale;
          merged.terms.push_back(std::move(t));
        } else if (which > 0) {
          TermT t = sb.terms[j++];
          t.coeff *= sb.scale;
          merged.terms.push_back(std::move(t));
        } else {
          TermT t = sa.terms[i++];
          Int c = t.coeff * sa.scale + sb.terms[j++].coeff * sb.scale;
          if (c != 0) {
            t.coeff = std::move(c);
            merged.terms.push_back(std::move(t));
          }
        }
      }
      size_t hi = std::max(a, b), lo = std::min(a, b);
      segs_.erase(segs_.begin() + static_cast<long>(hi));
      segs_.erase(segs_.begin() + static_cast<long>(lo));
      if (!merged.terms.empty()) segs_.push_back(std::move(merged));
      prune();
    }
  }

  static size_t seg_len(const Seg& s) { return s.terms.size() - s.cur; }

  Cmp cmp_;
  std::vector<Seg> segs_;
};

}  // namespace detail
}  // namespace germ
