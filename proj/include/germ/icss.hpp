// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Image-computing spectral sequence bookkeeping. E^1 pages hold alternating
// homology ranks of the multiple point spaces with the simplicial
// differentials; degree-0 differentials are computed exactly from labeled
// point sets; page turning either produces exact E-infinity ranks or honest
// interval bounds when a needed differential is unknown. The constraint
// ledger is an exact rational linear solver for systems of invariants.

#pragma once

#include "germ/multipoint.hpp"

namespace germ {

// ---------------------------------------------------------------------------
// small exact linear algebra

using RatMatrix = std::vector<std::vector<Rat>>;  // row major

inline size_t matrix_rank(RatMatrix m) {
  size_t rows = m.size();
  if (rows == 0) return 0;
  size_t cols = m[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t piv = SIZE_MAX;
    for (size_t r = rank; r < rows; ++r)
      if (sgn(m[r][c]) != 0) {
        piv = r;
        break;
      }
    if (piv == SIZE_MAX) continue;
    std::swap(m[rank], m[piv]);
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || sgn(m[r][c]) == 0) continue;
      Rat f = m[r][c] / m[rank][c];
      for (size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
    }
    ++rank;
  }
  return rank;
}

inline RatMatrix matrix_product(const RatMatrix& a, const RatMatrix& b) {
  size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  RatMatrix c(n, std::vector<Rat>(m, Rat(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j)
      for (size_t l = 0; l < k; ++l) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline bool matrix_is_zero(const RatMatrix& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (sgn(x) != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// alternating degree-0 chains of a labeled point tower

// Levels of multiple points: levels[k-1] holds the D^k point set, with the
// level-1 "points" standing for connected components (one per branch).
struct AltChainComplex0 {
  size_t branch_count = 0;
  std::vector<MultiPointSet> levels;  // levels[0] unused beyond branch count
};

struct Alt0Data {
  // basis anchors per level (k >= 2): the lexicographically least point of
  // each free orbit; the basis chain is the signed orbit sum
  std::vector<std::vector<MultiPoint>> anchors;  // index k-2 for level k
  // pi[k-2]: matrix of pi^k_* from the level-k basis to the level-(k-1)
  // basis (level 1 basis: one class per branch). rows = target basis.
  std::vector<RatMatrix> pi;
};

namespace detail {

inline std::vector<std::vector<size_t>> all_permutations(size_t k) {
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<std::vector<size_t>> out;
  do {
    out.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

inline int perm_sign(const std::vector<size_t>& p) {
  int sign = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

inline MultiPoint apply_perm(const MultiPoint& pt, const std::vector<size_t>& perm) {
  MultiPoint out;
  out.branches.resize(pt.branches.size());
  out.coords.resize(pt.coords.size());
  for (size_t i = 0; i < perm.size(); ++i) {
    out.branches[i] = pt.branches[perm[i]];
    out.coords[i] = pt.coords[perm[i]];
  }
  return out;
}

}  // namespace detail

// Exact bases of H_0^Alt per level and the matrices of the projections
// between them; pi o pi == 0 is verified.
inline Alt0Data alt0_differentials(const AltChainComplex0& c) {
  Alt0Data out;
  size_t kmax = c.levels.size();
  std::vector<std::vector<MultiPoint>> bases;  // level k anchors (k >= 2)
  for (size_t k = 2; k <= kmax; ++k) {
    const auto& pts = c.levels[k - 1].points;
    auto perms = detail::all_permutations(k);
    std::set<size_t> claimed;
    std::vector<MultiPoint> anchors;
    for (size_t i = 0; i < pts.size(); ++i) {
      if (claimed.count(i)) continue;
      // orbit of pts[i]
      bool free_orbit = true;
      std::vector<size_t> members;
      for (const auto& perm : perms) {
        MultiPoint img = detail::apply_perm(pts[i], perm);
        if (img == pts[i] && detail::perm_sign(perm) < 0) free_orbit = false;
        auto it = std::find(pts.begin(), pts.end(), img);
        if (it == pts.end())
          throw std::invalid_argument("alt0: point set is not closed under the S_k action");
        members.push_back(static_cast<size_t>(it - pts.begin()));
      }
      for (size_t m : members) claimed.insert(m);
      if (!free_orbit) continue;
      MultiPoint anchor = pts[i];
      for (size_t m : members)
        if (multipoint_less(pts[m], anchor)) anchor = pts[m];
      anchors.push_back(anchor);
    }
    std::sort(anchors.begin(), anchors.end(), multipoint_less);
    bases.push_back(std::move(anchors));
  }
  out.anchors = bases;
  // projection matrices
  for (size_t k = 2; k <= kmax; ++k) {
    const auto& src_basis = bases[k - 2];
    auto perms = detail::all_permutations(k);
    size_t tgt_dim = (k == 2) ? c.branch_count : bases[k - 3].size();
    RatMatrix M(tgt_dim, std::vector<Rat>(src_basis.size(), Rat(0)));
    for (size_t j = 0; j < src_basis.size(); ++j) {
      // chain: sum of sign(perm) * drop-last-slot(perm . anchor)
      std::map<MultiPoint, Rat, decltype(&multipoint_less)> chain(&multipoint_less);
      std::vector<Rat> comp(c.branch_count, Rat(0));
      for (const auto& perm : perms) {
        MultiPoint img = detail::apply_perm(src_basis[j], perm);
        int sg = detail::perm_sign(perm);
        MultiPoint proj;
        proj.branches.assign(img.branches.begin(), img.branches.end() - 1);
        proj.coords.assign(img.coords.begin(), img.coords.end() - 1);
        if (k == 2) {
          comp[static_cast<size_t>(proj.branches[0])] += Rat(sg);
        } else {
          // the projected point must exist at the lower level
          const auto& lower = c.levels[k - 2].points;
          if (std::find(lower.begin(), lower.end(), proj) == lower.end())
            throw std::invalid_argument("alt0: projection leaves the declared point set");
          chain[proj] += Rat(sg);
        }
      }
      if (k == 2) {
        for (size_t b = 0; b < c.branch_count; ++b) M[b][j] = comp[b];
      } else {
        // expand in the target basis: coefficient of each anchor
        auto tgt_perms = detail::all_permutations(k - 1);
        for (size_t t = 0; t < bases[k - 3].size(); ++t) {
          auto it = chain.find(bases[k - 3][t]);
          Rat coeff = (it == chain.end()) ? Rat(0) : it->second;
          M[t][j] = coeff;
          if (sgn(coeff) != 0) {
            for (const auto& perm : tgt_perms) {
              MultiPoint img = detail::apply_perm(bases[k - 3][t], perm);
              chain[img] -= coeff * Rat(detail::perm_sign(perm));
            }
          }
        }
        for (const auto& [pt, coeff] : chain)
          if (sgn(coeff) != 0)
            throw std::logic_error("alt0: projected chain is not spanned by free orbits");
      }
    }
    out.pi.push_back(std::move(M));
  }
  // chain condition: consecutive projections compose to zero
  for (size_t k = 0; k + 1 < out.pi.size(); ++k)
    if (!matrix_is_zero(matrix_product(out.pi[k], out.pi[k + 1])))
      throw std::logic_error("alt0: pi o pi is nonzero");
  return out;
}

// ---------------------------------------------------------------------------
// spectral pages

struct SpectralPage {
  int page = 1;
  std::map<std::pair<int, int>, int64_t> ranks;           // (p,q) -> rank
  std::map<std::pair<int, int>, RatMatrix> differentials;  // source (p,q); d: -> (p-page, q+page-1)
  std::vector<std::string> provenance;

  int64_t rank_at(int p, int q) const {
    auto it = ranks.find({p, q});
    return it == ranks.end() ? 0 : it->second;
  }
};

// Assembles an E^1 page from alternating homology ranks. Cells listed in
// `concentration_zeros` are forced to zero under an assumption flag whose
// name is recorded in the page provenance.
inline SpectralPage e1_from_ranks(
    const std::map<std::pair<int, int>, int64_t>& ranks,
    const std::map<std::pair<int, int>, RatMatrix>& differentials,
    const std::vector<std::pair<int, int>>& concentration_zeros = {},
    const std::string& flag = "") {
  SpectralPage page;
  page.page = 1;
  for (const auto& [pq, r] : ranks) {
    if (pq.first < 0 || pq.second < 0) throw std::invalid_argument("negative bidegree");
    if (r < 0) throw std::invalid_argument("negative rank");
    if (r != 0) page.ranks[pq] = r;
  }
  for (const auto& pq : concentration_zeros) {
    if (page.ranks.count(pq)) {
      page.ranks.erase(pq);
      page.provenance.push_back("cell (" + std::to_string(pq.first) + "," +
                                std::to_string(pq.second) + ") zeroed by flag " + flag);
    }
  }
  for (const auto& [pq, m] : differentials) {
    int64_t src = page.rank_at(pq.first, pq.second);
    int64_t tgt = page.rank_at(pq.first - 1, pq.second);
    if (m.empty() && src != 0 && tgt != 0)
      throw std::invalid_argument("empty differential between nonzero cells");
    if (!m.empty()) {
      if (static_cast<int64_t>(m.size()) != tgt || static_cast<int64_t>(m[0].size()) != src)
        throw std::invalid_argument("differential shape mismatch");
      page.differentials[pq] = m;
    }
  }
  if (!flag.empty() && concentration_zeros.empty())
    page.provenance.push_back("flag " + flag + " recorded (no cells zeroed)");
  return page;
}

struct PageTurnResult {
  SpectralPage einf;
  bool exact = true;
  // totals per degree n: sum over p+q=n of E-infinity ranks, as bounds
  std::map<int, std::pair<int64_t, int64_t>> homology;
  std::vector<std::string> notes;
};

// Turns pages to E-infinity. Differentials whose source and target are both
// nonzero must be supplied as matrices (or be forced zero by shape); when
// one is missing the result degrades to interval bounds instead of exact
// ranks.
inline PageTurnResult turn_pages(const SpectralPage& start, int max_page = 16) {
  PageTurnResult out;
  // bounds per cell
  std::map<std::pair<int, int>, std::pair<int64_t, int64_t>> cells;
  for (const auto& [pq, r] : start.ranks) cells[pq] = {r, r};
  std::map<std::pair<int, int>, RatMatrix> diffs = start.differentials;
  int pmax = 0, qmax = 0;
  for (const auto& [pq, r] : cells) {
    pmax = std::max(pmax, pq.first);
    qmax = std::max(qmax, pq.second);
  }
  for (int r = start.page; r <= max_page; ++r) {
    bool any_possible = false;
    // losses at this page: for each potential differential (p,q)->(p-r,q+r-1)
    std::map<std::pair<int, int>, std::pair<int64_t, int64_t>> next = cells;
    for (const auto& [pq, bounds] : cells) {
      auto [p, q] = pq;
      std::pair<int, int> tgt{p - r, q + r - 1};
      if (tgt.first < 0) continue;
      auto it = cells.find(tgt);
      if (it == cells.end() || it->second.second == 0 || bounds.second == 0) continue;
      any_possible = true;
      RatMatrix m;
      bool known = false;
      if (r == start.page) {
        auto dm = diffs.find(pq);
        if (dm != diffs.end()) {
          m = dm->second;
          known = true;
        }
      }
      if (known) {
        int64_t rk = static_cast<int64_t>(matrix_rank(m));
        next[pq].first -= rk;
        next[pq].second -= rk;
        next[tgt].first -= rk;
        next[tgt].second -= rk;
      } else {
        out.exact = false;
        out.notes.push_back("unknown differential at page " + std::to_string(r) + " from (" +
                            std::to_string(p) + "," + std::to_string(q) + ")");
        int64_t maxloss = std::min(bounds.second, it->second.second);
        next[pq].first -= maxloss;
        next[tgt].first -= maxloss;
      }
    }
    for (auto& [pq, b] : next) {
      b.first = std::max<int64_t>(b.first, 0);
      if (b.second < b.first) b.second = b.first;
    }
    cells = std::move(next);
    diffs.clear();  // matrices are only meaningful on the starting page
    if (!any_possible && r > start.page) break;
    // differentials of longer reach vanish once everything fits the strip
    if (r > pmax + 1) break;
  }
  out.einf.page = max_page;
  for (const auto& [pq, b] : cells) {
    if (b.second == 0) continue;
    out.einf.ranks[pq] = b.second;  // upper bound; equals exact value when exact
  }
  for (const auto& [pq, b] : cells) {
    int n = pq.first + pq.second;
    auto& h = out.homology[n];
    h.first += b.first;
    h.second += b.second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// constraint ledger

struct Constraint {
  std::vector<Rat> coeffs;
  Rat rhs;
  std::string provenance;
};

struct ConstraintLedger {
  std::vector<std::string> unknowns;
  std::vector<Constraint> rows;

  void add(const std::map<std::string, Rat>& coeffs, Rat rhs, std::string provenance) {
    Constraint c;
    c.coeffs.assign(unknowns.size(), Rat(0));
    for (const auto& [name, v] : coeffs) {
      auto it = std::find(unknowns.begin(), unknowns.end(), name);
      if (it == unknowns.end()) throw std::invalid_argument("unknown ledger variable " + name);
      c.coeffs[static_cast<size_t>(it - unknowns.begin())] = v;
    }
    c.rhs = std::move(rhs);
    c.provenance = std::move(provenance);
    rows.push_back(std::move(c));
  }
};

struct LedgerSolution {
  size_t rank = 0;
  bool unique = false;
  std::vector<Rat> values;              // engaged when unique
  std::vector<std::string> free_unknowns;  // nonempty when underdetermined
  bool integral = true;
  bool nonnegative = true;
};

// Exact rational solve; reports the unique solution (verified integral and
// non-negative) or the free unknowns of the affine solution space. Throws
// on an inconsistent system.
inline LedgerSolution ledger_solve(const ConstraintLedger& L) {
  size_t n = L.unknowns.size();
  RatMatrix M;
  for (const auto& r : L.rows) {
    std::vector<Rat> row = r.coeffs;
    row.push_back(r.rhs);
    M.push_back(std::move(row));
  }
  size_t rank = 0;
  std::vector<int> pivot_of_col(n, -1);
  for (size_t c = 0; c < n && rank < M.size(); ++c) {
    size_t piv = SIZE_MAX;
    for (size_t r = rank; r < M.size(); ++r)
      if (sgn(M[r][c]) != 0) {
        piv = r;
        break;
      }
    if (piv == SIZE_MAX) continue;
    std::swap(M[rank], M[piv]);
    Rat p = M[rank][c];
    for (auto& x : M[rank]) x /= p;
    for (size_t r = 0; r < M.size(); ++r) {
      if (r == rank || sgn(M[r][c]) == 0) continue;
      Rat f = M[r][c];
      for (size_t cc = 0; cc <= n; ++cc) M[r][cc] -= f * M[rank][cc];
    }
    pivot_of_col[c] = static_cast<int>(rank);
    ++rank;
  }
  for (size_t r = rank; r < M.size(); ++r)
    if (sgn(M[r][n]) != 0) throw std::domain_error("ledger: inconsistent system");
  LedgerSolution out;
  out.rank = rank;
  out.unique = (rank == n);
  if (out.unique) {
    out.values.assign(n, Rat(0));
    for (size_t c = 0; c < n; ++c) out.values[c] = M[static_cast<size_t>(pivot_of_col[c])][n];
    for (const auto& v : out.values) {
      if (v.get_den() != 1) out.integral = false;
      if (sgn(v) < 0) out.nonnegative = false;
    }
  } else {
    for (size_t c = 0; c < n; ++c)
      if (pivot_of_col[c] < 0) out.free_unknowns.push_back(L.unknowns[c]);
  }
  return out;
}

}  // namespace germ
