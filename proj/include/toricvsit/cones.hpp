#ifndef TORICVSIT_CONES_HPP
#define TORICVSIT_CONES_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "toricvsit/linalg.hpp"

namespace ToricVSIT {

/** Visit all k-subsets of {0,...,m-1} in lexicographic order. */
inline void for_each_subset(int m, int k,
                            const std::function<bool(const std::vector<int>&)>& fn) {
  if (k > m || k < 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (fn(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/** Exact membership test: is target a nonnegative rational combination of the
 *  generators?  Caratheodory reduction: target lies in the cone iff some
 *  linearly independent generator subset carries it with nonnegative
 *  coefficients, so only subsets up to the ambient dimension are tried. */
inline bool in_cone(const std::vector<QVec>& gens, const QVec& target) {
  if (is_zero_vec(target)) return true;
  if (gens.empty()) return false;
  int m = static_cast<int>(gens.size());
  int n = static_cast<int>(target.size());
  bool found = false;
  for (int k = 1; k <= std::min(m, n) && !found; ++k) {
    for_each_subset(m, k, [&](const std::vector<int>& idx) {
      QMat cols(n, QVec(k, Rat(0)));
      QMat rows_m;
      for (int j = 0; j < k; ++j) {
        rows_m.push_back(gens[idx[j]]);
        for (int i = 0; i < n; ++i) cols[i][j] = gens[idx[j]][i];
      }
      if (rank(rows_m) != k) return false;
      auto c = solve_consistent(cols, target);
      if (!c) return false;
      for (const Rat& x : *c)
        if (x < 0) return false;
      found = true;
      return true;
    });
  }
  return found;
}

/** Drop generators that are positive combinations of the others (and merge
 *  positive parallel duplicates), preserving first-occurrence order. */
inline std::vector<QVec> extremal_subset(const std::vector<QVec>& gens) {
  std::vector<QVec> dedup;
  for (const QVec& g : gens) {
    if (is_zero_vec(g)) continue;
    QVec p = primitive_integral(g);
    bool seen = false;
    for (const QVec& q : dedup)
      if (q == p) { seen = true; break; }
    if (!seen) dedup.push_back(std::move(p));
  }
  std::vector<QVec> out;
  for (std::size_t i = 0; i < dedup.size(); ++i) {
    std::vector<QVec> others;
    for (std::size_t j = 0; j < dedup.size(); ++j)
      if (j != i) others.push_back(dedup[j]);
    if (!in_cone(others, dedup[i])) out.push_back(dedup[i]);
  }
  return out;
}

/** Extremal rays of {v : <n_i, v> >= 0 for all i} for a full-dimensional
 *  pointed cone: brute force over (dim-1)-subsets of the normals whose common
 *  kernel is a line, oriented to satisfy every inequality, then filtered to
 *  the extremal ones.  Rays come out primitive and sorted. */
inline std::vector<QVec> dd_rays(const std::vector<QVec>& normals, int dim) {
  std::vector<QVec> cand;
  auto try_candidate = [&](const QVec& r) {
    bool ok_pos = true, ok_neg = true;
    for (const QVec& nrm : normals) {
      Rat v = dot(nrm, r);
      if (v < 0) ok_pos = false;
      if (v > 0) ok_neg = false;
      if (!ok_pos && !ok_neg) return;
    }
    if (ok_pos) cand.push_back(primitive_integral(r));
    if (ok_neg) cand.push_back(primitive_integral(negate(r)));
  };
  if (dim == 1) {
    try_candidate(QVec{Rat(1)});
  } else {
    int m = static_cast<int>(normals.size());
    for_each_subset(m, dim - 1, [&](const std::vector<int>& idx) {
      QMat rows_m;
      for (int i : idx) rows_m.push_back(normals[i]);
      SubspaceBasis ker = kernel_basis(rows_m);
      if (ker.dim() == 1) try_candidate(ker.rows[0]);
      return false;
    });
  }
  std::vector<QVec> rays = extremal_subset(cand);
  std::sort(rays.begin(), rays.end());
  return rays;
}

/** A polyhedral cone in facet form {v : n.v >= 0}, with its extremal rays
 *  computed on demand.  Normals are stored irredundant and primitive, so the
 *  two descriptions stay consistent under dualization. */
struct PolyCone {
  int dim = 0;
  std::vector<QVec> facet_normals;
  mutable std::optional<std::vector<QVec>> cached_rays;

  const std::vector<QVec>& rays() const {
    if (!cached_rays) cached_rays = dd_rays(facet_normals, dim);
    return *cached_rays;
  }
};

/** Build a PolyCone from (possibly redundant) inequality normals. */
inline PolyCone make_poly_cone(int dim, const std::vector<QVec>& normals) {
  PolyCone c;
  c.dim = dim;
  c.facet_normals = extremal_subset(normals);
  return c;
}

/** Dual of a full-dimensional pointed cone: rays and facet normals swap. */
inline PolyCone dual_cone(const PolyCone& c) {
  PolyCone d;
  d.dim = c.dim;
  d.facet_normals = c.rays();
  std::vector<QVec> r = c.facet_normals;
  std::sort(r.begin(), r.end());
  d.cached_rays = std::move(r);
  return d;
}

/** Integer solvability of A x = b via Smith reduction of the augmented
 *  system.  A must have integral entries and b integral values; row and
 *  column gcd steps diagonalize A while carrying b through the row ops. */
inline bool integral_solution_exists(QMat a, QVec b) {
  std::size_t rows = a.size();
  if (rows == 0) return true;
  std::size_t cols = a[0].size();
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(b[i], b[j]);
  };
  auto addmul_row = [&](std::size_t dst, std::size_t src, const Rat& f) {
    for (std::size_t c = 0; c < cols; ++c) a[dst][c] += f * a[src][c];
    b[dst] += f * b[src];
  };
  auto addmul_col = [&](std::size_t dst, std::size_t src, const Rat& f) {
    for (std::size_t r = 0; r < rows; ++r) a[r][dst] += f * a[r][src];
  };
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // find the smallest nonzero |entry| in the remaining block as the pivot
    std::size_t pi = t, pj = t;
    bool any = false;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        if (!any || abs(a[i][j]) < abs(a[pi][pj])) { pi = i; pj = j; }
        any = true;
      }
    if (!any) break;
    swap_rows(t, pi);
    if (pj != t)
      for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][pj], a[r][t]);
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      Rat q = a[i][t] / a[t][t];
      Rat f = Rat(numerator(q) / denominator(q));  // truncated quotient
      if (f != 0) addmul_row(i, t, -f);
      if (a[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      Rat q = a[t][j] / a[t][t];
      Rat f = Rat(numerator(q) / denominator(q));
      if (f != 0) addmul_col(j, t, -f);
      if (a[t][j] != 0) clean = false;
    }
    if (clean) ++t;  // block at t is diagonal; recurse into the remainder
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (i < t) {
      Rat q = b[i] / a[i][i];
      if (denominator(q) != 1) return false;
    } else if (b[i] != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace ToricVSIT

#endif  // TORICVSIT_CONES_HPP
