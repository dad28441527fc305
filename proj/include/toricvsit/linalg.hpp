#ifndef TORICVSIT_LINALG_HPP
#define TORICVSIT_LINALG_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toricvsit/rational.hpp"

namespace ToricVSIT {

/** Dense rational vector. */
using QVec = std::vector<Rat>;

/** Dense rational matrix, row-major; rows must share one length. */
using QMat = std::vector<QVec>;

/** Raised when inversion/solving hits a singular square matrix. */
class SingularMatrix : public std::runtime_error {
 public:
  SingularMatrix(const std::string& what = "") : std::runtime_error(what) {}
};

/** Raised when operand shapes (or ray counts across fans) do not line up. */
class DimensionMismatch : public std::runtime_error {
 public:
  DimensionMismatch(const std::string& what = "") : std::runtime_error(what) {}
};

inline Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/** Squared Euclidean norm (exact). */
inline Rat norm2(const QVec& v) { return dot(v, v); }

inline bool is_zero_vec(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

inline QVec zero_vec(std::size_t n) { return QVec(n, Rat(0)); }

inline QVec add(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("add: length mismatch");
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline QVec sub(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("sub: length mismatch");
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline QVec scale(const QVec& a, const Rat& t) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * t;
  return r;
}

inline QVec negate(const QVec& a) { return scale(a, Rat(-1)); }

inline QVec mat_vec(const QMat& m, const QVec& v) {
  QVec r(m.size(), Rat(0));
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
  return r;
}

inline QMat transpose(const QMat& m) {
  if (m.empty()) return {};
  QMat t(m[0].size(), QVec(m.size(), Rat(0)));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

inline QMat identity_mat(std::size_t n) {
  QMat m(n, QVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/** Reduced row echelon form with deterministic pivoting: each pivot is the
 *  first row (top-down) carrying a nonzero entry in the current column.
 *  Returns the reduced matrix and the pivot-column list. */
inline std::pair<QMat, std::vector<int>> rref(QMat m) {
  std::vector<int> pivots;
  if (m.empty()) return {m, pivots};
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rat inv = m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return {m, pivots};
}

inline int rank(const QMat& m) {
  return static_cast<int>(rref(m).second.size());
}

/** Scale a rational vector to the primitive integral vector on the same ray
 *  (clears denominators, divides out the content).  Zero maps to zero. */
inline QVec primitive_integral(const QVec& v) {
  Int l = 1;
  for (const Rat& x : v) l = lcm(l, denominator(x));
  Int g = 0;
  for (const Rat& x : v) g = gcd(g, Int(numerator(x) * (l / denominator(x))));
  if (g == 0) return zero_vec(v.size());
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * Rat(l, g);
  return r;
}

/** Canonical representative of the line through v: primitive integral with
 *  the first nonzero coordinate positive. */
inline QVec lin_canonical(const QVec& v) {
  QVec p = primitive_integral(v);
  for (const Rat& x : p) {
    if (x == 0) continue;
    if (x < 0) return negate(p);
    break;
  }
  return p;
}

/** A linear subspace of Q^n held in canonical form: the rows are the reduced
 *  row echelon basis, each scaled to its primitive integral representative.
 *  Two values compare equal iff they span the same subspace. */
struct SubspaceBasis {
  int ambient = 0;
  std::vector<QVec> rows;

  int dim() const { return static_cast<int>(rows.size()); }
  bool is_zero() const { return rows.empty(); }
  bool operator==(const SubspaceBasis& o) const = default;
  bool operator<(const SubspaceBasis& o) const {
    if (ambient != o.ambient) return ambient < o.ambient;
    return rows < o.rows;
  }
};

/** Canonicalize a spanning set into a SubspaceBasis. */
inline SubspaceBasis subspace_basis(int ambient, const QMat& spanning) {
  SubspaceBasis b;
  b.ambient = ambient;
  if (spanning.empty()) return b;
  auto [R, piv] = rref(spanning);
  for (std::size_t i = 0; i < piv.size(); ++i)
    b.rows.push_back(primitive_integral(R[i]));
  return b;
}

/** Basis of the right kernel {x : m x = 0}, canonicalized. */
inline SubspaceBasis kernel_basis(const QMat& m) {
  if (m.empty()) return SubspaceBasis{0, {}};
  std::size_t cols = m[0].size();
  auto [R, piv] = rref(m);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  QMat span;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    QVec x = zero_vec(cols);
    x[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = -R[i][f];
    span.push_back(std::move(x));
  }
  return subspace_basis(static_cast<int>(cols), span);
}

/** Solve a x = b for square invertible a; throws SingularMatrix otherwise. */
inline QVec solve_linear(const QMat& a, const QVec& b) {
  std::size_t n = a.size();
  if (n == 0) return {};
  if (a[0].size() != n || b.size() != n)
    throw DimensionMismatch("solve_linear: non-square system");
  QMat aug = a;
  for (std::size_t i = 0; i < n; ++i) aug[i].push_back(b[i]);
  auto [R, piv] = rref(aug);
  if (piv.size() != n || piv.back() == static_cast<int>(n))
    throw SingularMatrix("solve_linear: singular matrix");
  QVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = R[i][n];
  return x;
}

/** Solve a x = b for any shape; returns the particular solution with all
 *  free variables set to zero, or nullopt when the system is inconsistent. */
inline std::optional<QVec> solve_consistent(const QMat& a, const QVec& b) {
  if (a.empty()) return QVec{};
  std::size_t rows = a.size(), cols = a[0].size();
  if (b.size() != rows) throw DimensionMismatch("solve_consistent: rhs length");
  QMat aug = a;
  for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
  auto [R, piv] = rref(aug);
  for (int c : piv)
    if (c == static_cast<int>(cols)) return std::nullopt;
  QVec x = zero_vec(cols);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = R[i][cols];
  return x;
}

/** Orthogonal projection of v onto the subspace (standard inner product).
 *  The zero subspace projects everything to zero. */
inline QVec project_onto(const SubspaceBasis& w, const QVec& v) {
  if (static_cast<int>(v.size()) != w.ambient)
    throw DimensionMismatch("project_onto: ambient mismatch");
  if (w.rows.empty()) return zero_vec(v.size());
  std::size_t k = w.rows.size();
  QMat gram(k, QVec(k, Rat(0)));
  QVec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(w.rows[i], w.rows[j]);
    rhs[i] = dot(w.rows[i], v);
  }
  QVec c = solve_linear(gram, rhs);
  QVec out = zero_vec(v.size());
  for (std::size_t i = 0; i < k; ++i) out = add(out, scale(w.rows[i], c[i]));
  return out;
}

/** The n x n matrix of project_onto(w, .): symmetric and idempotent. */
inline QMat proj_matrix(const SubspaceBasis& w, std::size_t n) {
  QMat cols_m;
  for (std::size_t j = 0; j < n; ++j) {
    QVec e = zero_vec(n);
    e[j] = 1;
    cols_m.push_back(project_onto(w, e));
  }
  return transpose(cols_m);
}

/** True iff every row of inner lies in the span of outer. */
inline bool subspace_contains(const SubspaceBasis& outer,
                              const SubspaceBasis& inner) {
  if (outer.ambient != inner.ambient)
    throw DimensionMismatch("subspace_contains: ambient mismatch");
  if (inner.rows.empty()) return true;
  if (outer.rows.empty()) return false;
  QMat at = transpose(outer.rows);
  for (const QVec& v : inner.rows)
    if (!solve_consistent(at, v)) return false;
  return true;
}

}  // namespace ToricVSIT

#endif  // TORICVSIT_LINALG_HPP
