#ifndef TORICVSIT_INSTABILITY_HPP
#define TORICVSIT_INSTABILITY_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "toricvsit/ample.hpp"
#include "toricvsit/divisor.hpp"
#include "toricvsit/fan.hpp"

namespace ToricVSIT {

/** Raised when two distinct candidate vectors share the maximal norm: the
 *  adapted direction is unique by theory, so this signals an engine bug. */
class InternalTie : public std::runtime_error {
 public:
  InternalTie(const std::string& what = "") : std::runtime_error(what) {}
};

/** Raised when a simplicial-only operation meets a non-simplicial fan. */
class NotSimplicial : public std::runtime_error {
 public:
  NotSimplicial(const std::string& what = "") : std::runtime_error(what) {}
};

/** The diagonalizable-group data behind the toric action: the relation
 *  lattice (weights are the coordinate functionals v -> v_rho on it) and its
 *  exact Gram matrix under the standard inner product. */
struct WeightedAction {
  SubspaceBasis gamma;
  QMat gram;
};

inline WeightedAction make_weighted_action(const Fan& fan) {
  WeightedAction wa;
  wa.gamma = relation_lattice(fan);
  std::size_t k = wa.gamma.rows.size();
  wa.gram.assign(k, QVec(k, Rat(0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      wa.gram[i][j] = dot(wa.gamma.rows[i], wa.gamma.rows[j]);
  return wa;
}

/** One merged row of the potential table: the negated symbolic projection
 *  -Proj_{W_Z} chi*_D shared by all state sets Z in l, with its symbolic
 *  squared norm. */
struct PotentialEntry {
  SymbolicVector v;        // value(a) = -Proj_{W_Z}(chi*_D)
  std::vector<StateSet> l;  // state sets sharing the subspace, in L order
  SymbolicQuadratic norm2;  // ||v||^2 as a quadratic form in a
  SubspaceBasis W;
};

/** All potential one-parameter subgroups for the fan: one entry per distinct
 *  subspace W_Z over Z in L, first occurrence first, members kept in the
 *  canonical L order.  Because W_Z lies inside the relation lattice, the
 *  projection composed with chi* is the plain projection matrix P_{W_Z}. */
inline std::vector<PotentialEntry> potential_table(const Fan& fan) {
  std::vector<PotentialEntry> table;
  std::map<SubspaceBasis, std::size_t> index;
  std::size_t n = static_cast<std::size_t>(fan.nrays());
  for (const StateSet& s : state_sets(fan)) {
    SubspaceBasis w = w_subspace(fan, s.rays);
    auto it = index.find(w);
    if (it == index.end()) {
      PotentialEntry e;
      QMat p = proj_matrix(w, n);
      QMat neg(n, QVec(n, Rat(0)));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) neg[i][j] = -p[i][j];
      e.v = SymbolicVector{std::move(neg)};
      e.norm2 = SymbolicQuadratic{std::move(p)};
      e.W = std::move(w);
      e.l.push_back(s);
      index.emplace(e.W, table.size());
      table.push_back(std::move(e));
    } else {
      table[it->second].l.push_back(s);
    }
  }
  return table;
}

/** Does lambda lie in sigma_S = {v : v_rho >= 0 for all rho in S}? */
inline bool qualifies(const QVec& lambda, const StateSet& s) {
  for (int rho : s.rays)
    if (lambda[rho] < 0) return false;
  return true;
}

/** Precondition guard: the instability queries are defined on members of the
 *  state-set family only (for a complete fan the full ray set is never one,
 *  so there is no semistable fallback to return). */
inline void require_state_set(const Fan& fan, const StateSet& s) {
  auto ls = state_sets(fan);
  if (std::find(ls.begin(), ls.end(), s) == ls.end())
    throw InvalidFan("state set is not in the state-set family");
}

/** The candidate set Lambda^D_S: the qualifying vectors -Proj_{W_Z} chi*_D
 *  over subsets Z of S, deduplicated, in potential-table order. */
inline std::vector<QVec> candidate_set(const Fan& fan, const StateSet& s,
                                       const DivisorGeneric& d) {
  if (!is_ample(fan, d)) throw NotAmple("candidate_set needs an ample divisor");
  require_state_set(fan, s);
  std::vector<QVec> out;
  for (const PotentialEntry& e : potential_table(fan)) {
    bool applies = false;
    for (const StateSet& z : e.l) {
      if (std::includes(s.rays.begin(), s.rays.end(), z.rays.begin(),
                        z.rays.end())) {
        applies = true;
        break;
      }
    }
    if (!applies) continue;
    QVec lam = e.v.value(d.a);
    if (!qualifies(lam, s)) continue;
    bool seen = false;
    for (const auto& x : out)
      if (x == lam) { seen = true; break; }
    if (!seen) out.push_back(std::move(lam));
  }
  return out;
}

/** An adapted one-parameter subgroup with its exact squared norm.  The
 *  instability measure M^D is -sqrt(norm2); the square is stored so that the
 *  value stays rational. */
struct Adapted {
  QVec lambda;
  Rat norm2;
};

/** Table-driven evaluation of the adapted direction for one state set at a
 *  concrete (already validated) divisor. */
inline Adapted adapted_from_table(const std::vector<PotentialEntry>& table,
                                  const StateSet& s, const QVec& a) {
  bool have = false;
  Adapted best{{}, Rat(0)};
  for (const PotentialEntry& e : table) {
    bool applies = false;
    for (const StateSet& z : e.l) {
      if (std::includes(s.rays.begin(), s.rays.end(), z.rays.begin(),
                        z.rays.end())) {
        applies = true;
        break;
      }
    }
    if (!applies) continue;
    QVec lam = e.v.value(a);
    if (!qualifies(lam, s)) continue;
    Rat n2 = e.norm2.value(a);
    if (!have || n2 > best.norm2) {
      best = Adapted{std::move(lam), std::move(n2)};
      have = true;
    } else if (n2 == best.norm2 && lam != best.lambda) {
      throw InternalTie("two adapted candidates share the maximal norm");
    }
  }
  if (!have) throw InvalidFan("no qualifying candidate vector");
  return best;
}

/** The adapted one-parameter subgroup lambda^D_S: the longest qualifying
 *  negated projection (unique by Kempf uniqueness; InternalTie otherwise). */
inline Adapted adapted_ops(const Fan& fan, const StateSet& s,
                           const DivisorGeneric& d) {
  if (!is_ample(fan, d)) throw NotAmple("adapted_ops needs an ample divisor");
  require_state_set(fan, s);
  return adapted_from_table(potential_table(fan), s, d.a);
}

/** Independent brute force for the same maximum: enumerate every subset Z of
 *  S with a fresh kernel and a fresh projection, keep the qualifying longest.
 *  Used to cross-check adapted_ops. */
inline QVec kempf_oracle(const Fan& fan, const StateSet& s,
                         const DivisorGeneric& d) {
  if (!is_ample(fan, d)) throw NotAmple("kempf_oracle needs an ample divisor");
  require_state_set(fan, s);
  std::size_t k = s.rays.size();
  bool have = false;
  QVec best;
  Rat best_n2 = 0;
  QVec chi = project_onto(relation_lattice(fan), d.a);
  for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
    std::vector<int> z;
    for (std::size_t b = 0; b < k; ++b)
      if (mask & (std::size_t(1) << b)) z.push_back(s.rays[b]);
    SubspaceBasis w = w_subspace(fan, z);
    QVec lam = negate(project_onto(w, chi));
    if (!qualifies(lam, s)) continue;
    Rat n2 = norm2(lam);
    if (!have || n2 > best_n2) {
      best = std::move(lam);
      best_n2 = std::move(n2);
      have = true;
    } else if (n2 == best_n2 && lam != best) {
      throw InternalTie("oracle found two longest candidates");
    }
  }
  return best;
}

/** The integral destabilizing one-parameter subgroup lambda(C) of a primitive
 *  collection: write u = sum_{rho in C} u_rho over the first maximal cone
 *  containing it, using the first independent ray subset carrying u with
 *  nonnegative coefficients; clear denominators with K = lcm and spread
 *  K(b_rho - [rho in C]) - K [rho in C, rho outside the cone] over the slots. */
inline QVec destabilizer(const Fan& fan, const PrimitiveCollection& c) {
  QVec u = zero_vec(fan.dim);
  for (int rho : c.rays) u = add(u, fan.rays[rho]);
  const std::vector<int>* cone = nullptr;
  for (const auto& mc : fan.max_cones) {
    std::vector<QVec> gens;
    for (int i : mc) gens.push_back(fan.rays[i]);
    if (in_cone(gens, u)) { cone = &mc; break; }
  }
  if (!cone) throw InvalidFan("primitive collection sum escapes the fan");
  int m = static_cast<int>(cone->size());
  std::map<int, Rat> b;  // support of the chosen combination
  bool done = is_zero_vec(u);
  for (int k = 1; k <= m && !done; ++k) {
    for_each_subset(m, k, [&](const std::vector<int>& pick) {
      QMat rows_m;
      for (int p : pick) rows_m.push_back(fan.rays[(*cone)[p]]);
      if (rank(rows_m) != k) return false;
      auto sol = solve_consistent(transpose(rows_m), u);
      if (!sol) return false;
      for (const Rat& x : *sol)
        if (x < 0) return false;
      for (int j = 0; j < k; ++j) b[(*cone)[pick[j]]] = (*sol)[j];
      done = true;
      return true;
    });
  }
  if (!done && !is_zero_vec(u))
    throw InvalidFan("containing cone does not carry the collection sum");
  Int K = 1;
  for (const auto& [rho, val] : b) K = lcm(K, denominator(val));
  std::set<int> cset(c.rays.begin(), c.rays.end());
  std::set<int> sigma(cone->begin(), cone->end());
  QVec lam = zero_vec(fan.nrays());
  for (int rho = 0; rho < fan.nrays(); ++rho) {
    Rat brho = b.count(rho) ? b[rho] : Rat(0);
    if (cset.count(rho) && !sigma.count(rho)) {
      lam[rho] = Rat(-K);
    } else if (cset.count(rho)) {
      lam[rho] = Rat(K) * (brho - 1);
    } else if (sigma.count(rho)) {
      lam[rho] = Rat(K) * brho;
    }
  }
  return lam;
}

/** The primitive relation of a collection on a simplicial fan: barycentric
 *  coordinates of u = sum_{rho in C} u_rho inside the first maximal cone
 *  containing it give r = 1_C - b on the supporting face (r = 1_C when the
 *  sum vanishes). */
inline QVec primitive_relation(const Fan& fan, const PrimitiveCollection& c) {
  if (!is_simplicial(fan))
    throw NotSimplicial("primitive relations need a simplicial fan");
  QVec u = zero_vec(fan.dim);
  for (int rho : c.rays) u = add(u, fan.rays[rho]);
  QVec r = zero_vec(fan.nrays());
  for (int rho : c.rays) r[rho] = 1;
  if (is_zero_vec(u)) return r;
  for (const auto& mc : fan.max_cones) {
    QMat cols(fan.dim, QVec(mc.size(), Rat(0)));
    for (std::size_t j = 0; j < mc.size(); ++j)
      for (int i = 0; i < fan.dim; ++i) cols[i][j] = fan.rays[mc[j]][i];
    auto b = solve_consistent(cols, u);
    if (!b) continue;
    bool nonneg = true;
    for (const Rat& x : *b)
      if (x < 0) { nonneg = false; break; }
    if (!nonneg) continue;
    for (std::size_t j = 0; j < mc.size(); ++j)
      if ((*b)[j] != 0) r[mc[j]] -= (*b)[j];
    return r;
  }
  throw InvalidFan("primitive collection sum escapes the fan");
}

}  // namespace ToricVSIT

#endif  // TORICVSIT_INSTABILITY_HPP
