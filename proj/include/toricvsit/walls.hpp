#ifndef TORICVSIT_WALLS_HPP
#define TORICVSIT_WALLS_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "toricvsit/ample.hpp"
#include "toricvsit/instability.hpp"

namespace ToricVSIT {

/** A wall of the ample cone in reduced (Picard-basis) coordinates.
 *
 *  kind 1: a linear form, poly holding one coefficient per free slot; the
 *  witnesses are the (Z, {rho}) pairs whose nested projections meet there.
 *  kind 2: a quadratic form, poly holding the monomial coefficients in the
 *  order a_i a_j, i <= j lexicographic over free-slot positions; the
 *  witnesses are pairs of merged potential-table member lists whose squared
 *  norms agree on the wall.
 *
 *  poly is the canonical representative (integral, primitive, first nonzero
 *  coefficient positive); raw is the exact form of the first witness in
 *  enumeration order, kept for text output. */
struct Wall {
  int kind = 1;
  QVec poly;
  QVec raw;
  std::vector<std::pair<StateSet, int>> one_witnesses;
  std::vector<std::pair<std::vector<StateSet>, std::vector<StateSet>>>
      two_witnesses;
};

/** First Picard basis the fan admits, scanning base cones in fan order. */
inline PicBasis default_picard_basis(const Fan& fan) {
  for (std::size_t k = 0; k < fan.max_cones.size(); ++k) {
    try {
      return picard_basis(fan, static_cast<int>(k));
    } catch (const ConditionFails&) {
    } catch (const InvalidFan&) {
    }
  }
  throw InvalidFan("no maximal cone induces a Picard basis");
}

/** Quadratic-form coefficients of a symmetric matrix restricted to the free
 *  slots: diagonal entries as-is, off-diagonal doubled, monomials (i,j) with
 *  i <= j in lexicographic order. */
inline QVec quad_coefficients(const QMat& sym, const std::vector<int>& free) {
  QVec out;
  for (std::size_t i = 0; i < free.size(); ++i)
    for (std::size_t j = i; j < free.size(); ++j)
      out.push_back(i == j ? sym[free[i]][free[j]]
                           : sym[free[i]][free[j]] * 2);
  return out;
}

inline Rat eval_linear(const QVec& coeffs, const QVec& x) {
  return dot(coeffs, x);
}

inline Rat eval_quadratic(const QVec& coeffs, const QVec& x) {
  Rat s = 0;
  std::size_t t = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i; j < x.size(); ++j) s += coeffs[t++] * x[i] * x[j];
  return s;
}

/** Type-one walls: for Z in L and a singleton {rho} in L with rho outside Z
 *  such that W_{Z+rho} drops the dimension by exactly one, the rho-th row of
 *  the projection onto W_Z (restricted to the free slots) cuts a hyperplane;
 *  it is a wall iff neither the row nor its negative lies in the cone spanned
 *  by the reduced ample inequalities (otherwise the hyperplane misses the
 *  open ample region).  Walls with one canonical form are merged; witnesses
 *  are sorted by (|Z|, Z, rho) and the walls by canonical form. */
inline std::vector<Wall> type_one_walls(const Fan& fan, const AmpleCone& ac) {
  auto ls = state_sets(fan);
  std::vector<int> singles;
  for (const StateSet& s : ls)
    if (s.rays.size() == 1) singles.push_back(s.rays[0]);
  std::sort(singles.begin(), singles.end());
  std::map<std::vector<int>, SubspaceBasis> wcache;
  auto wdim = [&](const std::vector<int>& z) -> SubspaceBasis& {
    auto it = wcache.find(z);
    if (it == wcache.end())
      it = wcache.emplace(z, w_subspace(fan, z)).first;
    return it->second;
  };
  std::size_t n = static_cast<std::size_t>(fan.nrays());
  std::vector<Wall> walls;
  std::map<QVec, std::size_t> index;
  for (const StateSet& zset : ls) {
    const SubspaceBasis& w = wdim(zset.rays);
    if (w.dim() == 0) continue;
    QMat p;  // filled lazily: the projection matrix onto W_Z
    for (int rho : singles) {
      if (std::binary_search(zset.rays.begin(), zset.rays.end(), rho)) continue;
      std::vector<int> zu = zset.rays;
      zu.insert(std::lower_bound(zu.begin(), zu.end(), rho), rho);
      if (wdim(zu).dim() != w.dim() - 1) continue;
      if (p.empty()) p = proj_matrix(w, n);
      QVec red;
      for (int fr : ac.pic.free_rays) red.push_back(p[rho][fr]);
      if (is_zero_vec(red))
        throw InternalTie("type-one form vanished on Pic");
      if (in_cone(ac.L_red, red) || in_cone(ac.L_red, negate(red))) continue;
      QVec canon = lin_canonical(red);
      auto it = index.find(canon);
      if (it == index.end()) {
        Wall wall;
        wall.kind = 1;
        wall.poly = canon;
        wall.raw = red;
        wall.one_witnesses.push_back({zset, rho});
        index.emplace(canon, walls.size());
        walls.push_back(std::move(wall));
      } else {
        walls[it->second].one_witnesses.push_back({zset, rho});
      }
    }
  }
  for (Wall& w : walls) {
    std::sort(w.one_witnesses.begin(), w.one_witnesses.end(),
              [](const auto& a, const auto& b) {
                auto ka = std::make_tuple(a.first.rays.size(), a.first.rays,
                                          a.second);
                auto kb = std::make_tuple(b.first.rays.size(), b.first.rays,
                                          b.second);
                return ka < kb;
              });
  }
  std::sort(walls.begin(), walls.end(),
            [](const Wall& a, const Wall& b) { return a.poly < b.poly; });
  return walls;
}

/** The (size, lexicographic)-least member of a merged entry's state sets. */
inline const StateSet& least_member(const std::vector<StateSet>& l) {
  const StateSet* best = &l.front();
  for (const StateSet& s : l) {
    auto ks = std::make_pair(s.rays.size(), s.rays);
    auto kb = std::make_pair(best->rays.size(), best->rays);
    if (ks < kb) best = &s;
  }
  return *best;
}

/** Type-two walls: for every unordered pair of nonzero potential-table
 *  entries whose subspaces are incomparable, the difference of squared norms
 *  is a homogeneous quadratic in the reduced coordinates; pairs are oriented
 *  so that the entry with the smaller (size, lex)-least member comes first.
 *  Following the source construction, no ample-interior test is applied, so
 *  some listed quadratics may miss the ample cone (the probe option samples
 *  for that).  Walls sharing one canonical quadratic are merged. */
inline std::vector<Wall> type_two_walls(const Fan& fan, const AmpleCone& ac) {
  auto table = potential_table(fan);
  std::vector<const PotentialEntry*> ents;
  for (const auto& e : table)
    if (e.W.dim() > 0) ents.push_back(&e);
  std::vector<Wall> walls;
  std::map<QVec, std::size_t> index;
  for (std::size_t i = 0; i < ents.size(); ++i) {
    for (std::size_t j = i + 1; j < ents.size(); ++j) {
      const PotentialEntry* a = ents[i];
      const PotentialEntry* b = ents[j];
      if (subspace_contains(a->W, b->W) || subspace_contains(b->W, a->W))
        continue;
      const StateSet& la = least_member(a->l);
      const StateSet& lb = least_member(b->l);
      auto ka = std::make_pair(la.rays.size(), la.rays);
      auto kb = std::make_pair(lb.rays.size(), lb.rays);
      if (kb < ka) std::swap(a, b);
      QMat diff = a->norm2.Q;
      for (std::size_t r = 0; r < diff.size(); ++r)
        for (std::size_t c = 0; c < diff.size(); ++c)
          diff[r][c] -= b->norm2.Q[r][c];
      QVec raw = quad_coefficients(diff, ac.pic.free_rays);
      if (is_zero_vec(raw))
        throw InternalTie("type-two quadratic vanished on Pic");
      QVec canon = lin_canonical(raw);
      auto it = index.find(canon);
      if (it == index.end()) {
        Wall wall;
        wall.kind = 2;
        wall.poly = canon;
        wall.raw = raw;
        wall.two_witnesses.push_back({a->l, b->l});
        index.emplace(canon, walls.size());
        walls.push_back(std::move(wall));
      } else {
        walls[it->second].two_witnesses.push_back({a->l, b->l});
      }
    }
  }
  std::sort(walls.begin(), walls.end(),
            [](const Wall& a, const Wall& b) { return a.poly < b.poly; });
  return walls;
}

/** One slot of the chamber signature: a deduplicated wall polynomial with the
 *  kinds that produced it (1, 2, or 1|2 if a linear and a quadratic wall ever
 *  shared coefficients, which cannot happen literally but keeps the merge
 *  rule explicit). */
struct SignatureSlot {
  int degree = 1;
  QVec poly;
  int kinds = 0;  // bitmask: 1 = type one, 2 = type two
};

struct WallAtlas {
  std::vector<Wall> type_one;
  std::vector<Wall> type_two;
  std::vector<SignatureSlot> slots;
};

inline WallAtlas make_wall_atlas(const Fan& fan, const AmpleCone& ac) {
  WallAtlas atlas;
  atlas.type_one = type_one_walls(fan, ac);
  atlas.type_two = type_two_walls(fan, ac);
  auto push = [&](int degree, const QVec& poly, int kind) {
    for (auto& s : atlas.slots)
      if (s.degree == degree && s.poly == poly) {
        s.kinds |= kind;
        return;
      }
    atlas.slots.push_back(SignatureSlot{degree, poly, kind});
  };
  for (const Wall& w : atlas.type_one) push(1, w.poly, 1);
  for (const Wall& w : atlas.type_two) push(2, w.poly, 2);
  return atlas;
}

/** The sign vector of a concrete ample class over the atlas slots. */
inline std::vector<int> chamber_signature(const WallAtlas& atlas,
                                          const AmpleCone& ac,
                                          const QVec& reduced) {
  if (!is_ample_reduced(ac, reduced))
    throw NotAmple("chamber_signature needs an ample class");
  std::vector<int> sig;
  for (const auto& s : atlas.slots) {
    Rat v = s.degree == 1 ? eval_linear(s.poly, reduced)
                          : eval_quadratic(s.poly, reduced);
    sig.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
  }
  return sig;
}

}  // namespace ToricVSIT

#endif  // TORICVSIT_WALLS_HPP
