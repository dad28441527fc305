#ifndef TORICVSIT_AMPLE_HPP
#define TORICVSIT_AMPLE_HPP

#include <random>
#include <string>
#include <vector>

#include "toricvsit/cones.hpp"
#include "toricvsit/divisor.hpp"
#include "toricvsit/fan.hpp"

namespace ToricVSIT {

/** Raised when the open ample region is empty (no projective embedding). */
class NonProjective : public std::runtime_error {
 public:
  NonProjective(const std::string& what = "") : std::runtime_error(what) {}
};

/** Raised when a concrete divisor fails the ample inequalities. */
class NotAmple : public std::runtime_error {
 public:
  NotAmple(const std::string& what = "") : std::runtime_error(what) {}
};

/** Raised when an operation needs a specific Picard rank (slicing needs 3). */
class DimUnsupported : public std::runtime_error {
 public:
  DimUnsupported(const std::string& what = "") : std::runtime_error(what) {}
};

/** One strict inequality normal.a > 0 over the divisor coefficient slots. */
struct LinearIneq {
  QVec normal;
};

/** The generating ample inequalities L_gen over all coefficient slots: for
 *  every maximal cone sigma and every ray rho' outside it, write u_rho' as a
 *  rational combination of sigma's rays (using the lexicographically first
 *  independent subset, sizes ascending, which is the unique full-cone
 *  solution in the simplicial case) and record a_rho' > sum b_rho a_rho.
 *  Normals are primitive, deduplicated, first occurrence first. */
inline std::vector<LinearIneq> ample_inequalities(const Fan& fan) {
  std::vector<LinearIneq> out;
  auto push_unique = [&](QVec n) {
    n = primitive_integral(n);
    for (const auto& e : out)
      if (e.normal == n) return;
    out.push_back(LinearIneq{std::move(n)});
  };
  for (const auto& cone : fan.max_cones) {
    std::set<int> inside(cone.begin(), cone.end());
    for (int rho = 0; rho < fan.nrays(); ++rho) {
      if (inside.count(rho)) continue;
      int m = static_cast<int>(cone.size());
      bool done = false;
      for (int k = 1; k <= m && !done; ++k) {
        for_each_subset(m, k, [&](const std::vector<int>& pick) {
          QMat rows_m;
          for (int p : pick) rows_m.push_back(fan.rays[cone[p]]);
          if (rank(rows_m) != k) return false;
          auto b = solve_consistent(transpose(rows_m), fan.rays[rho]);
          if (!b) return false;
          QVec normal = zero_vec(fan.nrays());
          normal[rho] = 1;
          for (int j = 0; j < k; ++j) normal[cone[pick[j]]] -= (*b)[j];
          push_unique(std::move(normal));
          done = true;
          return true;
        });
      }
      if (!done) throw InvalidFan("ray outside the span of a maximal cone");
    }
  }
  return out;
}

/** True iff the concrete divisor satisfies every generating inequality
 *  strictly (numerical ampleness on a complete fan). */
inline bool is_ample(const Fan& fan, const DivisorGeneric& d) {
  for (const auto& ineq : ample_inequalities(fan))
    if (dot(ineq.normal, d.a) <= 0) return false;
  return true;
}

/** The ample/nef picture in the reduced coordinates of a Picard basis:
 *  L_red = the generating normals restricted to the free slots (the base-cone
 *  slots are gauged to zero), and the nef cone they cut out, whose facet
 *  normals are the irredundant members of L_red. */
struct AmpleCone {
  PicBasis pic;
  std::vector<QVec> L_red;
  PolyCone nef;
};

inline AmpleCone ample_cone_reduced(const Fan& fan, const PicBasis& pic) {
  AmpleCone ac;
  ac.pic = pic;
  for (const auto& ineq : ample_inequalities(fan)) {
    QVec red;
    for (int rho : pic.free_rays) red.push_back(ineq.normal[rho]);
    if (is_zero_vec(red))
      throw NonProjective("an ample inequality vanishes on Pic");
    red = primitive_integral(red);
    bool seen = false;
    for (const auto& e : ac.L_red)
      if (e == red) { seen = true; break; }
    if (!seen) ac.L_red.push_back(std::move(red));
  }
  ac.nef = make_poly_cone(static_cast<int>(pic.free_rays.size()), ac.L_red);
  return ac;
}

/** A rational interior point of the nef cone (= an ample class): the sum of
 *  its extremal rays.  Throws NonProjective when the interior is empty. */
inline QVec nef_interior_point(const AmpleCone& ac) {
  const auto& rays = ac.nef.rays();
  if (rays.empty()) throw NonProjective("nef cone has no rays");
  QVec s = zero_vec(rays[0].size());
  for (const QVec& r : rays) s = add(s, r);
  for (const QVec& n : ac.L_red)
    if (dot(n, s) <= 0) throw NonProjective("nef cone has empty interior");
  return s;
}

inline bool is_ample_reduced(const AmpleCone& ac, const QVec& reduced) {
  for (const QVec& n : ac.L_red)
    if (dot(n, reduced) <= 0) return false;
  return true;
}

/** Cross-section data for plotting a rank-3 ample cone: the affine functional
 *  f (sum of the extremal rays of the cone spanned by L_red) cut at the level
 *  c of the lexicographically first nef ray, and the chart obtained by
 *  eliminating the last free slot with a nonzero f coefficient. */
struct SliceChart {
  QVec f;          // functional over the free slots
  Rat c;           // slice level
  int elim = 0;    // position (in the free list) eliminated by the chart
  int x = 0, y = 0;  // chart positions (in the free list)
};

inline SliceChart make_chart(const QVec& f, const Rat& c) {
  SliceChart s;
  s.f = f;
  s.c = c;
  s.elim = -1;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0) s.elim = static_cast<int>(i);
  if (s.elim < 0) throw DimUnsupported("slice functional is zero");
  std::vector<int> rest;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (static_cast<int>(i) != s.elim) rest.push_back(static_cast<int>(i));
  s.x = rest[0];
  s.y = rest[1];
  return s;
}

inline SliceChart slice_hyperplane(const AmpleCone& ac) {
  if (ac.pic.free_rays.size() != 3)
    throw DimUnsupported("slicing needs Picard rank 3");
  QVec f = zero_vec(3);
  for (const QVec& n : ac.nef.facet_normals) f = add(f, n);
  const auto& rays = ac.nef.rays();
  if (rays.empty()) throw NonProjective("nef cone has no rays");
  Rat c = dot(f, rays[0]);
  if (c <= 0) throw NonProjective("slice level is not positive");
  return make_chart(f, c);
}

/** Deterministic random ample class: a positive random rational combination
 *  of the nef extremal rays (interior of a full-dimensional nef cone). */
inline QVec ample_sample(const AmpleCone& ac, std::mt19937_64& rng) {
  const auto& rays = ac.nef.rays();
  if (rays.empty()) throw NonProjective("nef cone has no rays");
  std::uniform_int_distribution<int> num(1, 1000), den(1, 8);
  QVec s = zero_vec(rays[0].size());
  for (const QVec& r : rays) s = add(s, scale(r, Rat(num(rng), den(rng))));
  return s;
}

}  // namespace ToricVSIT

#endif  // TORICVSIT_AMPLE_HPP
