#ifndef TORICVSIT_DIVISOR_HPP
#define TORICVSIT_DIVISOR_HPP

#include <string>
#include <vector>

#include "toricvsit/fan.hpp"
#include "toricvsit/linalg.hpp"

namespace ToricVSIT {

/** Raised by picard_basis when a free ray's divisor is not Q-Cartier, i.e.
 *  the chosen base cone cannot induce a Picard basis. */
class ConditionFails : public std::runtime_error {
 public:
  int ray;
  explicit ConditionFails(int rho)
      : std::runtime_error("divisor D_" + std::to_string(rho) +
                           " is not Q-Cartier"),
        ray(rho) {}
};

/** A torus-invariant divisor D = sum a_rho D_rho with rational coefficients,
 *  one per ray. */
struct DivisorGeneric {
  QVec a;
};

/** A vector depending linearly on the divisor coefficients: value(a) = M a.
 *  Column rho carries the contribution of the slot a_rho. */
struct SymbolicVector {
  QMat M;  // nrays x nrays

  QVec value(const QVec& a) const { return mat_vec(M, a); }
};

/** A quadratic form in the divisor coefficients: value(a) = a^T Q a,
 *  with Q symmetric. */
struct SymbolicQuadratic {
  QMat Q;

  Rat value(const QVec& a) const { return dot(a, mat_vec(Q, a)); }
};

/** Divisor coordinates on Pic induced by a base cone: the rays outside the
 *  base cone are free coordinate slots; the base-cone slots are gauged to 0. */
struct PicBasis {
  int base_cone = 0;
  std::vector<int> free_rays;  // ascending
};

/** The natural pairing <chi_D, lambda> = sum a_rho lambda_rho between a
 *  divisor character and a one-parameter subgroup of the ambient torus. */
inline Rat pairing(const DivisorGeneric& d, const QVec& lam) {
  return dot(d.a, lam);
}

/** chi*_D: the metric representative of the divisor character inside
 *  Gamma(G)_Q, i.e. the orthogonal projection of the coefficient vector onto
 *  the relation lattice, symbolically in a. */
inline SymbolicVector chi_star(const Fan& fan) {
  return SymbolicVector{proj_matrix(relation_lattice(fan),
                                    static_cast<std::size_t>(fan.nrays()))};
}

/** Cartier analysis of a concrete divisor: per maximal cone, solve
 *  <m, u_rho> = -a_rho over the cone's rays.  Rational consistency on every
 *  cone gives Q-Cartier (with the witnesses m_sigma); an integral solution on
 *  every cone (Smith-reduction test when the system is not full rank) gives
 *  Cartier. */
struct CartierResult {
  bool q_cartier = false;
  bool cartier = false;
  std::vector<QVec> witnesses;  // one m per maximal cone when q_cartier
};

inline CartierResult cartier_data(const Fan& fan, const DivisorGeneric& d) {
  CartierResult res;
  res.q_cartier = true;
  res.cartier = true;
  for (const auto& cone : fan.max_cones) {
    QMat rows;
    QVec rhs;
    for (int rho : cone) {
      rows.push_back(fan.rays[rho]);
      rhs.push_back(-d.a[rho]);
    }
    auto m = solve_consistent(rows, rhs);
    if (!m) return CartierResult{};
    res.witnesses.push_back(*m);
    if (res.cartier) {
      bool integral_rhs = true;
      for (const Rat& x : rhs)
        if (denominator(x) != 1) integral_rhs = false;
      res.cartier = integral_rhs && integral_solution_exists(rows, rhs);
    }
  }
  return res;
}

inline bool is_cartier(const Fan& fan, const DivisorGeneric& d) {
  return cartier_data(fan, d).cartier;
}

/** Coordinates on Pic from a base cone: every ray outside the cone becomes a
 *  free slot.  Each free ray's divisor must be Q-Cartier (first offender is
 *  reported via ConditionFails); the free count must also match the Picard
 *  rank #rays - dim. */
inline PicBasis picard_basis(const Fan& fan, int sigma0) {
  if (sigma0 < 0 || sigma0 >= static_cast<int>(fan.max_cones.size()))
    throw InvalidFan("base cone index out of range");
  std::set<int> base(fan.max_cones[sigma0].begin(),
                     fan.max_cones[sigma0].end());
  PicBasis pic;
  pic.base_cone = sigma0;
  for (int i = 0; i < fan.nrays(); ++i)
    if (!base.count(i)) pic.free_rays.push_back(i);
  for (int rho : pic.free_rays) {
    DivisorGeneric e{zero_vec(fan.nrays())};
    e.a[rho] = 1;
    if (!cartier_data(fan, e).q_cartier) throw ConditionFails(rho);
  }
  if (static_cast<int>(pic.free_rays.size()) != fan.nrays() - fan.dim)
    throw InvalidFan("base cone does not induce a Picard basis");
  return pic;
}

/** Restrict a full coefficient vector to the free slots after gauging the
 *  base-cone slots to zero by a principal divisor. */
inline QVec reduce_divisor(const Fan& fan, const PicBasis& pic,
                           const QVec& full) {
  QMat rows;
  QVec rhs;
  for (int rho : fan.max_cones[pic.base_cone]) {
    rows.push_back(fan.rays[rho]);
    rhs.push_back(-full[rho]);
  }
  auto m = solve_consistent(rows, rhs);
  if (!m) throw InvalidFan("divisor class has no base-cone gauge");
  QVec out;
  for (int rho : pic.free_rays) {
    Rat shift = dot(*m, fan.rays[rho]);
    out.push_back(full[rho] + shift);
  }
  return out;
}

/** Embed reduced (free-slot) coordinates back as a full coefficient vector
 *  with zeros on the base cone. */
inline DivisorGeneric expand_divisor(const Fan& fan, const PicBasis& pic,
                                     const QVec& reduced) {
  if (reduced.size() != pic.free_rays.size())
    throw DimensionMismatch("reduced divisor arity mismatch");
  DivisorGeneric d{zero_vec(fan.nrays())};
  for (std::size_t i = 0; i < reduced.size(); ++i)
    d.a[pic.free_rays[i]] = reduced[i];
  return d;
}

}  // namespace ToricVSIT

#endif  // TORICVSIT_DIVISOR_HPP
