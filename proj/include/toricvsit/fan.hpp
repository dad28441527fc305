#ifndef TORICVSIT_FAN_HPP
#define TORICVSIT_FAN_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "toricvsit/cones.hpp"
#include "toricvsit/linalg.hpp"

namespace ToricVSIT {

/** Raised when fan data is structurally unusable (zero ray, duplicate ray,
 *  cone index out of range, ...). */
class InvalidFan : public std::runtime_error {
 public:
  InvalidFan(const std::string& what = "") : std::runtime_error(what) {}
};

/** An inclusion-minimal set of rays not contained in any single cone. */
struct PrimitiveCollection {
  std::vector<int> rays;  // sorted ascending
  bool operator==(const PrimitiveCollection&) const = default;
  auto operator<=>(const PrimitiveCollection&) const = default;
};

/** A support pattern S inside the irrelevant locus (member of the family L). */
struct StateSet {
  std::vector<int> rays;  // sorted ascending
  bool operator==(const StateSet&) const = default;
  auto operator<=>(const StateSet&) const = default;
};

/** Ray relabeling between two fans: psi[i] = matching ray index in the
 *  second fan. */
using RayBijection = std::vector<int>;

/** A fan given by its ray generators and maximal cones.  Rays are stored
 *  primitive (input vectors are divided by their content); maximal cones are
 *  sorted index lists. */
class Fan {
 public:
  int dim = 0;
  std::vector<QVec> rays;
  std::vector<std::vector<int>> max_cones;

  Fan(std::vector<QVec> ray_list, std::vector<std::vector<int>> cones) {
    if (ray_list.empty()) throw InvalidFan("fan needs at least one ray");
    dim = static_cast<int>(ray_list[0].size());
    if (dim == 0) throw InvalidFan("rays must have positive dimension");
    for (QVec& u : ray_list) {
      if (static_cast<int>(u.size()) != dim)
        throw InvalidFan("rays of mixed dimension");
      for (const Rat& x : u)
        if (denominator(x) != 1) throw InvalidFan("rays must be integral");
      QVec p = primitive_integral(u);
      if (is_zero_vec(p)) throw InvalidFan("zero vector is not a ray");
      u = std::move(p);
    }
    for (std::size_t i = 0; i < ray_list.size(); ++i)
      for (std::size_t j = i + 1; j < ray_list.size(); ++j)
        if (ray_list[i] == ray_list[j])
          throw InvalidFan("duplicate ray after reduction");
    if (cones.empty()) throw InvalidFan("fan needs at least one maximal cone");
    int nrays = static_cast<int>(ray_list.size());
    for (auto& c : cones) {
      for (int idx : c)
        if (idx < 0 || idx >= nrays) throw InvalidFan("cone index out of range");
      std::sort(c.begin(), c.end());
      if (std::adjacent_find(c.begin(), c.end()) != c.end())
        throw InvalidFan("repeated ray index inside a cone");
      if (c.empty()) throw InvalidFan("empty maximal cone");
    }
    for (std::size_t i = 0; i < cones.size(); ++i)
      for (std::size_t j = i + 1; j < cones.size(); ++j)
        if (cones[i] == cones[j]) throw InvalidFan("duplicate maximal cone");
    rays = std::move(ray_list);
    max_cones = std::move(cones);
  }

  int nrays() const { return static_cast<int>(rays.size()); }

  std::vector<QVec> cone_rays(int cone_index) const {
    std::vector<QVec> out;
    for (int i : max_cones.at(cone_index)) out.push_back(rays[i]);
    return out;
  }
};

/** Parse the fan file format: {"rays": [[int,...],...],
 *  "max_cones": [[int,...],...]}.  Syntax problems raise ParseError;
 *  structural problems raise InvalidFan. */
inline Fan parse_fan(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("fan file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rays") || !j.contains("max_cones"))
    throw ParseError("fan file must be an object with rays and max_cones");
  std::vector<QVec> rays;
  std::vector<std::vector<int>> cones;
  try {
    for (const auto& row : j.at("rays")) {
      QVec u;
      for (const auto& x : row) u.push_back(Rat(x.get<long long>()));
      rays.push_back(std::move(u));
    }
    for (const auto& row : j.at("max_cones")) {
      std::vector<int> c;
      for (const auto& x : row) c.push_back(x.get<int>());
      cones.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("fan file: ") + e.what());
  }
  return Fan(std::move(rays), std::move(cones));
}

/** True iff every maximal cone has exactly dim rays. */
inline bool is_simplicial(const Fan& fan) {
  for (const auto& c : fan.max_cones)
    if (static_cast<int>(c.size()) != fan.dim) return false;
  return true;
}

/** Completeness check for a pure full-dimensional fan: every facet of every
 *  maximal cone must be shared with exactly one neighbor, approached from the
 *  opposite side.  (Facet normals are obtained by dualizing each cone.) */
inline bool is_complete(const Fan& fan) {
  // key: (unsigned canonical normal, tight ray set) -> inward orientations
  std::map<std::pair<QVec, std::vector<int>>, std::vector<int>> shared;
  for (const auto& cone : fan.max_cones) {
    std::vector<QVec> gens;
    for (int i : cone) gens.push_back(fan.rays[i]);
    QMat gm = gens;
    if (rank(gm) != fan.dim) return false;  // not full-dimensional
    for (const QVec& nrm : dd_rays(gens, fan.dim)) {
      std::vector<int> tight;
      for (int i : cone)
        if (dot(nrm, fan.rays[i]) == 0) tight.push_back(i);
      QVec canon = lin_canonical(nrm);
      int sign = (canon == primitive_integral(nrm)) ? 1 : -1;
      shared[{canon, tight}].push_back(sign);
    }
  }
  for (const auto& [key, signs] : shared) {
    if (signs.size() != 2) return false;
    if (signs[0] + signs[1] != 0) return false;
  }
  return true;
}

/** All primitive collections, enumerated size-ascending and lexicographically
 *  within one size (Batyrev's minimal non-faces). */
inline std::vector<PrimitiveCollection> primitive_collections(const Fan& fan) {
  int n = fan.nrays();
  std::vector<std::set<int>> cone_sets;
  for (const auto& c : fan.max_cones) cone_sets.emplace_back(c.begin(), c.end());
  auto in_some_cone = [&](const std::vector<int>& sub) {
    for (const auto& cs : cone_sets) {
      bool all = true;
      for (int i : sub)
        if (!cs.count(i)) { all = false; break; }
      if (all) return true;
    }
    return false;
  };
  std::vector<PrimitiveCollection> pcs;
  for (int k = 1; k <= n; ++k) {
    for_each_subset(n, k, [&](const std::vector<int>& sub) {
      if (in_some_cone(sub)) return false;
      for (const auto& pc : pcs) {
        bool contained = std::includes(sub.begin(), sub.end(),
                                       pc.rays.begin(), pc.rays.end());
        if (contained) return false;
      }
      pcs.push_back(PrimitiveCollection{sub});
      return false;
    });
  }
  return pcs;
}

/** The family L of unstable support patterns: subsets disjoint from some
 *  primitive collection.  Canonical order: primitive collections sorted
 *  lexicographically; for each, the subsets of its complement enumerated in
 *  binary-counter order (bit i toggles the i-th smallest complement member);
 *  first occurrence wins. */
inline std::vector<StateSet> state_sets(const Fan& fan) {
  auto pcs = primitive_collections(fan);
  std::vector<std::vector<int>> sorted_pcs;
  for (const auto& pc : pcs) sorted_pcs.push_back(pc.rays);
  std::sort(sorted_pcs.begin(), sorted_pcs.end());
  std::set<std::vector<int>> seen;
  std::vector<StateSet> out;
  int n = fan.nrays();
  for (const auto& C : sorted_pcs) {
    std::vector<int> compl_;
    std::set<int> cset(C.begin(), C.end());
    for (int i = 0; i < n; ++i)
      if (!cset.count(i)) compl_.push_back(i);
    std::size_t k = compl_.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
      std::vector<int> S;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (std::size_t(1) << b)) S.push_back(compl_[b]);
      if (seen.insert(S).second) out.push_back(StateSet{S});
    }
  }
  return out;
}

/** The relation lattice Gamma(G)_Q: all rational vectors v with
 *  sum_rho v_rho u_rho = 0, i.e. the kernel of the ray matrix. */
inline SubspaceBasis relation_lattice(const Fan& fan) {
  QMat u(fan.dim, QVec(fan.nrays(), Rat(0)));
  for (int r = 0; r < fan.nrays(); ++r)
    for (int i = 0; i < fan.dim; ++i) u[i][r] = fan.rays[r][i];
  return kernel_basis(u);
}

/** W_Z: the relations vanishing on every ray of Z. */
inline SubspaceBasis w_subspace(const Fan& fan, const std::vector<int>& z) {
  QMat u(fan.dim, QVec(fan.nrays(), Rat(0)));
  for (int r = 0; r < fan.nrays(); ++r)
    for (int i = 0; i < fan.dim; ++i) u[i][r] = fan.rays[r][i];
  for (int rho : z) {
    QVec e = zero_vec(fan.nrays());
    e[rho] = 1;
    u.push_back(std::move(e));
  }
  return kernel_basis(u);
}

/** Ample equivalence test (Def: the relabeling preserves both the primitive
 *  collections and the linear relations among ray generators).  The ray
 *  counts must agree and psi must be a bijection; the fans' ambient
 *  dimensions may differ formally but equal relation spaces force equality. */
inline bool check_amply_equivalent(const Fan& fan1, const Fan& fan2,
                                   const RayBijection& psi) {
  int n = fan1.nrays();
  if (fan2.nrays() != n)
    throw DimensionMismatch("fans have different ray counts");
  if (static_cast<int>(psi.size()) != n)
    throw DimensionMismatch("psi arity does not match the ray count");
  std::vector<bool> hit(n, false);
  for (int img : psi) {
    if (img < 0 || img >= n || hit[img])
      throw DimensionMismatch("psi is not a bijection on ray indices");
    hit[img] = true;
  }
  std::set<std::vector<int>> pc2;
  for (const auto& pc : primitive_collections(fan2)) pc2.insert(pc.rays);
  std::set<std::vector<int>> pc1_img;
  for (const auto& pc : primitive_collections(fan1)) {
    std::vector<int> img;
    for (int i : pc.rays) img.push_back(psi[i]);
    std::sort(img.begin(), img.end());
    pc1_img.insert(img);
  }
  if (pc1_img != pc2) return false;
  SubspaceBasis g1 = relation_lattice(fan1);
  SubspaceBasis g2 = relation_lattice(fan2);
  QMat pulled;
  for (const QVec& w : g2.rows) {
    QVec v(n);
    for (int i = 0; i < n; ++i) v[i] = w[psi[i]];
    pulled.push_back(std::move(v));
  }
  return subspace_basis(n, pulled) == g1;
}

}  // namespace ToricVSIT

#endif  // TORICVSIT_FAN_HPP
