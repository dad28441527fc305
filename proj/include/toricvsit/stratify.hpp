#ifndef TORICVSIT_STRATIFY_HPP
#define TORICVSIT_STRATIFY_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "toricvsit/instability.hpp"

namespace ToricVSIT {

/** Raised when a stratum fails one of the structure theorems (unique maximal
 *  member, absorption of intermediate sets): these hold mathematically, so a
 *  violation signals an engine bug rather than bad input. */
class StructureViolation : public std::runtime_error {
 public:
  StructureViolation(const std::string& what = "")
      : std::runtime_error(what) {}
};

/** One Hesselink stratum: the state sets sharing an adapted direction, the
 *  direction itself and its squared length.  The distinguished semistable
 *  stratum (trivial direction, squared length zero, no state-set members)
 *  closes the list of every stratification. */
struct Stratum {
  std::vector<StateSet> members;
  QVec lambda;
  Rat norm2;
  bool semistable = false;
};

/** Strata in descending squared-length order (ties keep the canonical
 *  state-set order of their first members), semistable stratum last.  The
 *  strict partial order is: s > s' iff norm2(s) > norm2(s'). */
struct Stratification {
  std::vector<Stratum> strata;
};

/** Group the state-set family by adapted direction at a concrete ample
 *  divisor.  Every unstable stratum has strictly positive squared length;
 *  the semistable marker is appended below everything. */
inline Stratification stratify(const Fan& fan, const DivisorGeneric& d) {
  if (!is_ample(fan, d)) throw NotAmple("stratify needs an ample divisor");
  auto table = potential_table(fan);
  std::vector<Stratum> blocks;
  std::map<QVec, std::size_t> index;
  for (const StateSet& s : state_sets(fan)) {
    Adapted ad = adapted_from_table(table, s, d.a);
    auto it = index.find(ad.lambda);
    if (it == index.end()) {
      index.emplace(ad.lambda, blocks.size());
      blocks.push_back(Stratum{{s}, ad.lambda, ad.norm2, false});
    } else {
      blocks[it->second].members.push_back(s);
    }
  }
  for (const Stratum& b : blocks)
    if (!(b.norm2 > 0))
      throw StructureViolation("unstable stratum with vanishing direction");
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Stratum& x, const Stratum& y) {
                     return x.norm2 > y.norm2;
                   });
  Stratification out;
  out.strata = std::move(blocks);
  out.strata.push_back(
      Stratum{{}, zero_vec(fan.nrays()), Rat(0), true});
  return out;
}

/** The norm² of each stratum keyed by its member list (stratifications of one
 *  fan enumerate the family identically, so member lists compare directly). */
inline std::map<std::vector<StateSet>, Rat> strata_norms(
    const Stratification& s) {
  std::map<std::vector<StateSet>, Rat> out;
  for (const Stratum& b : s.strata) out[b.members] = b.norm2;
  return out;
}

/** Do two stratifications of the same fan agree as partitions AND as ordered
 *  posets?  The bijection between strata is forced by the member sets, so it
 *  suffices to compare every pairwise norm² comparison. */
inline bool equivalent(const Stratification& s1, const Stratification& s2) {
  auto n1 = strata_norms(s1);
  auto n2 = strata_norms(s2);
  if (n1.size() != n2.size()) return false;
  for (const auto& [k, v] : n1)
    if (n2.find(k) == n2.end()) return false;
  for (const auto& [ka, va] : n1)
    for (const auto& [kb, vb] : n1)
      if ((va > vb) != (n2[ka] > n2[kb])) return false;
  return true;
}

enum class Variation { equivalent, type_one, type_two };

/** Classify a variation: partitions differ -> type one; same partition but a
 *  different order -> type two; otherwise the divisors are equivalent. */
inline Variation classify_variation(const Stratification& s1,
                                    const Stratification& s2) {
  auto n1 = strata_norms(s1);
  auto n2 = strata_norms(s2);
  bool same_partition = n1.size() == n2.size();
  if (same_partition)
    for (const auto& [k, v] : n1)
      if (n2.find(k) == n2.end()) {
        same_partition = false;
        break;
      }
  if (!same_partition) return Variation::type_one;
  for (const auto& [ka, va] : n1)
    for (const auto& [kb, vb] : n1)
      if ((va > vb) != (n2[ka] > n2[kb])) return Variation::type_two;
  return Variation::equivalent;
}

/** The combinatorial shape of one unstable stratum. */
struct StratumStructure {
  StateSet maxset;
  std::vector<StateSet> minimal_sets;
};

/** Verify and extract the structure of an unstable stratum: the union of the
 *  members must itself be the unique maximal member M; the minimal members
 *  A_j absorb everything between them and M (every B with A_j <= B <= M for
 *  some j is a member, and nothing else is). */
inline StratumStructure stratum_structure(const Stratum& s) {
  if (s.semistable)
    throw StructureViolation("the semistable stratum has no maximal set");
  std::set<int> u;
  for (const StateSet& m : s.members) u.insert(m.rays.begin(), m.rays.end());
  StateSet maxset{std::vector<int>(u.begin(), u.end())};
  if (std::find(s.members.begin(), s.members.end(), maxset) ==
      s.members.end())
    throw StructureViolation("member union is not itself a member");
  std::vector<StateSet> minimal;
  for (const StateSet& a : s.members) {
    bool is_min = true;
    for (const StateSet& b : s.members) {
      if (b.rays == a.rays) continue;
      if (std::includes(a.rays.begin(), a.rays.end(), b.rays.begin(),
                        b.rays.end())) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(a);
  }
  // absorption: members == { B : A_j <= B <= M for some j } (every such B is
  // a state set because the family is closed under taking subsets)
  std::set<std::vector<int>> expect;
  std::size_t k = maxset.rays.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
    std::vector<int> b;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t(1) << i)) b.push_back(maxset.rays[i]);
    for (const StateSet& a : minimal) {
      if (std::includes(b.begin(), b.end(), a.rays.begin(), a.rays.end())) {
        expect.insert(b);
        break;
      }
    }
  }
  std::set<std::vector<int>> got;
  for (const StateSet& m : s.members) got.insert(m.rays);
  if (expect != got)
    throw StructureViolation("stratum members violate absorption");
  return StratumStructure{maxset, minimal};
}

/** The unique stratum whose closure is cut out by the coordinates of a
 *  primitive collection, i.e. whose maximal member is the complement of C. */
inline Stratum primitive_collection_stratum(const Fan& fan,
                                            const DivisorGeneric& d,
                                            const PrimitiveCollection& c) {
  Stratification st = stratify(fan, d);
  const Stratum* found = nullptr;
  for (const Stratum& s : st.strata) {
    if (s.semistable) continue;
    StratumStructure ss = stratum_structure(s);
    std::vector<int> comp;
    for (int rho = 0; rho < fan.nrays(); ++rho)
      if (!std::binary_search(ss.maxset.rays.begin(), ss.maxset.rays.end(),
                              rho))
        comp.push_back(rho);
    if (comp == c.rays) {
      if (found)
        throw StructureViolation("primitive-collection stratum not unique");
      found = &s;
    }
  }
  if (!found)
    throw StructureViolation("no stratum closes onto the collection");
  return *found;
}

/** Pull an ample divisor back through a ray bijection between amply
 *  equivalent fans and verify the two stratifications correspond (same
 *  grouping under the induced state-set identification, equal squared
 *  lengths stratum by stratum). */
inline bool adjunction_check(const Fan& fan1, const Fan& fan2,
                             const RayBijection& psi,
                             const DivisorGeneric& d2) {
  if (!check_amply_equivalent(fan1, fan2, psi))
    throw InvalidFan("fans are not amply equivalent along the bijection");
  if (!is_ample(fan2, d2))
    throw NotAmple("adjunction_check needs an ample divisor on fan2");
  DivisorGeneric d1;
  d1.a.resize(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) d1.a[i] = d2.a[psi[i]];
  if (!is_ample(fan1, d1)) return false;
  Stratification s1 = stratify(fan1, d1);
  Stratification s2 = stratify(fan2, d2);
  if (s1.strata.size() != s2.strata.size()) return false;
  std::map<std::set<std::vector<int>>, Rat> by_members;
  for (const Stratum& s : s2.strata) {
    std::set<std::vector<int>> key;
    for (const StateSet& m : s.members) key.insert(m.rays);
    by_members[key] = s.norm2;
  }
  for (const Stratum& s : s1.strata) {
    std::set<std::vector<int>> mapped;
    for (const StateSet& m : s.members) {
      std::vector<int> img;
      for (int rho : m.rays) img.push_back(psi[rho]);
      std::sort(img.begin(), img.end());
      mapped.insert(img);
    }
    auto it = by_members.find(mapped);
    if (it == by_members.end() || it->second != s.norm2) return false;
  }
  return true;
}

/** Poset serialization of a stratification: one node per stratum named by its
 *  member tuple ("e" for the semistable bottom), plus the Hasse cover pairs
 *  (upper index, lower index) of the norm² order. */
struct PosetNode {
  std::string name;
  std::vector<StateSet> members;
  Rat norm2;
  bool semistable = false;
};

struct Poset {
  std::vector<PosetNode> nodes;
  std::vector<std::pair<int, int>> covers;
};

inline std::string stratum_name(const Stratum& s) {
  if (s.semistable) return "e";
  std::string out = "[";
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < s.members[i].rays.size(); ++j) {
      if (j) out += ",";
      out += std::to_string(s.members[i].rays[j]);
    }
    out += "]";
  }
  out += "]";
  return out;
}

inline Poset to_poset(const Stratification& st) {
  Poset p;
  for (const Stratum& s : st.strata)
    p.nodes.push_back(PosetNode{stratum_name(s), s.members, s.norm2,
                                s.semistable});
  std::size_t n = st.strata.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(st.strata[i].norm2 > st.strata[j].norm2)) continue;
      bool covered = true;
      for (std::size_t k = 0; k < n && covered; ++k)
        if (st.strata[i].norm2 > st.strata[k].norm2 &&
            st.strata[k].norm2 > st.strata[j].norm2)
          covered = false;
      if (covered)
        p.covers.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  }
  return p;
}

}  // namespace ToricVSIT

#endif  // TORICVSIT_STRATIFY_HPP
