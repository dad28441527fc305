#ifndef TORICVSIT_CLI_HPP
#define TORICVSIT_CLI_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "toricvsit/render.hpp"

namespace ToricVSIT {

/** Everything one invocation needs; vector-valued flags stay raw strings so
 *  that all validation funnels through run() and its exit-code mapping. */
struct RunConfig {
  std::string subcommand;
  std::string fan_path;
  std::string fan2_path;
  int base_cone = -1;  // -1: first maximal cone that admits a Picard basis
  std::string divisor;
  std::string divisor2;
  std::string divisor_full;
  std::string slice;
  std::string psi;
  std::string format = "text";
  int probe = 0;
  int resolution = 512;
  std::uint64_t seed = 0xA11CEull;
};

inline Fan load_fan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open fan file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_fan(buf.str());
}

inline QVec parse_vector(const std::string& text, const std::string& what) {
  QVec out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
  if (out.empty()) throw ParseError(what + " vector is empty");
  return out;
}

inline std::vector<int> parse_int_vector(const std::string& text,
                                         const std::string& what) {
  std::vector<int> out;
  for (const Rat& r : parse_vector(text, what)) {
    if (denominator(r) != 1)
      throw ParseError(what + " entries must be integers");
    out.push_back(static_cast<int>(numerator(r)));
  }
  return out;
}

namespace textfmt {

/** "2/5*a2 - 1/5*a3" style linear combination over named slots. */
inline std::string term(const Rat& c, const std::string& mono, bool lead) {
  std::string out;
  Rat m = c < 0 ? -c : c;
  if (lead)
    out += c < 0 ? "-" : "";
  else
    out += c < 0 ? " - " : " + ";
  if (m != 1 || mono.empty()) {
    out += rat_str(m);
    if (!mono.empty()) out += "*";
  }
  out += mono;
  return out;
}

inline std::string linear(const QVec& coeffs,
                          const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    out += term(coeffs[i], vars[i], out.empty());
  }
  return out.empty() ? "0" : out;
}

/** Quadratic over the monomials a_i a_j, i <= j lexicographic. */
inline std::string quadratic(const QVec& coeffs,
                             const std::vector<std::string>& vars) {
  std::string out;
  std::size_t t = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i; j < vars.size(); ++j, ++t) {
      if (coeffs[t] == 0) continue;
      std::string mono =
          i == j ? vars[i] + "^2" : vars[i] + "*" + vars[j];
      out += term(coeffs[t], mono, out.empty());
    }
  }
  return out.empty() ? "0" : out;
}

inline std::string rays(const std::vector<int>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "}";
}

inline std::string tuple(const QVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += rat_str(v[i]);
  }
  return out + ")";
}

}  // namespace textfmt

namespace jsonfmt {

inline nlohmann::json vec(const QVec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const Rat& x : v) out.push_back(rat_str(x));
  return out;
}

inline nlohmann::json mat(const QMat& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const QVec& r : m) out.push_back(vec(r));
  return out;
}

inline nlohmann::json state_set_list(const std::vector<StateSet>& l) {
  nlohmann::json out = nlohmann::json::array();
  for (const StateSet& s : l) out.push_back(s.rays);
  return out;
}

}  // namespace jsonfmt

namespace detail {

struct Reduced {
  PicBasis pic;
  AmpleCone ac;
  std::vector<std::string> vars;  // "a<free ray>" per free slot
};

inline Reduced reduced_setup(const Fan& fan, int base_cone) {
  Reduced r{base_cone < 0 ? default_picard_basis(fan)
                          : picard_basis(fan, base_cone),
            AmpleCone{}, {}};
  r.ac = ample_cone_reduced(fan, r.pic);
  for (int fr : r.pic.free_rays) r.vars.push_back("a" + std::to_string(fr));
  return r;
}

/** The divisor in reduced coordinates from whichever flag was given. */
inline QVec reduced_divisor(const Fan& fan, const Reduced& r,
                            const std::string& divisor,
                            const std::string& divisor_full,
                            const std::string& what) {
  if (!divisor.empty() && !divisor_full.empty())
    throw ParseError("give either --" + what + " or --divisor-full, not both");
  if (!divisor.empty()) {
    QVec v = parse_vector(divisor, what);
    if (v.size() != r.pic.free_rays.size())
      throw ParseError(what + " needs " +
                       std::to_string(r.pic.free_rays.size()) +
                       " reduced coordinates");
    return v;
  }
  if (!divisor_full.empty()) {
    QVec v = parse_vector(divisor_full, "divisor-full");
    if (v.size() != static_cast<std::size_t>(fan.nrays()))
      throw ParseError("divisor-full needs " + std::to_string(fan.nrays()) +
                       " coordinates");
    return reduce_divisor(fan, r.pic, v);
  }
  throw ParseError("missing --" + what);
}

inline std::string sign_string(const std::vector<int>& sig) {
  std::string out;
  for (int s : sig) out += s > 0 ? '+' : (s < 0 ? '-' : '0');
  return out;
}

inline nlohmann::json stratum_json(const Stratum& s) {
  nlohmann::json out;
  out["members"] = jsonfmt::state_set_list(s.members);
  out["lambda"] = jsonfmt::vec(s.lambda);
  out["norm2"] = rat_str(s.norm2);
  out["semistable"] = s.semistable;
  return out;
}

}  // namespace detail

inline int cmd_ample(const RunConfig& cfg, std::ostream& out) {
  Fan fan = load_fan(cfg.fan_path);
  auto r = detail::reduced_setup(fan, cfg.base_cone);
  std::vector<std::string> fullvars;
  for (int i = 0; i < fan.nrays(); ++i)
    fullvars.push_back("a" + std::to_string(i));
  std::optional<QVec> d;
  if (!cfg.divisor.empty() || !cfg.divisor_full.empty())
    d = detail::reduced_divisor(fan, r, cfg.divisor, cfg.divisor_full,
                                "divisor");
  auto gen = ample_inequalities(fan);
  if (cfg.format == "json") {
    nlohmann::json j;
    j["PicBasis"] = {{"base_cone", r.pic.base_cone},
                     {"free_rays", r.pic.free_rays}};
    nlohmann::json gj = nlohmann::json::array();
    for (const auto& ineq : gen) gj.push_back(jsonfmt::vec(ineq.normal));
    j["ample_inequalities"] = gj;
    j["reduced_inequalities"] = jsonfmt::mat(r.ac.L_red);
    j["PolyCone"] = {{"facet_normals", jsonfmt::mat(r.ac.nef.facet_normals)},
                     {"rays", jsonfmt::mat(r.ac.nef.rays())}};
    if (d) j["is_ample"] = is_ample_reduced(r.ac, *d);
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "base cone: " << r.pic.base_cone << "\n";
  out << "free rays:";
  for (int fr : r.pic.free_rays) out << " " << fr;
  out << "\n";
  out << "generic ample inequalities (" << gen.size() << "):\n";
  for (const auto& ineq : gen)
    out << "  " << textfmt::linear(ineq.normal, fullvars) << " > 0\n";
  out << "reduced ample inequalities (" << r.ac.L_red.size() << "):\n";
  for (const QVec& n : r.ac.L_red)
    out << "  " << textfmt::linear(n, r.vars) << " > 0\n";
  out << "facets:\n";
  for (const QVec& n : r.ac.nef.facet_normals)
    out << "  " << textfmt::linear(n, r.vars) << " >= 0\n";
  out << "nef extremal rays:\n";
  for (const QVec& v : r.ac.nef.rays())
    out << "  " << textfmt::tuple(v) << "\n";
  if (d)
    out << "divisor " << textfmt::tuple(*d) << " ample: "
        << (is_ample_reduced(r.ac, *d) ? "yes" : "no") << "\n";
  return 0;
}

inline int cmd_primitives(const RunConfig& cfg, std::ostream& out) {
  Fan fan = load_fan(cfg.fan_path);
  auto pcs = primitive_collections(fan);
  auto ls = state_sets(fan);
  auto gamma = relation_lattice(fan);
  if (cfg.format == "json") {
    nlohmann::json j;
    nlohmann::json pj = nlohmann::json::array();
    for (const auto& c : pcs) pj.push_back(c.rays);
    j["primitive_collections"] = pj;
    j["state_sets"] = jsonfmt::state_set_list(ls);
    j["relation_lattice"] = jsonfmt::mat(gamma.rows);
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "primitive collections (" << pcs.size() << "):\n";
  for (const auto& c : pcs) out << "  " << textfmt::rays(c.rays) << "\n";
  out << "state sets (" << ls.size() << "):\n";
  for (const auto& s : ls) out << "  " << textfmt::rays(s.rays) << "\n";
  out << "relation lattice basis (" << gamma.rows.size() << "):\n";
  for (const QVec& w : gamma.rows) out << "  " << textfmt::tuple(w) << "\n";
  return 0;
}

inline int cmd_potentials(const RunConfig& cfg, std::ostream& out) {
  Fan fan = load_fan(cfg.fan_path);
  auto r = detail::reduced_setup(fan, cfg.base_cone);
  auto table = potential_table(fan);
  std::optional<QVec> d;
  if (!cfg.divisor.empty() || !cfg.divisor_full.empty())
    d = detail::reduced_divisor(fan, r, cfg.divisor, cfg.divisor_full,
                                "divisor");
  // symbolic matrices restricted to the free columns: the reduced gauge sets
  // every base-cone coordinate to zero, so only these columns contribute
  auto restrict_cols = [&](const QMat& m) {
    QMat out_m;
    for (const QVec& row : m) {
      QVec rr;
      for (int fr : r.pic.free_rays) rr.push_back(row[fr]);
      out_m.push_back(rr);
    }
    return out_m;
  };
  if (cfg.format == "json") {
    nlohmann::json j;
    j["free_rays"] = r.pic.free_rays;
    nlohmann::json ej = nlohmann::json::array();
    for (const auto& e : table) {
      nlohmann::json one;
      one["v"] = jsonfmt::mat(restrict_cols(e.v.M));
      one["l"] = jsonfmt::state_set_list(e.l);
      one["norm2"] = jsonfmt::vec(
          quad_coefficients(e.norm2.Q, r.pic.free_rays));
      if (d) {
        DivisorGeneric full = expand_divisor(fan, r.pic, *d);
        one["value"] = jsonfmt::vec(e.v.value(full.a));
        one["norm2_value"] = rat_str(e.norm2.value(full.a));
      }
      ej.push_back(one);
    }
    j["entries"] = ej;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "potential table (" << table.size() << " entries):\n";
  int idx = 0;
  for (const auto& e : table) {
    ++idx;
    out << "entry " << idx << ":\n  members:";
    for (const auto& z : e.l) out << " " << textfmt::rays(z.rays);
    out << "\n  vector: (";
    QMat m = restrict_cols(e.v.M);
    for (std::size_t row = 0; row < m.size(); ++row) {
      if (row) out << ", ";
      out << textfmt::linear(m[row], r.vars);
    }
    out << ")\n  norm2: "
        << textfmt::quadratic(quad_coefficients(e.norm2.Q, r.pic.free_rays),
                              r.vars)
        << "\n";
    if (d) {
      DivisorGeneric full = expand_divisor(fan, r.pic, *d);
      out << "  value: " << textfmt::tuple(e.v.value(full.a)) << "\n";
      out << "  norm2 value: " << rat_str(e.norm2.value(full.a)) << "\n";
    }
  }
  return 0;
}

inline int cmd_walls(const RunConfig& cfg, std::ostream& out) {
  Fan fan = load_fan(cfg.fan_path);
  auto r = detail::reduced_setup(fan, cfg.base_cone);
  WallAtlas atlas = make_wall_atlas(fan, r.ac);
  std::mt19937_64 rng(cfg.seed);
  std::map<std::string, int> probe_counts;
  if (cfg.probe > 0) {
    for (int i = 0; i < cfg.probe; ++i) {
      QVec p = ample_sample(r.ac, rng);
      ++probe_counts[detail::sign_string(chamber_signature(atlas, r.ac, p))];
    }
  }
  if (cfg.format == "json") {
    nlohmann::json j;
    auto wall_json = [&](const Wall& w) {
      nlohmann::json one;
      one["kind"] = w.kind;
      one["poly"] = jsonfmt::vec(w.poly);
      one["raw"] = jsonfmt::vec(w.raw);
      nlohmann::json wit = nlohmann::json::array();
      if (w.kind == 1) {
        for (const auto& [z, rho] : w.one_witnesses)
          wit.push_back({{"Z", z.rays}, {"rho", rho}});
      } else {
        for (const auto& [l1, l2] : w.two_witnesses)
          wit.push_back({{"l1", jsonfmt::state_set_list(l1)},
                         {"l2", jsonfmt::state_set_list(l2)}});
      }
      one["witnesses"] = wit;
      return one;
    };
    nlohmann::json t1 = nlohmann::json::array();
    for (const Wall& w : atlas.type_one) t1.push_back(wall_json(w));
    nlohmann::json t2 = nlohmann::json::array();
    for (const Wall& w : atlas.type_two) t2.push_back(wall_json(w));
    j["type_one"] = t1;
    j["type_two"] = t2;
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& s : atlas.slots)
      slots.push_back({{"degree", s.degree}, {"poly", jsonfmt::vec(s.poly)}});
    j["signature_slots"] = slots;
    if (cfg.probe > 0) {
      j["probe"] = {{"samples", cfg.probe},
                    {"signatures", probe_counts}};
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "type-one walls (" << atlas.type_one.size() << "):\n";
  for (const Wall& w : atlas.type_one) {
    out << "  " << textfmt::linear(w.poly, r.vars) << " = 0\n";
    out << "    raw: " << textfmt::linear(w.raw, r.vars) << "\n";
    out << "    witnesses:";
    for (const auto& [z, rho] : w.one_witnesses)
      out << " (Z=" << textfmt::rays(z.rays) << ", rho=" << rho << ")";
    out << "\n";
  }
  out << "type-two walls (" << atlas.type_two.size() << "):\n";
  for (const Wall& w : atlas.type_two) {
    out << "  " << textfmt::quadratic(w.poly, r.vars) << " = 0\n";
    out << "    raw: " << textfmt::quadratic(w.raw, r.vars) << "\n";
    for (const auto& [l1, l2] : w.two_witnesses) {
      out << "    pair: [";
      for (std::size_t i = 0; i < l1.size(); ++i)
        out << (i ? " " : "") << textfmt::rays(l1[i].rays);
      out << "] vs [";
      for (std::size_t i = 0; i < l2.size(); ++i)
        out << (i ? " " : "") << textfmt::rays(l2[i].rays);
      out << "]\n";
    }
  }
  out << "signature slots: " << atlas.slots.size() << "\n";
  if (cfg.probe > 0) {
    out << "probe: " << cfg.probe << " samples, " << probe_counts.size()
        << " distinct signatures\n";
    for (const auto& [sig, count] : probe_counts)
      out << "  " << sig << ": " << count << "\n";
  }
  return 0;
}

inline int cmd_stratify(const RunConfig& cfg, std::ostream& out) {
  Fan fan = load_fan(cfg.fan_path);
  auto r = detail::reduced_setup(fan, cfg.base_cone);
  QVec red = detail::reduced_divisor(fan, r, cfg.divisor, cfg.divisor_full,
                                     "divisor");
  DivisorGeneric d = expand_divisor(fan, r.pic, red);
  Stratification st = stratify(fan, d);
  Poset poset = to_poset(st);
  if (cfg.format == "dot") {
    out << poset_dot(poset);
    return 0;
  }
  if (cfg.format == "json") {
    nlohmann::json j;
    nlohmann::json sj = nlohmann::json::array();
    for (const Stratum& s : st.strata) sj.push_back(detail::stratum_json(s));
    j["strata"] = sj;
    nlohmann::json cj = nlohmann::json::array();
    for (const auto& [hi, lo] : poset.covers) cj.push_back({hi, lo});
    j["covers"] = cj;
    out << j.dump(2) << "\n";
    return 0;
  }
  int idx = 0;
  for (const Stratum& s : st.strata) {
    ++idx;
    if (s.semistable) {
      out << "stratum " << idx << ": semistable (e)\n";
      continue;
    }
    out << "stratum " << idx << ": norm2 " << rat_str(s.norm2) << "\n";
    out << "  lambda: " << textfmt::tuple(s.lambda) << "\n";
    out << "  members:";
    for (const auto& m : s.members) out << " " << textfmt::rays(m.rays);
    out << "\n";
  }
  return 0;
}

inline int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  Fan fan = load_fan(cfg.fan_path);
  auto r = detail::reduced_setup(fan, cfg.base_cone);
  QVec red1 = detail::reduced_divisor(fan, r, cfg.divisor, cfg.divisor_full,
                                      "divisor");
  if (cfg.divisor2.empty()) throw ParseError("missing --divisor2");
  QVec red2 = parse_vector(cfg.divisor2, "divisor2");
  if (red2.size() != r.pic.free_rays.size())
    throw ParseError("divisor2 needs " +
                     std::to_string(r.pic.free_rays.size()) +
                     " reduced coordinates");
  Stratification s1 = stratify(fan, expand_divisor(fan, r.pic, red1));
  Stratification s2 = stratify(fan, expand_divisor(fan, r.pic, red2));
  Variation v = classify_variation(s1, s2);
  std::string name = v == Variation::equivalent
                         ? "equivalent"
                         : (v == Variation::type_one ? "type_one"
                                                     : "type_two");
  if (cfg.format == "json") {
    nlohmann::json j;
    j["classification"] = name;
    out << j.dump(2) << "\n";
  } else {
    out << name << "\n";
  }
  return 0;
}

inline int cmd_equiv(const RunConfig& cfg, std::ostream& out) {
  Fan fan = load_fan(cfg.fan_path);
  if (cfg.fan2_path.empty()) throw ParseError("missing --fan2");
  Fan fan2 = load_fan(cfg.fan2_path);
  if (cfg.psi.empty()) throw ParseError("missing --psi");
  RayBijection psi = parse_int_vector(cfg.psi, "psi");
  bool ample_eq = check_amply_equivalent(fan, fan2, psi);
  std::optional<bool> adjunction;
  if (!cfg.divisor2.empty()) {
    QVec full2 = parse_vector(cfg.divisor2, "divisor2");
    if (full2.size() != static_cast<std::size_t>(fan2.nrays()))
      throw ParseError("divisor2 needs " + std::to_string(fan2.nrays()) +
                       " full coordinates on the second fan");
    adjunction = adjunction_check(fan, fan2, psi, DivisorGeneric{full2});
  }
  if (cfg.format == "json") {
    nlohmann::json j;
    j["amply_equivalent"] = ample_eq;
    if (adjunction) j["adjunction"] = *adjunction;
    out << j.dump(2) << "\n";
  } else {
    out << "amply equivalent: " << (ample_eq ? "yes" : "no") << "\n";
    if (adjunction)
      out << "adjunction holds: " << (*adjunction ? "yes" : "no") << "\n";
  }
  return 0;
}

inline int cmd_plot(const RunConfig& cfg, std::ostream& out) {
  if (cfg.format != "svg") throw ParseError("plot emits svg only");
  Fan fan = load_fan(cfg.fan_path);
  auto r = detail::reduced_setup(fan, cfg.base_cone);
  WallAtlas atlas = make_wall_atlas(fan, r.ac);
  PlotScene scene;
  if (r.pic.free_rays.size() == 2) {
    scene = scene_plane(r.ac, atlas);
  } else if (r.pic.free_rays.size() == 3) {
    SliceChart chart;
    if (!cfg.slice.empty()) {
      auto eq = cfg.slice.find('=');
      if (eq == std::string::npos)
        throw ParseError("slice syntax: c0,c1,c2=c");
      QVec f = parse_vector(cfg.slice.substr(0, eq), "slice");
      if (f.size() != 3) throw ParseError("slice needs 3 coefficients");
      Rat c = parse_rat(cfg.slice.substr(eq + 1));
      if (c <= 0) throw ParseError("slice level must be positive");
      chart = make_chart(f, c);
    } else {
      chart = slice_hyperplane(r.ac);
    }
    scene = scene_slice(r.ac, atlas, chart);
  } else {
    throw DimUnsupported("plotting supports Picard rank 2 or 3");
  }
  out << render_scene(scene, cfg.resolution);
  return 0;
}

/** Dispatch one invocation; exit code 0 = success, 1 = domain error,
 *  2 = parse/usage error. */
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.resolution < 16) throw ParseError("resolution must be >= 16");
    if (cfg.format != "text" && cfg.format != "json" && cfg.format != "svg" &&
        cfg.format != "dot")
      throw ParseError("unknown format: " + cfg.format);
    if (cfg.subcommand == "ample") return cmd_ample(cfg, out);
    if (cfg.subcommand == "primitives") return cmd_primitives(cfg, out);
    if (cfg.subcommand == "potentials") return cmd_potentials(cfg, out);
    if (cfg.subcommand == "walls") return cmd_walls(cfg, out);
    if (cfg.subcommand == "stratify") return cmd_stratify(cfg, out);
    if (cfg.subcommand == "compare") return cmd_compare(cfg, out);
    if (cfg.subcommand == "equiv") return cmd_equiv(cfg, out);
    if (cfg.subcommand == "plot") return cmd_plot(cfg, out);
    throw ParseError("unknown subcommand: " + cfg.subcommand);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConditionFails& e) {
    err << "error: base cone condition fails at ray " << e.ray << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ToricVSIT

#endif  // TORICVSIT_CLI_HPP
