#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "toricvsit/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact wall-and-chamber analysis of toric GIT quotients"};
  app.require_subcommand(1);

  ToricVSIT::RunConfig cfg;
  if (const char* seed = std::getenv("TORIC_VSIT_SEED"))
    cfg.seed = std::strtoull(seed, nullptr, 10);

  auto add_common = [&](CLI::App* sub, bool needs_fan = true) {
    if (needs_fan)
      sub->add_option("fan", cfg.fan_path, "fan file (JSON)")->required();
    sub->add_option("--base-cone", cfg.base_cone,
                    "maximal-cone index fixing the Picard basis");
    sub->add_option("--format", cfg.format, "text|json|svg|dot");
    return sub;
  };

  CLI::App* ample = add_common(app.add_subcommand(
      "ample", "ample cone, Picard basis, nef facets and rays"));
  ample->add_option("--divisor", cfg.divisor, "reduced coordinates");
  ample->add_option("--divisor-full", cfg.divisor_full, "full coordinates");

  add_common(app.add_subcommand(
      "primitives",
      "primitive collections, state sets, relation lattice"));

  CLI::App* potentials = add_common(app.add_subcommand(
      "potentials", "merged symbolic projection table"));
  potentials->add_option("--divisor", cfg.divisor, "reduced coordinates");
  potentials->add_option("--divisor-full", cfg.divisor_full,
                         "full coordinates");

  CLI::App* walls = add_common(
      app.add_subcommand("walls", "type-one and type-two wall atlas"));
  walls->add_option("--probe", cfg.probe,
                    "sample N ample points and report signatures");

  CLI::App* stratify = add_common(app.add_subcommand(
      "stratify", "Hesselink stratification at a divisor"));
  stratify->add_option("--divisor", cfg.divisor, "reduced coordinates");
  stratify->add_option("--divisor-full", cfg.divisor_full,
                       "full coordinates");

  CLI::App* compare = add_common(app.add_subcommand(
      "compare", "classify the variation between two divisors"));
  compare->add_option("--divisor", cfg.divisor, "reduced coordinates");
  compare->add_option("--divisor-full", cfg.divisor_full,
                      "full coordinates");
  compare->add_option("--divisor2", cfg.divisor2, "reduced coordinates");

  CLI::App* equiv = add_common(app.add_subcommand(
      "equiv", "ample equivalence and stratification adjunction"));
  equiv->add_option("--fan2", cfg.fan2_path, "second fan file")->required();
  equiv->add_option("--psi", cfg.psi, "ray bijection i,j,k,...")->required();
  equiv->add_option("--divisor2", cfg.divisor2,
                    "full coordinates on the second fan");

  CLI::App* plot = add_common(
      app.add_subcommand("plot", "SVG picture of the walls"));
  plot->add_option("--slice", cfg.slice, "affine plane c0,c1,c2=c");
  plot->add_option("--resolution", cfg.resolution,
                   "marching-squares grid (default 512, min 16)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (CLI::App* sub :
       {ample, potentials, walls, stratify, compare, equiv, plot})
    if (sub->parsed()) cfg.subcommand = sub->get_name();
  if (cfg.subcommand.empty()) cfg.subcommand = "primitives";
  if (cfg.subcommand == "plot" && !plot->count("--format"))
    cfg.format = "svg";

  return ToricVSIT::run(cfg, std::cout, std::cerr);
}
