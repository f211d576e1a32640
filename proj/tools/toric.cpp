// Command-line front end: analyze, verify and family.

#include <iostream>

#include <CLI11.hpp>

#include "toric/cli.hpp"

int main(int argc, char** argv) {
  using namespace toric::cli;
  CLI::App app{"Symbolic power containment analysis for normal toric rings"};
  app.require_subcommand(1);

  bool json = false, pretty = false;
  app.add_flag("--json", json, "Print the report as compact JSON");
  app.add_flag("--pretty", pretty, "Print the report as indented JSON");

  AnalyzeArgs analyze;
  auto* a = app.add_subcommand("analyze", "Compute rays, Hilbert basis, multipliers, class group and F-signature");
  a->add_option("cone", analyze.path, "Cone file (JSON: rank, generators, name)")->required();

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check the containments face by face up to --rmax");
  v->add_option("cone", verify.path, "Cone file")->required();
  v->add_option("--rmax", verify.r_max, "Largest r to check")->capture_default_str();
  v->add_option("--multiplier", verify.multiplier, "Check only this multiplier instead of D and D'");
  v->add_option("--search-degree", verify.search_degree, "Degree bound for the saturation cross-check");
  v->add_option("--seed", verify.seed, "Run the seeded saturation cross-check");
  v->add_option("--samples", verify.samples, "Samples in the cross-check")->capture_default_str();

  FamilyArgs family;
  auto* f = app.add_subcommand("family", "Build a named family cone and its closed-form predictions");
  f->add_option("kind", family.kind, "hypersurface | veronese | segre-veronese")->required();
  f->add_option("--E", family.E, "Degree(s)")->required()->delimiter(',');
  f->add_option("--n", family.n, "Number of variables (hypersurface, veronese)");
  f->add_option("--m", family.m, "Variable counts (segre-veronese)")->delimiter(',');
  f->add_option("--out", family.out, "Write the cone file here and predictions to <out>.predictions.json");
  f->add_flag("--check", family.check, "Compare predictions with computed values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : input_error;
  }

  const Format fmt = pretty ? Format::pretty : json ? Format::json : Format::text;
  analyze.format = verify.format = family.format = fmt;
  if (*a) return run_analyze(analyze, std::cout, std::cerr);
  if (*v) return run_verify(verify, std::cout, std::cerr);
  return run_family(family, std::cout, std::cerr);
}
