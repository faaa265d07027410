// Command-line front end: analyze | verify | sweep | decompose | spectrum.
//
// Every flag can also be set through an environment variable named
// ISOPERIM_<FLAG>, e.g. ISOPERIM_TERNARY_CAP=24.

#include <iostream>

#include <CLI11.hpp>

#include "isoperim/cli.hpp"

namespace cli = isoperim::cli;

int main(int argc, char** argv) {
  CLI::App app{"Exact isoperimetric and bipartiteness constants of group-structured graphs"};
  app.require_subcommand(1);
  cli::Options opt;
  std::size_t subset_cap = 0, ternary_cap = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", opt.spec, "graph-spec document (or a report produced by analyze)")
        ->envname("ISOPERIM_SPEC");
    sub->add_option("--out", opt.out, "write the report here instead of standard output")->envname("ISOPERIM_OUT");
    sub->add_option("--format", opt.format, "json|csv for analyze, text|json for spectrum")
        ->envname("ISOPERIM_FORMAT");
    sub->add_option("--jobs", opt.jobs, "worker threads")->envname("ISOPERIM_JOBS");
    sub->add_option("--subset-cap", subset_cap, "largest n for subset enumeration")->envname("ISOPERIM_SUBSET_CAP");
    sub->add_option("--ternary-cap", ternary_cap, "largest n for pair enumeration")->envname("ISOPERIM_TERNARY_CAP");
    sub->add_option("--seed", opt.seed, "seed for sampled checks")->envname("ISOPERIM_SEED");
    sub->add_flag("--debug-corrupt-adjacency", opt.corrupt_adjacency, "apply a 2-switch to the adjacency first")
        ->envname("ISOPERIM_DEBUG_CORRUPT_ADJACENCY");
  };

  auto* analyze = app.add_subcommand("analyze", "compute constants, spectrum and checks; write a report");
  auto* verify = app.add_subcommand("verify", "run every applicable check and print a margin table");
  auto* sweep = app.add_subcommand("sweep", "verify a parametrised family and write CSV rows");
  auto* decompose = app.add_subcommand("decompose", "print d permutations summing to the adjacency");
  auto* spectrum = app.add_subcommand("spectrum", "print the normalized spectrum");
  for (auto* sub : {analyze, verify, sweep, decompose, spectrum}) add_common(sub);
  for (auto* sub : {analyze, verify, decompose, spectrum}) sub->get_option("--spec")->required();
  sweep->add_option("--family", opt.family, "odd-cycles|cycles|cayley-sum-cyclic|dihedral")
      ->required()
      ->envname("ISOPERIM_FAMILY");
  sweep->add_option("--min", opt.min, "smallest parameter")->envname("ISOPERIM_MIN");
  sweep->add_option("--max", opt.max, "largest parameter")->envname("ISOPERIM_MAX");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cout, std::cerr);
    return code == 0 ? 0 : cli::spec_error;
  }
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--subset-cap")) opt.subset_cap = subset_cap;
    if (sub->count("--ternary-cap")) opt.ternary_cap = ternary_cap;
  }

  if (analyze->parsed()) return cli::cmd_analyze(opt, std::cout, std::cerr);
  if (verify->parsed()) return cli::cmd_verify(opt, std::cout, std::cerr);
  if (sweep->parsed()) return cli::cmd_sweep(opt, std::cout, std::cerr);
  if (decompose->parsed()) return cli::cmd_decompose(opt, std::cout, std::cerr);
  return cli::cmd_spectrum(opt, std::cout, std::cerr);
}
