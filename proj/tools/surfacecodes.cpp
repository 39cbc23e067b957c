#include <iostream>

#include <CLI11.hpp>

#include "surfacecodes/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"functional codes on algebraic surfaces and their duals"};
  app.require_subcommand(1);

  namespace cli = surfacecodes::cli;

  cli::BuildOptions build;
  auto* cb = app.add_subcommand("build", "build a functional evaluation code");
  cb->add_option("--surface", build.surface_file, "surface description file");
  cb->add_option("--preset", build.preset,
                 "p2 | hyperbolic-quadric | elliptic-quadric");
  cb->add_option("--q", build.q, "field order (presets)");
  cb->add_option("--m", build.m, "divisor multiple: G = m*H")->required();
  cb->add_option("--chart", build.chart,
                 "tangent:<i> | avoid | form:c0,c1,... (default tangent:0)");
  cb->add_option("--out", build.out, "output prefix for .gen/.json files");

  cli::DistanceOptions dist;
  auto* cd = app.add_subcommand("distance", "minimum-distance engines");
  cd->add_option("code", dist.code_file, "generator matrix file")->required();
  cd->add_option("--engine", dist.engine, "exhaustive | isd | random");
  cd->add_option("--target", dist.target, "stop once the upper bound reaches this");
  cd->add_option("--budget", dist.budget, "enumeration budget");
  cd->add_option("--seed", dist.seed, "seed for randomized schedules");
  cd->add_option("--workers", dist.workers, "worker threads (numeric output unchanged)");
  cd->add_flag("--timing", dist.timing, "include wall-clock millis in the JSON");

  cli::BoundsOptions bounds;
  auto* cbo = app.add_subcommand("bounds", "intersection-theoretic dual-distance bounds");
  cbo->add_option("--preset", bounds.preset, "surface kind")->required();
  cbo->add_option("--q", bounds.q, "field order")->required();
  cbo->add_option("--m", bounds.m, "divisor multiple")->required();
  cbo->add_flag("--improved", bounds.improved, "apply the arithmetic improvement");
  cbo->add_option("--a-max", bounds.a_max, "cap for the class family {H..a_max*H}");
  cbo->add_option("--explicit-E", bounds.explicit_e,
                  "explicit E as multiples of H (needs --a-max)");

  cli::ReproduceOptions rep;
  auto* cr = app.add_subcommand("reproduce", "emit the parameter tables as CSV");
  cr->add_option("table", rep.table,
                 "q4-quadrics | q8-quadrics | q16-quadrics | q9-cubic | rm")
      ->required();
  cr->add_option("--surface", rep.surface_file, "cubic surface file (q9-cubic)");
  cr->add_option("--best-known", rep.best_known,
                 "reference distances, lines of \"q n k d\"");
  cr->add_option("--q", rep.rm_q, "restrict the rm table to one field");

  cli::FindCubicOptions fc;
  auto* cf = app.add_subcommand("find-cubic",
                                "search for a smooth cubic with no rational lines");
  cf->add_option("--q", fc.q, "field order (default 9)");
  cf->add_option("--budget", fc.budget, "candidate cap");
  cf->add_option("--seed", fc.seed, "search seed");
  cf->add_flag("!--no-chart-plane", fc.require_chart_plane,
               "drop the requirement of a plane avoiding all rational points");
  cf->add_option("--out", fc.out, "surface file to write");

  std::string validate_file;
  auto* cv = app.add_subcommand("validate-surface", "classify and check a surface file");
  cv->add_option("file", validate_file, "surface description file")->required();

  CLI11_PARSE(app, argc, argv);

  if (cb->parsed()) return cli::cmd_build(build, std::cout, std::cerr);
  if (cd->parsed()) return cli::cmd_distance(dist, std::cout, std::cerr);
  if (cbo->parsed()) return cli::cmd_bounds(bounds, std::cout, std::cerr);
  if (cr->parsed()) return cli::cmd_reproduce(rep, std::cout, std::cerr);
  if (cf->parsed()) return cli::cmd_find_cubic(fc, std::cout, std::cerr);
  if (cv->parsed()) return cli::cmd_validate_surface(validate_file, std::cout, std::cerr);
  return 1;
}
