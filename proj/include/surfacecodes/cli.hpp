#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "surfacecodes/picard.hpp"

namespace surfacecodes::cli {

struct BuildOptions {
  std::optional<std::string> surface_file;
  std::optional<std::string> preset;
  uint32_t q = 0;
  int m = 0;
  std::string chart = "tangent:0";  // tangent:<i> | avoid | form:c0,c1,...
  std::string out;                  // output prefix; "-" writes nothing
};

struct DistanceOptions {
  std::string code_file;
  std::string engine = "isd";  // exhaustive | isd | random
  std::optional<int> target;
  uint64_t budget = uint64_t(1) << 26;
  uint64_t seed = 0x5eed;
  int workers = 1;
  bool timing = false;  // wall-clock field breaks byte-identical reruns
};

struct BoundsOptions {
  std::string preset;
  uint32_t q = 0;
  int m = 0;
  bool improved = false;
  std::optional<int> a_max;
  std::optional<std::vector<int>> explicit_e;
};

struct ReproduceOptions {
  std::string table;  // q4-quadrics | q8-quadrics | q16-quadrics | q9-cubic | rm
  std::optional<std::string> surface_file;
  std::optional<std::string> best_known;  // reference file: lines "q n k d"
  std::optional<uint32_t> rm_q;           // rm table only; default emits q=4 and q=8
};

struct FindCubicOptions {
  uint32_t q = 9;
  uint64_t budget = 200000;
  uint64_t seed = 1;
  bool require_chart_plane = true;
  std::string out;  // surface file; "-" writes nothing
};

// Each command prints its result (JSON or CSV) on `out` and diagnostics on
// `err`; nonzero return mirrors the process exit code.
int cmd_build(const BuildOptions&, std::ostream& out, std::ostream& err);
int cmd_distance(const DistanceOptions&, std::ostream& out, std::ostream& err);
int cmd_bounds(const BoundsOptions&, std::ostream& out, std::ostream& err);
int cmd_reproduce(const ReproduceOptions&, std::ostream& out, std::ostream& err);
int cmd_find_cubic(const FindCubicOptions&, std::ostream& out, std::ostream& err);
int cmd_validate_surface(const std::string& surface_file, std::ostream& out,
                         std::ostream& err);

// SURFACECODES_THREADS, when set to a positive integer, overrides the
// requested worker count.
int resolve_workers(int requested);

SurfaceKind parse_preset(const std::string& name);

}  // namespace surfacecodes::cli
