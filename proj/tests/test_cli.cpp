#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "surfacecodes/cli.hpp"

using namespace surfacecodes;
namespace cli = surfacecodes::cli;

namespace {

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "surfacecodes-tests";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("worker resolution honours the environment override") {
  unsetenv("SURFACECODES_THREADS");
  CHECK(cli::resolve_workers(3) == 3);
  CHECK(cli::resolve_workers(0) == 1);
  setenv("SURFACECODES_THREADS", "7", 1);
  CHECK(cli::resolve_workers(3) == 7);
  setenv("SURFACECODES_THREADS", "bogus", 1);
  CHECK(cli::resolve_workers(3) == 3);
  unsetenv("SURFACECODES_THREADS");
}

TEST_CASE("preset names parse") {
  CHECK(cli::parse_preset("p2") == SurfaceKind::ProjectivePlane);
  CHECK(cli::parse_preset("elliptic-quadric") == SurfaceKind::EllipticQuadric);
  CHECK_THROWS_AS(cli::parse_preset("torus"), std::invalid_argument);
}

TEST_CASE("build then distance through files") {
  auto dir = temp_dir();
  cli::BuildOptions b;
  b.preset = "elliptic-quadric";
  b.q = 8;
  b.m = 5;
  b.out = (dir / "e8m5").string();
  std::ostringstream out, err;
  REQUIRE(cli::cmd_build(b, out, err) == 0);
  CHECK(out.str().find("\"length\": 64") != std::string::npos);
  CHECK(out.str().find("\"dimension\": 36") != std::string::npos);
  CHECK(out.str().find("\"dual_dimension\": 28") != std::string::npos);

  cli::DistanceOptions d;
  d.code_file = (dir / "e8m5.gen").string();
  d.engine = "random";
  d.budget = 20000;
  std::ostringstream dout, derr;
  REQUIRE(cli::cmd_distance(d, dout, derr) == 0);
  CHECK(dout.str().find("\"certainty\":\"upper_bound\"") != std::string::npos);

  // identical flags and seeds give byte-identical output
  std::ostringstream dout2, derr2;
  REQUIRE(cli::cmd_distance(d, dout2, derr2) == 0);
  CHECK(dout.str() == dout2.str());
}

TEST_CASE("build presets cover the degenerate and quadric cases") {
  cli::BuildOptions b;
  b.preset = "p2";
  b.q = 4;
  b.m = 0;
  b.out = "-";
  std::ostringstream out, err;
  REQUIRE(cli::cmd_build(b, out, err) == 0);
  CHECK(out.str().find("\"length\": 16") != std::string::npos);
  CHECK(out.str().find("\"dimension\": 1") != std::string::npos);  // repetition

  cli::BuildOptions h;
  h.preset = "hyperbolic-quadric";
  h.q = 4;
  h.m = 2;
  h.out = "-";
  std::ostringstream hout, herr;
  REQUIRE(cli::cmd_build(h, hout, herr) == 0);
  CHECK(hout.str().find("\"dual_dimension\": 7") != std::string::npos);
}

TEST_CASE("distance rejects a missing engine or file") {
  cli::DistanceOptions d;
  d.code_file = "/nonexistent/code.gen";
  std::ostringstream out, err;
  CHECK(cli::cmd_distance(d, out, err) == 1);
  CHECK(err.str().find("distance:") != std::string::npos);
}

TEST_CASE("bounds command emits the report json") {
  cli::BoundsOptions b;
  b.preset = "elliptic-quadric";
  b.q = 16;
  b.m = 9;
  b.improved = true;
  std::ostringstream out, err;
  REQUIRE(cli::cmd_bounds(b, out, err) == 0);
  CHECK(out.str().find("\"bound\": 48") != std::string::npos);
}

TEST_CASE("reproduce emits the quadric tables and is deterministic") {
  cli::ReproduceOptions r;
  r.table = "q8-quadrics";
  std::ostringstream a, b, err;
  REQUIRE(cli::cmd_reproduce(r, a, err) == 0);
  REQUIRE(cli::cmd_reproduce(r, b, err) == 0);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("5,64,28,=7,>=24,,improved") != std::string::npos);
  CHECK(a.str().find("6,64,15,=8,>=32,,improved(explicit-E)") != std::string::npos);
}

TEST_CASE("reproduce rm matches the closed form") {
  cli::ReproduceOptions r;
  r.table = "rm";
  r.rm_q = 8;
  std::ostringstream out, err;
  REQUIRE(cli::cmd_reproduce(r, out, err) == 0);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);  // header
  int m = 0;
  while (std::getline(lines, line)) {
    ++m;
    int expected = (m <= 8 - 3) ? m + 2 : 8 * (m + 3 - 8);
    CHECK(line.find("=" + std::to_string(expected) + ",") != std::string::npos);
  }
  CHECK(m == 13);  // 2q-3 rows
}

TEST_CASE("reproduce q9-cubic needs a surface and accepts a found one") {
  cli::ReproduceOptions r;
  r.table = "q9-cubic";
  std::ostringstream out, err;
  CHECK(cli::cmd_reproduce(r, out, err) == 1);

  auto dir = temp_dir();
  cli::FindCubicOptions fc;
  fc.q = 9;
  fc.budget = 5000;
  fc.seed = 1;
  fc.out = (dir / "cubic9.surf").string();
  std::ostringstream fout, ferr;
  REQUIRE(cli::cmd_find_cubic(fc, fout, ferr) == 0);
  CHECK(fout.str().find("\"found\": true") != std::string::npos);

  r.surface_file = fc.out;
  std::ostringstream out2, err2;
  REQUIRE(cli::cmd_reproduce(r, out2, err2) == 0);
  CHECK(out2.str().find("2,100,90,>=6") != std::string::npos);
  CHECK(out2.str().find("6,100,36,>=30") != std::string::npos);

  std::ostringstream vout, verr;
  REQUIRE(cli::cmd_validate_surface(fc.out, vout, verr) == 0);
  CHECK(vout.str().find("\"kind\": \"cubic-no-lines\"") != std::string::npos);
  CHECK(vout.str().find("\"passed\": true") != std::string::npos);
}

TEST_CASE("best-known column is read from a reference file") {
  auto dir = temp_dir();
  auto ref = dir / "bestknown.txt";
  {
    std::ofstream f(ref);
    f << "# q n k d\n4 16 12 4\n4 16 7 8\n";
  }
  cli::ReproduceOptions r;
  r.table = "q4-quadrics";
  r.best_known = ref.string();
  std::ostringstream out, err;
  REQUIRE(cli::cmd_reproduce(r, out, err) == 0);
  CHECK(out.str().find("1,16,12,=3,>=4,4,") != std::string::npos);
  CHECK(out.str().find("2,16,7,=4,>=6,8,") != std::string::npos);
}
