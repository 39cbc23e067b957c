#include "surfacecodes/agbuilder.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

namespace surfacecodes {

std::vector<HomogeneousPoly> monomial_basis(FieldPtr f, int r, int m) {
  if (r < 1 || r > 3) throw std::invalid_argument("1 <= r <= 3");
  if (m < 0) throw std::invalid_argument("degree must be nonnegative");
  std::vector<HomogeneousPoly> out;
  const int n = r + 1;
  std::array<int, 4> e{};
  auto emit = [&] {
    Term t;
    for (int i = 0; i < n; ++i) t.e[i] = static_cast<uint8_t>(e[i]);
    t.coeff = 1;
    out.push_back(HomogeneousPoly(f, static_cast<uint8_t>(n), m, {t}));
  };
  // descending lexicographic exponent tuples of total degree m
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == n - 1) {
      e[var] = left;
      emit();
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[var] = v;
      self(self, var + 1, left - v);
    }
  };
  rec(rec, 0, m);
  return out;
}

std::optional<int64_t> expected_dimension(SurfaceKind kind, uint32_t q, int m) {
  switch (kind) {
    case SurfaceKind::ProjectivePlane: {
      // reduced bivariate monomials x^a y^b, a,b <= q-1, a+b <= m
      int64_t count = 0;
      for (int64_t a = 0; a < q; ++a)
        for (int64_t b = 0; b < q; ++b)
          if (a + b <= m) ++count;
      return count;
    }
    case SurfaceKind::HyperbolicQuadric:
    case SurfaceKind::EllipticQuadric:
      return static_cast<int64_t>(m + 1) * (m + 1);
    case SurfaceKind::CubicWithLines:
    case SurfaceKind::CubicNoLines:
      return (3ll * m * m + 3 * m + 2) / 2;
    case SurfaceKind::Custom:
      return std::nullopt;
  }
  return std::nullopt;
}

FunctionalCode build_functional_code(const EvaluationCodeSpec& spec) {
  if (spec.surface == nullptr) throw std::invalid_argument("no surface given");
  const Surface& s = *spec.surface;
  const Field& f = s.field();
  const uint32_t q = f.order();
  const int m = spec.m;
  if (m < 0) throw std::invalid_argument("degree must be nonnegative");
  switch (s.kind()) {
    case SurfaceKind::HyperbolicQuadric:
    case SurfaceKind::EllipticQuadric:
    case SurfaceKind::CubicWithLines:
    case SurfaceKind::CubicNoLines:
      if (m > static_cast<int>(q) - 2)
        throw std::invalid_argument("m out of range: the code is trivial from m = q-1");
      break;
    case SurfaceKind::ProjectivePlane:
      if (m > 2 * static_cast<int>(q) - 3)
        throw std::invalid_argument("m out of range: need m <= 2q-3");
      break;
    case SurfaceKind::Custom:
      break;
  }

  HomogeneousPoly chart = [&]() -> HomogeneousPoly {
    switch (spec.chart.mode) {
      case ChartChoice::Mode::TangentAtPoint: {
        if (spec.chart.point_index >= s.points().size())
          throw std::invalid_argument("chart point index out of range");
        return tangent_plane_section(s, s.points()[spec.chart.point_index]);
      }
      case ChartChoice::Mode::ExplicitForm: {
        if (!spec.chart.form) throw std::invalid_argument("no chart form given");
        if (spec.chart.form->degree() != 1)
          throw std::invalid_argument("chart form must be linear");
        if (spec.chart.form->nvars() != s.r() + 1)
          throw std::invalid_argument("chart form variable count mismatch");
        return *spec.chart.form;
      }
      case ChartChoice::Mode::AvoidingPlane: {
        auto plane = plane_avoiding_all_points(s);
        if (!plane)
          throw std::runtime_error(
              "no plane avoids every rational point of this surface");
        return *plane;
      }
    }
    throw std::invalid_argument("bad chart mode");
  }();

  std::vector<ProjectivePoint> delta = affine_chart(s, chart);
  if (delta.empty()) throw std::runtime_error("empty evaluation set");

  // dehomogenize: rescale every point so the chart form evaluates to 1
  std::vector<ProjectivePoint> normalized;
  normalized.reserve(delta.size());
  for (const ProjectivePoint& p : delta) {
    uint16_t scale = f.inv(chart.eval(p));
    ProjectivePoint r = p;
    for (int i = 0; i < p.n; ++i) r.c[i] = f.mul(scale, p.c[i]);
    normalized.push_back(r);
  }

  std::vector<HomogeneousPoly> basis = monomial_basis(s.field_ptr(), s.r(), m);
  Matrix eval(s.field_ptr(), basis.size(), delta.size());
  for (size_t pi = 0; pi < normalized.size(); ++pi) {
    // power table per point keeps the fill at ~r multiplications a monomial
    std::array<std::vector<uint16_t>, 4> pw;
    for (int v = 0; v <= s.r(); ++v) {
      pw[v].resize(m + 1);
      pw[v][0] = 1;
      for (int e = 1; e <= m; ++e) pw[v][e] = f.mul(pw[v][e - 1], normalized[pi].c[v]);
    }
    for (size_t bi = 0; bi < basis.size(); ++bi) {
      const Term& t = basis[bi].terms()[0];
      uint16_t val = 1;
      for (int v = 0; v <= s.r(); ++v) val = f.mul(val, pw[v][t.e[v]]);
      eval.set(bi, pi, val);
    }
  }

  LinearCode code = LinearCode::from_generator(eval);
  if (auto want = expected_dimension(s.kind(), q, m)) {
    if (static_cast<int64_t>(code.dimension()) != *want)
      throw std::runtime_error(
          "evaluation rank " + std::to_string(code.dimension()) +
          " disagrees with the closed-form dimension " + std::to_string(*want) +
          " (wrong surface or chart)");
  }

  FunctionalCode fc{std::move(code), std::move(delta), std::move(normalized),
                    std::move(chart), spec.surface, m};
  return fc;
}

namespace {

// P^2 surfaces used by rm_code, one per field, kept alive for the returned
// FunctionalCode's surface pointer.
const Surface& plane_for(const FieldPtr& f) {
  static std::vector<std::unique_ptr<Surface>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& s : cache)
    if (s->field() == *f) return *s;
  cache.push_back(std::make_unique<Surface>(Surface::projective_plane(f)));
  return *cache.back();
}

}  // namespace

FunctionalCode rm_code(FieldPtr f, int m) {
  const Surface& p2 = plane_for(f);
  EvaluationCodeSpec spec;
  spec.surface = &p2;
  spec.m = m;
  spec.chart.mode = ChartChoice::Mode::ExplicitForm;
  std::array<uint16_t, 3> x0{1, 0, 0};
  spec.chart.form = linear_form(f, std::span<const uint16_t>(x0.data(), 3));
  return build_functional_code(spec);
}

std::vector<size_t> delta_positions_on_line(const FunctionalCode& fc,
                                            const ProjectiveLine& line) {
  std::vector<size_t> out;
  for (size_t i = 0; i < fc.delta.size(); ++i)
    if (std::find(line.points.begin(), line.points.end(), fc.delta[i]) !=
        line.points.end())
      out.push_back(i);
  return out;
}

std::vector<uint16_t> line_dual_witness(const FunctionalCode& fc,
                                        const ProjectiveLine& line) {
  const Surface& s = *fc.surface;
  const Field& f = s.field();
  if (s.r() != 3) throw std::invalid_argument("line witnesses live on surfaces in P^3");
  for (const ProjectivePoint& p : line.points)
    if (s.equation() && s.equation()->eval(p) != 0)
      throw std::invalid_argument("line is not contained in the surface");

  std::vector<size_t> pos = delta_positions_on_line(fc, line);
  const size_t need = static_cast<size_t>(fc.m) + 2;
  if (pos.size() < need)
    throw std::invalid_argument("line carries fewer than m+2 chart points");
  pos.resize(need);

  // affine parameters on the chart: normalized points are A + t*B
  const ProjectivePoint& a = fc.normalized[pos[0]];
  const ProjectivePoint& b2 = fc.normalized[pos[1]];
  std::array<uint16_t, 4> dir{};
  int pivot = -1;
  for (int i = 0; i < 4; ++i) {
    dir[i] = f.sub(b2.c[i], a.c[i]);
    if (pivot < 0 && dir[i] != 0) pivot = i;
  }
  if (pivot < 0) throw std::logic_error("degenerate line direction");
  std::vector<uint16_t> t(need);
  for (size_t i = 0; i < need; ++i) {
    const ProjectivePoint& p = fc.normalized[pos[i]];
    t[i] = f.div(f.sub(p.c[pivot], a.c[pivot]), dir[pivot]);
    for (int j = 0; j < 4; ++j)
      if (f.add(a.c[j], f.mul(t[i], dir[j])) != p.c[j])
        throw std::logic_error("chart points of the line are not affinely aligned");
  }

  std::vector<uint16_t> witness(fc.code.length(), 0);
  for (size_t i = 0; i < need; ++i) {
    uint16_t denom = 1;
    for (size_t j = 0; j < need; ++j) {
      if (j == i) continue;
      denom = f.mul(denom, f.sub(t[i], t[j]));
    }
    witness[pos[i]] = f.inv(denom);
  }

  // membership in the dual: orthogonal to every generator row
  const Matrix& g = fc.code.generator();
  for (size_t r = 0; r < g.rows(); ++r) {
    uint16_t acc = 0;
    for (size_t j = 0; j < g.cols(); ++j)
      acc = f.add(acc, f.mul(g.at(r, j), witness[j]));
    if (acc != 0)
      throw std::logic_error("witness failed dual membership");
  }
  return witness;
}

}  // namespace surfacecodes
