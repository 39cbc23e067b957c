#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surfacecodes/gf.hpp"

namespace surfacecodes {

// Point of P^r(F_q), r <= 3, in canonical form: first nonzero coordinate is 1.
struct ProjectivePoint {
  std::array<uint16_t, 4> c{};
  uint8_t n = 0;  // number of coordinates, r+1

  bool operator==(const ProjectivePoint& o) const { return n == o.n && c == o.c; }
};

ProjectivePoint canonical_point(const Field& f, std::array<uint16_t, 4> coords,
                                uint8_t n);

// Index of a canonical point in the deterministic enumeration order: grouped
// by the position of the leading 1, then lexicographic in the tail digits.
size_t point_index(const Field& f, const ProjectivePoint& p);

// All (q^(r+1)-1)/(q-1) canonical points of P^r(F_q), in index order.
std::vector<ProjectivePoint> enumerate_points(const Field& f, int r);

// Homogeneous polynomial in n <= 4 variables: sparse, sorted, deduplicated
// terms, all of total degree d, coefficients nonzero.
struct Term {
  std::array<uint8_t, 4> e{};
  uint16_t coeff = 0;
};

class HomogeneousPoly {
 public:
  HomogeneousPoly(FieldPtr f, uint8_t nvars, int degree, std::vector<Term> terms);

  int degree() const noexcept { return degree_; }
  uint8_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Field& field() const noexcept { return *f_; }
  FieldPtr field_ptr() const noexcept { return f_; }
  bool zero() const noexcept { return terms_.empty(); }

  uint16_t eval(const ProjectivePoint& p) const;
  uint16_t eval(std::span<const uint16_t> coords) const;
  HomogeneousPoly derivative(uint8_t var) const;
  std::string to_string() const;

 private:
  FieldPtr f_;
  uint8_t nvars_;
  int degree_;
  std::vector<Term> terms_;
};

HomogeneousPoly linear_form(FieldPtr f, std::span<const uint16_t> coeffs);

// Rational line of P^3(F_q): the two spanning points with smallest canonical
// indices plus all q+1 points sorted by index.
struct ProjectiveLine {
  ProjectivePoint a, b;
  std::vector<ProjectivePoint> points;
};

ProjectiveLine line_through(const Field& f, const ProjectivePoint& p,
                            const ProjectivePoint& q);

// Every line of P^3(F_q) exactly once, (q^2+1)(q^2+q+1) of them, ordered by
// the index pair of their two smallest points.
std::vector<ProjectiveLine> enumerate_lines(const Field& f);

enum class SurfaceKind {
  ProjectivePlane,
  HyperbolicQuadric,
  EllipticQuadric,
  CubicWithLines,
  CubicNoLines,
  Custom,
};

std::string to_string(SurfaceKind k);

// Validated surface: for r=3 a homogeneous equation with cached rational
// points and cached rational lines; for r=2 the surface is P^2 itself.
class Surface {
 public:
  static Surface projective_plane(FieldPtr f);
  // X0*X3 - X1*X2, the fixed hyperbolic model.
  static Surface hyperbolic_quadric(FieldPtr f);
  // X0*X1 - phi(X2,X3) with phi the lexicographically least anisotropic
  // binary quadratic form; validated by the q^2+1 point count.
  static Surface elliptic_quadric(FieldPtr f);
  // Point/line caches are computed here; when expect is set the kind-specific
  // invariants are enforced instead of inferred.
  static Surface from_equation(FieldPtr f, HomogeneousPoly eq,
                               std::optional<SurfaceKind> expect = std::nullopt);

  const Field& field() const noexcept { return *f_; }
  FieldPtr field_ptr() const noexcept { return f_; }
  int r() const noexcept { return r_; }
  SurfaceKind kind() const noexcept { return kind_; }
  const std::optional<HomogeneousPoly>& equation() const noexcept { return eq_; }
  const std::vector<ProjectivePoint>& points() const noexcept { return points_; }
  const std::vector<ProjectiveLine>& lines() const;  // r=3 only

 private:
  Surface() = default;
  FieldPtr f_;
  int r_ = 0;
  SurfaceKind kind_ = SurfaceKind::Custom;
  std::optional<HomogeneousPoly> eq_;
  std::vector<ProjectivePoint> points_;
  std::vector<ProjectiveLine> lines_;
};

const std::vector<ProjectivePoint>& surface_points(const Surface& s);
const std::vector<ProjectiveLine>& lines_on_surface(const Surface& s);

// Linear form sum_i (dF/dX_i)(P) X_i; throws on a singular point.
HomogeneousPoly tangent_plane_section(const Surface& s, const ProjectivePoint& p);

// Points of S with h != 0, in canonical order: the support of Delta.
std::vector<ProjectivePoint> affine_chart(const Surface& s,
                                          const HomogeneousPoly& h);

struct SmoothnessReport {
  bool passed = false;
  int max_degree_checked = 0;
  // extension degree and point of a singularity, when found
  std::optional<std::pair<int, std::vector<uint16_t>>> witness;
  bool partial = true;  // never a proof of smoothness over the closure
};

// Searches for common zeros of F and its partials over GF(q^k), k up to
// max_ext_degree (bounded by the 2^16 table limit).
SmoothnessReport smoothness_check(const Surface& s, int max_ext_degree = 2);

struct CubicSearchResult {
  std::optional<Surface> surface;
  uint64_t attempts = 0;
  uint64_t seed = 0;
};

// Seeded random search for a smooth cubic with q^2+2q+1 rational points and
// no rational lines. With require_chart_plane, the surface must also admit a
// plane containing none of its rational points (so the full point set can
// serve as Delta).
CubicSearchResult find_cubic_no_lines(FieldPtr f, uint64_t budget, uint64_t seed,
                                      bool require_chart_plane = false);

// First plane (in dual canonical order) containing no rational point of S.
std::optional<HomogeneousPoly> plane_avoiding_all_points(const Surface& s);

// Text format: "q=<p>^<e>", "vars=<n>", then one "coeff e0 .. e_{n-1}" line
// per monomial. Emission is bit-exact for files the toolkit wrote.
void write_surface(std::ostream& os, const Surface& s);
Surface read_surface(std::istream& is,
                     std::optional<SurfaceKind> expect = std::nullopt);

}  // namespace surfacecodes
