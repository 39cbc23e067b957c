#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surfacecodes/projspace.hpp"

namespace surfacecodes {

// Integer intersection lattice of a preset surface: basis labels, Gram
// matrix, canonical class. Presets: P^2 (H^2=1, K=-3H), quadric (H^2=2,
// K=-2H; hyperbolic refines to E,F with E.F=1), cubic (H^2=3, K=-H), plus a
// line class L with L.H=1, L^2=-1 on cubics that contain rational lines.
struct PicardLattice {
  SurfaceKind kind;
  uint32_t q = 0;
  std::vector<std::string> labels;
  std::vector<int64_t> gram;  // rank x rank, row-major, symmetric
  std::vector<int64_t> canonical;
  size_t rank() const noexcept { return labels.size(); }
};

PicardLattice lattice_for(SurfaceKind kind, uint32_t q);

struct DivisorClass {
  std::vector<int64_t> c;
};

int64_t pair(const DivisorClass& a, const DivisorClass& b, const PicardLattice& lat);

// Arithmetic genus 1 + D.(D+K)/2; throws when the product is odd.
int64_t adjunction_genus(const DivisorClass& d, const PicardLattice& lat);

// floor(2*sqrt(q)) by integer square root, exact for all q.
int64_t floor_two_sqrt(uint32_t q);

// Upper bound for the maximal number of rational points on the support of an
// effective divisor in |a*H|. P^2: exactly a*q. Elliptic quadric and cubic
// without lines: maximum over partitions a = a_1+...+a_s of the per-part
// point bounds q+1+genus*floor(2*sqrt(q)), with the exact value q+1 for a
// single hyperplane section of the elliptic quadric. Unsupported for
// lattices with line classes.
int64_t theta_upper(int a, const PicardLattice& lat);

int64_t delta_of(const std::vector<DivisorClass>& ds, const DivisorClass& g,
                 const PicardLattice& lat);

// dim of the space of degree-a hypersurface sections on the preset surface
int64_t dim_sections(SurfaceKind kind, int a);

struct ClassRecord {
  std::string label;
  std::vector<int64_t> coeffs;
  int64_t product = 0;  // D.(G - K - D)
  std::optional<int64_t> theta;
  bool in_e = false;
  std::string note;
};

struct InterpolationCheck {
  std::string method;  // "dimension-count" or "line-cover"
  int64_t sections = 0;
  int64_t required = 0;
  bool pass = false;
  std::string note;
};

struct BoundReport {
  SurfaceKind kind;
  uint32_t q = 0;
  int m = 0;
  std::string theorem;  // "basic" or "improved"
  int64_t bound = 0;
  int64_t delta_d = 0;
  std::optional<int64_t> delta_e;
  std::vector<ClassRecord> classes;
  InterpolationCheck interpolation;
  std::string vanishing;
  bool override_used = false;
  std::string note;

  std::string to_json() const;
};

// d_dual >= delta(D) over the preset class family: {H..(m+2)H} on P^2,
// {H..(m+1)H} on quadrics (E, F added on the hyperbolic one), {H..mH} on
// cubics (line class added when rational lines exist).
BoundReport bound_basic(SurfaceKind kind, uint32_t q, int m);

struct ImprovedOptions {
  // cap a_max for D = {H,...,a_max*H}; when absent every cap is tried and
  // the best valid bound wins (largest cap on ties)
  std::optional<int> a_max;
  // explicit E as multiples of H (requires a_max); classes this keeps in E
  // despite a passing theta test are flagged in the report
  std::optional<std::vector<int>> explicit_e;
};

// Arithmetic improvement: E = {D in D : theta_upper(D) >= D.(G-K-D)} (a
// superset of the required exclusion set, hence safe), bound = delta(E),
// subject to the interpolation dimension count for the chosen cap. Falls
// back to the basic bound when no candidate improves it.
BoundReport bound_improved(SurfaceKind kind, uint32_t q, int m,
                           const ImprovedOptions& opts = {});

}  // namespace surfacecodes
