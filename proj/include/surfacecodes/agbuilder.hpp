#pragma once

#include <optional>
#include <vector>

#include "surfacecodes/code.hpp"
#include "surfacecodes/projspace.hpp"

namespace surfacecodes {

// All C(m+r, r) monomials of degree m in r+1 variables, graded lexicographic
// (descending exponent tuples), each as a single-term polynomial.
std::vector<HomogeneousPoly> monomial_basis(FieldPtr f, int r, int m);

struct ChartChoice {
  enum class Mode { TangentAtPoint, ExplicitForm, AvoidingPlane };
  Mode mode = Mode::TangentAtPoint;
  size_t point_index = 0;                // TangentAtPoint: index into surface points
  std::optional<HomogeneousPoly> form;   // ExplicitForm
};

struct EvaluationCodeSpec {
  const Surface* surface = nullptr;
  int m = 0;
  ChartChoice chart;
};

// A functional code together with the data that produced it: the evaluation
// set Delta (ordered), the chart linear form, and the points rescaled so the
// chart form equals 1 (the dehomogenization convention; m = 0 then evaluates
// to the all-ones row).
struct FunctionalCode {
  LinearCode code;
  std::vector<ProjectivePoint> delta;
  std::vector<ProjectivePoint> normalized;
  HomogeneousPoly chart_form;
  const Surface* surface = nullptr;
  int m = 0;
};

// Closed-form dimension the evaluation rank must reach on preset surfaces:
// (m+1)^2 on quadrics, (3m^2+3m+2)/2 on cubics, the reduced-monomial count on
// P^2. Construction fails loudly on a mismatch.
std::optional<int64_t> expected_dimension(SurfaceKind kind, uint32_t q, int m);

FunctionalCode build_functional_code(const EvaluationCodeSpec& spec);

// Reed-Muller-type code of length q^2: degree-m forms on P^2 evaluated on the
// chart X0 != 0. Valid for 0 <= m <= 2q-3.
FunctionalCode rm_code(FieldPtr f, int m);

// Dual codeword of weight m+2 supported on m+2 chart points of a rational
// line contained in the surface, with coefficients lambda_i =
// prod_{j != i} (t_i - t_j)^{-1} in the line's affine parameter.
std::vector<uint16_t> line_dual_witness(const FunctionalCode& fc,
                                        const ProjectiveLine& line);

// Delta positions of the chart points lying on the given line.
std::vector<size_t> delta_positions_on_line(const FunctionalCode& fc,
                                            const ProjectiveLine& line);

}  // namespace surfacecodes
