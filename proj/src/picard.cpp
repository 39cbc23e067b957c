#include "surfacecodes/picard.hpp"

#include <algorithm>

#include <json.hpp>

namespace surfacecodes {

PicardLattice lattice_for(SurfaceKind kind, uint32_t q) {
  PicardLattice lat;
  lat.kind = kind;
  lat.q = q;
  switch (kind) {
    case SurfaceKind::ProjectivePlane:
      lat.labels = {"H"};
      lat.gram = {1};
      lat.canonical = {-3};
      return lat;
    case SurfaceKind::HyperbolicQuadric:
      lat.labels = {"E", "F"};
      lat.gram = {0, 1, 1, 0};
      lat.canonical = {-2, -2};  // K = -2H with H = E + F
      return lat;
    case SurfaceKind::EllipticQuadric:
      lat.labels = {"H"};
      lat.gram = {2};
      lat.canonical = {-2};
      return lat;
    case SurfaceKind::CubicNoLines:
      lat.labels = {"H"};
      lat.gram = {3};
      lat.canonical = {-1};
      return lat;
    case SurfaceKind::CubicWithLines:
      lat.labels = {"H", "L"};
      lat.gram = {3, 1, 1, -1};
      lat.canonical = {-1, 0};  // K = -H
      return lat;
    case SurfaceKind::Custom:
      break;
  }
  throw std::invalid_argument("no Picard preset for custom surfaces");
}

int64_t pair(const DivisorClass& a, const DivisorClass& b, const PicardLattice& lat) {
  const size_t r = lat.rank();
  if (a.c.size() != r || b.c.size() != r)
    throw std::invalid_argument("divisor class rank mismatch");
  int64_t out = 0;
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) out += a.c[i] * lat.gram[i * r + j] * b.c[j];
  return out;
}

int64_t adjunction_genus(const DivisorClass& d, const PicardLattice& lat) {
  DivisorClass dk = d;
  for (size_t i = 0; i < lat.rank(); ++i) dk.c[i] += lat.canonical[i];
  int64_t prod = pair(d, dk, lat);
  if (prod % 2 != 0)
    throw std::domain_error("adjunction parity violated: D.(D+K) is odd");
  return 1 + prod / 2;
}

int64_t floor_two_sqrt(uint32_t q) {
  uint64_t target = 4ull * q;
  uint64_t r = 0;
  while ((r + 1) * (r + 1) <= target) ++r;
  return static_cast<int64_t>(r);
}

namespace {

DivisorClass h_multiple(const PicardLattice& lat, int64_t a) {
  DivisorClass d;
  d.c.assign(lat.rank(), 0);
  switch (lat.kind) {
    case SurfaceKind::HyperbolicQuadric:
      d.c = {a, a};  // H = E + F
      break;
    case SurfaceKind::CubicWithLines:
      d.c = {a, 0};
      break;
    default:
      d.c = {a};
  }
  return d;
}

std::string h_label(int64_t a) {
  if (a == 1) return "H";
  return std::to_string(a) + "H";
}

// per-part point-count bound for an irreducible member of |t*H|
int64_t part_bound(int t, const PicardLattice& lat) {
  const int64_t qq = lat.q;
  if (t == 1 && lat.kind == SurfaceKind::EllipticQuadric) return qq + 1;
  int64_t genus = adjunction_genus(h_multiple(lat, t), lat);
  return qq + 1 + genus * floor_two_sqrt(lat.q);
}

int64_t best_partition(int a, int max_part, const PicardLattice& lat) {
  if (a == 0) return 0;
  int64_t best = INT64_MIN;
  for (int p = std::min(a, max_part); p >= 1; --p) {
    int64_t rest = best_partition(a - p, p, lat);
    int64_t val = part_bound(p, lat) + rest;
    best = std::max(best, val);
  }
  return best;
}

}  // namespace

int64_t theta_upper(int a, const PicardLattice& lat) {
  if (a < 1) throw std::invalid_argument("theta needs an effective multiple of H");
  switch (lat.kind) {
    case SurfaceKind::ProjectivePlane:
      return static_cast<int64_t>(a) * lat.q;
    case SurfaceKind::EllipticQuadric:
    case SurfaceKind::CubicNoLines:
      return best_partition(a, a, lat);
    default:
      throw std::invalid_argument("theta bound unsupported on this lattice");
  }
}

int64_t delta_of(const std::vector<DivisorClass>& ds, const DivisorClass& g,
                 const PicardLattice& lat) {
  if (ds.empty()) throw std::invalid_argument("delta of an empty class set");
  int64_t best = INT64_MAX;
  for (const DivisorClass& d : ds) {
    DivisorClass rest;  // G - K - D
    rest.c.resize(lat.rank());
    for (size_t i = 0; i < lat.rank(); ++i)
      rest.c[i] = g.c[i] - lat.canonical[i] - d.c[i];
    best = std::min(best, pair(d, rest, lat));
  }
  return best;
}

int64_t dim_sections(SurfaceKind kind, int a) {
  switch (kind) {
    case SurfaceKind::ProjectivePlane:
      return static_cast<int64_t>(a + 1) * (a + 2) / 2;
    case SurfaceKind::HyperbolicQuadric:
    case SurfaceKind::EllipticQuadric:
      return static_cast<int64_t>(a + 1) * (a + 1);
    case SurfaceKind::CubicWithLines:
    case SurfaceKind::CubicNoLines:
      return (3ll * a * a + 3 * a + 2) / 2;
    case SurfaceKind::Custom:
      break;
  }
  throw std::invalid_argument("no section-count formula for custom surfaces");
}

std::string BoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["surface"] = surfacecodes::to_string(kind);
  j["q"] = q;
  j["m"] = m;
  j["theorem"] = theorem;
  j["bound"] = bound;
  j["delta_D"] = delta_d;
  if (delta_e) j["delta_E"] = *delta_e;
  nlohmann::ordered_json cls = nlohmann::ordered_json::array();
  for (const ClassRecord& c : classes) {
    nlohmann::ordered_json jc;
    jc["class"] = c.label;
    jc["coeffs"] = c.coeffs;
    jc["product"] = c.product;
    if (c.theta)
      jc["theta_upper"] = *c.theta;
    else
      jc["theta_upper"] = nullptr;
    jc["in_E"] = c.in_e;
    if (!c.note.empty()) jc["note"] = c.note;
    cls.push_back(jc);
  }
  j["classes"] = cls;
  j["interpolation"] = {{"method", interpolation.method},
                        {"sections", interpolation.sections},
                        {"required", interpolation.required},
                        {"pass", interpolation.pass},
                        {"note", interpolation.note}};
  j["vanishing"] = vanishing;
  j["override_used"] = override_used;
  if (!note.empty()) j["note"] = note;
  return j.dump(2);
}

namespace {

const char* kVanishingNote =
    "H^1(S, Omega^2(G-D)) = 0 assumed for hypersurface-section and line "
    "classes on complete intersections; hypothesis, not machine-checked";

void check_m_range(SurfaceKind kind, uint32_t q, int m) {
  if (kind == SurfaceKind::ProjectivePlane) {
    if (m < 1 || m > 2 * static_cast<int>(q) - 3)
      throw std::invalid_argument("m out of range: need 1 <= m <= 2q-3");
    return;
  }
  if (m < 1 || m > static_cast<int>(q) - 2)
    throw std::invalid_argument("m out of range: need 1 <= m <= q-2");
}

int64_t product_of(const PicardLattice& lat, const DivisorClass& d, int m) {
  DivisorClass g = h_multiple(lat, m);
  DivisorClass rest;
  rest.c.resize(lat.rank());
  for (size_t i = 0; i < lat.rank(); ++i)
    rest.c[i] = g.c[i] - lat.canonical[i] - d.c[i];
  return pair(d, rest, lat);
}

bool theta_supported(SurfaceKind kind) {
  return kind == SurfaceKind::ProjectivePlane ||
         kind == SurfaceKind::EllipticQuadric || kind == SurfaceKind::CubicNoLines;
}

}  // namespace

BoundReport bound_basic(SurfaceKind kind, uint32_t q, int m) {
  check_m_range(kind, q, m);
  PicardLattice lat = lattice_for(kind, q);
  BoundReport rep;
  rep.kind = kind;
  rep.q = q;
  rep.m = m;
  rep.theorem = "basic";
  rep.vanishing = kVanishingNote;

  auto add_class = [&](const std::string& label, const DivisorClass& d) {
    ClassRecord c;
    c.label = label;
    c.coeffs = d.c;
    c.product = product_of(lat, d, m);
    if (theta_supported(kind) && lat.rank() == 1)
      c.theta = theta_upper(static_cast<int>(d.c[0]), lat);
    rep.classes.push_back(std::move(c));
  };

  int a_hi = 0;
  switch (kind) {
    case SurfaceKind::ProjectivePlane:
      a_hi = m + 2;
      break;
    case SurfaceKind::HyperbolicQuadric: {
      DivisorClass e{{1, 0}}, ff{{0, 1}};
      ClassRecord ce;
      ce.label = "E";
      ce.coeffs = e.c;
      ce.product = product_of(lat, e, m);
      rep.classes.push_back(ce);
      ClassRecord cf;
      cf.label = "F";
      cf.coeffs = ff.c;
      cf.product = product_of(lat, ff, m);
      rep.classes.push_back(cf);
      a_hi = m + 1;
      break;
    }
    case SurfaceKind::EllipticQuadric:
      a_hi = m + 1;
      break;
    case SurfaceKind::CubicWithLines: {
      DivisorClass l{{0, 1}};
      ClassRecord cl;
      cl.label = "L";
      cl.coeffs = l.c;
      cl.product = product_of(lat, l, m);
      rep.classes.push_back(cl);
      a_hi = m;
      break;
    }
    case SurfaceKind::CubicNoLines:
      a_hi = m;
      break;
    case SurfaceKind::Custom:
      throw std::invalid_argument("bounds need a preset surface kind");
  }
  for (int a = 1; a <= a_hi; ++a) add_class(h_label(a), h_multiple(lat, a));

  int64_t delta = INT64_MAX;
  for (const ClassRecord& c : rep.classes) delta = std::min(delta, c.product);
  rep.delta_d = delta;
  rep.bound = delta;

  InterpolationCheck& ic = rep.interpolation;
  switch (kind) {
    case SurfaceKind::ProjectivePlane:
      ic.method = "line-cover";
      ic.sections = dim_sections(kind, a_hi);
      ic.required = delta;
      ic.pass = true;
      ic.note = "tuples below the bound are covered by one line per point, "
                "each line avoiding the others (minimality not machine-checked)";
      break;
    case SurfaceKind::HyperbolicQuadric:
    case SurfaceKind::CubicWithLines:
      ic.method = "dimension-count";
      ic.sections = dim_sections(kind, a_hi);
      ic.required = delta;
      ic.pass = ic.sections >= delta;
      ic.note = "line classes added so collinear tuples have minimal "
                "interpolants; minimality not machine-checked";
      break;
    case SurfaceKind::EllipticQuadric:
    case SurfaceKind::CubicNoLines:
      ic.method = "dimension-count";
      ic.sections = dim_sections(kind, a_hi);
      ic.required = delta;
      ic.pass = ic.sections >= delta;
      ic.note = "tuples below the bound impose fewer conditions than the "
                "section space dimension; minimality via Picard rank 1, not "
                "machine-checked";
      break;
    case SurfaceKind::Custom:
      break;
  }
  if (!rep.interpolation.pass && rep.interpolation.method == "dimension-count")
    rep.note = "interpolation dimension count failed; bound not certified";
  return rep;
}

BoundReport bound_improved(SurfaceKind kind, uint32_t q, int m,
                           const ImprovedOptions& opts) {
  check_m_range(kind, q, m);
  BoundReport basic = bound_basic(kind, q, m);

  if (kind == SurfaceKind::HyperbolicQuadric || kind == SurfaceKind::CubicWithLines) {
    BoundReport rep = basic;
    rep.theorem = "improved";
    rep.delta_e = rep.delta_d;
    rep.note = "surfaces with rational lines admit no arithmetic improvement: "
               "a line class has theta(L) = q+1 >= product";
    return rep;
  }

  PicardLattice lat = lattice_for(kind, q);

  if (kind == SurfaceKind::ProjectivePlane) {
    BoundReport rep;
    rep.kind = kind;
    rep.q = q;
    rep.m = m;
    rep.theorem = "improved";
    rep.vanishing = kVanishingNote;
    int a_hi = std::min<int>(static_cast<int>(q), m + 2);
    int a_lo_e = std::max(1, m + 3 - static_cast<int>(q));
    int64_t delta_d = INT64_MAX, delta_e = INT64_MAX;
    for (int a = 1; a <= a_hi; ++a) {
      ClassRecord c;
      c.label = h_label(a);
      c.coeffs = {a};
      c.product = product_of(lat, h_multiple(lat, a), m);
      c.theta = theta_upper(a, lat);
      c.in_e = a >= a_lo_e;
      if (!c.in_e) c.note = "excluded: theta(aH) = aq below the product";
      delta_d = std::min(delta_d, c.product);
      if (c.in_e) delta_e = std::min(delta_e, c.product);
      rep.classes.push_back(std::move(c));
    }
    rep.delta_d = delta_d;
    rep.delta_e = delta_e;
    rep.bound = delta_e;
    rep.interpolation.method = "line-cover";
    rep.interpolation.sections = dim_sections(kind, static_cast<int>(q));
    rep.interpolation.required = delta_e;
    rep.interpolation.pass = true;
    rep.interpolation.note =
        "every chart configuration lies on a union of at most q lines, so "
        "the interpolation property holds for every threshold";
    return rep;
  }

  // elliptic quadric / cubic without lines: search caps a_max, or honor the
  // explicit configuration
  const int a_cap = (kind == SurfaceKind::EllipticQuadric) ? m + 1 : m;
  if (opts.explicit_e && !opts.a_max)
    throw std::invalid_argument("explicit E needs an explicit a_max");

  struct Candidate {
    int a_max = 0;
    std::vector<ClassRecord> classes;
    int64_t delta_d = 0;
    int64_t delta_e = 0;
    InterpolationCheck ic;
    bool valid = false;
  };

  auto evaluate = [&](int a_max) {
    Candidate cand;
    cand.a_max = a_max;
    int64_t delta_d = INT64_MAX, delta_e = INT64_MAX;
    bool e_nonempty = false;
    for (int a = 1; a <= a_max; ++a) {
      ClassRecord c;
      c.label = h_label(a);
      c.coeffs = {a};
      c.product = product_of(lat, h_multiple(lat, a), m);
      c.theta = theta_upper(a, lat);
      bool theta_allows_exclusion = *c.theta < c.product;
      if (opts.explicit_e) {
        c.in_e = std::find(opts.explicit_e->begin(), opts.explicit_e->end(), a) !=
                 opts.explicit_e->end();
        if (!c.in_e && !theta_allows_exclusion)
          c.note = "excluded by explicit configuration although the theta "
                   "bound does not rule it out";
        else if (!c.in_e)
          c.note = "excluded: theta upper bound below the product";
      } else {
        c.in_e = !theta_allows_exclusion;
        if (!c.in_e) c.note = "excluded: theta upper bound below the product";
      }
      delta_d = std::min(delta_d, c.product);
      if (c.in_e) {
        delta_e = std::min(delta_e, c.product);
        e_nonempty = true;
      }
      cand.classes.push_back(std::move(c));
    }
    cand.delta_d = delta_d;
    cand.ic.method = "dimension-count";
    cand.ic.sections = dim_sections(kind, a_max);
    if (!e_nonempty) {
      cand.valid = false;
      cand.ic.note = "E empty for this cap";
      return cand;
    }
    cand.delta_e = delta_e;
    cand.ic.required = delta_e;
    cand.ic.pass = cand.ic.sections >= delta_e;
    cand.ic.note = "tuples below delta(E) impose fewer conditions than the "
                   "degree-a_max section space; minimality via Picard rank 1, "
                   "not machine-checked";
    cand.valid = cand.ic.pass;
    return cand;
  };

  std::optional<Candidate> best;
  if (opts.a_max) {
    if (*opts.a_max < 1 || *opts.a_max > a_cap)
      throw std::invalid_argument("a_max outside the positive-product range");
    Candidate cand = evaluate(*opts.a_max);
    best = std::move(cand);  // explicit configurations are reported even when weak
  } else {
    for (int a_max = 1; a_max <= a_cap; ++a_max) {
      Candidate cand = evaluate(a_max);
      if (!cand.valid) continue;
      if (!best || cand.delta_e >= best->delta_e) best = std::move(cand);
    }
  }

  BoundReport rep;
  rep.kind = kind;
  rep.q = q;
  rep.m = m;
  rep.theorem = "improved";
  rep.vanishing = kVanishingNote;
  rep.override_used = opts.a_max.has_value() || opts.explicit_e.has_value();

  if (!best || (!rep.override_used && best->delta_e <= basic.bound)) {
    rep.classes = basic.classes;
    rep.delta_d = basic.delta_d;
    rep.delta_e = basic.delta_d;
    rep.bound = basic.bound;
    rep.interpolation = basic.interpolation;
    rep.note = "no arithmetic improvement over the basic bound";
    return rep;
  }

  rep.classes = best->classes;
  rep.delta_d = best->delta_d;
  rep.delta_e = best->delta_e;
  rep.bound = best->delta_e;
  rep.interpolation = best->ic;
  if (!best->valid)
    rep.note = "explicit configuration does not satisfy the interpolation "
               "dimension count; bound reproduced as configured, not certified";
  else if (rep.override_used)
    rep.note = "explicit class configuration";
  return rep;
}

}  // namespace surfacecodes
