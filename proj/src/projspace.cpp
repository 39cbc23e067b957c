#include "surfacecodes/projspace.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace surfacecodes {

ProjectivePoint canonical_point(const Field& f, std::array<uint16_t, 4> coords,
                                uint8_t n) {
  ProjectivePoint p;
  p.n = n;
  int lead = -1;
  for (int i = 0; i < n; ++i)
    if (coords[i] != 0) {
      lead = i;
      break;
    }
  if (lead < 0) throw std::invalid_argument("zero vector is not a point");
  uint16_t s = f.inv(coords[lead]);
  for (int i = 0; i < n; ++i) p.c[i] = f.mul(s, coords[i]);
  return p;
}

size_t point_index(const Field& f, const ProjectivePoint& p) {
  const size_t q = f.order();
  size_t lead = 0;
  while (lead < p.n && p.c[lead] == 0) ++lead;
  size_t offset = 0, block = 1;
  // block sizes q^(n-1-l) for lead position l, accumulated from the front
  std::array<size_t, 4> bs{};
  for (size_t l = 0; l < p.n; ++l) {
    block = 1;
    for (size_t j = l + 1; j < p.n; ++j) block *= q;
    bs[l] = block;
  }
  for (size_t l = 0; l < lead; ++l) offset += bs[l];
  size_t idx = 0;
  for (size_t j = lead + 1; j < p.n; ++j) idx = idx * q + p.c[j];
  return offset + idx;
}

std::vector<ProjectivePoint> enumerate_points(const Field& f, int r) {
  if (r < 1 || r > 3) throw std::invalid_argument("only P^1..P^3 supported");
  const uint32_t q = f.order();
  const int n = r + 1;
  std::vector<ProjectivePoint> out;
  size_t total = 0, pw = 1;
  for (int i = 0; i <= r; ++i) {
    total += pw;
    pw *= q;
  }
  out.reserve(total);
  for (int lead = 0; lead < n; ++lead) {
    const int tail = n - 1 - lead;
    std::array<uint16_t, 4> coords{};
    coords[lead] = 1;
    std::array<uint16_t, 4> digits{};
    while (true) {
      ProjectivePoint p;
      p.n = static_cast<uint8_t>(n);
      p.c = coords;
      for (int t = 0; t < tail; ++t) p.c[lead + 1 + t] = digits[t];
      out.push_back(p);
      int pos = tail - 1;
      while (pos >= 0 && digits[pos] == q - 1) digits[pos--] = 0;
      if (pos < 0) break;
      ++digits[pos];
    }
  }
  return out;
}

namespace {

bool term_before(const Term& a, const Term& b) { return a.e > b.e; }

}  // namespace

HomogeneousPoly::HomogeneousPoly(FieldPtr f, uint8_t nvars, int degree,
                                 std::vector<Term> terms)
    : f_(std::move(f)), nvars_(nvars), degree_(degree) {
  if (nvars < 1 || nvars > 4) throw std::invalid_argument("1..4 variables supported");
  if (degree < 0) throw std::invalid_argument("negative degree");
  std::sort(terms.begin(), terms.end(), term_before);
  for (const Term& t : terms) {
    int d = 0;
    for (int i = 0; i < nvars; ++i) d += t.e[i];
    for (int i = nvars; i < 4; ++i)
      if (t.e[i]) throw std::invalid_argument("exponent on unused variable");
    if (d != degree)
      throw std::invalid_argument("term degree mismatch");
    if (t.coeff >= f_->order())
      throw std::invalid_argument("coefficient out of field range");
    if (t.coeff == 0) continue;
    if (!terms_.empty() && terms_.back().e == t.e) {
      terms_.back().coeff = f_->add(terms_.back().coeff, t.coeff);
      if (terms_.back().coeff == 0) terms_.pop_back();
    } else {
      terms_.push_back(t);
    }
  }
}

uint16_t HomogeneousPoly::eval(const ProjectivePoint& p) const {
  return eval(std::span<const uint16_t>(p.c.data(), p.n));
}

uint16_t HomogeneousPoly::eval(std::span<const uint16_t> coords) const {
  if (coords.size() < nvars_) throw std::invalid_argument("coordinate count mismatch");
  uint16_t acc = 0;
  for (const Term& t : terms_) {
    uint16_t v = t.coeff;
    for (int i = 0; i < nvars_ && v; ++i)
      if (t.e[i]) v = f_->mul(v, f_->pow(coords[i], t.e[i]));
    acc = f_->add(acc, v);
  }
  return acc;
}

HomogeneousPoly HomogeneousPoly::derivative(uint8_t var) const {
  if (var >= nvars_) throw std::invalid_argument("variable out of range");
  std::vector<Term> out;
  const uint32_t p = f_->characteristic();
  for (const Term& t : terms_) {
    if (t.e[var] == 0) continue;
    uint16_t scalar = static_cast<uint16_t>(t.e[var] % p);
    if (scalar == 0) continue;
    Term d = t;
    d.coeff = f_->mul(t.coeff, scalar);
    d.e[var] = static_cast<uint8_t>(t.e[var] - 1);
    out.push_back(d);
  }
  return HomogeneousPoly(f_, nvars_, degree_ > 0 ? degree_ - 1 : 0, std::move(out));
}

std::string HomogeneousPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coeff;
    for (int i = 0; i < nvars_; ++i)
      if (t.e[i]) {
        os << "*X" << i;
        if (t.e[i] > 1) os << "^" << int(t.e[i]);
      }
  }
  return os.str();
}

HomogeneousPoly linear_form(FieldPtr f, std::span<const uint16_t> coeffs) {
  std::vector<Term> terms;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Term t;
    t.e[i] = 1;
    t.coeff = coeffs[i];
    terms.push_back(t);
  }
  return HomogeneousPoly(std::move(f), static_cast<uint8_t>(coeffs.size()), 1,
                         std::move(terms));
}

ProjectiveLine line_through(const Field& f, const ProjectivePoint& p,
                            const ProjectivePoint& q) {
  if (p.n != 4 || q.n != 4) throw std::invalid_argument("lines live in P^3");
  if (p == q) throw std::invalid_argument("identical points span no line");
  ProjectiveLine l;
  l.points.reserve(f.order() + 1);
  l.points.push_back(p);
  for (uint32_t lam = 0; lam < f.order(); ++lam) {
    std::array<uint16_t, 4> c{};
    for (int i = 0; i < 4; ++i)
      c[i] = f.add(f.mul(static_cast<uint16_t>(lam), p.c[i]), q.c[i]);
    l.points.push_back(canonical_point(f, c, 4));
  }
  std::sort(l.points.begin(), l.points.end(),
            [&f](const ProjectivePoint& a, const ProjectivePoint& b) {
              return point_index(f, a) < point_index(f, b);
            });
  l.a = l.points[0];
  l.b = l.points[1];
  return l;
}

std::vector<ProjectiveLine> enumerate_lines(const Field& f) {
  std::vector<ProjectivePoint> pts = enumerate_points(f, 3);
  std::vector<ProjectiveLine> lines;
  const size_t q = f.order();
  lines.reserve((q * q + 1) * (q * q + q + 1));
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      // accept the pair only when i and j are the two smallest indices on
      // the line they span
      bool keep = true;
      size_t second_min = SIZE_MAX;
      for (uint32_t lam = 0; lam < q && keep; ++lam) {
        std::array<uint16_t, 4> c{};
        for (int t = 0; t < 4; ++t)
          c[t] = f.add(f.mul(static_cast<uint16_t>(lam), pts[i].c[t]), pts[j].c[t]);
        size_t idx = point_index(f, canonical_point(f, c, 4));
        if (idx < i) keep = false;
        else if (idx != i && idx < second_min) second_min = idx;
      }
      if (!keep || second_min != j) continue;
      lines.push_back(line_through(f, pts[i], pts[j]));
    }
  }
  return lines;
}

std::string to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::ProjectivePlane: return "projective-plane";
    case SurfaceKind::HyperbolicQuadric: return "hyperbolic-quadric";
    case SurfaceKind::EllipticQuadric: return "elliptic-quadric";
    case SurfaceKind::CubicWithLines: return "cubic-with-lines";
    case SurfaceKind::CubicNoLines: return "cubic-no-lines";
    case SurfaceKind::Custom: return "custom";
  }
  return "custom";
}

namespace {

// Rational lines fully contained in {F=0}, found by spanning pairs of surface
// points. Each line is kept at its two globally smallest points.
std::vector<ProjectiveLine> lines_among(const Field& f,
                                        const HomogeneousPoly& eq,
                                        const std::vector<ProjectivePoint>& spts) {
  std::vector<ProjectiveLine> lines;
  std::vector<size_t> indices(spts.size());
  for (size_t i = 0; i < spts.size(); ++i) indices[i] = point_index(f, spts[i]);
  for (size_t i = 0; i < spts.size(); ++i) {
    for (size_t j = i + 1; j < spts.size(); ++j) {
      bool on_surface = true;
      bool smallest_pair = true;
      size_t second_min = SIZE_MAX;
      for (uint32_t lam = 0; lam < f.order() && on_surface && smallest_pair; ++lam) {
        std::array<uint16_t, 4> c{};
        for (int t = 0; t < 4; ++t)
          c[t] = f.add(f.mul(static_cast<uint16_t>(lam), spts[i].c[t]), spts[j].c[t]);
        ProjectivePoint r = canonical_point(f, c, 4);
        if (eq.eval(r) != 0) {
          on_surface = false;
          break;
        }
        size_t idx = point_index(f, r);
        if (idx < indices[i]) smallest_pair = false;
        else if (idx != indices[i] && idx < second_min) second_min = idx;
      }
      if (!on_surface || !smallest_pair || second_min != indices[j]) continue;
      lines.push_back(line_through(f, spts[i], spts[j]));
    }
  }
  return lines;
}

SurfaceKind classify(uint32_t q, int degree, size_t npoints, size_t nlines) {
  if (degree == 2) {
    if (npoints == (q + 1) * (q + 1) && nlines == 2 * (q + 1))
      return SurfaceKind::HyperbolicQuadric;
    if (npoints == q * q + 1 && nlines == 0) return SurfaceKind::EllipticQuadric;
    return SurfaceKind::Custom;
  }
  if (degree == 3) {
    if (nlines == 0 && npoints == q * q + 2 * q + 1) return SurfaceKind::CubicNoLines;
    if (nlines > 0) return SurfaceKind::CubicWithLines;
    return SurfaceKind::Custom;
  }
  return SurfaceKind::Custom;
}

}  // namespace

Surface Surface::projective_plane(FieldPtr f) {
  Surface s;
  s.f_ = std::move(f);
  s.r_ = 2;
  s.kind_ = SurfaceKind::ProjectivePlane;
  s.points_ = enumerate_points(*s.f_, 2);
  return s;
}

Surface Surface::hyperbolic_quadric(FieldPtr f) {
  std::vector<Term> terms(2);
  terms[0].e = {1, 0, 0, 1};
  terms[0].coeff = 1;
  terms[1].e = {0, 1, 1, 0};
  terms[1].coeff = f->neg(1);
  HomogeneousPoly eq(f, 4, 2, std::move(terms));
  return from_equation(std::move(f), std::move(eq), SurfaceKind::HyperbolicQuadric);
}

Surface Surface::elliptic_quadric(FieldPtr f) {
  const uint32_t q = f->order();
  // lexicographically least anisotropic binary quadratic a u^2 + b uv + c v^2
  uint16_t fa = 0, fb = 0, fc = 0;
  bool found = false;
  for (uint32_t a = 0; a < q && !found; ++a)
    for (uint32_t b = 0; b < q && !found; ++b)
      for (uint32_t c = 0; c < q && !found; ++c) {
        bool zero_free = true;
        for (uint32_t u = 0; u < q && zero_free; ++u)
          for (uint32_t v = 0; v < q && zero_free; ++v) {
            if (u == 0 && v == 0) continue;
            uint16_t uu = static_cast<uint16_t>(u), vv = static_cast<uint16_t>(v);
            uint16_t val = f->add(
                f->add(f->mul(static_cast<uint16_t>(a), f->mul(uu, uu)),
                       f->mul(static_cast<uint16_t>(b), f->mul(uu, vv))),
                f->mul(static_cast<uint16_t>(c), f->mul(vv, vv)));
            if (val == 0) zero_free = false;
          }
        if (zero_free) {
          fa = static_cast<uint16_t>(a);
          fb = static_cast<uint16_t>(b);
          fc = static_cast<uint16_t>(c);
          found = true;
        }
      }
  if (!found) throw std::logic_error("no anisotropic form found");
  std::vector<Term> terms;
  Term t;
  t.e = {1, 1, 0, 0};
  t.coeff = 1;
  terms.push_back(t);
  auto push = [&](std::array<uint8_t, 4> e, uint16_t coeff) {
    if (coeff == 0) return;
    Term u;
    u.e = e;
    u.coeff = f->neg(coeff);
    terms.push_back(u);
  };
  push({0, 0, 2, 0}, fa);
  push({0, 0, 1, 1}, fb);
  push({0, 0, 0, 2}, fc);
  HomogeneousPoly eq(f, 4, 2, std::move(terms));
  return from_equation(std::move(f), std::move(eq), SurfaceKind::EllipticQuadric);
}

Surface Surface::from_equation(FieldPtr f, HomogeneousPoly eq,
                               std::optional<SurfaceKind> expect) {
  if (eq.nvars() != 4) throw std::invalid_argument("surface equation needs 4 variables");
  if (eq.zero()) throw std::invalid_argument("zero equation");
  Surface s;
  s.f_ = std::move(f);
  s.r_ = 3;
  for (const ProjectivePoint& p : enumerate_points(*s.f_, 3))
    if (eq.eval(p) == 0) s.points_.push_back(p);
  s.lines_ = lines_among(*s.f_, eq, s.points_);
  s.kind_ = classify(s.f_->order(), eq.degree(), s.points_.size(), s.lines_.size());
  s.eq_ = std::move(eq);
  if (expect && s.kind_ != *expect)
    throw std::runtime_error("surface validation failed: expected " +
                             surfacecodes::to_string(*expect) + ", classified as " +
                             surfacecodes::to_string(s.kind_) + " (" +
                             std::to_string(s.points_.size()) + " points, " +
                             std::to_string(s.lines_.size()) + " lines)");
  return s;
}

const std::vector<ProjectiveLine>& Surface::lines() const {
  if (r_ != 3) throw std::logic_error("lines are cached for surfaces in P^3 only");
  return lines_;
}

const std::vector<ProjectivePoint>& surface_points(const Surface& s) {
  return s.points();
}

const std::vector<ProjectiveLine>& lines_on_surface(const Surface& s) {
  return s.lines();
}

HomogeneousPoly tangent_plane_section(const Surface& s, const ProjectivePoint& p) {
  if (s.r() != 3 || !s.equation())
    throw std::invalid_argument("tangent sections need an embedded surface");
  if (s.equation()->eval(p) != 0)
    throw std::invalid_argument("point is not on the surface");
  std::array<uint16_t, 4> g{};
  bool nonzero = false;
  for (uint8_t i = 0; i < 4; ++i) {
    g[i] = s.equation()->derivative(i).eval(p);
    if (g[i]) nonzero = true;
  }
  if (!nonzero) throw std::domain_error("singular point: zero gradient");
  return linear_form(s.field_ptr(), std::span<const uint16_t>(g.data(), 4));
}

std::vector<ProjectivePoint> affine_chart(const Surface& s, const HomogeneousPoly& h) {
  if (h.degree() != 1) throw std::invalid_argument("chart divisor must be a hyperplane");
  std::vector<ProjectivePoint> out;
  for (const ProjectivePoint& p : s.points())
    if (h.eval(p) != 0) out.push_back(p);
  return out;
}

SmoothnessReport smoothness_check(const Surface& s, int max_ext_degree) {
  SmoothnessReport rep;
  if (s.r() == 2) {  // P^2 itself
    rep.passed = true;
    rep.max_degree_checked = max_ext_degree;
    return rep;
  }
  const HomogeneousPoly& eq = *s.equation();
  const Field& base = s.field();
  for (int k = 1; k <= max_ext_degree; ++k) {
    uint64_t qk = 1;
    for (uint32_t i = 0; i < base.degree() * static_cast<uint32_t>(k); ++i) {
      qk *= base.characteristic();
      if (qk > 65536) break;
    }
    if (qk > 65536) break;  // table limit; report stays partial
    FieldPtr big = make_field(base.characteristic(), base.degree() * k);
    std::vector<uint16_t> emb = subfield_embedding(base, *big);
    auto lift = [&](const HomogeneousPoly& poly) {
      std::vector<Term> terms = poly.terms();
      for (Term& t : terms) t.coeff = emb[t.coeff];
      return HomogeneousPoly(big, 4, poly.degree(), std::move(terms));
    };
    HomogeneousPoly F = lift(eq);
    std::array<std::optional<HomogeneousPoly>, 4> partials;
    for (uint8_t i = 0; i < 4; ++i) partials[i] = lift(eq.derivative(i));
    // stream canonical points of P^3 over the big field
    const uint32_t Q = big->order();
    std::array<uint16_t, 4> c{};
    for (int lead = 0; lead < 4; ++lead) {
      c = {0, 0, 0, 0};
      c[lead] = 1;
      std::array<uint32_t, 4> digits{};
      const int tail = 3 - lead;
      while (true) {
        for (int t = 0; t < tail; ++t) c[lead + 1 + t] = static_cast<uint16_t>(digits[t]);
        std::span<const uint16_t> coords(c.data(), 4);
        if (F.eval(coords) == 0) {
          bool singular = true;
          for (uint8_t i = 0; i < 4 && singular; ++i)
            if (partials[i]->eval(coords) != 0) singular = false;
          if (singular) {
            rep.passed = false;
            rep.max_degree_checked = k;
            rep.witness = {k, std::vector<uint16_t>(c.begin(), c.end())};
            return rep;
          }
        }
        int pos = tail - 1;
        while (pos >= 0 && digits[pos] == Q - 1) digits[pos--] = 0;
        if (pos < 0) break;
        ++digits[pos];
      }
    }
    rep.max_degree_checked = k;
  }
  rep.passed = true;
  return rep;
}

std::optional<HomogeneousPoly> plane_avoiding_all_points(const Surface& s) {
  if (s.r() != 3) throw std::invalid_argument("plane search needs a surface in P^3");
  const Field& f = s.field();
  for (const ProjectivePoint& dual : enumerate_points(f, 3)) {
    bool avoids = true;
    for (const ProjectivePoint& p : s.points()) {
      uint16_t acc = 0;
      for (int i = 0; i < 4; ++i) acc = f.add(acc, f.mul(dual.c[i], p.c[i]));
      if (acc == 0) {
        avoids = false;
        break;
      }
    }
    if (avoids)
      return linear_form(s.field_ptr(), std::span<const uint16_t>(dual.c.data(), 4));
  }
  return std::nullopt;
}

CubicSearchResult find_cubic_no_lines(FieldPtr f, uint64_t budget, uint64_t seed,
                                      bool require_chart_plane) {
  const uint32_t q = f->order();
  const std::vector<ProjectivePoint> pts = enumerate_points(*f, 3);
  // degree-3 exponent vectors, descending lex (the canonical monomial order)
  std::vector<std::array<uint8_t, 4>> monos;
  for (int e0 = 3; e0 >= 0; --e0)
    for (int e1 = 3 - e0; e1 >= 0; --e1)
      for (int e2 = 3 - e0 - e1; e2 >= 0; --e2)
        monos.push_back({static_cast<uint8_t>(e0), static_cast<uint8_t>(e1),
                         static_cast<uint8_t>(e2),
                         static_cast<uint8_t>(3 - e0 - e1 - e2)});
  // monomial values at every point
  std::vector<uint16_t> table(pts.size() * monos.size());
  for (size_t pi = 0; pi < pts.size(); ++pi) {
    std::array<std::array<uint16_t, 4>, 4> pw{};  // pw[var][exp]
    for (int v = 0; v < 4; ++v) {
      pw[v][0] = 1;
      for (int e = 1; e <= 3; ++e) pw[v][e] = f->mul(pw[v][e - 1], pts[pi].c[v]);
    }
    for (size_t mi = 0; mi < monos.size(); ++mi) {
      uint16_t val = pw[0][monos[mi][0]];
      val = f->mul(val, pw[1][monos[mi][1]]);
      val = f->mul(val, pw[2][monos[mi][2]]);
      val = f->mul(val, pw[3][monos[mi][3]]);
      table[pi * monos.size() + mi] = val;
    }
  }
  const size_t target = static_cast<size_t>(q) * q + 2 * q + 1;
  std::mt19937_64 rng(seed);
  std::vector<uint16_t> coeffs(monos.size());
  std::vector<size_t> zero_idx;
  std::vector<bool> on_surface(pts.size());
  for (uint64_t attempt = 1; attempt <= budget; ++attempt) {
    bool all_zero = true;
    for (auto& cfe : coeffs) {
      cfe = static_cast<uint16_t>(rng() % q);
      if (cfe) all_zero = false;
    }
    if (all_zero) continue;
    zero_idx.clear();
    for (size_t pi = 0; pi < pts.size(); ++pi) {
      uint16_t acc = 0;
      const uint16_t* row = &table[pi * monos.size()];
      for (size_t mi = 0; mi < monos.size(); ++mi)
        if (coeffs[mi]) acc = f->add(acc, f->mul(coeffs[mi], row[mi]));
      if (acc == 0) {
        zero_idx.push_back(pi);
        if (zero_idx.size() > target) break;
      }
    }
    if (zero_idx.size() != target) continue;
    std::vector<Term> terms;
    for (size_t mi = 0; mi < monos.size(); ++mi)
      if (coeffs[mi]) {
        Term t;
        t.e = monos[mi];
        t.coeff = coeffs[mi];
        terms.push_back(t);
      }
    HomogeneousPoly eq(f, 4, 3, std::move(terms));
    // rational singular points
    std::array<std::optional<HomogeneousPoly>, 4> partials;
    for (uint8_t i = 0; i < 4; ++i) partials[i] = eq.derivative(i);
    bool singular = false;
    for (size_t pi : zero_idx) {
      bool all0 = true;
      for (uint8_t i = 0; i < 4 && all0; ++i)
        if (partials[i]->eval(pts[pi]) != 0) all0 = false;
      if (all0) {
        singular = true;
        break;
      }
    }
    if (singular) continue;
    // rational lines among surface points
    std::fill(on_surface.begin(), on_surface.end(), false);
    for (size_t pi : zero_idx) on_surface[pi] = true;
    bool has_line = false;
    for (size_t a = 0; a < zero_idx.size() && !has_line; ++a)
      for (size_t b = a + 1; b < zero_idx.size() && !has_line; ++b) {
        const ProjectivePoint& P = pts[zero_idx[a]];
        const ProjectivePoint& R = pts[zero_idx[b]];
        bool contained = true;
        for (uint32_t lam = 0; lam < q && contained; ++lam) {
          std::array<uint16_t, 4> cc{};
          for (int t = 0; t < 4; ++t)
            cc[t] = f->add(f->mul(static_cast<uint16_t>(lam), P.c[t]), R.c[t]);
          if (!on_surface[point_index(*f, canonical_point(*f, cc, 4))])
            contained = false;
        }
        if (contained) has_line = true;
      }
    if (has_line) continue;
    Surface s = Surface::from_equation(f, eq, SurfaceKind::CubicNoLines);
    if (!smoothness_check(s, 2).passed) continue;
    if (require_chart_plane && !plane_avoiding_all_points(s)) continue;
    return {std::move(s), attempt, seed};
  }
  return {std::nullopt, budget, seed};
}

void write_surface(std::ostream& os, const Surface& s) {
  if (!s.equation()) throw std::invalid_argument("surface has no equation to write");
  const Field& f = s.field();
  os << "q=" << f.characteristic() << "^" << f.degree() << "\n";
  os << "vars=4\n";
  for (const Term& t : s.equation()->terms()) {
    os << t.coeff;
    for (int i = 0; i < 4; ++i) os << ' ' << int(t.e[i]);
    os << "\n";
  }
}

Surface read_surface(std::istream& is, std::optional<SurfaceKind> expect) {
  std::string line;
  uint32_t p = 0, e = 0, nvars = 0;
  if (!std::getline(is, line) || sscanf(line.c_str(), "q=%u^%u", &p, &e) != 2)
    throw std::runtime_error("bad surface header: expected q=<p>^<e>");
  if (!std::getline(is, line) || sscanf(line.c_str(), "vars=%u", &nvars) != 1)
    throw std::runtime_error("bad surface header: expected vars=<n>");
  if (nvars != 4) throw std::runtime_error("only surfaces in P^3 are supported");
  FieldPtr f = make_field(p, e);
  std::vector<Term> terms;
  int degree = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    uint32_t coeff;
    int e0, e1, e2, e3;
    if (!(ls >> coeff >> e0 >> e1 >> e2 >> e3))
      throw std::runtime_error("bad monomial line: " + line);
    if (e0 < 0 || e1 < 0 || e2 < 0 || e3 < 0 || e0 > 255 || e1 > 255 ||
        e2 > 255 || e3 > 255 || coeff > 65535)
      throw std::runtime_error("monomial out of range: " + line);
    Term t;
    t.coeff = static_cast<uint16_t>(coeff);
    t.e = {static_cast<uint8_t>(e0), static_cast<uint8_t>(e1),
           static_cast<uint8_t>(e2), static_cast<uint8_t>(e3)};
    int d = e0 + e1 + e2 + e3;
    if (degree < 0) degree = d;
    if (d != degree) throw std::runtime_error("mixed degrees in surface file");
    terms.push_back(t);
  }
  if (terms.empty()) throw std::runtime_error("surface file has no monomials");
  HomogeneousPoly eq(f, 4, degree, std::move(terms));
  return Surface::from_equation(std::move(f), std::move(eq), expect);
}

}  // namespace surfacecodes
