#include "surfacecodes/gf.hpp"

#include <algorithm>
#include <array>

namespace surfacecodes {

namespace {

// Dense polynomial arithmetic over GF(p) on small coefficient vectors, used
// only at construction time (modulus search, table generation).
using Poly = std::vector<uint16_t>;

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mod(Poly a, const Poly& m, uint32_t p) {
  // m monic of degree d
  const size_t d = m.size() - 1;
  while (a.size() > d) {
    uint16_t lead = a.back();
    size_t shift = a.size() - 1 - d;
    if (lead != 0) {
      for (size_t i = 0; i <= d; ++i) {
        uint32_t sub = (static_cast<uint32_t>(lead) * m[i]) % p;
        uint32_t cur = a[shift + i];
        a[shift + i] = static_cast<uint16_t>((cur + p - sub % p) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<uint16_t>(
          (prod[i + j] + static_cast<uint32_t>(a[i]) * b[j]) % p);
    }
  }
  return trim(poly_mod(std::move(prod), m, p));
}

uint32_t poly_to_value(const Poly& a, uint32_t p) {
  uint32_t v = 0;
  for (size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return v;
}

Poly value_to_poly(uint32_t v, uint32_t p) {
  Poly a;
  while (v) {
    a.push_back(static_cast<uint16_t>(v % p));
    v /= p;
  }
  return a;
}

// Remainder of a by monic divisor m over GF(p); true iff zero.
bool divides(const Poly& m, Poly a, uint32_t p) {
  return trim(poly_mod(std::move(a), m, p)).empty();
}

}  // namespace

bool is_prime(uint32_t n) noexcept {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool polynomial_irreducible(const std::vector<uint16_t>& coeffs, uint32_t p) {
  if (coeffs.size() < 2 || coeffs.back() != 1)
    throw std::invalid_argument("modulus must be monic of degree >= 1");
  for (uint16_t c : coeffs)
    if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
  const size_t d = coeffs.size() - 1;
  if (d == 1) return true;
  if (coeffs[0] == 0) return false;  // divisible by x
  // trial division by every monic polynomial of degree 1..d/2
  for (size_t dd = 1; 2 * dd <= d; ++dd) {
    uint64_t count = 1;
    for (size_t i = 0; i < dd; ++i) count *= p;
    for (uint64_t v = 0; v < count; ++v) {
      Poly div = value_to_poly(static_cast<uint32_t>(v), p);
      div.resize(dd + 1, 0);
      div[dd] = 1;
      if (divides(div, coeffs, p)) return false;
    }
  }
  return true;
}

std::vector<uint16_t> default_modulus(uint32_t p, uint32_t e) {
  if (e == 1) return {0, 1};  // x
  uint64_t count = 1;
  for (uint32_t i = 0; i < e; ++i) count *= p;
  for (uint64_t v = 0; v < count; ++v) {
    Poly m = value_to_poly(static_cast<uint32_t>(v), p);
    m.resize(e + 1, 0);
    m[e] = 1;
    if (polynomial_irreducible(m, p)) return m;
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

Field::Field(uint32_t p, uint32_t e, std::optional<std::vector<uint16_t>> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic is not prime");
  if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > 65536) throw std::invalid_argument("field order exceeds 2^16");
  }
  p_ = p;
  e_ = e;
  q_ = static_cast<uint32_t>(q);
  if (modulus) {
    modulus_ = std::move(*modulus);
    if (modulus_.size() != e + 1 || modulus_.back() != 1)
      throw std::invalid_argument("modulus must be monic of degree e");
    if (e > 1 && !polynomial_irreducible(modulus_, p))
      throw std::invalid_argument("modulus is reducible over GF(p)");
    for (uint16_t c : modulus_)
      if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
  } else {
    modulus_ = default_modulus(p, e);
  }
  build_tables();
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(p_);
  mix(e_);
  for (uint16_t c : modulus_) mix(c);
  key_ = h;
}

void Field::build_tables() {
  // negation / addition
  if (p_ != 2) {
    neg_.resize(q_);
    for (uint32_t a = 0; a < q_; ++a) {
      uint32_t v = a, out = 0, mult = 1;
      while (v) {
        out += ((p_ - v % p_) % p_) * mult;
        mult *= p_;
        v /= p_;
      }
      neg_[a] = static_cast<uint16_t>(out);
    }
    if (q_ <= 512) {
      add_.resize(static_cast<size_t>(q_) * q_);
      for (uint32_t a = 0; a < q_; ++a)
        for (uint32_t b = 0; b < q_; ++b) {
          uint32_t va = a, vb = b, out = 0, mult = 1;
          while (va || vb) {
            out += ((va % p_ + vb % p_) % p_) * mult;
            mult *= p_;
            va /= p_;
            vb /= p_;
          }
          add_[static_cast<size_t>(a) * q_ + b] = static_cast<uint16_t>(out);
        }
    }
  }

  // exp/log via a primitive element: walk powers, retry the next candidate on
  // early return to 1
  exp_.assign(2 * (q_ - 1), 0);
  log_.assign(q_, 0);
  if (q_ == 2) {
    generator_ = 1;
    exp_[0] = 1;
    exp_[1] = 1;
    log_[1] = 0;
    return;
  }
  for (uint32_t cand = 2; cand < q_; ++cand) {
    Poly g = value_to_poly(cand, p_);
    Poly b = {1};
    uint32_t order = 0;
    for (uint32_t j = 1; j <= q_ - 1; ++j) {
      b = poly_mulmod(b, g, modulus_, p_);
      if (poly_to_value(b, p_) == 1) {
        order = j;
        break;
      }
    }
    if (order != q_ - 1) continue;
    generator_ = static_cast<uint16_t>(cand);
    Poly cur = {1};
    for (uint32_t j = 0; j < q_ - 1; ++j) {
      uint16_t v = static_cast<uint16_t>(poly_to_value(cur, p_));
      exp_[j] = v;
      exp_[j + q_ - 1] = v;
      log_[v] = static_cast<uint16_t>(j);
      cur = poly_mulmod(cur, g, modulus_, p_);
    }
    return;
  }
  throw std::logic_error("no primitive element found");  // unreachable
}

uint16_t Field::add_general(uint16_t a, uint16_t b) const {
  if (!add_.empty()) return add_[static_cast<size_t>(a) * q_ + b];
  uint32_t va = a, vb = b, out = 0, mult = 1;
  while (va || vb) {
    out += ((va % p_ + vb % p_) % p_) * mult;
    mult *= p_;
    va /= p_;
    vb /= p_;
  }
  return static_cast<uint16_t>(out);
}

uint16_t Field::pow(uint16_t a, int64_t n) const {
  if (a == 0) {
    if (n == 0) return 1;
    if (n < 0) throw std::domain_error("division by zero in " + name());
    return 0;
  }
  int64_t m = q_ - 1;
  int64_t r = ((n % m) + m) % m;
  uint64_t idx = (static_cast<uint64_t>(log_[a]) * static_cast<uint64_t>(r)) % m;
  return exp_[idx];
}

std::string Field::name() const {
  if (e_ == 1) return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(q_) + ")";
}

FieldPtr make_field(uint32_t p, uint32_t e, std::optional<std::vector<uint16_t>> modulus) {
  return std::make_shared<const Field>(p, e, std::move(modulus));
}

FieldPtr make_field_of_order(uint32_t q) {
  if (q < 2) throw std::invalid_argument("field order must be >= 2");
  uint32_t p = 0;
  for (uint32_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return make_field(q, 1);
  uint32_t e = 0, v = q;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  if (v != 1) throw std::invalid_argument("order is not a prime power");
  return make_field(p, e);
}

std::vector<uint16_t> subfield_embedding(const Field& sub, const Field& big) {
  if (sub.characteristic() != big.characteristic() ||
      big.degree() % sub.degree() != 0)
    throw std::invalid_argument("no subfield embedding");
  const uint32_t p = sub.characteristic();
  if (sub.key() == big.key()) {
    std::vector<uint16_t> id(sub.order());
    for (uint32_t v = 0; v < sub.order(); ++v) id[v] = static_cast<uint16_t>(v);
    return id;
  }
  // find a root of sub's modulus in big
  const auto& m = sub.modulus();
  uint16_t root = 0;
  bool found = false;
  for (uint32_t beta = 0; beta < big.order(); ++beta) {
    uint16_t acc = 0, pw = 1;
    for (size_t i = 0; i < m.size(); ++i) {
      acc = big.add(acc, big.mul(m[i] % p, pw));
      pw = big.mul(pw, static_cast<uint16_t>(beta));
    }
    if (acc == 0) {
      root = static_cast<uint16_t>(beta);
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("embedding root not found");
  std::vector<uint16_t> table(sub.order());
  for (uint32_t v = 0; v < sub.order(); ++v) {
    uint32_t digits = v;
    uint16_t acc = 0, pw = 1;
    while (digits) {
      acc = big.add(acc, big.mul(static_cast<uint16_t>(digits % p), pw));
      pw = big.mul(pw, root);
      digits /= p;
    }
    table[v] = acc;
  }
  return table;
}

}  // namespace surfacecodes
