#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfacecodes {

// Arithmetic in GF(p^e) for p^e <= 2^16. An element is a canonical integer in
// [0, q): the value sum(c_i p^i) encodes the residue sum(c_i x^i) modulo a
// monic irreducible polynomial of degree e over GF(p). Multiplication and
// inversion run on exp/log tables keyed to a fixed primitive element; addition
// is an XOR in characteristic 2 and a base-p digit sum otherwise.
class Field {
 public:
  // modulus: coefficient list c_0..c_e with c_e = 1, irreducible over GF(p).
  // When omitted, the lexicographically least irreducible monic polynomial of
  // degree e is selected, so field layouts are reproducible across runs.
  Field(uint32_t p, uint32_t e,
        std::optional<std::vector<uint16_t>> modulus = std::nullopt);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  uint32_t characteristic() const noexcept { return p_; }
  uint32_t degree() const noexcept { return e_; }
  uint32_t order() const noexcept { return q_; }
  const std::vector<uint16_t>& modulus() const noexcept { return modulus_; }
  uint16_t generator() const noexcept { return generator_; }

  uint16_t add(uint16_t a, uint16_t b) const {
    return p_ == 2 ? static_cast<uint16_t>(a ^ b) : add_general(a, b);
  }
  uint16_t neg(uint16_t a) const { return p_ == 2 ? a : neg_[a]; }
  uint16_t sub(uint16_t a, uint16_t b) const { return add(a, neg(b)); }
  uint16_t mul(uint16_t a, uint16_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[static_cast<uint32_t>(log_[a]) + log_[b]];
  }
  uint16_t inv(uint16_t a) const {
    if (a == 0) throw std::domain_error("division by zero in " + name());
    return exp_[q_ - 1 - log_[a]];
  }
  uint16_t div(uint16_t a, uint16_t b) const { return mul(a, inv(b)); }
  // pow(0, 0) = 1 by convention; negative exponents invert.
  uint16_t pow(uint16_t a, int64_t n) const;

  // exp(i) = g^i for the fixed primitive element g; log(a) is its inverse on
  // nonzero elements.
  uint16_t exp(uint32_t i) const { return exp_[i % (q_ - 1)]; }
  uint32_t log(uint16_t a) const {
    if (a == 0) throw std::domain_error("log of zero");
    return log_[a];
  }

  // Value identity: two Field instances with equal parameters agree element
  // by element, so cross-instance operands are fine when keys match.
  uint64_t key() const noexcept { return key_; }
  bool operator==(const Field& o) const noexcept { return key_ == o.key_; }
  bool operator!=(const Field& o) const noexcept { return key_ != o.key_; }

  std::string name() const;  // e.g. "GF(9)"

 private:
  uint16_t add_general(uint16_t a, uint16_t b) const;
  void build_tables();

  uint32_t p_ = 0, e_ = 0, q_ = 0;
  std::vector<uint16_t> modulus_;
  std::vector<uint16_t> exp_;   // length 2(q-1), doubled to skip a modulo
  std::vector<uint16_t> log_;   // length q, log_[0] unused
  std::vector<uint16_t> neg_;   // length q (empty when p = 2)
  std::vector<uint16_t> add_;   // q*q table when q <= 512 and p != 2
  uint16_t generator_ = 0;
  uint64_t key_ = 0;
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(uint32_t p, uint32_t e,
                    std::optional<std::vector<uint16_t>> modulus = std::nullopt);
// Factors q = p^e (p prime) and builds the default field of that order.
FieldPtr make_field_of_order(uint32_t q);

// Element wrapper used where operator syntax beats raw table calls. The field
// must outlive the element.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const Field& f, uint16_t v) : f_(&f), v_(v) {
    if (v >= f.order()) throw std::invalid_argument("element out of range");
  }

  uint16_t value() const noexcept { return v_; }
  const Field& field() const { return *f_; }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    a.check(b);
    return FieldElement(*a.f_, a.f_->add(a.v_, b.v_));
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    a.check(b);
    return FieldElement(*a.f_, a.f_->sub(a.v_, b.v_));
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    a.check(b);
    return FieldElement(*a.f_, a.f_->mul(a.v_, b.v_));
  }
  friend FieldElement operator/(FieldElement a, FieldElement b) {
    a.check(b);
    return FieldElement(*a.f_, a.f_->div(a.v_, b.v_));
  }
  FieldElement operator-() const { return FieldElement(*f_, f_->neg(v_)); }
  FieldElement pow(int64_t n) const { return FieldElement(*f_, f_->pow(v_, n)); }
  FieldElement inverse() const { return FieldElement(*f_, f_->inv(v_)); }
  bool operator==(const FieldElement& o) const {
    return f_->key() == o.f_->key() && v_ == o.v_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  void check(const FieldElement& o) const {
    if (f_ == nullptr || o.f_ == nullptr || *f_ != *o.f_)
      throw std::invalid_argument("field mismatch");
  }
  const Field* f_ = nullptr;
  uint16_t v_ = 0;
};

bool is_prime(uint32_t n) noexcept;

// Monic polynomial over GF(p), coefficient list c_0..c_d. Irreducibility is
// decided by trial division against all monic polynomials of degree <= d/2.
bool polynomial_irreducible(const std::vector<uint16_t>& coeffs, uint32_t p);
std::vector<uint16_t> default_modulus(uint32_t p, uint32_t e);

// Embedding table GF(p^e) -> GF(p^(e*k)) sending the modulus root of the small
// field to a root of the same polynomial in the big field. table[v] is the
// image of v; table[0..p) is the identity on the prime field.
std::vector<uint16_t> subfield_embedding(const Field& sub, const Field& big);

}  // namespace surfacecodes
