// Finite fields F_{p^k} of odd characteristic.
//
// Every element is stored as a single integer code c_0 + c_1 p + ... + c_{k-1} p^{k-1}
// where (c_0, ..., c_{k-1}) are its coordinates in the power basis of a root t of the
// field modulus. Code order is the canonical element order: it starts 0, 1, 2, ... and
// compares the highest-degree coordinate first.
//
// Three arithmetic backends share that encoding:
//   * prime fields (k == 1): plain modular arithmetic,
//   * small extensions (q <= 2^21): exp/log/Zech-logarithm tables,
//   * large scratch extensions: coefficient-vector arithmetic modulo the modulus.
#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fulldp::gf {

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raw element code. Only meaningful together with the Field that produced it.
struct Elem {
  std::uint32_t code = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(std::uint64_t n);

/// Returns the (cached) field of order p^k whose modulus is the lexicographically
/// smallest monic irreducible polynomial of degree k over F_p.
FieldPtr make_field(std::uint32_t p, std::uint32_t k);

/// Field of order q; q must be an odd prime power.
FieldPtr make_field_of_order(std::uint64_t q);

/// Accepts "q", "p^k" or the full serialization "p^k:m0,m1,...,mk".
FieldPtr parse_field(std::string_view text);

class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = 2565726409ULL;  // 37^6

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }

  /// Monic modulus, coefficients low to high (k + 1 entries).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  bool same_as(const Field& other) const {
    return this == &other || (p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_);
  }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  Elem from_int(std::int64_t v) const;
  Elem from_coords(std::span<const std::uint32_t> coords) const;
  std::vector<std::uint32_t> coords(Elem x) const;

  /// Root t of the modulus (the power-basis generator); 0 for prime fields.
  Elem generator() const { return k_ == 1 ? Elem{0} : Elem{p_}; }
  bool in_prime_subfield(Elem x) const { return x.code < p_; }

  /// The index-th element in canonical order.
  Elem element(std::uint32_t index) const { return Elem{index}; }
  std::vector<Elem> enumerate() const;

  Elem add(Elem a, Elem b) const {
    if (k_ == 1) {
      std::uint32_t s = a.code + b.code;
      return Elem{s >= p_ ? s - p_ : s};
    }
    return add_ext(a, b);
  }
  Elem neg(Elem a) const {
    if (k_ == 1) return Elem{a.code == 0 ? 0 : p_ - a.code};
    return neg_ext(a);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (k_ == 1) return Elem{static_cast<std::uint32_t>((std::uint64_t{a.code} * b.code) % p_)};
    if (a.code == 0 || b.code == 0) return Elem{0};
    if (!log_.empty()) {
      std::uint32_t s = log_[a.code] + log_[b.code];
      if (s >= q_ - 1) s -= q_ - 1;
      return Elem{exp_[s]};
    }
    return mul_vec(a, b);
  }
  Elem sqr(Elem a) const { return mul(a, a); }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// True iff x = 0 or x^((q-1)/2) = 1.
  bool is_square(Elem x) const;
  /// Canonical square root: the smaller code of the +/- pair.
  std::optional<Elem> sqrt(Elem x) const;
  /// The smallest non-square in canonical order.
  Elem nonsquare() const { return nonsquare_; }

  Elem frobenius(Elem x) const { return k_ == 1 ? x : pow(x, p_); }

  /// `p^k:m0,...,mk`
  std::string serialize() const;
  /// Comma-separated coordinates, low degree first.
  std::string format(Elem x) const;
  Elem parse(std::string_view text) const;

  // Construction goes through make_field(); public only for std::make_shared.
  Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);

 private:
  Elem add_ext(Elem a, Elem b) const;
  Elem neg_ext(Elem a) const;
  Elem mul_vec(Elem a, Elem b) const;
  void build_tables();
  Elem tonelli_shanks(Elem x) const;

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^i, i = 0..k

  // Table backend (k > 1, q <= kTableLimit). exp_ has q - 1 entries; log_[0] unused.
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;  // log(1 + g^n), kNoLog when 1 + g^n = 0
  Elem nonsquare_{0};
};

/// Checked element: carries its field and rejects mixed-field arithmetic.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {}
  FieldElement(FieldPtr field, std::int64_t v);

  const FieldPtr& field() const { return field_; }
  Elem raw() const { return value_; }
  std::vector<std::uint32_t> coords() const { return field_->coords(value_); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return {field_, field_->neg(value_)}; }
  bool operator==(const FieldElement& o) const;

  FieldElement inv() const { return {field_, field_->inv(value_)}; }
  FieldElement pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }
  FieldElement frobenius() const { return {field_, field_->frobenius(value_)}; }
  bool is_square() const { return field_->is_square(value_); }
  std::optional<FieldElement> sqrt() const;
  std::string to_string() const { return field_->format(value_); }

 private:
  const Field& checked(const FieldElement& o) const;

  FieldPtr field_;
  Elem value_;
};

/// Field homomorphism src -> tgt over F_p. The image of the source generator is the
/// root of the source modulus in tgt with the smallest code.
class Embedding {
 public:
  static Embedding make(FieldPtr src, FieldPtr tgt);

  const FieldPtr& source() const { return src_; }
  const FieldPtr& target() const { return tgt_; }
  Elem image_of_generator() const { return image_; }
  Elem apply(Elem x) const;

 private:
  Embedding(FieldPtr src, FieldPtr tgt, Elem image);

  FieldPtr src_;
  FieldPtr tgt_;
  Elem image_;
  std::vector<Elem> basis_images_;  // image^i, i < src.k
};

}  // namespace fulldp::gf
