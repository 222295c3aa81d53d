#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qcover {

/// A field element is the base-p integer encoding of its coefficient vector:
/// digit i is the coefficient of x^i in the polynomial representation.
using Element = std::uint32_t;

/// GF(p^m) with p^m <= 2^16.
///
/// The modulus is a monic polynomial of degree m over GF(p), stored constant
/// term first. Its root alpha is the designated primitive element; for m = 1
/// the modulus is x - alpha. Both irreducibility and primitivity are checked at
/// construction, and all multiplication goes through log/antilog tables.
///
/// Instances are immutable and meant to be shared through shared_ptr.
class Field {
 public:
  using Polynomial = std::vector<unsigned>;

  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  static std::shared_ptr<const Field> create(unsigned p, unsigned m,
                                             std::optional<Polynomial> modulus = std::nullopt);

  /// Process-wide cached field for q built from default_modulus.
  static std::shared_ptr<const Field> standard(std::uint32_t q);

  /// Built-in primitive polynomial (GF(64) uses x^6 + x + 1); falls back to the
  /// first primitive polynomial in lexicographic order when no table entry exists.
  static Polynomial default_modulus(unsigned p, unsigned m);

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  std::uint32_t order() const { return q_; }
  const Polynomial& modulus() const { return modulus_; }
  Element primitive() const { return exp_[1]; }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  /// a^j; negative exponents need a != 0.
  Element pow(Element a, std::int64_t j) const;
  /// alpha^j with j reduced mod q - 1.
  Element alpha_pow(std::int64_t j) const;
  /// Discrete log to base alpha, a != 0.
  std::uint32_t log(Element a) const;

  std::vector<unsigned> coefficients(Element a) const;
  Element from_coefficients(std::span<const unsigned> coeffs) const;

  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b) {
    return &a == &b || (a.p_ == b.p_ && a.m_ == b.m_ && a.modulus_ == b.modulus_);
  }

 private:
  Field(unsigned p, unsigned m, Polynomial modulus);

  unsigned p_;
  unsigned m_;
  std::uint32_t q_;
  Polynomial modulus_;
  std::vector<Element> exp_;        // alpha^i for i in [0, 2(q-1))
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<Element> add_table_;  // odd p and q <= 256 only
};

bool is_prime(std::uint64_t n);

/// Splits q = p^m; nullopt if q is not a prime power.
std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t q);

/// Exhaustive trial division by every monic polynomial of degree <= m/2.
bool is_irreducible(unsigned p, const Field::Polynomial& poly);

/// Value type pairing an element with its field; arithmetic across
/// different fields throws InvalidArgument.
class FieldElement {
 public:
  FieldElement(std::shared_ptr<const Field> field, Element value);

  static FieldElement alpha(std::shared_ptr<const Field> field) {
    Element a = field->primitive();
    return FieldElement(std::move(field), a);
  }

  const Field& field() const { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const { return field_; }
  Element value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement pow(std::int64_t j) const;
  FieldElement inverse() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return *a.field_ == *b.field_ && a.value_ == b.value_;
  }

 private:
  std::shared_ptr<const Field> field_;
  Element value_;
};

}  // namespace qcover
