#include "qcover/field.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "qcover/error.hpp"

namespace qcover {

namespace {

using Polynomial = Field::Polynomial;

// Remainder of a modulo the monic polynomial b, coefficients over GF(p).
Polynomial poly_mod(Polynomial a, const Polynomial& b, unsigned p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const unsigned lead = a.back() % p;
    const std::size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = (a[shift + i] + p - (lead * b[i]) % p) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

bool all_zero(const Polynomial& a) {
  for (unsigned c : a) {
    if (c != 0) return false;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Default moduli, constant term first.
const std::map<std::pair<unsigned, unsigned>, Polynomial>& default_table() {
  static const std::map<std::pair<unsigned, unsigned>, Polynomial> table = {
      {{2, 1}, {1, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 0, 0, 0, 1}},  // x^6 + x + 1
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{2, 9}, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
      {{2, 10}, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
      {{2, 11}, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{2, 12}, {1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 13}, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{2, 14}, {1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1}},
      {{2, 15}, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{2, 16}, {1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1}},
      {{3, 1}, {1, 1}},  // x + 1, alpha = 2
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
  };
  return table;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  unsigned m = 0;
  while (q % p == 0) {
    q /= p;
    ++m;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<unsigned>(p), m);
}

bool is_irreducible(unsigned p, const Polynomial& poly) {
  if (poly.size() < 2) return false;
  const unsigned m = static_cast<unsigned>(poly.size() - 1);
  if (m == 1) return true;
  for (unsigned d = 1; d <= m / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t low = 0; low < count; ++low) {
      Polynomial divisor(d + 1);
      std::uint64_t t = low;
      for (unsigned i = 0; i < d; ++i) {
        divisor[i] = static_cast<unsigned>(t % p);
        t /= p;
      }
      divisor[d] = 1;
      if (all_zero(poly_mod(poly, divisor, p))) return false;
    }
  }
  return true;
}

Field::Field(unsigned p, unsigned m, Polynomial modulus)
    : p_(p), m_(m), q_(static_cast<std::uint32_t>(ipow(p, m))), modulus_(std::move(modulus)) {
  exp_.assign(2 * (q_ - 1), 0);
  log_.assign(q_, 0);
  std::vector<bool> seen(q_, false);

  Element x = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    if (seen[x]) {
      throw InvalidArgument("designated generator of " + describe() + " is not primitive (order " +
                            std::to_string(i) + ")");
    }
    seen[x] = true;
    exp_[i] = x;
    exp_[i + q_ - 1] = x;
    log_[x] = i;

    if (m_ == 1) {
      const unsigned alpha = (p_ - modulus_[0] % p_) % p_;
      x = static_cast<Element>((static_cast<std::uint64_t>(x) * alpha) % p_);
    } else {
      // multiply by the class of x: shift digits up and fold x^m = -sum modulus_i x^i
      std::vector<unsigned> d = coefficients(x);
      const unsigned carry = d[m_ - 1];
      for (unsigned j = m_ - 1; j > 0; --j) d[j] = d[j - 1];
      d[0] = 0;
      for (unsigned j = 0; j < m_; ++j) {
        d[j] = (d[j] + p_ - (carry * modulus_[j]) % p_) % p_;
      }
      x = from_coefficients(d);
    }
  }
  if (x != 1) {
    throw InvalidArgument("designated generator of " + describe() + " is not primitive");
  }

  if (p_ != 2 && q_ <= 256) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Element a = 0; a < q_; ++a) {
      auto da = coefficients(a);
      for (Element b = 0; b < q_; ++b) {
        auto db = coefficients(b);
        for (unsigned j = 0; j < m_; ++j) db[j] = (da[j] + db[j]) % p_;
        add_table_[static_cast<std::size_t>(a) * q_ + b] = from_coefficients(db);
      }
    }
  }
}

std::shared_ptr<const Field> Field::create(unsigned p, unsigned m, std::optional<Polynomial> modulus) {
  if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
  if (m < 1) throw InvalidArgument("field extension degree must be at least 1");
  if (ipow(p, m) > kMaxOrder || m > 16) {
    throw InvalidArgument("field order " + std::to_string(p) + "^" + std::to_string(m) +
                          " exceeds 2^16");
  }
  Polynomial poly = modulus ? std::move(*modulus) : default_modulus(p, m);
  if (poly.size() != m + 1 || poly.back() != 1) {
    throw InvalidArgument("modulus must be monic of degree " + std::to_string(m));
  }
  for (unsigned c : poly) {
    if (c >= p) throw InvalidArgument("modulus coefficient out of range for GF(" + std::to_string(p) + ")");
  }
  if (!is_irreducible(p, poly)) throw InvalidArgument("modulus is reducible over GF(" + std::to_string(p) + ")");
  return std::shared_ptr<const Field>(new Field(p, m, std::move(poly)));
}

std::shared_ptr<const Field> Field::standard(std::uint32_t q) {
  static std::mutex mutex;
  static std::map<std::uint32_t, std::shared_ptr<const Field>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(q); it != cache.end()) return it->second;
  auto pm = prime_power(q);
  if (!pm) throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power");
  auto field = create(pm->first, pm->second);
  cache.emplace(q, field);
  return field;
}

Polynomial Field::default_modulus(unsigned p, unsigned m) {
  if (auto it = default_table().find({p, m}); it != default_table().end()) return it->second;
  if (!is_prime(p) || m < 1 || ipow(p, m) > kMaxOrder) {
    throw InvalidArgument("no default modulus for GF(" + std::to_string(p) + "^" + std::to_string(m) + ")");
  }
  const std::uint64_t count = ipow(p, m);
  for (std::uint64_t low = 1; low < count; ++low) {
    Polynomial poly(m + 1);
    std::uint64_t t = low;
    for (unsigned i = 0; i < m; ++i) {
      poly[i] = static_cast<unsigned>(t % p);
      t /= p;
    }
    poly[m] = 1;
    if (poly[0] == 0 || !is_irreducible(p, poly)) continue;
    try {
      Field probe(p, m, poly);
      return poly;
    } catch (const InvalidArgument&) {
      // irreducible but not primitive
    }
  }
  throw InvalidArgument("no primitive polynomial found");
}

Element Field::add(Element a, Element b) const {
  if (p_ == 2) return a ^ b;
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  Element out = 0;
  Element scale = 1;
  for (unsigned j = 0; j < m_; ++j) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

Element Field::neg(Element a) const {
  if (p_ == 2) return a;
  Element out = 0;
  Element scale = 1;
  for (unsigned j = 0; j < m_; ++j) {
    out += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

Element Field::sub(Element a, Element b) const { return add(a, neg(b)); }

Element Field::inv(Element a) const {
  if (a == 0) throw InvalidArgument("zero has no multiplicative inverse");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Element Field::pow(Element a, std::int64_t j) const {
  if (a == 0) {
    if (j < 0) throw InvalidArgument("zero raised to a negative power");
    return j == 0 ? 1 : 0;
  }
  const std::int64_t order = q_ - 1;
  std::int64_t e = (static_cast<std::int64_t>(log_[a]) * (((j % order) + order) % order)) % order;
  return exp_[static_cast<std::size_t>(e)];
}

Element Field::alpha_pow(std::int64_t j) const {
  const std::int64_t order = q_ - 1;
  return exp_[static_cast<std::size_t>(((j % order) + order) % order)];
}

std::uint32_t Field::log(Element a) const {
  if (a == 0 || a >= q_) throw InvalidArgument("logarithm of zero or out-of-range element");
  return log_[a];
}

std::vector<unsigned> Field::coefficients(Element a) const {
  std::vector<unsigned> d(m_);
  for (unsigned j = 0; j < m_; ++j) {
    d[j] = a % p_;
    a /= p_;
  }
  return d;
}

Element Field::from_coefficients(std::span<const unsigned> coeffs) const {
  Element out = 0;
  Element scale = 1;
  for (unsigned j = 0; j < m_ && j < coeffs.size(); ++j) {
    out += (coeffs[j] % p_) * scale;
    scale *= p_;
  }
  return out;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "GF(" << p_;
  if (m_ > 1) os << "^" << m_;
  os << ")";
  return os.str();
}

FieldElement::FieldElement(std::shared_ptr<const Field> field, Element value)
    : field_(std::move(field)), value_(value) {
  if (!field_) throw InvalidArgument("field element without a field");
  if (value_ >= field_->order()) throw InvalidArgument("element index out of range for " + field_->describe());
}

namespace {
void require_same(const FieldElement& a, const FieldElement& b) {
  if (!(a.field() == b.field())) {
    throw InvalidArgument("arithmetic between elements of " + a.field().describe() + " and " +
                          b.field().describe());
  }
}
}  // namespace

FieldElement FieldElement::pow(std::int64_t j) const { return {field_, field_->pow(value_, j)}; }

FieldElement FieldElement::inverse() const { return {field_, field_->inv(value_)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return {a.field_, a.field_->add(a.value_, b.value_)};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return {a.field_, a.field_->sub(a.value_, b.value_)};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return {a.field_, a.field_->mul(a.value_, b.value_)};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return {a.field_, a.field_->div(a.value_, b.value_)};
}

}  // namespace qcover
