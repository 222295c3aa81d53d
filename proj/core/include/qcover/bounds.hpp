#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qcover/design.hpp"

namespace qcover {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// [n l]_q, exact. Returns 0 when l > n so recursions need no edge cases.
BigCount gaussian(unsigned n, unsigned l, std::uint32_t q);

BigCount ceil_div(const BigCount& num, const BigCount& den);
BigCount ceil(const Rational& x);

// Covering-number bounds. Every function expects 1 <= r <= k <= n and q >= 2
// unless stated otherwise, and throws InvalidArgument outside that range.

/// [n r]_q / [k r]_q as an exact rational.
Rational basic_ratio(unsigned n, unsigned k, unsigned r, std::uint32_t q);
/// Ceiling of basic_ratio; equality with a covering's size forces a Steiner structure.
BigCount basic_lower(unsigned n, unsigned k, unsigned r, std::uint32_t q);

/// Iterated Schonheim recursion C(n,k,r) >= ceil((q^n-1)/(q^k-1) C(n-1,k-1,r-1)),
/// bottoming out at the exact line-covering value for r = 1.
BigCount schonheim_lower(unsigned n, unsigned k, unsigned r, std::uint32_t q);

/// de Caen-type bound for r = k - 1: C(n,k,k-1) >= (q^k-1)(q-1)/(q^{n-k}-1)^2 [n k+1]_q.
/// Needs 1 <= k < n.
BigCount decaen_lower(unsigned n, unsigned k, std::uint32_t q);
/// Turan form: T(n,r+1,r) >= (q^{n-r}-1)(q-1)/(q^r-1)^2 [n r-1]_q. Needs 1 <= r < n.
BigCount decaen_turan_lower(unsigned n, unsigned r, std::uint32_t q);

struct ExactValue {
  BigCount value;
  std::string source;
};

/// The covering number where it is known exactly: k = n, r = k, r = 1,
/// k = n - 1, and C_2(5,3,2) = 27. nullopt elsewhere.
std::optional<ExactValue> exact_value(unsigned n, unsigned k, unsigned r, std::uint32_t q);

/// T(n,k,r) <= [n-k+r r]_q: all r-subspaces of one (n-k+r)-subspace.
BigCount turan_upper(unsigned n, unsigned k, unsigned r, std::uint32_t q);
/// C(n,k,r) = T(n,n-r,n-k) <= [n-k+r r]_q.
BigCount covering_upper_trivial(unsigned n, unsigned k, unsigned r, std::uint32_t q);

/// Upper bound source for C(m, j, s); nullopt means "unknown".
using UpperLookup = std::function<std::optional<BigCount>(unsigned m, unsigned j, unsigned s)>;

/// C(n,k,r) <= q^{n-k} C(n-1,k-1,r-1) + C(n-1,k,r), needs k < n. Sub-values with
/// r - 1 = 0 are taken as 1 without consulting the lookup. Missing entries throw.
BigCount recursive_upper(unsigned n, unsigned k, unsigned r, std::uint32_t q, const UpperLookup& lookup);

/// A covering that passed verify_covering; only register_covering makes one.
class RegisteredCovering {
 public:
  std::uint32_t q() const { return q_; }
  unsigned n() const { return n_; }
  unsigned k() const { return k_; }
  unsigned r() const { return r_; }
  std::uint64_t size() const { return size_; }
  const std::string& source() const { return source_; }

 private:
  friend RegisteredCovering register_covering(const SubspaceDesign&, unsigned, std::string, const VerifyOptions&);
  RegisteredCovering(std::uint32_t q, unsigned n, unsigned k, unsigned r, std::uint64_t size, std::string source)
      : q_(q), n_(n), k_(k), r_(r), size_(size), source_(std::move(source)) {}

  std::uint32_t q_;
  unsigned n_, k_, r_;
  std::uint64_t size_;
  std::string source_;
};

/// Verifies d as a C_q[n,k,r] and returns it as an upper-bound witness;
/// throws VerificationFailed otherwise.
RegisteredCovering register_covering(const SubspaceDesign& d, unsigned r, std::string source,
                                     const VerifyOptions& options = {});

struct BoundRecord {
  std::uint32_t q = 2;
  unsigned n = 0, k = 0, r = 0;
  BigCount lower;
  std::string lower_source;
  BigCount upper;
  std::string upper_source;

  bool exact() const { return lower == upper; }
};

/// Best known bounds on C_q(n,k,r) for 1 <= r <= k <= n <= n_max.
///
/// Lower bounds combine the ratio, Schonheim (also re-applied to neighbouring
/// table entries), de Caen and exact values; upper bounds combine the
/// recursive construction over table entries, the Turan-subspace bound, the
/// all-subspaces bound, exact values and registered coverings. Propagation
/// runs to a fixed point.
class BoundTable {
 public:
  static BoundTable build(std::uint32_t q, unsigned n_max, std::span<const RegisteredCovering> registered = {});

  std::uint32_t q() const { return q_; }
  unsigned n_max() const { return n_max_; }

  const BoundRecord& at(unsigned n, unsigned k, unsigned r) const;
  const BoundRecord* find(unsigned n, unsigned k, unsigned r) const;
  /// T_q(n,k,r) read through C_q(n,k,r) = T_q(n,n-r,n-k); parameters are Turan-style (r <= k).
  BoundRecord turan(unsigned n, unsigned k, unsigned r) const;

  /// One propagation sweep; true if any bound moved.
  bool propagate();

  /// Records in (n, k, r) order.
  std::vector<BoundRecord> records() const;

  void write_text(std::ostream& out) const;
  void write_csv(std::ostream& out) const;

 private:
  BoundTable(std::uint32_t q, unsigned n_max) : q_(q), n_max_(n_max) {}

  std::uint32_t q_;
  unsigned n_max_;
  std::map<std::tuple<unsigned, unsigned, unsigned>, BoundRecord> entries_;
  std::vector<RegisteredCovering> registered_;
};

/// Column header shared by both export formats.
inline constexpr const char* kBoundColumns = "n,k,r,lower,lower_src,upper,upper_src,exact";

}  // namespace qcover
