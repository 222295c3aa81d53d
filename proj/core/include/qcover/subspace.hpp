#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcover/vector_space.hpp"

namespace qcover {

/// Hard cap on the number of subspaces any single enumeration may produce.
inline constexpr std::uint64_t kSubspaceBudget = 10'000'000;

/// Subspace of F_q^n held as its reduced row-echelon generator matrix.
///
/// Pivots are the first nonzero coordinate of each row, strictly increasing,
/// with pivot entries 1 and zeros above and below every pivot. Two subspaces
/// are equal as vector sets iff these matrices are identical, so equality and
/// hashing are plain matrix comparisons.
class Subspace {
 public:
  /// The zero subspace.
  explicit Subspace(SpacePtr space);

  static Subspace span(SpacePtr space, std::span<const Code> vectors);
  static Subspace span(SpacePtr space, std::span<const VectorFq> vectors);
  static Subspace full(SpacePtr space);
  /// Span of the unit vectors e_first, ..., e_{first+count-1}.
  static Subspace coordinate(SpacePtr space, unsigned first, unsigned count);

  const VectorSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  unsigned dimension() const { return static_cast<unsigned>(rows_.size()); }
  unsigned ambient_dimension() const { return space_->dimension(); }
  std::span<const Code> rows() const { return rows_; }
  std::span<const unsigned> pivots() const { return pivots_; }

  /// v minus its components along the pivot rows; zero iff v lies in this
  /// subspace, and equal for two vectors iff they share a coset.
  Code reduce(Code v) const;
  bool contains(Code v) const { return reduce(v) == 0; }
  bool contains(const VectorFq& v) const;
  bool contains(const Subspace& other) const;

  /// All q^dim vectors, zero first; vector t is sum_i digit_i(t) * row_i.
  std::vector<Code> vectors() const;

  std::size_t hash() const;
  std::string str() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.rows_ == b.rows_ && *a.space_ == *b.space_;
  }

 private:
  friend class GrassmannianCursor;
  Subspace(SpacePtr space, std::vector<Code> rows, std::vector<unsigned> pivots);

  SpacePtr space_;
  std::vector<Code> rows_;
  std::vector<unsigned> pivots_;
};

/// Order in which enumerate_grassmannian yields subspaces: pivot sets
/// lexicographically, then the row-major entries.
bool enumeration_less(const Subspace& a, const Subspace& b);

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

bool contains_subspace(const Subspace& a, const Subspace& b);
bool contains_vector(const Subspace& a, const VectorFq& v);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
/// Complement under the standard dot product.
Subspace orthogonal_complement(const Subspace& a);

/// One representative per coset of p in w; the first is 0 and each is the
/// first vector of its coset in w's enumeration order.
std::vector<Code> coset_representatives(const Subspace& p, const Subspace& w);
std::vector<VectorFq> cosets(const Subspace& p, const Subspace& w);

std::vector<VectorFq> enumerate_vectors(const Subspace& s);

/// Every r-dimensional subspace of s, each exactly once.
void for_each_subspace_of(const Subspace& s, unsigned r, const std::function<void(const Subspace&)>& fn);
std::vector<Subspace> subspaces_of(const Subspace& s, unsigned r);

/// [n choose k]_q as a 64-bit value, saturated at UINT64_MAX.
std::uint64_t gaussian_u64(unsigned n, unsigned k, std::uint64_t q);
std::uint64_t binomial_u64(unsigned n, unsigned k);

/// Streams G_q(n, k) in enumeration order: pivot sets lexicographically, free
/// entries as an odometer whose last (row-major) position turns fastest.
///
/// A cursor can be restricted to a contiguous range of pivot-set ranks so that
/// independent workers can split one Grassmannian deterministically.
class GrassmannianCursor {
 public:
  GrassmannianCursor(SpacePtr space, unsigned k);
  GrassmannianCursor(SpacePtr space, unsigned k, std::uint64_t first_pivot_set, std::uint64_t last_pivot_set);

  std::optional<Subspace> next();

  /// Number of pivot sets, C(n, k).
  std::uint64_t pivot_set_count() const { return binomial_u64(space_->dimension(), k_); }
  /// Number of subspaces in each pivot set, in rank order.
  static std::vector<std::uint64_t> pivot_set_sizes(const VectorSpace& space, unsigned k);

 private:
  bool load_pivot_set();
  bool advance_pivots();
  Subspace build() const;

  SpacePtr space_;
  unsigned k_;
  std::uint64_t rank_ = 0;
  std::uint64_t last_rank_;
  std::vector<unsigned> pivots_;
  std::vector<std::pair<unsigned, unsigned>> free_;  // (row, column)
  std::vector<Element> values_;
  bool started_ = false;
  bool done_ = false;
};

/// Checks the enumeration budget, then opens a cursor over G_q(n, k).
GrassmannianCursor enumerate_grassmannian(SpacePtr space, unsigned k);

void for_each_in_grassmannian(const SpacePtr& space, unsigned k, const std::function<void(const Subspace&)>& fn);

}  // namespace qcover

template <>
struct std::hash<qcover::Subspace> {
  std::size_t operator()(const qcover::Subspace& s) const { return s.hash(); }
};
