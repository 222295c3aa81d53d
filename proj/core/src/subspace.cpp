#include "qcover/subspace.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "qcover/error.hpp"

namespace qcover {

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b, const char* op) {
  if (!(a.space() == b.space())) throw InvalidArgument(std::string(op) + ": subspaces live in different ambient spaces");
}

__extension__ using u128 = unsigned __int128;
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  const u128 p = static_cast<u128>(a) * b;
  return p > kSaturated ? kSaturated : static_cast<std::uint64_t>(p);
}

std::uint64_t sat_pow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r = sat_mul(r, base);
  return r;
}

}  // namespace

Subspace::Subspace(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw InvalidArgument("subspace without an ambient space");
}

Subspace::Subspace(SpacePtr space, std::vector<Code> rows, std::vector<unsigned> pivots)
    : space_(std::move(space)), rows_(std::move(rows)), pivots_(std::move(pivots)) {}

Subspace Subspace::span(SpacePtr space, std::span<const Code> vectors) {
  if (!space) throw InvalidArgument("span without an ambient space");
  const VectorSpace& vs = *space;
  const Field& f = vs.field();
  std::vector<Code> work;
  work.reserve(vectors.size());
  for (Code v : vectors) {
    if (v != 0) work.push_back(v);
  }
  std::vector<unsigned> pivots;
  std::size_t rank = 0;
  for (unsigned col = 0; col < vs.dimension() && rank < work.size(); ++col) {
    std::size_t pick = rank;
    while (pick < work.size() && vs.coord(work[pick], col) == 0) ++pick;
    if (pick == work.size()) continue;
    std::swap(work[rank], work[pick]);
    work[rank] = vs.scale(f.inv(vs.coord(work[rank], col)), work[rank]);
    for (std::size_t j = 0; j < work.size(); ++j) {
      if (j == rank) continue;
      const Element c = vs.coord(work[j], col);
      if (c != 0) work[j] = vs.axpy(work[j], f.neg(c), work[rank]);
    }
    pivots.push_back(col);
    ++rank;
  }
  work.resize(rank);
  return Subspace(std::move(space), std::move(work), std::move(pivots));
}

Subspace Subspace::span(SpacePtr space, std::span<const VectorFq> vectors) {
  std::vector<Code> codes;
  codes.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (!(v.space() == *space)) throw InvalidArgument("span: vectors from different ambient spaces");
    codes.push_back(v.code());
  }
  return span(std::move(space), codes);
}

Subspace Subspace::full(SpacePtr space) { return coordinate(space, 0, space->dimension()); }

Subspace Subspace::coordinate(SpacePtr space, unsigned first, unsigned count) {
  if (first + count > space->dimension()) throw InvalidArgument("coordinate subspace exceeds the ambient dimension");
  std::vector<Code> rows;
  std::vector<unsigned> pivots;
  for (unsigned i = first; i < first + count; ++i) {
    rows.push_back(space->unit(i));
    pivots.push_back(i);
  }
  return Subspace(std::move(space), std::move(rows), std::move(pivots));
}

Code Subspace::reduce(Code v) const {
  const Field& f = space_->field();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Element c = space_->coord(v, pivots_[i]);
    if (c != 0) v = space_->axpy(v, f.neg(c), rows_[i]);
  }
  return v;
}

bool Subspace::contains(const VectorFq& v) const {
  if (!(v.space() == *space_)) throw InvalidArgument("contains: vector from a different ambient space");
  return contains(v.code());
}

bool Subspace::contains(const Subspace& other) const {
  require_same_ambient(*this, other, "contains");
  if (other.dimension() > dimension()) return false;
  for (Code r : other.rows_) {
    if (reduce(r) != 0) return false;
  }
  return true;
}

std::vector<Code> Subspace::vectors() const {
  const std::uint64_t count = sat_pow(space_->q(), dimension());
  if (count > kVectorBudget) {
    throw BudgetExceeded("enumerating " + std::to_string(count) + " vectors exceeds the budget of 2^24");
  }
  const Element q = space_->q();
  std::vector<Code> out;
  out.reserve(count);
  std::vector<Element> digits(dimension(), 0);
  for (std::uint64_t t = 0; t < count; ++t) {
    Code v = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] != 0) v = space_->axpy(v, digits[i], rows_[i]);
    }
    out.push_back(v);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < q) break;
      digits[i] = 0;
    }
  }
  return out;
}

std::size_t Subspace::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ rows_.size();
  for (Code r : rows_) {
    h ^= r + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

std::string Subspace::str() const {
  if (rows_.empty()) return "<0>";
  std::string out = "<";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) out += ' ';
    out += space_->format(rows_[i]);
  }
  return out + ">";
}

bool enumeration_less(const Subspace& a, const Subspace& b) {
  if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
  const auto pa = a.pivots();
  const auto pb = b.pivots();
  if (!std::equal(pa.begin(), pa.end(), pb.begin())) {
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  }
  const VectorSpace& vs = a.space();
  for (unsigned i = 0; i < a.dimension(); ++i) {
    const Code ra = a.rows()[i];
    const Code rb = b.rows()[i];
    if (ra == rb) continue;
    for (unsigned c = 0; c < vs.dimension(); ++c) {
      const Element x = vs.coord(ra, c);
      const Element y = vs.coord(rb, c);
      if (x != y) return x < y;
    }
  }
  return false;
}

bool contains_subspace(const Subspace& a, const Subspace& b) { return a.contains(b); }

bool contains_vector(const Subspace& a, const VectorFq& v) { return a.contains(v); }

Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "sum");
  std::vector<Code> all(a.rows().begin(), a.rows().end());
  all.insert(all.end(), b.rows().begin(), b.rows().end());
  return Subspace::span(a.space_ptr(), all);
}

Subspace orthogonal_complement(const Subspace& a) {
  const VectorSpace& vs = a.space();
  const Field& f = vs.field();
  std::vector<bool> is_pivot(vs.dimension(), false);
  for (unsigned p : a.pivots()) is_pivot[p] = true;
  std::vector<Code> basis;
  for (unsigned col = 0; col < vs.dimension(); ++col) {
    if (is_pivot[col]) continue;
    Code v = vs.unit(col);
    for (unsigned i = 0; i < a.dimension(); ++i) {
      v = vs.with_coord(v, a.pivots()[i], f.neg(vs.coord(a.rows()[i], col)));
    }
    basis.push_back(v);
  }
  return Subspace::span(a.space_ptr(), basis);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "intersect");
  return orthogonal_complement(sum(orthogonal_complement(a), orthogonal_complement(b)));
}

std::vector<Code> coset_representatives(const Subspace& p, const Subspace& w) {
  if (!w.contains(p)) throw InvalidArgument("cosets: the subspace is not contained in the outer space");
  std::unordered_set<Code> seen;
  std::vector<Code> reps;
  for (Code v : w.vectors()) {
    if (seen.insert(p.reduce(v)).second) reps.push_back(v);
  }
  return reps;
}

std::vector<VectorFq> cosets(const Subspace& p, const Subspace& w) {
  std::vector<VectorFq> out;
  for (Code c : coset_representatives(p, w)) out.emplace_back(p.space_ptr(), c);
  return out;
}

std::vector<VectorFq> enumerate_vectors(const Subspace& s) {
  std::vector<VectorFq> out;
  for (Code c : s.vectors()) out.emplace_back(s.space_ptr(), c);
  return out;
}

void for_each_subspace_of(const Subspace& s, unsigned r, const std::function<void(const Subspace&)>& fn) {
  if (r > s.dimension()) {
    throw InvalidArgument("cannot take " + std::to_string(r) + "-subspaces of a " + std::to_string(s.dimension()) +
                          "-dimensional subspace");
  }
  const VectorSpace& ambient = s.space();
  auto local = VectorSpace::create(ambient.field_ptr(), s.dimension());
  auto cursor = enumerate_grassmannian(local, r);
  std::vector<Code> mapped(r);
  while (auto sub = cursor.next()) {
    for (unsigned i = 0; i < r; ++i) {
      Code v = 0;
      const Code coeffs = sub->rows()[i];
      for (unsigned j = 0; j < s.dimension(); ++j) {
        const Element c = local->coord(coeffs, j);
        if (c != 0) v = ambient.axpy(v, c, s.rows()[j]);
      }
      mapped[i] = v;
    }
    fn(Subspace::span(s.space_ptr(), mapped));
  }
}

std::vector<Subspace> subspaces_of(const Subspace& s, unsigned r) {
  std::vector<Subspace> out;
  for_each_subspace_of(s, r, [&](const Subspace& t) { out.push_back(t); });
  return out;
}

std::uint64_t gaussian_u64(unsigned n, unsigned k, std::uint64_t q) {
  if (k > n) return 0;
  // [n k] = [n-1 k-1] + q^k [n-1 k]
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    for (unsigned j = std::min(m, k); j >= 1; --j) {
      row[j] = sat_add(row[j - 1], sat_mul(sat_pow(q, j), row[j]));
    }
  }
  return row[k];
}

std::uint64_t binomial_u64(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(r);
}

GrassmannianCursor::GrassmannianCursor(SpacePtr space, unsigned k)
    : GrassmannianCursor(std::move(space), k, 0, kSaturated) {}

GrassmannianCursor::GrassmannianCursor(SpacePtr space, unsigned k, std::uint64_t first_pivot_set,
                                       std::uint64_t last_pivot_set)
    : space_(std::move(space)), k_(k), rank_(first_pivot_set) {
  if (!space_) throw InvalidArgument("cursor without an ambient space");
  if (k_ > space_->dimension()) {
    throw InvalidArgument("no " + std::to_string(k_) + "-subspaces in dimension " +
                          std::to_string(space_->dimension()));
  }
  last_rank_ = std::min(last_pivot_set, pivot_set_count());
}

bool GrassmannianCursor::advance_pivots() {
  const unsigned n = space_->dimension();
  for (unsigned i = k_; i-- > 0;) {
    if (pivots_[i] < n - k_ + i) {
      ++pivots_[i];
      for (unsigned j = i + 1; j < k_; ++j) pivots_[j] = pivots_[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool GrassmannianCursor::load_pivot_set() {
  const unsigned n = space_->dimension();
  std::vector<bool> is_pivot(n, false);
  for (unsigned p : pivots_) is_pivot[p] = true;
  free_.clear();
  for (unsigned i = 0; i < k_; ++i) {
    for (unsigned c = pivots_[i] + 1; c < n; ++c) {
      if (!is_pivot[c]) free_.emplace_back(i, c);
    }
  }
  values_.assign(free_.size(), 0);
  return true;
}

Subspace GrassmannianCursor::build() const {
  std::vector<Code> rows(k_);
  for (unsigned i = 0; i < k_; ++i) rows[i] = space_->unit(pivots_[i]);
  for (std::size_t j = 0; j < free_.size(); ++j) {
    if (values_[j] != 0) {
      auto [row, col] = free_[j];
      rows[row] = space_->with_coord(rows[row], col, values_[j]);
    }
  }
  return Subspace(space_, std::move(rows), pivots_);
}

std::optional<Subspace> GrassmannianCursor::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    if (rank_ >= last_rank_) {
      done_ = true;
      return std::nullopt;
    }
    pivots_.resize(k_);
    for (unsigned i = 0; i < k_; ++i) pivots_[i] = i;
    for (std::uint64_t skip = 0; skip < rank_; ++skip) advance_pivots();
    load_pivot_set();
    return build();
  }
  const Element q = space_->q();
  for (std::size_t j = values_.size(); j-- > 0;) {
    if (++values_[j] < q) return build();
    values_[j] = 0;
  }
  ++rank_;
  if (rank_ >= last_rank_ || !advance_pivots()) {
    done_ = true;
    return std::nullopt;
  }
  load_pivot_set();
  return build();
}

std::vector<std::uint64_t> GrassmannianCursor::pivot_set_sizes(const VectorSpace& space, unsigned k) {
  const unsigned n = space.dimension();
  std::vector<std::uint64_t> sizes;
  if (k > n) return sizes;
  std::vector<unsigned> piv(k);
  for (unsigned i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    unsigned free_count = 0;
    for (unsigned i = 0; i < k; ++i) free_count += n - k - piv[i] + i;
    sizes.push_back(sat_pow(space.q(), free_count));
    unsigned i = k;
    while (i-- > 0) {
      if (piv[i] < n - k + i) break;
    }
    if (i == static_cast<unsigned>(-1)) break;
    ++piv[i];
    for (unsigned j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return sizes;
}

GrassmannianCursor enumerate_grassmannian(SpacePtr space, unsigned k) {
  if (k > space->dimension()) {
    throw InvalidArgument("no " + std::to_string(k) + "-subspaces in dimension " + std::to_string(space->dimension()));
  }
  const std::uint64_t count = gaussian_u64(space->dimension(), k, space->q());
  if (count > kSubspaceBudget) {
    throw BudgetExceeded("G_" + std::to_string(space->q()) + "(" + std::to_string(space->dimension()) + ", " +
                         std::to_string(k) + ") has " + std::to_string(count) +
                         " subspaces, over the enumeration budget of 10^7");
  }
  return GrassmannianCursor(std::move(space), k);
}

void for_each_in_grassmannian(const SpacePtr& space, unsigned k, const std::function<void(const Subspace&)>& fn) {
  auto cursor = enumerate_grassmannian(space, k);
  while (auto s = cursor.next()) fn(*s);
}

}  // namespace qcover
