#include <vector>

#include "qcover/constructions.hpp"
#include "qcover/error.hpp"
#include "qcover/tower.hpp"

namespace qcover {

bool is_point_partition(std::span<const Subspace> parts) {
  if (parts.empty()) return false;
  const VectorSpace& vs = parts.front().space();
  const std::uint64_t total = vs.vector_count();
  if (total > (std::uint64_t{1} << 24)) throw BudgetExceeded("point partition check exceeds the vector budget of 2^24");
  std::vector<std::uint8_t> hits(total, 0);
  for (const auto& s : parts) {
    if (!(s.space() == vs)) throw InvalidArgument("point partition parts live in different spaces");
    for (Code v : s.vectors()) {
      if (v == 0) continue;
      auto& h = hits[vs.index_of(v)];
      if (h) return false;
      h = 1;
    }
  }
  for (std::uint64_t t = 1; t < total; ++t) {
    if (!hits[vs.index_of(vs.from_index(t))]) return false;
  }
  return true;
}

// Level by level: with u on the first rho free coordinates and w on the
// remaining m' = rest - rho, the blocks {(u, a*u) : u} for a in GF(q^{m'})
// cover every point with u != 0 exactly once. The points with u = 0 form the
// next level.
PartialSpreadResult partial_spread(std::uint32_t q, unsigned rho, unsigned n) {
  if (rho < 2 || n % rho == 0 || n < 2 * rho + n % rho) {
    throw InvalidArgument("partial spread needs n = s*rho + m with s >= 1 and rho < m < 2*rho, got rho = " +
                          std::to_string(rho) + ", n = " + std::to_string(n));
  }
  const auto pp = prime_power(q);
  if (!pp) throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power");
  const unsigned m = rho + n % rho;
  auto space = VectorSpace::standard(q, n);
  const auto base = Field::standard(q);

  PartialSpreadResult out{{}, Subspace(space)};
  unsigned offset = 0;
  while (n - offset > m) {
    const unsigned rest = n - offset - rho;
    const FieldTower tower(base, Field::create(pp->first, pp->second * rest));
    const Field& ext = tower.ext();
    const VectorSpace& local = *tower.space();
    std::vector<Element> basis(rho);
    for (unsigned i = 0; i < rho; ++i) basis[i] = tower.from_code(local.unit(i));

    std::vector<Code> rows(rho);
    for (Element a = 0; a < ext.order(); ++a) {
      for (unsigned i = 0; i < rho; ++i) {
        Code v = space->unit(offset + i);
        const Code w = tower.to_code(ext.mul(a, basis[i]));
        for (unsigned j = 0; j < rest; ++j) v = space->with_coord(v, offset + rho + j, local.coord(w, j));
        rows[i] = v;
      }
      out.blocks.push_back(Subspace::span(space, rows));
    }
    offset += rho;
  }
  out.residual = Subspace::coordinate(space, n - m, m);

  std::uint64_t qn = 1, qm = 1, qr = 1;
  for (unsigned i = 0; i < n; ++i) qn *= q;
  for (unsigned i = 0; i < m; ++i) qm *= q;
  for (unsigned i = 0; i < rho; ++i) qr *= q;
  if (out.blocks.size() != (qn - qm) / (qr - 1)) throw VerificationFailed("partial spread has the wrong block count");

  std::vector<Subspace> parts = out.blocks;
  parts.push_back(out.residual);
  if (!is_point_partition(parts)) throw VerificationFailed("partial spread does not partition the points");
  return out;
}

}  // namespace qcover
