#include "qcover/constructions.hpp"

#include <algorithm>
#include <unordered_map>

#include "qcover/error.hpp"
#include "qcover/tower.hpp"

namespace qcover {

namespace {

std::string params(std::initializer_list<unsigned> values) {
  std::string out = "(";
  for (unsigned v : values) {
    if (out.size() > 1) out += ",";
    out += std::to_string(v);
  }
  return out + ")";
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

void require_covering(const SubspaceDesign& d, unsigned r, const std::string& what) {
  if (!verify_covering(d, r).is_covering) throw VerificationFailed(what + " is not a covering at r = " + std::to_string(r));
}

void require_steiner(const SubspaceDesign& d, unsigned r, const std::string& what) {
  if (!verify_steiner(d, r).is_steiner) {
    throw VerificationFailed(what + " is not a Steiner structure at t = " + std::to_string(r));
  }
}

}  // namespace

Subspace embed_subspace(const Subspace& s, const SpacePtr& target, unsigned offset) {
  const VectorSpace& from = s.space();
  if (from.q() != target->q() || offset + from.dimension() > target->dimension()) {
    throw InvalidArgument("subspace does not fit the target space");
  }
  std::vector<Code> rows;
  for (Code row : s.rows()) {
    Code v = 0;
    for (unsigned i = 0; i < from.dimension(); ++i) v = target->with_coord(v, offset + i, from.coord(row, i));
    rows.push_back(v);
  }
  return Subspace::span(target, rows);
}

SubspaceDesign trivial_steiner(std::uint32_t q, unsigned n, unsigned r) {
  auto space = VectorSpace::standard(q, n);
  std::vector<Subspace> blocks;
  for_each_in_grassmannian(space, r, [&](const Subspace& s) { blocks.push_back(s); });
  SubspaceDesign d(space, r, std::move(blocks), "trivial" + params({q, n, r}));
  require_steiner(d, r, d.label());
  return d;
}

SubspaceDesign full_space_steiner(std::uint32_t q, unsigned n) {
  auto space = VectorSpace::standard(q, n);
  SubspaceDesign d(space, n, {Subspace::full(space)}, "full-space" + params({q, n}));
  require_steiner(d, 1, d.label());
  return d;
}

SubspaceDesign spread(std::uint32_t q, unsigned k, unsigned n, std::optional<Field::Polynomial> modulus) {
  const auto pp = prime_power(q);
  if (!pp) throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power");
  if (k == 0 || n == 0 || n % k != 0) throw InvalidArgument("a spread needs k to divide n, got k = " +
                                                            std::to_string(k) + ", n = " + std::to_string(n));
  const auto base = Field::standard(q);
  const auto ext = Field::create(pp->first, pp->second * n, std::move(modulus));
  const FieldTower tower(base, ext);
  const std::uint64_t big = ext->order() - 1;
  const std::uint64_t d = big / (ipow(q, k) - 1);

  auto space = VectorSpace::standard(q, n);
  std::vector<Subspace> blocks;
  blocks.reserve(d);
  std::vector<Code> gens;
  for (std::uint64_t j = 0; j < d; ++j) {
    gens.clear();
    for (std::uint64_t e = j; e < big; e += d) gens.push_back(tower.to_code(ext->alpha_pow(static_cast<std::int64_t>(e))));
    blocks.push_back(Subspace::span(space, gens));
  }
  SubspaceDesign out(space, k, std::move(blocks), "spread" + params({q, k, n}));
  require_steiner(out, 1, out.label());
  return out;
}

SubspaceDesign lift_covering(const SubspaceDesign& d, unsigned delta) {
  require_covering(d, 1, "lift input");
  auto space = VectorSpace::create(d.space().field_ptr(), d.n() + delta);
  std::vector<Subspace> blocks;
  blocks.reserve(d.size());
  for (const auto& b : d.blocks()) {
    const Subspace base = embed_subspace(b, space, 0);
    std::vector<Code> rows(base.rows().begin(), base.rows().end());
    for (unsigned i = 0; i < delta; ++i) rows.push_back(space->unit(d.n() + i));
    blocks.push_back(Subspace::span(space, rows));
  }
  std::string label = d.label().empty() ? "lift" : d.label() + " lifted by " + std::to_string(delta);
  SubspaceDesign out(space, d.block_dimension() + delta, std::move(blocks), std::move(label));
  require_covering(out, 1, "lifted covering");
  return out;
}

SubspaceDesign optimal_line_covering(std::uint32_t q, unsigned n, unsigned k) {
  if (!(1 <= k && k <= n)) throw InvalidArgument("line covering needs 1 <= k <= n");
  auto space = VectorSpace::standard(q, n);
  const std::string label = "line-covering" + params({q, n, k});

  SubspaceDesign out = [&]() -> SubspaceDesign {
    if (k == n) return full_space_steiner(q, n);
    if (n % k == 0) return spread(q, k, n);
    if (2 * k >= n) return lift_covering(spread(q, n - k, 2 * (n - k)), 2 * k - n);
    const unsigned m = k + n % k;
    PartialSpreadResult ps = partial_spread(q, k, n);
    const SubspaceDesign inner = optimal_line_covering(q, m, k);
    std::vector<Subspace> blocks = std::move(ps.blocks);
    for (const auto& b : inner.blocks()) blocks.push_back(embed_subspace(b, space, n - m));
    return SubspaceDesign(space, k, std::move(blocks));
  }();
  out.set_label(label);

  const std::uint64_t expected = (ipow(q, n) - 1 + ipow(q, k) - 2) / (ipow(q, k) - 1);
  if (out.size() != expected) {
    throw VerificationFailed(label + " has " + std::to_string(out.size()) + " blocks, expected " +
                             std::to_string(expected));
  }
  require_covering(out, 1, label);
  return out;
}

TuranPointDesign turan_point_design(std::uint32_t q, unsigned n, unsigned k) {
  if (!(1 <= k && k <= n)) throw InvalidArgument("Turan point design needs 1 <= k <= n");
  auto space = VectorSpace::standard(q, n);
  const Subspace host = Subspace::coordinate(space, 0, n - k + 1);
  SubspaceDesign turan(space, 1, subspaces_of(host, 1), "turan-points" + params({q, n, k}));
  if (!verify_turan(turan, k).is_covering) throw VerificationFailed(turan.label() + " misses a " + std::to_string(k) + "-subspace");
  SubspaceDesign dual = dualize(turan);
  if (k < n) require_covering(dual, n - k, dual.label());
  return {std::move(turan), std::move(dual)};
}

SubspaceDesign recursive_covering(const SubspaceDesign& s1, const SubspaceDesign& s2, unsigned r) {
  if (s1.q() != s2.q() || s1.n() != s2.n()) throw InvalidArgument("recursive covering inputs live in different spaces");
  const unsigned n = s1.n() + 1;
  const unsigned k = s2.block_dimension();
  if (s1.block_dimension() + 1 != k) {
    throw InvalidArgument("recursive covering needs block dimensions k-1 and k, got " +
                          std::to_string(s1.block_dimension()) + " and " + std::to_string(k));
  }
  if (!(1 <= r && r <= k)) throw InvalidArgument("recursive covering needs 1 <= r <= k");
  if (s1.size() == 0) throw InvalidArgument("recursive covering: first input is empty");
  if (r > 1) require_covering(s1, r - 1, "first recursive input");
  require_covering(s2, r, "second recursive input");

  const std::uint32_t q = s1.q();
  auto space = VectorSpace::create(s1.space().field_ptr(), n);
  const Subspace whole = Subspace::full(s1.space_ptr());
  std::vector<Subspace> blocks;
  for (const auto& p : s1.blocks()) {
    const Subspace lifted = embed_subspace(p, space, 0);
    for (Code beta : coset_representatives(p, whole)) {
      std::vector<Code> rows(lifted.rows().begin(), lifted.rows().end());
      Code v = space->unit(n - 1);
      for (unsigned i = 0; i + 1 < n; ++i) v = space->with_coord(v, i, s1.space().coord(beta, i));
      rows.push_back(v);
      blocks.push_back(Subspace::span(space, rows));
    }
  }
  for (const auto& b : s2.blocks()) blocks.push_back(embed_subspace(b, space, 0));

  const std::uint64_t expected = ipow(q, n - k) * s1.size() + s2.size();
  if (blocks.size() != expected) {
    throw VerificationFailed("recursive covering produced " + std::to_string(blocks.size()) + " blocks, expected " +
                             std::to_string(expected));
  }
  SubspaceDesign out(space, k, std::move(blocks), "recursive" + params({q, n, k, r}));
  require_covering(out, r, out.label());
  return out;
}

std::uint64_t expansion_block_count(unsigned n, unsigned k) {
  if (!(2 <= k && k <= n)) throw InvalidArgument("expansion count needs 2 <= k <= n");
  return ipow(2, n - k) * (ipow(2, n) - 1) * (ipow(2, n - 1) - 1) / ((ipow(2, k) - 1) * (ipow(2, k - 1) - 1));
}

std::uint32_t binary_point_index(const VectorSpace& space, Code v) {
  std::uint32_t index = 0;
  for (unsigned i = 0; i < space.dimension(); ++i) index = (index << 1) | space.coord(v, i);
  return index;
}

SetSystem expand_to_steiner_system(const SubspaceDesign& s) {
  if (s.q() != 2) throw InvalidArgument("Steiner system expansion needs q = 2");
  if (s.n() > 16) throw InvalidArgument("Steiner system expansion needs n <= 16");
  if (s.block_dimension() < 2) throw InvalidArgument("Steiner system expansion needs k >= 2");
  require_steiner(s, 2, "expansion input");

  const VectorSpace& vs = s.space();
  const Subspace whole = Subspace::full(s.space_ptr());
  std::vector<std::vector<std::uint32_t>> blocks;
  for (const auto& b : s.blocks()) {
    const auto vectors = b.vectors();
    for (Code beta : coset_representatives(b, whole)) {
      std::vector<std::uint32_t> pts;
      pts.reserve(vectors.size());
      for (Code v : vectors) pts.push_back(binary_point_index(vs, vs.add(beta, v)));
      std::sort(pts.begin(), pts.end());
      blocks.push_back(std::move(pts));
    }
  }
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());

  const std::uint64_t expected = expansion_block_count(s.n(), s.block_dimension());
  if (blocks.size() != expected) {
    throw VerificationFailed("expansion produced " + std::to_string(blocks.size()) + " blocks, expected " +
                             std::to_string(expected));
  }
  SetSystem out(std::uint32_t{1} << s.n(), std::move(blocks));
  if (!verify_steiner_system(out, 3).is_steiner) throw VerificationFailed("expansion is not a Steiner system at t = 3");
  return out;
}

SubspaceDesign derive_steiner(const SubspaceDesign& s, unsigned t, const Subspace& point) {
  if (t < 2) throw InvalidArgument("derivation needs t >= 2");
  if (point.dimension() != 1 || !(point.space() == s.space())) {
    throw InvalidArgument("derivation point must be a 1-subspace of the design's space");
  }
  if (s.n() < 2) throw InvalidArgument("derivation needs n >= 2");
  require_steiner(s, t, "derivation input");

  const unsigned c = point.pivots()[0];
  const VectorSpace& from = s.space();
  auto space = VectorSpace::create(from.field_ptr(), s.n() - 1);
  auto drop = [&](Code v) {
    Code out = 0;
    for (unsigned i = 0, j = 0; i < from.dimension(); ++i) {
      if (i == c) continue;
      out = space->with_coord(out, j++, from.coord(v, i));
    }
    return out;
  };

  std::vector<Code> normal{from.unit(c)};
  const Subspace hyperplane = orthogonal_complement(Subspace::span(s.space_ptr(), normal));
  std::vector<Subspace> blocks;
  for (const auto& b : s.blocks()) {
    if (!b.contains(point)) continue;
    const Subspace cut = intersect(b, hyperplane);
    std::vector<Code> rows;
    for (Code r : cut.rows()) rows.push_back(drop(r));
    blocks.push_back(Subspace::span(space, rows));
  }
  std::string label = s.label().empty() ? "derived" : s.label() + " derived at " + point.str();
  SubspaceDesign out(space, s.block_dimension() - 1, std::move(blocks), std::move(label));
  require_steiner(out, t - 1, "derived design");
  return out;
}

SubspaceDesign greedy_covering(std::uint32_t q, unsigned n, unsigned k, unsigned r) {
  if (!(1 <= r && r <= k && k <= n)) throw InvalidArgument("greedy covering needs 1 <= r <= k <= n");
  const std::uint64_t incidences = gaussian_u64(n, k, q) * gaussian_u64(k, r, q);
  if (gaussian_u64(n, k, q) > kSubspaceBudget || incidences > kSubspaceBudget) {
    throw BudgetExceeded(std::to_string(incidences) + " incidences exceed the budget of 10^7");
  }
  auto space = VectorSpace::standard(q, n);

  std::vector<Subspace> candidates;
  for_each_in_grassmannian(space, k, [&](const Subspace& s) { candidates.push_back(s); });
  std::unordered_map<Subspace, std::uint32_t, SubspaceHash> target_index;
  for_each_in_grassmannian(space, r, [&](const Subspace& s) {
    target_index.emplace(s, static_cast<std::uint32_t>(target_index.size()));
  });

  std::vector<std::vector<std::uint32_t>> contents(candidates.size());
  std::vector<std::vector<std::uint32_t>> holders(target_index.size());
  for (std::uint32_t i = 0; i < candidates.size(); ++i) {
    for_each_subspace_of(candidates[i], r, [&](const Subspace& t) {
      const std::uint32_t ti = target_index.at(t);
      contents[i].push_back(ti);
      holders[ti].push_back(i);
    });
  }

  std::vector<std::uint64_t> gain(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) gain[i] = contents[i].size();
  std::vector<bool> covered(target_index.size(), false);
  std::uint64_t remaining = target_index.size();
  std::vector<Subspace> chosen;
  while (remaining > 0) {
    const auto best = static_cast<std::size_t>(std::max_element(gain.begin(), gain.end()) - gain.begin());
    chosen.push_back(candidates[best]);
    for (std::uint32_t ti : contents[best]) {
      if (covered[ti]) continue;
      covered[ti] = true;
      --remaining;
      for (std::uint32_t h : holders[ti]) --gain[h];
    }
  }
  SubspaceDesign out(space, k, std::move(chosen), "greedy" + params({q, n, k, r}));
  require_covering(out, r, out.label());
  return out;
}

std::vector<RegisteredCovering> known_coverings(std::uint32_t q, unsigned n_max) {
  std::vector<RegisteredCovering> out;
  if (q == 2 && n_max >= 7) out.push_back(register_covering(cyclic_covering_7_3_2(), 2, "cyclic-399"));
  return out;
}

}  // namespace qcover
