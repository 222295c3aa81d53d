#include <doctest.h>

#include <random>
#include <set>
#include <unordered_set>

#include "oracle.hpp"
#include "qcover/error.hpp"
#include "qcover/subspace.hpp"

using namespace qcover;

namespace {

Subspace random_subspace(const SpacePtr& space, unsigned gens, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, space->vector_count() - 1);
  std::vector<Code> vs;
  for (unsigned i = 0; i < gens; ++i) vs.push_back(space->from_index(pick(rng)));
  return Subspace::span(space, vs);
}

}  // namespace

TEST_CASE("vector space encoding") {
  auto vs = VectorSpace::standard(3, 4);
  const Code v = vs->parse("2101");
  CHECK(vs->coord(v, 0) == 2);
  CHECK(vs->coord(v, 3) == 1);
  CHECK(vs->format(v) == "2101");
  CHECK(vs->format(vs->scale(2, v)) == "1202");
  CHECK(vs->format(vs->add(v, v)) == "1202");
  CHECK(vs->dot(v, vs->parse("1110")) == 0);
  CHECK(vs->vector_count() == 81);
  for (std::uint64_t t = 0; t < 81; ++t) CHECK(vs->index_of(vs->from_index(t)) == t);
  CHECK_THROWS_AS(vs->parse("21013"), InvalidArgument);
  CHECK_THROWS_AS(vs->parse("2131"), InvalidArgument);
  CHECK_THROWS_AS(VectorSpace::standard(2, 65), InvalidArgument);

  auto a = VectorFq::parse(vs, "1000");
  auto b = VectorFq::parse(VectorSpace::standard(2, 4), "1000");
  CHECK_THROWS_AS(a + b, InvalidArgument);
  CHECK((a + a).str() == "2000");
}

TEST_CASE("Grassmannian sizes match brute-force enumeration") {
  for (int p : {2, 3}) {
    for (int n = 1; n <= 4; ++n) {
      for (int k = 0; k <= n; ++k) {
        CAPTURE(p);
        CAPTURE(n);
        CAPTURE(k);
        const auto expected = oracle::all_subspaces(p, n, k);
        auto space = VectorSpace::standard(p, n);
        std::set<oracle::VecSet> got;
        std::uint64_t count = 0;
        std::optional<Subspace> prev;
        for_each_in_grassmannian(space, k, [&](const Subspace& s) {
          ++count;
          CHECK(s.dimension() == static_cast<unsigned>(k));
          if (prev) CHECK(enumeration_less(*prev, s));
          prev = s;
          got.insert(oracle::to_set(s));
        });
        CHECK(count == expected.size());
        CHECK(got == std::set<oracle::VecSet>(expected.begin(), expected.end()));
        CHECK(gaussian_u64(n, k, p) == expected.size());
      }
    }
  }
}

TEST_CASE("span is canonical") {
  std::mt19937 rng(11);
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto space = VectorSpace::standard(q, 5);
    for (int trial = 0; trial < 50; ++trial) {
      const Subspace s = random_subspace(space, 3, rng);
      // re-span from a shuffled, rescaled set of its own vectors
      auto all = s.vectors();
      std::shuffle(all.begin(), all.end(), rng);
      std::vector<Code> gens;
      for (Code v : all) gens.push_back(space->scale(q - 1, v));
      CHECK(Subspace::span(space, gens) == s);
      CHECK(s.hash() == Subspace::span(space, gens).hash());
      // RREF shape
      for (unsigned i = 0; i < s.dimension(); ++i) {
        const unsigned p = s.pivots()[i];
        CHECK(space->leading(s.rows()[i]) == p);
        CHECK(space->coord(s.rows()[i], p) == 1);
        for (unsigned j = 0; j < s.dimension(); ++j) {
          if (j != i) CHECK(space->coord(s.rows()[j], p) == 0);
        }
        if (i) CHECK(s.pivots()[i - 1] < p);
      }
      CHECK(s.vectors().size() == [&] {
        std::uint64_t c = 1;
        for (unsigned i = 0; i < s.dimension(); ++i) c *= q;
        return c;
      }());
    }
  }
}

TEST_CASE("lattice operations agree with vector sets") {
  std::mt19937 rng(5);
  for (int p : {2, 3}) {
    const int n = p == 2 ? 5 : 3;
    auto space = VectorSpace::standard(p, n);
    for (int trial = 0; trial < 60; ++trial) {
      const Subspace a = random_subspace(space, 1 + trial % 3, rng);
      const Subspace b = random_subspace(space, 1 + trial % 4, rng);
      const auto sa = oracle::to_set(a), sb = oracle::to_set(b);
      CHECK(oracle::to_set(intersect(a, b)) == oracle::intersection(sa, sb));
      std::vector<int> gens;
      for (Code r : a.rows()) gens.push_back(oracle::to_int(*space, r));
      for (Code r : b.rows()) gens.push_back(oracle::to_int(*space, r));
      CHECK(oracle::to_set(sum(a, b)) == oracle::closure(gens, p, n));
      CHECK(contains_subspace(a, b) == oracle::subset_of(sb, sa));
      CHECK(a.contains(b) == oracle::subset_of(sb, sa));
      CHECK(oracle::to_set(orthogonal_complement(a)) == oracle::perp(sa, p, n));
      CHECK(orthogonal_complement(orthogonal_complement(a)) == a);
      CHECK(orthogonal_complement(a).dimension() == n - a.dimension());
      for (int v = 0; v < oracle::ipow(p, n); ++v) {
        const bool in = std::binary_search(sa.begin(), sa.end(), v);
        REQUIRE(a.contains(oracle::from_int(*space, v)) == in);
      }
    }
  }
}

TEST_CASE("coset representatives partition the outer space") {
  auto space = VectorSpace::standard(3, 4);
  std::vector<Code> g{space->parse("1200"), space->parse("0011")};
  const Subspace p = Subspace::span(space, g);
  const Subspace w = Subspace::full(space);
  const auto reps = coset_representatives(p, w);
  CHECK(reps.size() == 9);
  CHECK(reps.front() == 0);
  std::unordered_set<Code> seen;
  for (Code r : reps) {
    for (Code v : p.vectors()) CHECK(seen.insert(space->add(r, v)).second);
  }
  CHECK(seen.size() == 81);
  CHECK(cosets(p, w).size() == 9);
  CHECK_THROWS_AS(coset_representatives(w, p), InvalidArgument);
}

TEST_CASE("subspaces of a subspace") {
  auto space = VectorSpace::standard(2, 6);
  const Subspace host = Subspace::coordinate(space, 1, 4);
  for (unsigned r = 0; r <= 4; ++r) {
    const auto subs = subspaces_of(host, r);
    CHECK(subs.size() == gaussian_u64(4, r, 2));
    std::unordered_set<Subspace> distinct(subs.begin(), subs.end());
    CHECK(distinct.size() == subs.size());
    for (const auto& s : subs) CHECK(host.contains(s));
  }
  CHECK_THROWS_AS(subspaces_of(host, 5), InvalidArgument);
}

TEST_CASE("cursor ranges split the enumeration") {
  auto space = VectorSpace::standard(2, 6);
  std::vector<Subspace> whole;
  for_each_in_grassmannian(space, 3, [&](const Subspace& s) { whole.push_back(s); });
  GrassmannianCursor probe(space, 3);
  const std::uint64_t sets = probe.pivot_set_count();
  CHECK(sets == 20);
  std::vector<Subspace> pieces;
  for (std::uint64_t lo = 0; lo < sets; lo += 7) {
    GrassmannianCursor c(space, 3, lo, std::min(sets, lo + 7));
    while (auto s = c.next()) pieces.push_back(*s);
  }
  CHECK(pieces == whole);
  const auto sizes = GrassmannianCursor::pivot_set_sizes(*space, 3);
  std::uint64_t total = 0;
  for (auto s : sizes) total += s;
  CHECK(total == whole.size());
}

TEST_CASE("budgets are hard errors") {
  CHECK_THROWS_AS(enumerate_grassmannian(VectorSpace::standard(2, 20), 10), BudgetExceeded);
  auto big = VectorSpace::standard(2, 30);
  CHECK_THROWS_AS(Subspace::full(big).vectors(), BudgetExceeded);
  CHECK_THROWS_AS(enumerate_grassmannian(VectorSpace::standard(2, 4), 5), InvalidArgument);
}

TEST_CASE("gaussian_u64 and binomial_u64") {
  CHECK(gaussian_u64(4, 2, 2) == 35);
  CHECK(gaussian_u64(7, 2, 2) == 2667);
  CHECK(gaussian_u64(5, 6, 2) == 0);
  CHECK(binomial_u64(15, 6) == 5005);
  CHECK(binomial_u64(3, 5) == 0);
  CHECK(gaussian_u64(64, 32, 2) == std::numeric_limits<std::uint64_t>::max());
}
