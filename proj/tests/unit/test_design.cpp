#include <doctest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "qcover/design.hpp"
#include "qcover/error.hpp"

using namespace qcover;

namespace {

SubspaceDesign random_design(std::uint32_t q, unsigned n, unsigned k, std::size_t size, std::mt19937& rng) {
  auto space = VectorSpace::standard(q, n);
  std::vector<Subspace> all;
  for_each_in_grassmannian(space, k, [&](const Subspace& s) { all.push_back(s); });
  std::shuffle(all.begin(), all.end(), rng);
  all.erase(all.begin() + std::min(size, all.size()), all.end());
  return SubspaceDesign(space, k, std::move(all), "random");
}

std::vector<oracle::VecSet> as_sets(const std::vector<Subspace>& ss) {
  std::vector<oracle::VecSet> out;
  for (const auto& s : ss) out.push_back(oracle::to_set(s));
  return out;
}

}  // namespace

TEST_CASE("designs are sorted and reject duplicates") {
  auto space = VectorSpace::standard(2, 3);
  std::vector<Code> a{space->parse("100")}, b{space->parse("010")}, c{space->parse("110")};
  std::vector<Subspace> blocks{Subspace::span(space, c), Subspace::span(space, a), Subspace::span(space, b)};
  SubspaceDesign d(space, 1, blocks);
  CHECK(d.size() == 3);
  CHECK(enumeration_less(d.blocks()[0], d.blocks()[1]));
  CHECK(enumeration_less(d.blocks()[1], d.blocks()[2]));
  CHECK(d.contains(Subspace::span(space, a)));

  blocks.push_back(Subspace::span(space, a));
  CHECK_THROWS_AS(SubspaceDesign(space, 1, blocks), InvalidArgument);
  CHECK(SubspaceDesign::deduplicated(space, 1, blocks).size() == 3);
  CHECK_THROWS_AS(SubspaceDesign(space, 2, {Subspace::span(space, a)}), InvalidArgument);
  CHECK_THROWS_AS(SubspaceDesign(space, 4, {}), InvalidArgument);
}

TEST_CASE("covering multiplicities match the brute-force count") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 12; ++trial) {
    const std::uint32_t q = trial % 3 == 0 ? 3 : 2;
    const unsigned n = q == 3 ? 3 : 5;
    const unsigned k = 1 + trial % (n - 1);
    const auto d = random_design(q, n, k, 3 + trial * 2, rng);
    const auto blocks = as_sets(d.blocks());
    for (unsigned r = 0; r <= k; ++r) {
      CAPTURE(trial);
      CAPTURE(r);
      const auto targets = oracle::all_subspaces(q, n, r);
      const auto mult = oracle::multiplicities(blocks, targets);
      std::map<std::uint64_t, std::uint64_t> hist;
      for (int m : mult) ++hist[m];
      for (auto strategy : {Strategy::kBlockExpansion, Strategy::kTargetScan}) {
        for (unsigned workers : {1u, 3u}) {
          const auto rep = verify_covering(d, r, {strategy, workers});
          CHECK(rep.total_targets == targets.size());
          CHECK(rep.histogram == hist);
          CHECK(rep.is_covering == (hist.count(0) == 0));
          CHECK(rep.is_steiner == (rep.is_covering && hist.rbegin()->first == 1));
        }
      }
    }
  }
}

TEST_CASE("uncovered witnesses come first in enumeration order") {
  auto space = VectorSpace::standard(2, 4);
  std::vector<Code> g{space->parse("1000"), space->parse("0100")};
  SubspaceDesign d(space, 2, {Subspace::span(space, g)});
  const auto rep = verify_covering(d, 1);
  CHECK(rep.histogram.at(0) == 12);
  CHECK(rep.uncovered.size() == 12);
  std::vector<Subspace> expected;
  for_each_in_grassmannian(space, 1, [&](const Subspace& s) {
    if (!d.blocks()[0].contains(s)) expected.push_back(s);
  });
  CHECK(rep.uncovered == expected);

  const auto big = verify_covering(d, 2);
  CHECK(big.uncovered.size() == kWitnessCap);
  CHECK(big.incidences() == 1);
}

TEST_CASE("Turan verification matches the brute-force count") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const unsigned r = 1 + trial % 2;
    const auto d = random_design(2, 5, r, 4 + trial * 3, rng);
    const auto blocks = as_sets(d.blocks());
    for (unsigned k = r; k <= 5; ++k) {
      const auto targets = oracle::all_subspaces(2, 5, k);
      std::map<std::uint64_t, std::uint64_t> hist;
      for (const auto& t : targets) {
        int m = 0;
        for (const auto& b : blocks) m += oracle::subset_of(b, t) ? 1 : 0;
        ++hist[m];
      }
      for (auto strategy : {Strategy::kBlockExpansion, Strategy::kTargetScan}) {
        const auto rep = verify_turan(d, k, {strategy, 2});
        CHECK(rep.histogram == hist);
        CHECK(rep.is_covering == (hist.count(0) == 0));
      }
    }
  }
  CHECK_THROWS_AS(verify_turan(random_design(2, 4, 2, 3, rng), 1), InvalidArgument);
}

TEST_CASE("dualize is a blockwise complement and an involution") {
  std::mt19937 rng(21);
  const auto d = random_design(3, 4, 2, 10, rng);
  const auto dd = dualize(d);
  CHECK(dd.block_dimension() == 2);
  CHECK(dd.label() == "random (dual)");
  for (const auto& b : dd.blocks()) CHECK(d.contains(orthogonal_complement(b)));
  const auto back = dualize(dd);
  CHECK(back == d);
  CHECK(back.label() == "random");
}

TEST_CASE("duality turns covering counts into Turan counts") {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const unsigned k = 2 + trial % 2;
    const auto d = random_design(2, 5, k, 5 + 4 * trial, rng);
    const auto dual = dualize(d);
    for (unsigned r = 1; r <= k; ++r) {
      CHECK(verify_covering(d, r).histogram == verify_turan(dual, 5 - r).histogram);
    }
  }
}

TEST_CASE("set system verification") {
  // Fano plane
  const std::vector<std::vector<std::uint32_t>> fano = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                                                        {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  SetSystem s(7, fano);
  auto rep = verify_steiner_system(s, 2);
  CHECK(rep.is_steiner);
  CHECK(rep.total_subsets == 21);
  auto broken = fano;
  broken.pop_back();
  rep = verify_steiner_system(SetSystem(7, broken), 2);
  CHECK(!rep.is_covering);
  CHECK(rep.uncovered == std::vector<std::vector<std::uint32_t>>{{2, 4}, {2, 5}, {4, 5}});

  CHECK_THROWS_AS(SetSystem(7, {{0, 1}, {0, 1, 2}}), InvalidArgument);
  CHECK_THROWS_AS(SetSystem(7, {{0, 1, 7}}), InvalidArgument);
  CHECK_THROWS_AS(SetSystem(7, {{0, 0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(SetSystem(7, {{0, 1, 2}, {2, 1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(verify_steiner_system(s, 4), InvalidArgument);
}

TEST_CASE("point indices follow enumeration order") {
  for (auto [q, n] : {std::pair{2u, 4u}, {3u, 3u}, {4u, 3u}}) {
    auto space = VectorSpace::standard(q, n);
    std::uint32_t expected = 0;
    for_each_in_grassmannian(space, 1, [&](const Subspace& s) { CHECK(point_index(s) == expected++); });
  }
}

TEST_CASE("points of a subspace design") {
  auto space = VectorSpace::standard(2, 3);
  std::vector<Subspace> lines;
  for_each_in_grassmannian(space, 2, [&](const Subspace& s) { lines.push_back(s); });
  const SetSystem s = to_point_set_system(SubspaceDesign(space, 2, lines));
  CHECK(s.points() == 7);
  CHECK(s.block_size() == 3);
  CHECK(verify_steiner_system(s, 2).is_steiner);
}
