#include <array>
#include <set>

#include "qcover/constructions.hpp"
#include "qcover/error.hpp"

namespace qcover {

namespace {

// Exponent tables of the cyclic C_2[7, 3, 2]: five base blocks of four
// exponents each, shifted through Z_63; the diagonal blocks built on the
// cube roots of unity; and a 7-point orbit in the hyperplane t = 0.
constexpr std::array<std::array<int, 4>, 5> kBaseSets = {{
    {0, 1, 4, 16},
    {0, 2, 8, 32},
    {0, 5, 27, 40},
    {0, 7, 44, 53},
    {0, 11, 29, 49},
}};
constexpr int kDiagonalStep = 21;
constexpr std::array<int, 7> kHyperplaneOrbit = {0, 1, 4, 6, 16, 24, 33};

}  // namespace

SubspaceDesign cyclic_covering_7_3_2() {
  const auto field = Field::create(2, 6, Field::Polynomial{1, 1, 0, 0, 0, 0, 1});
  const int order = 63;
  auto space = VectorSpace::standard(2, 7);
  // (beta, t) with beta's coefficient of alpha^i at coordinate i and t last
  auto vec = [&](Element beta, unsigned t) {
    Code v = 0;
    for (unsigned i = 0; i < 6; ++i) v = space->with_coord(v, i, (beta >> i) & 1u);
    return space->with_coord(v, 6, t);
  };
  auto a = [&](int j) { return field->alpha_pow(((j % order) + order) % order); };

  std::set<int> differences;
  for (const auto& set : kBaseSets) {
    std::set<int> own;
    Element total = 0;
    for (int x : set) {
      total = field->add(total, a(x));
      for (int y : set) {
        if (x != y) own.insert(((x - y) % order + order) % order);
      }
    }
    if (own.size() != 12) throw VerificationFailed("cyclic covering: a base set has repeated differences");
    if (total != 0) throw VerificationFailed("cyclic covering: a base set does not sum to zero");
    differences.insert(own.begin(), own.end());
  }
  for (int d = 0; d < order; ++d) {
    const bool expected = d % kDiagonalStep != 0;
    if (differences.contains(d) != expected) {
      throw VerificationFailed("cyclic covering: base set differences do not miss exactly 0, 21, 42");
    }
  }

  std::vector<std::vector<Code>> point_sets;
  for (const auto& set : kBaseSets) {
    for (int l = 0; l < order; ++l) {
      std::array<Element, 4> j{};
      for (int i = 0; i < 4; ++i) j[i] = a(set[i] + l);
      std::vector<Code> pts{0};
      for (int i = 1; i < 4; ++i) pts.push_back(vec(field->add(j[0], j[i]), 0));
      for (Element y : j) pts.push_back(vec(y, 1));
      point_sets.push_back(std::move(pts));
    }
  }
  for (int l = 0; l < kDiagonalStep; ++l) {
    std::vector<Code> pts{0, vec(0, 1)};
    for (int s = 0; s < 3; ++s) {
      pts.push_back(vec(a(s * kDiagonalStep + l), 0));
      pts.push_back(vec(a(s * kDiagonalStep + l), 1));
    }
    point_sets.push_back(std::move(pts));
  }
  for (int l = 0; l < order; ++l) {
    std::vector<Code> pts{0};
    for (int x : kHyperplaneOrbit) pts.push_back(vec(a(x + l), 0));
    point_sets.push_back(std::move(pts));
  }

  std::vector<Subspace> blocks;
  blocks.reserve(point_sets.size());
  for (const auto& pts : point_sets) {
    std::set<Code> members(pts.begin(), pts.end());
    bool closed = members.size() == 8;
    for (Code u : members) {
      for (Code v : members) closed = closed && members.contains(u ^ v);
    }
    if (!closed) throw VerificationFailed("cyclic covering: an emitted point set is not a 3-subspace");
    blocks.push_back(Subspace::span(space, pts));
  }

  SubspaceDesign out(space, 3, std::move(blocks), "cyclic-399");
  if (out.size() != 399) throw VerificationFailed("cyclic covering has " + std::to_string(out.size()) + " blocks");
  if (!verify_covering(out, 2).is_covering) throw VerificationFailed("cyclic covering misses a 2-subspace");
  return out;
}

}  // namespace qcover
