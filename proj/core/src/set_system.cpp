#include <algorithm>

#include "qcover/design.hpp"
#include "qcover/error.hpp"

namespace qcover {

SetSystem::SetSystem(std::uint32_t points, std::vector<std::vector<std::uint32_t>> blocks)
    : points_(points), blocks_(std::move(blocks)) {
  if (!blocks_.empty()) block_size_ = blocks_.front().size();
  for (auto& b : blocks_) {
    if (b.size() != block_size_) throw InvalidArgument("set system blocks must share one size");
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end()) throw InvalidArgument("repeated point within a block");
    if (!b.empty() && b.back() >= points_) throw InvalidArgument("point index out of range");
  }
  std::sort(blocks_.begin(), blocks_.end());
  if (std::adjacent_find(blocks_.begin(), blocks_.end()) != blocks_.end()) {
    throw InvalidArgument("duplicate set system block");
  }
}

SetSystemReport verify_steiner_system(const SetSystem& s, unsigned t) {
  if (t > s.block_size()) throw InvalidArgument("subset size exceeds block size");
  const std::uint32_t v = s.points();
  if (t > v) throw InvalidArgument("subset size exceeds point count");
  const std::uint64_t total = binomial_u64(v, t);
  if (total > kPointSubsetBudget) {
    throw BudgetExceeded(std::to_string(total) + " point subsets exceed the budget of 10^7");
  }

  // colex rank of a sorted subset x_0 < ... < x_{t-1} is sum_i C(x_i, i+1)
  std::vector<std::vector<std::uint64_t>> choose(v + 1, std::vector<std::uint64_t>(t + 1, 0));
  for (std::uint32_t x = 0; x <= v; ++x) {
    for (unsigned j = 0; j <= t; ++j) choose[x][j] = binomial_u64(x, j);
  }
  auto rank = [&](const std::vector<std::uint32_t>& subset) {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < subset.size(); ++i) r += choose[subset[i]][i + 1];
    return r;
  };

  std::vector<std::uint32_t> counts(total, 0);
  std::vector<std::uint32_t> idx(t), subset(t);
  for (const auto& block : s.blocks()) {
    for (unsigned i = 0; i < t; ++i) idx[i] = i;
    while (true) {
      for (unsigned i = 0; i < t; ++i) subset[i] = block[idx[i]];
      ++counts[rank(subset)];
      unsigned i = t;
      while (i-- > 0) {
        if (idx[i] < block.size() - t + i) break;
      }
      if (i == static_cast<unsigned>(-1)) break;
      ++idx[i];
      for (unsigned j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  SetSystemReport report;
  report.total_subsets = total;
  // walk subsets in lexicographic order so witnesses come out sorted
  for (unsigned i = 0; i < t; ++i) subset[i] = i;
  while (true) {
    const std::uint64_t m = counts[rank(subset)];
    ++report.histogram[m];
    if (m == 0 && report.uncovered.size() < kWitnessCap) report.uncovered.push_back(subset);
    unsigned i = t;
    while (i-- > 0) {
      if (subset[i] < v - t + i) break;
    }
    if (i == static_cast<unsigned>(-1)) break;
    ++subset[i];
    for (unsigned j = i + 1; j < t; ++j) subset[j] = subset[j - 1] + 1;
  }
  report.min_multiplicity = report.histogram.begin()->first;
  report.max_multiplicity = report.histogram.rbegin()->first;
  report.is_covering = report.min_multiplicity >= 1;
  report.is_steiner = report.is_covering && report.max_multiplicity == 1;
  return report;
}

std::uint32_t point_index(const Subspace& line) {
  if (line.dimension() != 1) throw InvalidArgument("point_index needs a 1-dimensional subspace");
  const VectorSpace& vs = line.space();
  const unsigned n = vs.dimension();
  const std::uint64_t q = vs.q();
  const unsigned p = line.pivots()[0];
  // pivot j contributes q^{n-1-j} lines
  std::uint64_t index = 0;
  for (unsigned j = 0; j < p; ++j) {
    std::uint64_t lines = 1;
    for (unsigned e = 0; e < n - 1 - j; ++e) lines *= q;
    index += lines;
  }
  std::uint64_t offset = 0;
  for (unsigned c = p + 1; c < n; ++c) offset = offset * q + vs.coord(line.rows()[0], c);
  return static_cast<std::uint32_t>(index + offset);
}

SetSystem to_point_set_system(const SubspaceDesign& d) {
  if (d.block_dimension() < 1) throw InvalidArgument("point set conversion needs blocks of dimension >= 1");
  const std::uint64_t v = gaussian_u64(d.n(), 1, d.q());
  if (v > kSubspaceBudget) throw BudgetExceeded("too many points for a set system");
  std::vector<std::vector<std::uint32_t>> blocks;
  blocks.reserve(d.size());
  for (const auto& b : d.blocks()) {
    std::vector<std::uint32_t> pts;
    for_each_subspace_of(b, 1, [&](const Subspace& line) { pts.push_back(point_index(line)); });
    blocks.push_back(std::move(pts));
  }
  return SetSystem(static_cast<std::uint32_t>(v), std::move(blocks));
}

}  // namespace qcover
