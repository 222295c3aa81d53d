#include "qcover/design.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <unordered_map>

#include "qcover/error.hpp"

namespace qcover {

namespace {

std::atomic<unsigned> g_default_workers{std::max(1u, std::thread::hardware_concurrency())};

using CountFn = std::function<std::uint64_t(const Subspace&)>;

struct PartialTally {
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::vector<Subspace> uncovered;
  std::uint64_t total = 0;
};

// Splits pivot-set ranks [0, sizes.size()) into at most `parts` contiguous
// ranges of roughly equal subspace count.
std::vector<std::pair<std::uint64_t, std::uint64_t>> split_pivot_sets(const std::vector<std::uint64_t>& sizes,
                                                                       unsigned parts) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  long double total = 0;
  for (auto s : sizes) total += static_cast<long double>(s);
  const long double share = total / std::max(1u, parts);
  std::uint64_t begin = 0;
  long double acc = 0;
  for (std::uint64_t i = 0; i < sizes.size(); ++i) {
    acc += static_cast<long double>(sizes[i]);
    if (acc >= share && ranges.size() + 1 < parts) {
      ranges.emplace_back(begin, i + 1);
      begin = i + 1;
      acc = 0;
    }
  }
  if (begin < sizes.size()) ranges.emplace_back(begin, sizes.size());
  return ranges;
}

// Tallies count(target) over every target of G_q(n, dim). Each worker owns a
// contiguous slice of pivot sets and the slices are merged in order, so the
// report does not depend on the worker count.
CoverageReport tally_targets(const SpacePtr& space, unsigned dim, unsigned workers, const CountFn& count) {
  enumerate_grassmannian(space, dim);  // budget check
  if (workers == 0) workers = default_workers();
  const auto ranges = split_pivot_sets(GrassmannianCursor::pivot_set_sizes(*space, dim), workers);

  std::vector<PartialTally> parts(ranges.size());
  auto run = [&](std::size_t idx) {
    PartialTally& out = parts[idx];
    GrassmannianCursor cursor(space, dim, ranges[idx].first, ranges[idx].second);
    while (auto target = cursor.next()) {
      const std::uint64_t m = count(*target);
      ++out.histogram[m];
      ++out.total;
      if (m == 0 && out.uncovered.size() < kWitnessCap) out.uncovered.push_back(*target);
    }
  };

  if (ranges.size() <= 1) {
    if (!ranges.empty()) run(0);
  } else {
    std::vector<std::exception_ptr> errors(ranges.size());
    std::vector<std::thread> threads;
    threads.reserve(ranges.size());
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      threads.emplace_back([&, i] {
        try {
          run(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  CoverageReport report;
  for (auto& part : parts) {
    report.total_targets += part.total;
    for (auto [m, c] : part.histogram) report.histogram[m] += c;
    for (auto& w : part.uncovered) {
      if (report.uncovered.size() < kWitnessCap) report.uncovered.push_back(std::move(w));
    }
  }
  if (!report.histogram.empty()) {
    report.min_multiplicity = report.histogram.begin()->first;
    report.max_multiplicity = report.histogram.rbegin()->first;
  }
  report.is_covering = report.total_targets > 0 && report.min_multiplicity >= 1;
  report.is_steiner = report.is_covering && report.max_multiplicity == 1;
  return report;
}

double cost_of(std::uint64_t a, std::uint64_t b) { return static_cast<double>(a) * static_cast<double>(b); }

}  // namespace

unsigned default_workers() { return g_default_workers.load(); }

void set_default_workers(unsigned workers) { g_default_workers.store(std::max(1u, workers)); }

std::uint64_t CoverageReport::incidences() const {
  std::uint64_t sum = 0;
  for (auto [m, c] : histogram) sum += m * c;
  return sum;
}

SubspaceDesign::SubspaceDesign(SpacePtr space, unsigned k, std::vector<Subspace> blocks, std::string label)
    : space_(std::move(space)), k_(k), blocks_(std::move(blocks)), label_(std::move(label)) {
  if (!space_) throw InvalidArgument("design without an ambient space");
  if (k_ > space_->dimension()) throw InvalidArgument("block dimension exceeds the ambient dimension");
  for (const auto& b : blocks_) {
    if (!(b.space() == *space_)) throw InvalidArgument("design block from a different ambient space");
    if (b.dimension() != k_) {
      throw InvalidArgument("design block " + b.str() + " has dimension " + std::to_string(b.dimension()) +
                            ", expected " + std::to_string(k_));
    }
  }
  std::sort(blocks_.begin(), blocks_.end(), enumeration_less);
  auto dup = std::adjacent_find(blocks_.begin(), blocks_.end());
  if (dup != blocks_.end()) throw InvalidArgument("duplicate design block " + dup->str());
}

SubspaceDesign SubspaceDesign::deduplicated(SpacePtr space, unsigned k, std::vector<Subspace> blocks,
                                            std::string label) {
  std::sort(blocks.begin(), blocks.end(), enumeration_less);
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
  return SubspaceDesign(std::move(space), k, std::move(blocks), std::move(label));
}

bool SubspaceDesign::contains(const Subspace& s) const {
  return std::binary_search(blocks_.begin(), blocks_.end(), s, enumeration_less);
}

CoverageReport verify_covering(const SubspaceDesign& d, unsigned r, const VerifyOptions& options) {
  if (r > d.block_dimension()) {
    throw InvalidArgument("target dimension " + std::to_string(r) + " exceeds block dimension " +
                          std::to_string(d.block_dimension()));
  }
  const auto& space = d.space_ptr();
  const std::uint64_t per_block = gaussian_u64(d.block_dimension(), r, d.q());
  const std::uint64_t targets = gaussian_u64(d.n(), r, d.q());

  Strategy strategy = options.strategy;
  if (strategy == Strategy::kAuto) {
    strategy = cost_of(d.size(), per_block) <= cost_of(targets, d.size()) ? Strategy::kBlockExpansion
                                                                            : Strategy::kTargetScan;
  }

  if (strategy == Strategy::kTargetScan) {
    return tally_targets(space, r, options.workers, [&](const Subspace& t) {
      std::uint64_t m = 0;
      for (const auto& b : d.blocks()) m += b.contains(t) ? 1 : 0;
      return m;
    });
  }

  enumerate_grassmannian(space, r);
  std::unordered_map<Subspace, std::uint64_t, SubspaceHash> counts;
  counts.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(targets, d.size() * per_block)));
  for (const auto& b : d.blocks()) {
    for_each_subspace_of(b, r, [&](const Subspace& t) { ++counts[t]; });
  }
  return tally_targets(space, r, options.workers, [&](const Subspace& t) {
    auto it = counts.find(t);
    return it == counts.end() ? std::uint64_t{0} : it->second;
  });
}

CoverageReport verify_steiner(const SubspaceDesign& d, unsigned r, const VerifyOptions& options) {
  return verify_covering(d, r, options);
}

CoverageReport verify_turan(const SubspaceDesign& d, unsigned k, const VerifyOptions& options) {
  const unsigned r = d.block_dimension();
  const unsigned n = d.n();
  if (k < r || k > n) {
    throw InvalidArgument("Turan check needs block dimension <= k <= n, got r = " + std::to_string(r) +
                          ", k = " + std::to_string(k));
  }
  const auto& space = d.space_ptr();
  const std::uint64_t per_block = gaussian_u64(n - r, n - k, d.q());
  const std::uint64_t targets = gaussian_u64(n, k, d.q());

  Strategy strategy = options.strategy;
  if (strategy == Strategy::kAuto) {
    strategy = cost_of(d.size(), per_block) <= cost_of(targets, d.size()) ? Strategy::kBlockExpansion
                                                                            : Strategy::kTargetScan;
  }

  if (strategy == Strategy::kTargetScan) {
    return tally_targets(space, k, options.workers, [&](const Subspace& t) {
      std::uint64_t m = 0;
      for (const auto& b : d.blocks()) m += t.contains(b) ? 1 : 0;
      return m;
    });
  }

  // k-subspaces through B are the complements of (n-k)-subspaces of B^perp.
  enumerate_grassmannian(space, k);
  std::unordered_map<Subspace, std::uint64_t, SubspaceHash> counts;
  for (const auto& b : d.blocks()) {
    for_each_subspace_of(orthogonal_complement(b), n - k,
                         [&](const Subspace& s) { ++counts[orthogonal_complement(s)]; });
  }
  return tally_targets(space, k, options.workers, [&](const Subspace& t) {
    auto it = counts.find(t);
    return it == counts.end() ? std::uint64_t{0} : it->second;
  });
}

SubspaceDesign dualize(const SubspaceDesign& d) {
  static constexpr std::string_view kSuffix = " (dual)";
  std::vector<Subspace> blocks;
  blocks.reserve(d.size());
  for (const auto& b : d.blocks()) blocks.push_back(orthogonal_complement(b));
  std::string label = d.label();
  if (label.size() >= kSuffix.size() && label.compare(label.size() - kSuffix.size(), kSuffix.size(), kSuffix) == 0) {
    label.resize(label.size() - kSuffix.size());
  } else if (!label.empty()) {
    label += kSuffix;
  }
  return SubspaceDesign(d.space_ptr(), d.n() - d.block_dimension(), std::move(blocks), std::move(label));
}

}  // namespace qcover
