#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcover/subspace.hpp"

namespace qcover {

/// A set of k-dimensional subspaces of F_q^n. Blocks are kept in enumeration
/// order; duplicates are rejected at construction.
class SubspaceDesign {
 public:
  SubspaceDesign(SpacePtr space, unsigned k, std::vector<Subspace> blocks, std::string label = {});

  /// Same as the constructor but silently drops repeated blocks.
  static SubspaceDesign deduplicated(SpacePtr space, unsigned k, std::vector<Subspace> blocks,
                                     std::string label = {});

  const VectorSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  std::uint32_t q() const { return space_->q(); }
  unsigned n() const { return space_->dimension(); }
  unsigned block_dimension() const { return k_; }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<Subspace>& blocks() const { return blocks_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool contains(const Subspace& s) const;

  friend bool operator==(const SubspaceDesign& a, const SubspaceDesign& b) {
    return a.k_ == b.k_ && *a.space_ == *b.space_ && a.blocks_ == b.blocks_;
  }

 private:
  SpacePtr space_;
  unsigned k_;
  std::vector<Subspace> blocks_;
  std::string label_;
};

inline constexpr std::size_t kWitnessCap = 16;

/// Exact incidence statistics over one Grassmannian of targets.
///
/// For covering/Steiner checks the targets are r-subspaces and multiplicity is
/// the number of blocks containing a target. For Turan checks the targets are
/// k-subspaces and multiplicity counts blocks inside the target; is_covering
/// then reads "every target is hit".
struct CoverageReport {
  std::uint64_t total_targets = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;  // multiplicity -> targets
  std::uint64_t min_multiplicity = 0;
  std::uint64_t max_multiplicity = 0;
  std::vector<Subspace> uncovered;  // first kWitnessCap in enumeration order
  bool is_covering = false;
  bool is_steiner = false;

  /// Sum of multiplicity * count over the histogram.
  std::uint64_t incidences() const;
};

enum class Strategy {
  kAuto,
  /// Walk each block's sub- (or super-) spaces and tally them.
  kBlockExpansion,
  /// Walk every target and test it against every block.
  kTargetScan,
};

struct VerifyOptions {
  Strategy strategy = Strategy::kAuto;
  /// 0 selects default_workers().
  unsigned workers = 0;
};

/// Worker count used when VerifyOptions::workers is 0; starts at the
/// hardware concurrency.
unsigned default_workers();
void set_default_workers(unsigned workers);

/// Multiplicity of every r-subspace of F_q^n in the blocks of d.
CoverageReport verify_covering(const SubspaceDesign& d, unsigned r, const VerifyOptions& options = {});
/// Same tally; the verdict of interest is is_steiner.
CoverageReport verify_steiner(const SubspaceDesign& d, unsigned r, const VerifyOptions& options = {});
/// d holds r-subspaces; counts, for every k-subspace, the blocks it contains.
CoverageReport verify_turan(const SubspaceDesign& d, unsigned k, const VerifyOptions& options = {});

/// Blockwise orthogonal complement; an involution.
SubspaceDesign dualize(const SubspaceDesign& d);

/// Points 0..v-1, blocks as sorted point lists of one common size. Blocks are
/// stored sorted and must be distinct.
class SetSystem {
 public:
  SetSystem(std::uint32_t points, std::vector<std::vector<std::uint32_t>> blocks);

  std::uint32_t points() const { return points_; }
  std::size_t block_size() const { return block_size_; }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<std::vector<std::uint32_t>>& blocks() const { return blocks_; }

  friend bool operator==(const SetSystem&, const SetSystem&) = default;

 private:
  std::uint32_t points_;
  std::size_t block_size_ = 0;
  std::vector<std::vector<std::uint32_t>> blocks_;
};

inline constexpr std::uint64_t kPointSubsetBudget = 10'000'000;

struct SetSystemReport {
  std::uint64_t total_subsets = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::uint64_t min_multiplicity = 0;
  std::uint64_t max_multiplicity = 0;
  std::vector<std::vector<std::uint32_t>> uncovered;
  bool is_covering = false;
  bool is_steiner = false;
};

/// Multiplicity of every t-subset of points.
SetSystemReport verify_steiner_system(const SetSystem& s, unsigned t);

/// Points are the 1-subspaces of F_q^n indexed in enumeration order; each
/// block becomes the set of points it contains.
SetSystem to_point_set_system(const SubspaceDesign& d);

/// Index of a 1-subspace in the enumeration order of G_q(n, 1).
std::uint32_t point_index(const Subspace& line);

}  // namespace qcover
