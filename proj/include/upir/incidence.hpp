#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace upir {

using PointId = std::uint32_t;
using BlockId = std::uint32_t;

/// Dense set of point ids, sized to the owning structure.
using PointSet = boost::dynamic_bitset<std::uint64_t>;

std::vector<PointId> to_vector(const PointSet& set);
PointSet to_set(std::size_t n, std::span<const PointId> ids);

struct StructureLabel {
  std::string family;  // "pg2", "w3", "q4" or "file"
  unsigned q = 0;      // field order, 0 when not applicable
};

/// Points 0..n-1 and a list of blocks; the bipartite graph behind a UPIR
/// system. Blocks are stored canonically: each block sorted, and the block
/// list sorted lexicographically, so block ids are reproducible.
class IncidenceStructure {
 public:
  /// Throws Error{MalformedStructure} on out-of-range ids, repeated points
  /// within a block, empty blocks, or points on no block.
  IncidenceStructure(std::size_t num_points, std::vector<std::vector<PointId>> blocks,
                     StructureLabel label = {});

  std::size_t num_points() const noexcept { return point_blocks_.size(); }
  std::size_t num_blocks() const noexcept { return blocks_.size(); }
  const StructureLabel& label() const noexcept { return label_; }

  std::span<const PointId> block(BlockId b) const { return blocks_[b]; }
  std::span<const BlockId> blocks_through(PointId p) const { return point_blocks_[p]; }
  const std::vector<std::vector<PointId>>& blocks() const noexcept { return blocks_; }

  bool incident(PointId p, BlockId b) const;

  /// Constant block size / point degree, if they are constant.
  std::optional<std::size_t> uniform_block_size() const;
  std::optional<std::size_t> uniform_point_degree() const;

 private:
  std::vector<std::vector<PointId>> blocks_;
  std::vector<std::vector<BlockId>> point_blocks_;
  StructureLabel label_;
};

/// Row x holds the points that share at least one block with x (x excluded).
std::vector<PointSet> collinearity(const IncidenceStructure& inc);

}  // namespace upir
