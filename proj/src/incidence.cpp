#include "upir/incidence.hpp"

#include <algorithm>
#include <string>

#include "upir/error.hpp"

namespace upir {

std::vector<PointId> to_vector(const PointSet& set) {
  std::vector<PointId> out;
  out.reserve(set.count());
  for (auto i = set.find_first(); i != PointSet::npos; i = set.find_next(i))
    out.push_back(static_cast<PointId>(i));
  return out;
}

PointSet to_set(std::size_t n, std::span<const PointId> ids) {
  PointSet set(n);
  for (PointId id : ids) set.set(id);
  return set;
}

IncidenceStructure::IncidenceStructure(std::size_t num_points,
                                       std::vector<std::vector<PointId>> blocks,
                                       StructureLabel label)
    : blocks_(std::move(blocks)), point_blocks_(num_points), label_(std::move(label)) {
  for (auto& blk : blocks_) {
    if (blk.empty()) throw Error(Errc::MalformedStructure, "empty block");
    std::sort(blk.begin(), blk.end());
    for (std::size_t i = 0; i < blk.size(); ++i) {
      if (blk[i] >= num_points) {
        throw Error(Errc::MalformedStructure,
                    "point id " + std::to_string(blk[i]) + " out of range");
      }
      if (i > 0 && blk[i] == blk[i - 1]) {
        throw Error(Errc::MalformedStructure,
                    "point " + std::to_string(blk[i]) + " repeated within a block");
      }
    }
  }
  std::sort(blocks_.begin(), blocks_.end());
  for (BlockId b = 0; b < blocks_.size(); ++b)
    for (PointId p : blocks_[b]) point_blocks_[p].push_back(b);
  for (PointId p = 0; p < num_points; ++p) {
    if (point_blocks_[p].empty()) {
      throw Error(Errc::MalformedStructure,
                  "point " + std::to_string(p) + " lies on no block");
    }
  }
}

bool IncidenceStructure::incident(PointId p, BlockId b) const {
  const auto& blk = blocks_[b];
  return std::binary_search(blk.begin(), blk.end(), p);
}

std::optional<std::size_t> IncidenceStructure::uniform_block_size() const {
  if (blocks_.empty()) return std::nullopt;
  const std::size_t k = blocks_.front().size();
  for (const auto& blk : blocks_)
    if (blk.size() != k) return std::nullopt;
  return k;
}

std::optional<std::size_t> IncidenceStructure::uniform_point_degree() const {
  if (point_blocks_.empty()) return std::nullopt;
  const std::size_t r = point_blocks_.front().size();
  for (const auto& pb : point_blocks_)
    if (pb.size() != r) return std::nullopt;
  return r;
}

std::vector<PointSet> collinearity(const IncidenceStructure& inc) {
  const std::size_t n = inc.num_points();
  std::vector<PointSet> rows(n, PointSet(n));
  for (const auto& blk : inc.blocks())
    for (PointId x : blk)
      for (PointId y : blk)
        if (x != y) rows[x].set(y);
  return rows;
}

}  // namespace upir
