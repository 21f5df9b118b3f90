#pragma once

#include <memory>
#include <span>
#include <vector>

#include "upir/incidence.hpp"

namespace upir {

using UserId = PointId;
using SpaceId = BlockId;

/// An alternating path (users[0], spaces[0], users[1], ..., spaces[k-1], users[k]).
struct UserPath {
  std::vector<UserId> users;
  std::vector<SpaceId> spaces;
  friend bool operator==(const UserPath&, const UserPath&) = default;
};

/// Users are the points of an incidence structure and message spaces are
/// its blocks. Construction checks connectivity and tabulates user-graph
/// distances (number of spaces on a shortest path).
class UPIRSystem {
 public:
  /// Throws Error{Disconnected} naming two users in different components.
  explicit UPIRSystem(std::shared_ptr<const IncidenceStructure> inc);
  explicit UPIRSystem(IncidenceStructure inc)
      : UPIRSystem(std::make_shared<const IncidenceStructure>(std::move(inc))) {}

  const IncidenceStructure& structure() const noexcept { return *inc_; }
  std::shared_ptr<const IncidenceStructure> shared_structure() const noexcept { return inc_; }

  std::size_t num_users() const noexcept { return inc_->num_points(); }
  std::size_t num_spaces() const noexcept { return inc_->num_blocks(); }

  std::span<const UserId> members(SpaceId m) const { return inc_->block(m); }
  std::span<const SpaceId> spaces_of(UserId u) const { return inc_->blocks_through(u); }
  bool has_access(UserId u, SpaceId m) const { return inc_->incident(u, m); }

  unsigned distance(UserId u, UserId v) const { return dist_[u * num_users() + v]; }
  unsigned diameter() const noexcept { return diameter_; }
  /// True when two users never share more than one space.
  bool is_partial_linear() const noexcept { return partial_linear_; }

  const PointSet& neighbours(UserId u) const { return coll_[u]; }
  PointSet at_distance(UserId u, unsigned d) const;
  std::vector<SpaceId> shared_spaces(UserId u, UserId v) const;

  /// Every shortest alternating path from u to v, ordered lexicographically
  /// by (spaces[0], users[1], spaces[1], ...). Requires u != v.
  std::vector<UserPath> shortest_paths(UserId u, UserId v) const;

 private:
  std::shared_ptr<const IncidenceStructure> inc_;
  std::vector<PointSet> coll_;
  std::vector<std::uint8_t> dist_;
  unsigned diameter_ = 0;
  bool partial_linear_ = true;
};

inline UPIRSystem upir_from_structure(IncidenceStructure inc) {
  return UPIRSystem(std::move(inc));
}
inline unsigned user_distance(const UPIRSystem& sys, UserId u, UserId v) {
  return sys.distance(u, v);
}
inline std::vector<UserPath> shortest_user_paths(const UPIRSystem& sys, UserId u, UserId v) {
  return sys.shortest_paths(u, v);
}

}  // namespace upir
