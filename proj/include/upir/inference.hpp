#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "upir/protocol.hpp"
#include "upir/system.hpp"

namespace upir {

struct InferenceOptions {
  /// Narrow by the source's apparent distance to each member (only on
  /// partial linear spaces of user distance <= 2).
  bool classify_distance = true;
  /// P2 only: a relay that saw a ciphertext can tie it to the topic that a
  /// coalition proxy decrypted from the same ciphertext. Off by default.
  bool metadata_aware_relays = false;
  std::size_t min_observations = 50;
  double dominant_share = 0.95;
};

enum class DistanceVerdict { Undetermined, One, Two };

/// Where a member first saw each linked query.
struct MemberEvidence {
  UserId member = 0;
  std::map<SpaceId, std::uint32_t> arrivals;
  std::uint32_t observations = 0;
  DistanceVerdict verdict = DistanceVerdict::Undetermined;
  std::optional<SpaceId> dominant_space;
};

struct TrajectoryPoint {
  std::uint32_t rounds_observed = 0;
  std::uint32_t query = 0;  // query index of the observation that shrank the set
  std::size_t size = 0;
};

struct CandidateState {
  TopicId topic = 0;
  std::vector<UserId> candidates;
  std::uint32_t rounds_observed = 0;  // distinct linked queries seen
  bool converged = false;             // candidates equal a class of the analytic partition
  std::optional<std::uint32_t> converged_at_query;
  std::vector<TrajectoryPoint> trajectory;
  std::vector<MemberEvidence> evidence;
};

/// Users that could have been the source of a request written to `space`
/// carrying `route` = (r0, ..., v): some x in space, x != r0, lies on a
/// shortest path from the source to v, i.e. d(w, x) + 1 + |route spaces| = d(w, v).
PointSet route_consistent_sources(const UPIRSystem& sys, SpaceId space, const Route& route);

/// Pools the coalition's views and folds every readable request into
/// per-topic candidate sets. The coalition is the set of view observers and
/// is never a candidate. Candidate sets only shrink, and they keep the true
/// source except when a distance verdict is wrong (dominant-share rule).
std::map<TopicId, CandidateState> empirical_infer(std::span<const ObservedView> views,
                                                  const UPIRSystem& sys, Protocol protocol,
                                                  const InferenceOptions& options = {});

}  // namespace upir
