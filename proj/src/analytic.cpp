#include "upir/analytic.hpp"

#include <map>
#include <vector>

#include "upir/error.hpp"

namespace upir {

namespace {

void require_bounded_linear(const UPIRSystem& sys) {
  if (sys.diameter() > 2)
    throw Error(Errc::NotDiameterBounded, "analytic partitions need user distance <= 2");
  if (!sys.is_partial_linear())
    throw Error(Errc::InvalidArgument, "analytic partitions need users to share at most one space");
}

void require_user(const UPIRSystem& sys, UserId c) {
  if (c >= sys.num_users()) throw Error(Errc::InvalidArgument, "eavesdropper out of range");
}

// Label space: 0 for c, 1 + u for singletons, then offsets for grouped keys.
constexpr std::uint64_t kGroupBase = std::uint64_t{1} << 40;

}  // namespace

PseudonymityPartition analytic_single_p1(const UPIRSystem& sys, UserId c) {
  require_bounded_linear(sys);
  require_user(sys, c);
  const std::size_t n = sys.num_users();
  std::vector<std::uint64_t> labels(n);
  std::map<std::vector<UserId>, std::uint64_t> groups;
  const PointSet& near_c = sys.neighbours(c);
  for (UserId u = 0; u < n; ++u) {
    const unsigned d = sys.distance(c, u);
    if (d <= 1) {
      labels[u] = 1 + std::uint64_t{u};
      continue;
    }
    const auto key = to_vector(near_c & sys.neighbours(u));
    auto [it, fresh] = groups.emplace(key, kGroupBase + groups.size());
    labels[u] = it->second;
  }
  return PseudonymityPartition::from_labels(labels, Provenance::AnalyticP1, {c});
}

PseudonymityPartition analytic_single_p2(const UPIRSystem& sys, UserId c) {
  require_bounded_linear(sys);
  require_user(sys, c);
  const std::size_t n = sys.num_users();
  std::vector<std::uint64_t> labels(n);
  for (UserId u = 0; u < n; ++u) {
    const unsigned d = sys.distance(c, u);
    if (d == 0) {
      labels[u] = 0;
    } else if (d == 1) {
      labels[u] = kGroupBase + sys.shared_spaces(c, u).front();
    } else {
      labels[u] = 1;
    }
  }
  return PseudonymityPartition::from_labels(labels, Provenance::AnalyticP2, {c});
}

PseudonymityPartition analytic_single(const UPIRSystem& sys, UserId c, Protocol protocol) {
  return protocol == Protocol::P1 ? analytic_single_p1(sys, c) : analytic_single_p2(sys, c);
}

PseudonymityPartition analytic_coalition(const UPIRSystem& sys, const Coalition& coalition,
                                         Protocol protocol) {
  if (coalition.members.empty()) throw Error(Errc::InvalidArgument, "empty coalition");
  PseudonymityPartition acc = analytic_single(sys, coalition.members.front(), protocol);
  for (std::size_t i = 1; i < coalition.members.size(); ++i)
    acc = meet(acc, analytic_single(sys, coalition.members[i], protocol));
  return acc;
}

}  // namespace upir
