#include "upir/inference.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "upir/analytic.hpp"
#include "upir/error.hpp"

namespace upir {

PointSet route_consistent_sources(const UPIRSystem& sys, SpaceId space, const Route& route) {
  const std::size_t n = sys.num_users();
  const unsigned k = static_cast<unsigned>(route.remaining_spaces());
  const UserId r0 = route.next_hop();
  const UserId v = route.proxy();
  PointSet out(n);
  for (UserId w = 0; w < n; ++w) {
    const unsigned dv = sys.distance(w, v);
    for (UserId x : sys.members(space)) {
      if (x != r0 && sys.distance(w, x) + 1 + k == dv) {
        out.set(w);
        break;
      }
    }
  }
  return out;
}

namespace {

struct Seen {
  const ObservedEvent* event;
  std::size_t member;  // index into the sorted coalition
};

struct TopicWork {
  PointSet candidates;
  CandidateState state;
  std::unordered_set<std::uint64_t> messages;
  std::vector<std::unordered_set<std::uint64_t>> member_messages;
};

void update_verdict(MemberEvidence& ev, const InferenceOptions& options) {
  std::uint32_t best = 0;
  SpaceId best_space = 0;
  for (const auto& [space, count] : ev.arrivals) {
    if (count > best) {
      best = count;
      best_space = space;
    }
  }
  const double share = ev.observations ? static_cast<double>(best) / ev.observations : 0.0;
  if (ev.observations >= options.min_observations && share >= options.dominant_share) {
    ev.verdict = DistanceVerdict::One;
    ev.dominant_space = best_space;
  } else if (ev.arrivals.size() >= 2) {
    ev.verdict = DistanceVerdict::Two;
    ev.dominant_space.reset();
  } else {
    ev.verdict = DistanceVerdict::Undetermined;
    ev.dominant_space.reset();
  }
}

}  // namespace

std::map<TopicId, CandidateState> empirical_infer(std::span<const ObservedView> views,
                                                  const UPIRSystem& sys, Protocol protocol,
                                                  const InferenceOptions& options) {
  std::map<TopicId, CandidateState> result;
  if (views.empty()) return result;
  const std::size_t n = sys.num_users();

  std::vector<UserId> members;
  for (const auto& v : views) members.push_back(v.observer);
  const Coalition coalition = make_coalition(sys, members);
  members = coalition.members;
  auto member_index = [&](UserId u) {
    return static_cast<std::size_t>(
        std::lower_bound(members.begin(), members.end(), u) - members.begin());
  };

  const bool bounded = sys.diameter() <= 2 && sys.is_partial_linear();
  const bool classify = options.classify_distance && bounded;
  std::optional<PseudonymityPartition> floor;
  if (bounded) floor = analytic_coalition(sys, coalition, protocol);

  struct Link {
    TopicId topic;
    std::uint32_t query;
  };
  std::unordered_map<std::uint64_t, Link> linked;
  if (options.metadata_aware_relays) {
    for (const auto& v : views)
      for (const auto& e : v.events)
        if (e.topic) linked.emplace(e.message, Link{*e.topic, e.query.value_or(0)});
  }

  std::vector<Seen> all;
  for (const auto& v : views) {
    const std::size_t m = member_index(v.observer);
    for (const auto& e : v.events) all.push_back({&e, m});
  }
  std::stable_sort(all.begin(), all.end(), [](const Seen& a, const Seen& b) {
    return a.event->seq != b.event->seq ? a.event->seq < b.event->seq : a.member < b.member;
  });

  PointSet outsiders(n);
  outsiders.set();
  for (UserId c : members) outsiders.reset(c);

  std::map<std::vector<std::uint32_t>, PointSet> consistent_cache;
  auto consistent = [&](SpaceId space, const Route& route) -> const PointSet& {
    std::vector<std::uint32_t> key{space};
    key.insert(key.end(), route.users.begin(), route.users.end());
    key.insert(key.end(), route.spaces.begin(), route.spaces.end());
    auto it = consistent_cache.find(key);
    if (it == consistent_cache.end())
      it = consistent_cache.emplace(std::move(key), route_consistent_sources(sys, space, route)).first;
    return it->second;
  };

  std::vector<PointSet> at_two;
  if (classify)
    for (UserId c : members) at_two.push_back(sys.at_distance(c, 2));

  std::map<TopicId, TopicWork> work;
  auto work_for = [&](TopicId topic) -> TopicWork& {
    auto it = work.find(topic);
    if (it != work.end()) return it->second;
    TopicWork w;
    w.candidates = outsiders;
    w.state.topic = topic;
    w.member_messages.resize(members.size());
    for (UserId c : members) w.state.evidence.push_back(MemberEvidence{c, {}, 0, {}, {}});
    return work.emplace(topic, std::move(w)).first->second;
  };

  for (TopicId t = 0; t < views.front().topics.size(); ++t) work_for(t);

  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].event->seq == all[i].event->seq) ++j;
    // Copies of one event differ only in readability; take any readable one.
    const ObservedEvent* readable = nullptr;
    for (std::size_t g = i; g < j && !readable; ++g)
      if (all[g].event->topic) readable = all[g].event;
    const ObservedEvent& e = readable ? *readable : *all[i].event;

    std::optional<TopicId> topic = e.topic;
    std::uint32_t query = e.query.value_or(0);
    const auto link = linked.find(e.message);
    if (!topic && link != linked.end()) {
      topic = link->second.topic;
      query = link->second.query;
    }
    if (!topic) {
      i = j;
      continue;
    }

    TopicWork& w = work_for(*topic);
    const std::size_t before = w.candidates.count();
    if (w.messages.insert(e.message).second) ++w.state.rounds_observed;

    if (e.kind == EventKind::WriteRequest && e.space) {
      w.candidates &= consistent(*e.space, e.route);
      if (classify) {
        for (std::size_t g = i; g < j; ++g) {
          // A member's arrival evidence comes only from copies it can tie to
          // the topic itself, otherwise first appearances are misdated.
          if (!all[g].event->topic && link == linked.end()) continue;
          const std::size_t m = all[g].member;
          if (!w.member_messages[m].insert(e.message).second) continue;
          MemberEvidence& ev = w.state.evidence[m];
          ++ev.arrivals[*e.space];
          ++ev.observations;
          update_verdict(ev, options);
          if (ev.verdict == DistanceVerdict::One) {
            w.candidates &= to_set(n, sys.members(*ev.dominant_space));
          } else if (ev.verdict == DistanceVerdict::Two) {
            w.candidates &= at_two[m];
          }
        }
      }
    }

    const std::size_t after = w.candidates.count();
    if (after != before) w.state.trajectory.push_back({w.state.rounds_observed, query, after});
    if (!w.state.converged && after > 0) {
      bool done = false;
      if (floor) {
        const auto& cls = floor->class_members(static_cast<UserId>(w.candidates.find_first()));
        done = cls.size() == after &&
               std::all_of(cls.begin(), cls.end(), [&](UserId u) { return w.candidates.test(u); });
      } else {
        done = after == 1;
      }
      if (done) {
        w.state.converged = true;
        w.state.converged_at_query = query;
      }
    }
    i = j;
  }

  for (auto& [topic, w] : work) {
    w.state.candidates = to_vector(w.candidates);
    result.emplace(topic, std::move(w.state));
  }
  return result;
}

}  // namespace upir
