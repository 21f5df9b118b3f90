#include "upir/protocol.hpp"

#include <unordered_map>
#include <unordered_set>

#include "upir/error.hpp"

namespace upir {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::WriteRequest: return "write_request";
    case EventKind::WriteResponse: return "write_response";
    case EventKind::DbRequest: return "db_request";
    case EventKind::DbResponse: return "db_response";
  }
  return "unknown";
}

std::string_view to_string(Visibility vis) {
  return vis == Visibility::AllReaders ? "all_readers" : "proxy_only";
}

namespace {

Route suffix_route(const UserPath& path, std::size_t from_user) {
  Route r;
  r.users.assign(path.users.begin() + static_cast<std::ptrdiff_t>(from_user), path.users.end());
  r.spaces.assign(path.spaces.begin() + static_cast<std::ptrdiff_t>(from_user), path.spaces.end());
  return r;
}

class Session {
 public:
  Session(const UPIRSystem& sys, Protocol protocol, Rng& rng)
      : sys_(sys), protocol_(protocol), rng_(rng) {}

  void issue(Transcript& out, UserId source, TopicId topic, std::uint32_t query) {
    const std::uint64_t message = next_message_++;
    const UserId proxy = static_cast<UserId>(rng_.uniform(sys_.num_users()));
    const Visibility payload =
        protocol_ == Protocol::P1 ? Visibility::AllReaders : Visibility::ProxyOnly;

    auto emit = [&](EventKind kind, std::optional<SpaceId> space, Route route, UserId writer,
                    Visibility vis) {
      TranscriptEvent e;
      e.seq = out.events.size();
      e.kind = kind;
      e.space = space;
      e.route = std::move(route);
      e.proxy = proxy;
      e.topic = topic;
      e.query = query;
      e.message = message;
      e.visibility = vis;
      e.writer = writer;
      out.events.push_back(std::move(e));
    };

    if (proxy == source) {
      emit(EventKind::DbRequest, std::nullopt, {}, proxy, Visibility::ProxyOnly);
      emit(EventKind::DbResponse, std::nullopt, {}, proxy, Visibility::ProxyOnly);
      return;
    }

    const auto& paths = paths_between(source, proxy);
    const UserPath& path = paths[rng_.uniform(paths.size())];
    const std::size_t legs = path.spaces.size();
    for (std::size_t i = 0; i < legs; ++i)
      emit(EventKind::WriteRequest, path.spaces[i], suffix_route(path, i + 1), path.users[i],
           payload);
    emit(EventKind::DbRequest, std::nullopt, {}, proxy, Visibility::ProxyOnly);
    emit(EventKind::DbResponse, std::nullopt, {}, proxy, Visibility::ProxyOnly);
    for (std::size_t i = legs; i-- > 0;)
      emit(EventKind::WriteResponse, path.spaces[i], suffix_route(path, i + 1),
           path.users[i + 1], payload);
  }

 private:
  const std::vector<UserPath>& paths_between(UserId u, UserId v) {
    const std::uint64_t key = std::uint64_t{u} * sys_.num_users() + v;
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, sys_.shortest_paths(u, v)).first;
    return it->second;
  }

  const UPIRSystem& sys_;
  Protocol protocol_;
  Rng& rng_;
  std::uint64_t next_message_ = 0;
  std::unordered_map<std::uint64_t, std::vector<UserPath>> cache_;
};

Transcript run(const UPIRSystem& sys, Protocol protocol, std::span<const QueryWorkload> workloads,
               Rng& rng) {
  Transcript out;
  out.protocol = protocol;
  out.seed = rng.seed();
  std::unordered_set<std::string> labels;
  for (const auto& w : workloads) {
    if (w.source >= sys.num_users())
      throw Error(Errc::InvalidArgument, "workload source out of range");
    if (w.count < 1) throw Error(Errc::InvalidArgument, "workload needs at least one query");
    if (!labels.insert(w.topic).second)
      throw Error(Errc::InvalidArgument, "duplicate topic label " + w.topic);
    out.topics.push_back(w.topic);
    out.sources.push_back(w.source);
  }

  Session session(sys, protocol, rng);
  std::uint32_t round = 0;
  bool any = true;
  while (any) {
    any = false;
    for (TopicId t = 0; t < workloads.size(); ++t) {
      if (round >= workloads[t].count) continue;
      session.issue(out, workloads[t].source, t, round);
      any = true;
    }
    ++round;
  }
  return out;
}

ObservedEvent strip(const TranscriptEvent& e, bool payload_visible) {
  ObservedEvent o;
  o.seq = e.seq;
  o.kind = e.kind;
  o.space = e.space;
  o.route = e.route;
  o.proxy = e.proxy;
  if (payload_visible) {
    o.topic = e.topic;
    o.query = e.query;
  }
  o.message = e.message;
  o.visibility = e.visibility;
  return o;
}

}  // namespace

Transcript run_protocol1(const UPIRSystem& sys, std::span<const QueryWorkload> workloads,
                         Rng& rng) {
  return run(sys, Protocol::P1, workloads, rng);
}

Transcript run_protocol2(const UPIRSystem& sys, std::span<const QueryWorkload> workloads,
                         Rng& rng) {
  if (sys.diameter() > 2) {
    throw Error(Errc::NotDiameterBounded, "Protocol 2 needs every pair of users within two spaces");
  }
  return run(sys, Protocol::P2, workloads, rng);
}

Transcript run_protocol(const UPIRSystem& sys, Protocol protocol,
                        std::span<const QueryWorkload> workloads, Rng& rng) {
  return protocol == Protocol::P1 ? run_protocol1(sys, workloads, rng)
                                  : run_protocol2(sys, workloads, rng);
}

ObservedView observer_view(const Transcript& transcript, const UPIRSystem& sys, UserId observer) {
  ObservedView view;
  view.observer = observer;
  view.protocol = transcript.protocol;
  view.topics = transcript.topics;
  for (const auto& e : transcript.events) {
    if (!e.space) {
      if (e.proxy == observer) view.events.push_back(strip(e, true));
      continue;
    }
    if (!sys.has_access(observer, *e.space)) continue;
    bool readable = e.visibility == Visibility::AllReaders || observer == e.proxy;
    if (e.kind == EventKind::WriteResponse && observer == transcript.sources[e.topic])
      readable = true;
    view.events.push_back(strip(e, readable));
  }
  return view;
}

std::vector<ObservedEvent> public_log(const Transcript& transcript) {
  std::vector<ObservedEvent> out;
  out.reserve(transcript.events.size());
  for (const auto& e : transcript.events) out.push_back(strip(e, true));
  return out;
}

std::vector<DatabaseRecord> external_view(const Transcript& transcript) {
  std::vector<DatabaseRecord> out;
  for (const auto& e : transcript.events)
    if (e.kind == EventKind::DbRequest) out.push_back({e.seq, e.proxy, e.topic, e.query});
  return out;
}

}  // namespace upir
