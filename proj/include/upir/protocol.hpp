#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "upir/rng.hpp"
#include "upir/system.hpp"

namespace upir {

enum class Protocol : int { P1 = 1, P2 = 2 };
enum class EventKind { WriteRequest, WriteResponse, DbRequest, DbResponse };
enum class Visibility { AllReaders, ProxyOnly };

using TopicId = std::uint32_t;

std::string_view to_string(EventKind kind);
std::string_view to_string(Visibility vis);

/// Addressing metadata carried by a message, e.g. (u1, M2, ..., Mn, v):
/// users.size() == spaces.size() + 1 and users.back() is the proxy.
struct Route {
  std::vector<UserId> users;
  std::vector<SpaceId> spaces;

  UserId next_hop() const { return users.front(); }
  UserId proxy() const { return users.back(); }
  std::size_t remaining_spaces() const { return spaces.size(); }
  friend bool operator==(const Route&, const Route&) = default;
};

struct TranscriptEvent {
  std::uint64_t seq = 0;
  EventKind kind = EventKind::WriteRequest;
  std::optional<SpaceId> space;  // empty for database events
  Route route;                   // empty for database events
  UserId proxy = 0;
  TopicId topic = 0;
  std::uint32_t query = 0;    // index of the query within its topic
  std::uint64_t message = 0;  // opaque ciphertext handle, same on every leg
  Visibility visibility = Visibility::AllReaders;
  UserId writer = 0;  // ground truth; never reaches an observer
};

struct QueryWorkload {
  UserId source = 0;
  std::string topic;
  std::uint32_t count = 1;
};

struct Transcript {
  Protocol protocol = Protocol::P1;
  std::uint64_t seed = 0;
  std::vector<std::string> topics;  // TopicId -> label
  std::vector<UserId> sources;      // TopicId -> source (ground truth)
  std::vector<TranscriptEvent> events;
};

/// Protocol 1: proxy uniform over all users (self included); a self-proxied
/// query goes straight to the database. Otherwise a shortest path is drawn
/// uniformly and the request is relayed hop by hop, the response retracing
/// it. Queries of different workloads are interleaved round-robin.
Transcript run_protocol1(const UPIRSystem& sys, std::span<const QueryWorkload> workloads, Rng& rng);

/// Protocol 2: same message flow, but query payloads are readable only by the
/// addressed proxy. Throws Error{NotDiameterBounded} when some pair of users
/// is more than two spaces apart.
Transcript run_protocol2(const UPIRSystem& sys, std::span<const QueryWorkload> workloads, Rng& rng);

Transcript run_protocol(const UPIRSystem& sys, Protocol protocol,
                        std::span<const QueryWorkload> workloads, Rng& rng);

/// An event as some party sees it: the writer is gone, and topic/query are
/// empty when the payload is not readable by that party.
struct ObservedEvent {
  std::uint64_t seq = 0;
  EventKind kind = EventKind::WriteRequest;
  std::optional<SpaceId> space;
  Route route;
  UserId proxy = 0;
  std::optional<TopicId> topic;
  std::optional<std::uint32_t> query;
  std::uint64_t message = 0;
  Visibility visibility = Visibility::AllReaders;
  friend bool operator==(const ObservedEvent&, const ObservedEvent&) = default;
};

struct ObservedView {
  UserId observer = 0;
  Protocol protocol = Protocol::P1;
  std::vector<std::string> topics;
  std::vector<ObservedEvent> events;
};

/// What `observer` sees: events in spaces it belongs to, database events
/// where it is the proxy. Payloads follow the visibility rule (P2 responses
/// are also readable by the source, which holds the session key).
ObservedView observer_view(const Transcript& transcript, const UPIRSystem& sys, UserId observer);

/// The full log with the writer stripped and every payload present.
std::vector<ObservedEvent> public_log(const Transcript& transcript);

/// Database requests, as an external observer sees them.
struct DatabaseRecord {
  std::uint64_t seq = 0;
  UserId proxy = 0;
  TopicId topic = 0;
  std::uint32_t query = 0;
};
std::vector<DatabaseRecord> external_view(const Transcript& transcript);

}  // namespace upir
