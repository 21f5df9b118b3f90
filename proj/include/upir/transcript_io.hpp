#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "upir/protocol.hpp"

namespace upir {

/// JSON-lines event log. One object per line, keys in this order:
///   seq, kind, space (null for database events), path, proxy,
///   topic (null when unreadable), visibility, query (null when unreadable), msg
/// `path` flattens a route as [u1, M2, u2, ..., v]: even positions are users,
/// odd positions are spaces. The writer never appears in a log.
void write_event_log(std::ostream& out, std::span<const ObservedEvent> events,
                     std::span<const std::string> topics);

struct EventLog {
  std::vector<std::string> topics;  // in order of first appearance
  std::vector<ObservedEvent> events;
};

/// Throws Error{MalformedStructure} on a bad line.
EventLog read_event_log(std::istream& in);

/// Ground-truth sidecar: {"protocol": 1|2, "seed": u64, "sources": {topic: user}}.
void write_ground_truth(std::ostream& out, const Transcript& transcript);

/// Writes `<stem>.jsonl` (public log) and `<stem>.truth.json` side by side.
void write_transcript_files(const std::filesystem::path& stem, const Transcript& transcript);

}  // namespace upir
