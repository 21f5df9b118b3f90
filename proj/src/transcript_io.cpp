#include "upir/transcript_io.hpp"

#include <fstream>
#include <istream>
#include <json.hpp>
#include <map>
#include <ostream>

#include "upir/error.hpp"

namespace upir {

using ordered_json = nlohmann::ordered_json;

namespace {

EventKind parse_kind(const std::string& s) {
  for (auto k : {EventKind::WriteRequest, EventKind::WriteResponse, EventKind::DbRequest,
                 EventKind::DbResponse})
    if (to_string(k) == s) return k;
  throw Error(Errc::MalformedStructure, "unknown event kind " + s);
}

Visibility parse_visibility(const std::string& s) {
  if (s == to_string(Visibility::AllReaders)) return Visibility::AllReaders;
  if (s == to_string(Visibility::ProxyOnly)) return Visibility::ProxyOnly;
  throw Error(Errc::MalformedStructure, "unknown visibility " + s);
}

}  // namespace

void write_event_log(std::ostream& out, std::span<const ObservedEvent> events,
                     std::span<const std::string> topics) {
  for (const auto& e : events) {
    ordered_json j;
    j["seq"] = e.seq;
    j["kind"] = to_string(e.kind);
    j["space"] = e.space ? ordered_json(*e.space) : ordered_json(nullptr);
    ordered_json path = ordered_json::array();
    for (std::size_t i = 0; i < e.route.users.size(); ++i) {
      if (i > 0) path.push_back(e.route.spaces[i - 1]);
      path.push_back(e.route.users[i]);
    }
    j["path"] = std::move(path);
    j["proxy"] = e.proxy;
    j["topic"] = e.topic ? ordered_json(topics[*e.topic]) : ordered_json(nullptr);
    j["visibility"] = to_string(e.visibility);
    j["query"] = e.query ? ordered_json(*e.query) : ordered_json(nullptr);
    j["msg"] = e.message;
    out << j.dump() << '\n';
  }
}

EventLog read_event_log(std::istream& in) {
  EventLog log;
  std::map<std::string, TopicId> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = ordered_json::parse(line);
      ObservedEvent e;
      e.seq = j.at("seq").get<std::uint64_t>();
      e.kind = parse_kind(j.at("kind").get<std::string>());
      if (!j.at("space").is_null()) e.space = j.at("space").get<SpaceId>();
      const auto path = j.at("path").get<std::vector<std::uint32_t>>();
      if (!path.empty() && path.size() % 2 == 0)
        throw Error(Errc::MalformedStructure, "path must alternate user, space, ..., user");
      for (std::size_t i = 0; i < path.size(); ++i)
        (i % 2 == 0 ? e.route.users : e.route.spaces).push_back(path[i]);
      e.proxy = j.at("proxy").get<UserId>();
      if (!j.at("topic").is_null()) {
        const auto label = j.at("topic").get<std::string>();
        auto [it, fresh] = ids.emplace(label, static_cast<TopicId>(log.topics.size()));
        if (fresh) log.topics.push_back(label);
        e.topic = it->second;
      }
      e.visibility = parse_visibility(j.at("visibility").get<std::string>());
      if (!j.at("query").is_null()) e.query = j.at("query").get<std::uint32_t>();
      e.message = j.at("msg").get<std::uint64_t>();
      log.events.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(Errc::MalformedStructure,
                  "event log line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return log;
}

void write_ground_truth(std::ostream& out, const Transcript& transcript) {
  ordered_json j;
  j["protocol"] = static_cast<int>(transcript.protocol);
  j["seed"] = transcript.seed;
  ordered_json sources = ordered_json::object();
  for (TopicId t = 0; t < transcript.topics.size(); ++t)
    sources[transcript.topics[t]] = transcript.sources[t];
  j["sources"] = std::move(sources);
  out << j.dump(2) << '\n';
}

void write_transcript_files(const std::filesystem::path& stem, const Transcript& transcript) {
  auto log_path = stem;
  log_path += ".jsonl";
  auto truth_path = stem;
  truth_path += ".truth.json";
  std::ofstream log(log_path, std::ios::binary);
  std::ofstream truth(truth_path, std::ios::binary);
  if (!log || !truth) throw Error(Errc::Io, "cannot write transcript " + stem.string());
  write_event_log(log, public_log(transcript), transcript.topics);
  write_ground_truth(truth, transcript);
}

}  // namespace upir
