#include "upir/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "upir/analytic.hpp"
#include "upir/error.hpp"
#include "upir/geometry_io.hpp"
#include "upir/inference.hpp"
#include "upir/partition.hpp"
#include "upir/security.hpp"
#include "upir/system.hpp"
#include "upir/transcript_io.hpp"
#include "upir/verify.hpp"

namespace upir {

namespace {

using ordered_json = nlohmann::ordered_json;

// Stream offsets under the master seed. Run r uses kRunStream + r.
constexpr std::uint64_t kPlacementStream = 0;
constexpr std::uint64_t kRunStream = 1;

enum class Kind { Quadrangle, Plane, Other };

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::Quadrangle: return "generalised_quadrangle";
    case Kind::Plane: return "projective_plane";
    case Kind::Other: return "incidence_structure";
  }
  return "?";
}

struct Loaded {
  std::shared_ptr<const IncidenceStructure> structure;
  Kind kind = Kind::Other;
  std::optional<GqOrder> order;
  VerificationReport verification;
};

Loaded load_geometry(const ExperimentConfig& config) {
  Loaded out;
  if (config.family && config.input)
    throw Error(Errc::InvalidArgument, "give either a family or an input file, not both");
  if (config.family) {
    auto built = construct_family(*config.family, config.q);
    out.structure = std::make_shared<const IncidenceStructure>(std::move(built.structure));
    if (*config.family == Family::PG2) {
      out.kind = Kind::Plane;
      out.verification = check_projective_plane(*out.structure);
    } else {
      out.kind = Kind::Quadrangle;
      out.verification = check_gq(*out.structure);
    }
    out.order = built.order;
    return out;
  }
  if (!config.input) throw Error(Errc::InvalidArgument, "no geometry: pass --family/--q or --in");
  out.structure = std::make_shared<const IncidenceStructure>(read_geometry_file(*config.input));
  out.verification = check_gq(*out.structure);
  if (out.verification.passed()) {
    out.kind = Kind::Quadrangle;
    out.order = out.verification.order;
    return out;
  }
  auto plane = check_projective_plane(*out.structure);
  if (plane.passed()) {
    out.kind = Kind::Plane;
    out.verification = std::move(plane);
    const std::size_t k = out.structure->block(0).size() - 1;
    out.order = GqOrder{k, k};
  }
  return out;
}

bool counts_consistent(const Loaded& g) {
  if (!g.order) return false;
  const std::size_t s = g.order->s, t = g.order->t;
  const auto& inc = *g.structure;
  if (inc.uniform_block_size() != s + 1 || inc.uniform_point_degree() != t + 1) return false;
  if (g.kind == Kind::Quadrangle)
    return inc.num_points() == (s + 1) * (s * t + 1) && inc.num_blocks() == (t + 1) * (s * t + 1);
  if (g.kind == Kind::Plane)
    return inc.num_points() == s * s + s + 1 && inc.num_blocks() == inc.num_points();
  return false;
}

ordered_json geometry_json(const Loaded& g, const UPIRSystem& sys) {
  const auto& inc = *g.structure;
  ordered_json j;
  j["family"] = inc.label().family;
  j["q"] = inc.label().q;
  j["kind"] = to_string(g.kind);
  j["n"] = inc.num_points();
  j["blocks"] = inc.num_blocks();
  if (g.order) {
    j["s"] = g.order->s;
    j["t"] = g.order->t;
  } else {
    j["s"] = nullptr;
    j["t"] = nullptr;
  }
  j["diameter"] = sys.diameter();
  j["partial_linear"] = sys.is_partial_linear();
  j["counts_consistent"] = counts_consistent(g);
  return j;
}

ordered_json verification_json(const VerificationReport& report) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = c.skipped ? "skipped" : (c.passed ? "pass" : "fail");
    if (!c.witness.empty()) cj["witness"] = c.witness;
    checks.push_back(std::move(cj));
  }
  ordered_json j;
  j["passed"] = report.passed();
  j["checks"] = std::move(checks);
  return j;
}

ordered_json config_json(const ExperimentConfig& c) {
  ordered_json j;
  j["family"] = c.family ? std::string(to_string(*c.family)) : std::string("file");
  j["q"] = c.q;
  j["input"] = c.input ? ordered_json(c.input->generic_string()) : ordered_json(nullptr);
  j["protocol"] = static_cast<int>(c.protocol);
  if (c.coalition.empty()) {
    j["coalition"] = nullptr;
    j["coalition_size"] = c.coalition_size;
    j["placement"] = to_string(c.placement);
  } else {
    j["coalition"] = c.coalition;
    j["coalition_size"] = c.coalition.size();
    j["placement"] = "explicit";
  }
  j["topics"] = c.topics;
  j["queries"] = c.queries;
  j["runs"] = c.runs;
  j["seed"] = *c.seed;
  j["epsilon"] = c.epsilon ? ordered_json(*c.epsilon) : ordered_json(nullptr);
  j["source_distance"] =
      c.source_distance ? ordered_json(*c.source_distance) : ordered_json(nullptr);
  j["metadata_aware"] = c.metadata_aware;
  return j;
}

Coalition resolve_coalition(const ExperimentConfig& config, const UPIRSystem& sys) {
  if (!config.coalition.empty()) {
    for (UserId u : config.coalition)
      if (u >= sys.num_users())
        throw Error(Errc::InvalidArgument, "coalition member " + std::to_string(u) +
                                               " does not exist (n = " +
                                               std::to_string(sys.num_users()) + ")");
    return make_coalition(sys, config.coalition);
  }
  Rng rng(derive_seed(*config.seed, kPlacementStream));
  return place_coalition(sys, config.coalition_size, config.placement, rng);
}

ordered_json partition_json(const PseudonymityPartition& p, bool with_classes) {
  ordered_json j;
  j["num_classes"] = p.num_classes();
  j["largest_class"] = p.largest_class_size();
  ordered_json hist = ordered_json::array();
  for (const auto& [size, count] : p.size_histogram()) hist.push_back({size, count});
  j["size_histogram"] = std::move(hist);
  if (with_classes) j["classes"] = p.classes();
  return j;
}

ordered_json security_json(const SecurityReport& r) {
  ordered_json j;
  j["n"] = r.n;
  j["coalition_size"] = r.coalition_size;
  j["num_classes"] = r.num_classes;
  j["giant"] = r.giant;
  j["residue"] = r.residue;
  j["epsilon_star"] = r.epsilon_star ? ordered_json(*r.epsilon_star) : ordered_json(nullptr);
  j["epsilon"] = r.epsilon ? ordered_json(*r.epsilon) : ordered_json(nullptr);
  j["secure"] = r.secure ? ordered_json(*r.secure) : ordered_json(nullptr);
  return j;
}

void require_seed(const ExperimentConfig& config) {
  if (!config.seed) throw Error(Errc::InvalidArgument, "--seed is required");
}

unsigned distance_to(const UPIRSystem& sys, const Coalition& coalition, UserId u) {
  unsigned best = ~0u;
  for (UserId c : coalition.members) best = std::min(best, sys.distance(c, u));
  return best;
}

// Summary over a set of per-topic outcomes.
struct Tally {
  std::size_t topics = 0;
  std::size_t resolved = 0;  // candidate set is exactly {source}
  std::size_t converged = 0;
  std::size_t source_lost = 0;
  std::size_t below_floor = 0;
  std::vector<std::uint32_t> queries_to_converge;

  ordered_json to_json() const {
    ordered_json j;
    j["topics"] = topics;
    j["resolved_to_source"] = resolved;
    j["converged"] = converged;
    j["source_lost"] = source_lost;
    j["below_floor"] = below_floor;
    ordered_json r;
    r["count"] = queries_to_converge.size();
    if (queries_to_converge.empty()) {
      r["median"] = nullptr;
      r["max"] = nullptr;
    } else {
      auto v = queries_to_converge;
      std::sort(v.begin(), v.end());
      const std::size_t m = v.size() / 2;
      r["median"] = v.size() % 2 ? static_cast<double>(v[m]) : (v[m - 1] + v[m]) / 2.0;
      r["max"] = v.back();
    }
    j["queries_to_convergence"] = std::move(r);
    return j;
  }
};

struct TopicOutcome {
  ordered_json json;
  bool resolved = false;
  bool converged = false;
  bool contains_source = false;
  bool floor_kept = true;
  std::optional<std::uint32_t> converged_at;
};

TopicOutcome assess(const CandidateState& st, UserId source, const std::vector<UserId>* floor) {
  TopicOutcome o;
  const auto& cand = st.candidates;
  o.contains_source = std::binary_search(cand.begin(), cand.end(), source);
  if (floor)
    o.floor_kept = std::includes(cand.begin(), cand.end(), floor->begin(), floor->end());
  o.resolved = cand.size() == 1 && cand.front() == source;
  o.converged = st.converged;
  o.converged_at = st.converged_at_query;
  ordered_json j;
  j["final_size"] = cand.size();
  j["candidates"] = cand;
  j["contains_source"] = o.contains_source;
  j["never_below_floor"] = floor ? ordered_json(o.floor_kept) : ordered_json(nullptr);
  j["converged"] = st.converged;
  j["converged_at_query"] =
      st.converged_at_query ? ordered_json(*st.converged_at_query) : ordered_json(nullptr);
  j["rounds_observed"] = st.rounds_observed;
  ordered_json traj = ordered_json::array();
  for (const auto& p : st.trajectory) traj.push_back({p.query, p.size});
  j["trajectory"] = std::move(traj);
  o.json = std::move(j);
  return o;
}

void count(Tally& t, const TopicOutcome& o) {
  ++t.topics;
  t.resolved += o.resolved;
  t.converged += o.converged;
  t.source_lost += !o.contains_source;
  t.below_floor += !o.floor_kept;
  if (o.converged_at) t.queries_to_converge.push_back(*o.converged_at + 1);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

void emit_report(const ExperimentConfig& config, const ordered_json& report, std::ostream& log) {
  const std::string text = report.dump(2) + "\n";
  if (config.out.empty()) {
    log << text;
    return;
  }
  const auto path = config.out / "report.json";
  write_text_file(path, text);
  log << "report: " << path.string() << "\n";
}

bool is_config_error(Errc code) {
  switch (code) {
    case Errc::AxiomViolation:
    case Errc::HigmanViolation:
      return false;
    default:
      return true;
  }
}

// Wall-clock timing goes to stderr only, so report files stay reproducible.
template <class F>
int guarded(std::ostream& log, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  struct Timer {
    std::chrono::steady_clock::time_point start;
    ~Timer() {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start);
      std::cerr << "elapsed: " << ms.count() << " ms\n";
    }
  } timer{start};
  try {
    return body();
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return is_config_error(e.code()) ? kExitConfigError : kExitClaimFailure;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace

ordered_json analyze_report(const ExperimentConfig& config) {
  require_seed(config);
  const Loaded g = load_geometry(config);
  const UPIRSystem sys(g.structure);
  const Coalition coalition = resolve_coalition(config, sys);
  const auto partition = analytic_coalition(sys, coalition, config.protocol);

  ordered_json report;
  report["command"] = "analyze";
  report["config"] = config_json(config);
  report["geometry"] = geometry_json(g, sys);
  report["verification"] = verification_json(g.verification);
  report["coalition"] = coalition.members;
  report["partition"] = partition_json(partition, true);
  ordered_json warnings = ordered_json::array();
  SecurityReport sec;
  try {
    sec = security_margin(partition, config.epsilon);
  } catch (const Error& e) {
    if (e.code() != Errc::DegeneratePartition) throw;
    warnings.push_back(std::string(to_string(e.code())) + ": " + e.what());
    sec = summarize_security(partition, config.epsilon);
  }
  report["security"] = security_json(sec);
  report["warnings"] = std::move(warnings);
  return report;
}

ordered_json simulate_report(const ExperimentConfig& config) {
  require_seed(config);
  if (config.topics == 0) throw Error(Errc::InvalidArgument, "--topics must be positive");
  if (config.queries == 0) throw Error(Errc::InvalidArgument, "--queries must be positive");
  if (config.runs == 0) throw Error(Errc::InvalidArgument, "--runs must be positive");

  const Loaded g = load_geometry(config);
  const UPIRSystem sys(g.structure);
  const Coalition coalition = resolve_coalition(config, sys);

  std::optional<PseudonymityPartition> floor;
  try {
    floor = analytic_coalition(sys, coalition, config.protocol);
  } catch (const Error& e) {
    if (e.code() != Errc::NotDiameterBounded && e.code() != Errc::InvalidArgument) throw;
  }

  std::vector<UserId> eligible;
  for (UserId u = 0; u < sys.num_users(); ++u) {
    if (coalition.contains(u)) continue;
    if (config.source_distance && distance_to(sys, coalition, u) != *config.source_distance)
      continue;
    eligible.push_back(u);
  }
  if (eligible.empty()) throw Error(Errc::InvalidArgument, "no user satisfies the source constraint");

  InferenceOptions plain;
  InferenceOptions aware;
  aware.metadata_aware_relays = true;

  Tally total;
  Tally aware_total;
  std::map<unsigned, Tally> by_distance;
  std::vector<std::uint64_t> proxy_counts(sys.num_users(), 0);
  std::uint64_t self_proxied = 0;
  std::uint64_t db_queries = 0;
  ordered_json runs = ordered_json::array();

  for (std::size_t r = 0; r < config.runs; ++r) {
    const std::uint64_t run_seed = derive_seed(*config.seed, kRunStream + r);
    Rng rng(run_seed);
    std::vector<QueryWorkload> workloads;
    for (std::size_t k = 0; k < config.topics; ++k) {
      QueryWorkload w;
      w.source = eligible[rng.uniform(eligible.size())];
      w.topic = "topic-" + std::to_string(k);
      w.count = config.queries;
      workloads.push_back(std::move(w));
    }
    const Transcript tr = run_protocol(sys, config.protocol, workloads, rng);
    for (const auto& e : tr.events) {
      if (e.kind != EventKind::DbRequest) continue;
      ++proxy_counts[e.proxy];
      ++db_queries;
      if (e.proxy == tr.sources[e.topic]) ++self_proxied;
    }
    if (config.dump_transcripts) {
      if (config.out.empty())
        throw Error(Errc::InvalidArgument, "transcript dumping needs --out");
      char name[32];
      std::snprintf(name, sizeof name, "run-%04zu", r);
      std::error_code ec;
      std::filesystem::create_directories(config.out / "transcripts", ec);
      write_transcript_files(config.out / "transcripts" / name, tr);
    }

    std::vector<ObservedView> views;
    for (UserId c : coalition.members) views.push_back(observer_view(tr, sys, c));
    const auto states = empirical_infer(views, sys, config.protocol, plain);
    std::map<TopicId, CandidateState> aware_states;
    if (config.metadata_aware && config.protocol == Protocol::P2)
      aware_states = empirical_infer(views, sys, config.protocol, aware);

    ordered_json topics = ordered_json::array();
    for (TopicId t = 0; t < tr.topics.size(); ++t) {
      const UserId source = tr.sources[t];
      const unsigned d = distance_to(sys, coalition, source);
      const std::vector<UserId>* cls = floor ? &floor->class_members(source) : nullptr;
      TopicOutcome o = assess(states.at(t), source, cls);
      count(total, o);
      count(by_distance[d], o);
      ordered_json j;
      j["topic"] = tr.topics[t];
      j["source"] = source;
      j["source_distance"] = d;
      j["analytic_class_size"] = cls ? ordered_json(cls->size()) : ordered_json(nullptr);
      j.update(o.json);
      if (!aware_states.empty()) {
        TopicOutcome a = assess(aware_states.at(t), source, cls);
        count(aware_total, a);
        j["metadata_aware"] = {{"final_size", aware_states.at(t).candidates.size()},
                               {"contains_source", a.contains_source}};
      }
      topics.push_back(std::move(j));
    }
    ordered_json rj;
    rj["run"] = r;
    rj["seed"] = run_seed;
    rj["topics"] = std::move(topics);
    runs.push_back(std::move(rj));
  }

  ordered_json report;
  report["command"] = "simulate";
  report["config"] = config_json(config);
  report["geometry"] = geometry_json(g, sys);
  report["verification"] = verification_json(g.verification);
  report["coalition"] = coalition.members;
  if (floor) {
    report["analytic_partition"] = partition_json(*floor, false);
    report["security"] = security_json(summarize_security(*floor, config.epsilon));
  } else {
    report["analytic_partition"] = nullptr;
    report["security"] = nullptr;
  }
  ordered_json summary = total.to_json();
  ordered_json dist = ordered_json::object();
  for (const auto& [d, t] : by_distance) dist[std::to_string(d)] = t.to_json();
  summary["by_source_distance"] = std::move(dist);
  report["summary"] = std::move(summary);
  if (config.metadata_aware && config.protocol == Protocol::P2)
    report["metadata_aware_summary"] = aware_total.to_json();
  ordered_json proxies;
  proxies["database_queries"] = db_queries;
  proxies["self_proxied"] = self_proxied;
  proxies["per_user"] = proxy_counts;
  report["proxy_frequencies"] = std::move(proxies);
  report["runs"] = std::move(runs);
  return report;
}

int cmd_construct(Family family, unsigned q, const std::filesystem::path& out, std::ostream& log) {
  return guarded(log, [&] {
    auto built = construct_family(family, q);
    const auto& inc = built.structure;
    const std::string text = geometry_to_string(inc);
    if (out.empty()) {
      log << text;
    } else {
      write_text_file(out, text);
    }
    log << to_string(family) << " q=" << q << ": s=" << built.order.s << " t=" << built.order.t
        << " n=" << inc.num_points() << " blocks=" << inc.num_blocks() << "\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_verify(const std::filesystem::path& in, CheckMode mode, std::ostream& log) {
  return guarded(log, [&]() -> int {
    if (!std::filesystem::exists(in)) {
      log << "error: no such file: " << in.string() << "\n";
      return kExitConfigError;
    }
    std::optional<IncidenceStructure> inc;
    try {
      inc.emplace(read_geometry_file(in));
    } catch (const Error& e) {
      if (e.code() != Errc::MalformedStructure) throw;
      log << "FAIL parse: " << e.what() << "\n";
      return kExitClaimFailure;
    }
    bool plane = mode == CheckMode::Plane;
    if (mode == CheckMode::Auto) plane = inc->label().family == "pg2";
    const auto report = plane ? check_projective_plane(*inc) : check_gq(*inc);
    for (const auto& c : report.checks) {
      if (c.skipped)
        log << "SKIP " << c.name << "\n";
      else if (c.passed)
        log << "PASS " << c.name << "\n";
      else
        log << "FAIL " << c.name << ": " << c.witness << "\n";
    }
    if (!report.passed()) return kExitClaimFailure;
    if (!plane && report.order)
      log << "order (" << report.order->s << "," << report.order->t << ")\n";
    return kExitOk;
  });
}

int cmd_analyze(const ExperimentConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    const auto report = analyze_report(config);
    for (const auto& w : report["warnings"])
      std::cerr << "warning: " << w.get<std::string>() << "\n";
    emit_report(config, report, log);
    return static_cast<int>(kExitOk);
  });
}

int cmd_simulate(const ExperimentConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    const auto report = simulate_report(config);
    emit_report(config, report, log);
    const auto& s = report["summary"];
    log << "topics " << s["topics"] << ", resolved " << s["resolved_to_source"] << ", converged "
        << s["converged"] << ", source lost " << s["source_lost"] << ", below floor "
        << s["below_floor"] << "\n";
    const bool sound = s["source_lost"] == 0 && s["below_floor"] == 0;
    return static_cast<int>(sound ? kExitOk : kExitClaimFailure);
  });
}

int cmd_sweep(const SweepConfig& config, const std::filesystem::path& out, bool plot_data,
              std::ostream& log) {
  return guarded(log, [&] {
    if (config.qs.empty() || config.coalition_sizes.empty() || config.placements.empty())
      throw Error(Errc::InvalidArgument, "sweep needs at least one q, size and placement");
    const auto rows = coalition_sweep(config);
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    if (out.empty()) {
      log << csv.str();
    } else {
      write_text_file(out / "sweep.csv", csv.str());
      log << "csv: " << (out / "sweep.csv").string() << "\n";
      if (plot_data) {
        std::ostringstream plot;
        write_sweep_plot_data(plot, rows);
        write_text_file(out / "sweep_plot.dat", plot.str());
      }
    }
    const bool all_bounded =
        std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.bound_check; });
    log << rows.size() << " rows, bound check " << (all_bounded ? "pass" : "FAIL") << "\n";
    return static_cast<int>(all_bounded ? kExitOk : kExitClaimFailure);
  });
}

}  // namespace upir
