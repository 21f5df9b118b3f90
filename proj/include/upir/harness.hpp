#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <vector>

#include "upir/builders.hpp"
#include "upir/placement.hpp"
#include "upir/protocol.hpp"
#include "upir/sweep.hpp"

namespace upir {

enum ExitCode : int { kExitOk = 0, kExitClaimFailure = 1, kExitConfigError = 2 };

struct ExperimentConfig {
  std::optional<Family> family;              // built-in geometry ...
  unsigned q = 0;
  std::optional<std::filesystem::path> input;  // ... or an imported geometry file
  Protocol protocol = Protocol::P1;
  std::vector<UserId> coalition;  // explicit members; overrides size/placement
  std::size_t coalition_size = 1;
  Placement placement = Placement::Random;
  std::size_t topics = 1;
  std::uint32_t queries = 1000;
  std::size_t runs = 1;
  std::optional<std::uint64_t> seed;  // mandatory for analyze/simulate
  std::optional<double> epsilon;
  std::optional<unsigned> source_distance;  // restrict sources by distance to the coalition
  bool metadata_aware = false;
  bool dump_transcripts = false;
  std::filesystem::path out;  // output directory; empty prints the report to the log stream
};

enum class CheckMode { Auto, Gq, Plane };

/// The report documents are pure functions of the config (no timings, no
/// wall-clock data). They throw Error on configuration problems.
nlohmann::ordered_json analyze_report(const ExperimentConfig& config);
nlohmann::ordered_json simulate_report(const ExperimentConfig& config);

// Subcommands. Each returns an ExitCode and writes progress to `log`.
int cmd_construct(Family family, unsigned q, const std::filesystem::path& out, std::ostream& log);
int cmd_verify(const std::filesystem::path& in, CheckMode mode, std::ostream& log);
int cmd_analyze(const ExperimentConfig& config, std::ostream& log);
int cmd_simulate(const ExperimentConfig& config, std::ostream& log);
int cmd_sweep(const SweepConfig& config, const std::filesystem::path& out, bool plot_data,
              std::ostream& log);

}  // namespace upir
