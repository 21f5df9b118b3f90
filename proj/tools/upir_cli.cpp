#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "upir/error.hpp"
#include "upir/harness.hpp"

namespace {

using namespace upir;

Protocol parse_protocol(int p) {
  if (p == 1) return Protocol::P1;
  if (p == 2) return Protocol::P2;
  throw Error(Errc::InvalidArgument, "--protocol must be 1 or 2");
}

CheckMode parse_checks(const std::string& s) {
  if (s == "auto") return CheckMode::Auto;
  if (s == "gq") return CheckMode::Gq;
  if (s == "plane") return CheckMode::Plane;
  throw Error(Errc::InvalidArgument, "--checks must be auto, gq or plane");
}

struct ExperimentFlags {
  std::string family;
  unsigned q = 0;
  std::string in;
  int protocol = 1;
  std::vector<UserId> coalition;
  std::size_t coalition_size = 1;
  std::string placement = "random";
  std::size_t topics = 1;
  std::uint32_t queries = 1000;
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  double epsilon = 0;
  unsigned source_distance = 0;
  bool metadata_aware = false;
  bool transcripts = false;
  std::string out;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* eps_opt = nullptr;
  CLI::Option* dist_opt = nullptr;

  void add_common(CLI::App* app) {
    app->add_option("--family", family, "pg2 | w3 | q4");
    app->add_option("--q", q, "field order");
    app->add_option("--in", in, "geometry file instead of --family/--q");
    app->add_option("--protocol", protocol, "1 or 2");
    app->add_option("--coalition", coalition, "explicit member ids")->delimiter(',');
    app->add_option("--coalition-size", coalition_size, "coalition size when placing");
    app->add_option("--placement", placement, "random | spread | line");
    seed_opt = app->add_option("--seed", seed, "master seed (required)");
    eps_opt = app->add_option("--epsilon", epsilon, "security threshold to test");
    app->add_option("--out", out, "output directory");
  }

  void add_simulation(CLI::App* app) {
    app->add_option("--topics", topics, "linked-query topics per run");
    app->add_option("--queries", queries, "queries per topic");
    app->add_option("--runs", runs, "independent seeded runs");
    dist_opt = app->add_option("--source-distance", source_distance,
                               "only draw sources at this distance from the coalition");
    app->add_flag("--metadata-aware", metadata_aware, "also run metadata-aware relay inference");
    app->add_flag("--transcripts", transcripts, "dump per-run transcripts under --out");
  }

  ExperimentConfig to_config() const {
    ExperimentConfig c;
    if (!family.empty()) c.family = parse_family(family);
    c.q = q;
    if (!in.empty()) c.input = in;
    c.protocol = parse_protocol(protocol);
    c.coalition = coalition;
    c.coalition_size = coalition_size;
    c.placement = parse_placement(placement);
    c.topics = topics;
    c.queries = queries;
    c.runs = runs;
    if (seed_opt->count()) c.seed = seed;
    if (eps_opt->count()) c.epsilon = epsilon;
    if (dist_opt && dist_opt->count()) c.source_distance = source_distance;
    c.metadata_aware = metadata_aware;
    c.dump_transcripts = transcripts;
    c.out = out;
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UPIR geometry, protocol simulation and coalition analysis"};
  app.require_subcommand(1);

  std::string family, out, in, checks = "auto";
  unsigned q = 0;
  auto* construct = app.add_subcommand("construct", "build a geometry and write it as JSON");
  construct->add_option("--family", family, "pg2 | w3 | q4")->required();
  construct->add_option("--q", q, "field order")->required();
  construct->add_option("--out", out, "output file (stdout when omitted)");

  auto* verify = app.add_subcommand("verify", "check a geometry file");
  verify->add_option("--in", in, "geometry file")->required();
  verify->add_option("--checks", checks, "auto | gq | plane");

  ExperimentFlags analyze_flags;
  auto* analyze = app.add_subcommand("analyze", "analytic partitions and security report");
  analyze_flags.add_common(analyze);

  ExperimentFlags sim_flags;
  auto* simulate = app.add_subcommand("simulate", "seeded protocol runs and coalition inference");
  sim_flags.add_common(simulate);
  sim_flags.add_simulation(simulate);

  std::string sweep_family = "w3", sweep_out;
  std::vector<unsigned> sweep_qs;
  std::vector<std::size_t> sweep_sizes;
  std::vector<std::string> sweep_placements{"random"};
  int sweep_protocol = 2;
  std::uint64_t sweep_seed = 0;
  std::size_t sweep_samples = 1;
  double sweep_eps = 0;
  bool plot = false;
  auto* sweep = app.add_subcommand("sweep", "coalition sweep over q and coalition size (CSV)");
  sweep->add_option("--family", sweep_family, "w3 | q4");
  sweep->add_option("--q", sweep_qs, "field orders, comma separated")->delimiter(',')->required();
  sweep->add_option("--coalition-size", sweep_sizes, "coalition sizes, comma separated")
      ->delimiter(',')
      ->required();
  sweep->add_option("--placement", sweep_placements, "placements, comma separated")
      ->delimiter(',');
  sweep->add_option("--protocol", sweep_protocol, "1 or 2");
  auto* sweep_seed_opt = sweep->add_option("--seed", sweep_seed, "master seed (required)");
  sweep->add_option("--samples", sweep_samples, "coalitions sampled per cell");
  auto* sweep_eps_opt = sweep->add_option("--epsilon", sweep_eps, "security threshold");
  sweep->add_option("--out", sweep_out, "output directory (stdout when omitted)");
  sweep->add_flag("--plot-data", plot, "also write sweep_plot.dat");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*construct) return cmd_construct(parse_family(family), q, out, std::cout);
    if (*verify) return cmd_verify(in, parse_checks(checks), std::cout);
    if (*analyze) return cmd_analyze(analyze_flags.to_config(), std::cout);
    if (*simulate) return cmd_simulate(sim_flags.to_config(), std::cout);
    if (*sweep) {
      if (!sweep_seed_opt->count()) throw Error(Errc::InvalidArgument, "--seed is required");
      SweepConfig c;
      c.family = parse_family(sweep_family);
      c.qs = sweep_qs;
      c.coalition_sizes = sweep_sizes;
      c.placements.clear();
      for (const auto& p : sweep_placements) c.placements.push_back(parse_placement(p));
      c.protocol = parse_protocol(sweep_protocol);
      c.seed = sweep_seed;
      c.samples = sweep_samples;
      if (sweep_eps_opt->count()) c.epsilon = sweep_eps;
      return cmd_sweep(c, sweep_out, plot, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
