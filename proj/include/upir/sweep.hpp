#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "upir/builders.hpp"
#include "upir/placement.hpp"
#include "upir/protocol.hpp"
#include "upir/security.hpp"

namespace upir {

struct SweepConfig {
  Family family = Family::W3;
  std::vector<unsigned> qs;
  std::vector<std::size_t> coalition_sizes;
  std::vector<Placement> placements{Placement::Random};
  Protocol protocol = Protocol::P2;
  std::uint64_t seed = 0;
  std::size_t samples = 1;
  std::optional<double> epsilon;
};

struct SweepRow {
  Family family = Family::W3;
  unsigned q = 0;
  std::size_t s = 0;
  std::size_t t = 0;
  std::size_t n = 0;
  Protocol protocol = Protocol::P2;
  std::size_t coalition_size = 0;
  Placement placement = Placement::Random;
  std::size_t sample = 0;
  std::vector<UserId> members;
  SecurityReport security;
  /// residue <= |C|(st+s) + |C|^2 (t+1)
  bool bound_check = false;
  /// |C|(st+s) <= n^(1-eps), only when an epsilon was configured.
  std::optional<bool> epsilon_bound;
  /// Non-members next to the coalition whose class is a singleton.
  std::size_t resolved_distance1 = 0;
};

/// Rows ordered by (q, coalition size, placement, sample); each row's
/// coalition is drawn from an RNG stream keyed by exactly those values.
std::vector<SweepRow> coalition_sweep(const SweepConfig& config);

/// Columns: family,q,s,t,n,protocol,coalition_size,placement,giant,residue,
/// epsilon_star,bound_check. epsilon_star is empty for degenerate partitions.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Whitespace-separated plot columns: n coalition_size residue epsilon_star.
void write_sweep_plot_data(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace upir
