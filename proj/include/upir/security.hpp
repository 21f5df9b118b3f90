#pragma once

#include <optional>

#include "upir/partition.hpp"

namespace upir {

/// Giant-class summary of a pseudonymity partition.
struct SecurityReport {
  std::size_t n = 0;
  std::size_t coalition_size = 0;
  std::size_t num_classes = 0;
  std::size_t giant = 0;    // largest class
  std::size_t residue = 0;  // n - giant
  /// Largest eps with residue <= n^(1 - eps); empty for an all-singleton partition.
  std::optional<double> epsilon_star;
  std::optional<double> epsilon;  // the eps that was asked about, if any
  std::optional<bool> secure;     // secure_at(*epsilon)

  bool secure_at(double eps) const;
};

/// Never throws on degenerate partitions; epsilon_star is left empty instead.
SecurityReport summarize_security(const PseudonymityPartition& partition,
                                  std::optional<double> epsilon = std::nullopt);

/// As summarize_security, but throws Error{DegeneratePartition} when every
/// class is a singleton.
SecurityReport security_margin(const PseudonymityPartition& partition,
                               std::optional<double> epsilon = std::nullopt);

}  // namespace upir
