#pragma once

#include <optional>
#include <string>
#include <vector>

#include "upir/incidence.hpp"

namespace upir {

/// Order (s, t): s+1 points per line, t+1 lines per point.
struct GqOrder {
  std::size_t s = 0;
  std::size_t t = 0;
  friend bool operator==(const GqOrder&, const GqOrder&) = default;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  bool skipped = false;  // a prerequisite check failed
  std::string witness;   // first counterexample, empty on pass
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::optional<GqOrder> order;

  bool passed() const;
  const CheckResult* first_failure() const;
};

bool higman_holds(std::size_t s, std::size_t t);

/// Runs every generalised-quadrangle check and records a witness for each
/// failure. Checks, in order: blocks_meet_at_most_once, constant_block_size,
/// constant_point_degree, triangle_free, gq_axiom, point_count, higman.
VerificationReport check_gq(const IncidenceStructure& inc);

/// Throws Error{AxiomViolation} (Error{HigmanViolation} for the Higman
/// bound) naming the first failed check and its witness.
GqOrder verify_gq(const IncidenceStructure& inc);

/// Projective plane axioms: pair_coverage, blocks_meet_once, non_degenerate.
VerificationReport check_projective_plane(const IncidenceStructure& inc);
void verify_projective_plane(const IncidenceStructure& inc);

}  // namespace upir
