#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "upir/system.hpp"

namespace upir {

/// A coalition of honest-but-curious users that pool every observation.
struct Coalition {
  std::vector<UserId> members;  // sorted, distinct
  bool pooled = true;

  bool contains(UserId u) const;
};

/// Validates and canonicalises; throws Error{InvalidArgument} when empty or
/// out of range.
Coalition make_coalition(const UPIRSystem& sys, std::vector<UserId> members);

enum class Provenance { AnalyticP1, AnalyticP2, Empirical };

/// An equivalence partition of the users. Classes are numbered by their
/// smallest member, and each class is sorted.
class PseudonymityPartition {
 public:
  static PseudonymityPartition from_labels(std::span<const std::uint64_t> labels,
                                           Provenance provenance,
                                           std::vector<UserId> coalition = {});

  std::size_t num_users() const noexcept { return class_of_.size(); }
  std::size_t num_classes() const noexcept { return classes_.size(); }
  const std::vector<std::vector<UserId>>& classes() const noexcept { return classes_; }
  std::uint32_t class_of(UserId u) const { return class_of_[u]; }
  const std::vector<UserId>& class_members(UserId u) const { return classes_[class_of_[u]]; }
  Provenance provenance() const noexcept { return provenance_; }
  const std::vector<UserId>& coalition() const noexcept { return coalition_; }

  std::size_t largest_class_size() const;
  bool all_singletons() const { return num_classes() == num_users(); }
  /// Class size -> number of classes of that size.
  std::map<std::size_t, std::size_t> size_histogram() const;

  /// True when every class of *this lies inside one class of `coarser`.
  bool refines(const PseudonymityPartition& coarser) const;

 private:
  std::vector<std::uint32_t> class_of_;
  std::vector<std::vector<UserId>> classes_;
  Provenance provenance_ = Provenance::Empirical;
  std::vector<UserId> coalition_;
};

/// Common refinement. Keeps the provenance of `a` and unions the coalitions.
PseudonymityPartition meet(const PseudonymityPartition& a, const PseudonymityPartition& b);

}  // namespace upir
