#pragma once

#include <memory>
#include <span>
#include <vector>

#include "upir/incidence.hpp"
#include "upir/verify.hpp"

namespace upir {

/// An incidence structure that has passed `verify_gq`, with its order and
/// cached collinearity. Immutable.
class GeneralisedQuadrangle {
 public:
  /// Runs verify_gq; throws on any violated axiom.
  explicit GeneralisedQuadrangle(IncidenceStructure inc);

  const IncidenceStructure& structure() const noexcept { return *inc_; }
  std::shared_ptr<const IncidenceStructure> shared_structure() const noexcept { return inc_; }

  std::size_t s() const noexcept { return order_.s; }
  std::size_t t() const noexcept { return order_.t; }
  GqOrder order() const noexcept { return order_; }
  std::size_t num_points() const noexcept { return inc_->num_points(); }

  bool collinear(PointId x, PointId y) const { return coll_[x].test(y); }
  /// B1(x): points collinear with x, x itself excluded.
  const PointSet& perp(PointId x) const { return coll_[x]; }

 private:
  std::shared_ptr<const IncidenceStructure> inc_;
  GqOrder order_;
  std::vector<PointSet> coll_;
};

/// r = 1: B1(x). r = 2: B2(x), everything neither x nor collinear with x.
std::vector<PointId> ball(const GeneralisedQuadrangle& gq, PointId x, int r);

/// B1(X), the points collinear with every member of X. Throws
/// Error{CollinearGenerators} if two members of X are collinear and
/// Error{InvalidArgument} if X is empty.
PointSet common_perp_set(const GeneralisedQuadrangle& gq, std::span<const PointId> generators);
std::vector<PointId> common_perp(const GeneralisedQuadrangle& gq,
                                 std::span<const PointId> generators);

struct SpanSet {
  std::vector<PointId> generators;
  std::vector<PointId> perp;     // B1(X)
  std::vector<PointId> members;  // sp(X) = B1(B1(X))
};

PointSet span_members(const GeneralisedQuadrangle& gq, std::span<const PointId> generators);
SpanSet span_of(const GeneralisedQuadrangle& gq, std::span<const PointId> generators);

}  // namespace upir
