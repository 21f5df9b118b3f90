#include "upir/quadrangle.hpp"

#include <string>

#include "upir/error.hpp"

namespace upir {

GeneralisedQuadrangle::GeneralisedQuadrangle(IncidenceStructure inc)
    : inc_(std::make_shared<const IncidenceStructure>(std::move(inc))),
      order_(verify_gq(*inc_)),
      coll_(collinearity(*inc_)) {}

std::vector<PointId> ball(const GeneralisedQuadrangle& gq, PointId x, int r) {
  if (r == 1) return to_vector(gq.perp(x));
  if (r == 2) {
    PointSet far = ~gq.perp(x);
    far.reset(x);
    return to_vector(far);
  }
  throw Error(Errc::InvalidArgument, "ball radius must be 1 or 2");
}

PointSet common_perp_set(const GeneralisedQuadrangle& gq, std::span<const PointId> generators) {
  if (generators.empty()) throw Error(Errc::InvalidArgument, "empty generator set");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      if (gq.collinear(generators[i], generators[j])) {
        throw Error(Errc::CollinearGenerators, "generators " + std::to_string(generators[i]) +
                                                   " and " + std::to_string(generators[j]) +
                                                   " are collinear");
      }
    }
  }
  PointSet perp = gq.perp(generators.front());
  for (std::size_t i = 1; i < generators.size(); ++i) perp &= gq.perp(generators[i]);
  return perp;
}

std::vector<PointId> common_perp(const GeneralisedQuadrangle& gq,
                                 std::span<const PointId> generators) {
  return to_vector(common_perp_set(gq, generators));
}

PointSet span_members(const GeneralisedQuadrangle& gq, std::span<const PointId> generators) {
  const PointSet perp = common_perp_set(gq, generators);
  // Intersection over an empty perp is the whole point set.
  PointSet members(gq.num_points());
  members.set();
  for (auto z = perp.find_first(); z != PointSet::npos; z = perp.find_next(z))
    members &= gq.perp(static_cast<PointId>(z));
  return members;
}

SpanSet span_of(const GeneralisedQuadrangle& gq, std::span<const PointId> generators) {
  SpanSet out;
  out.generators.assign(generators.begin(), generators.end());
  out.perp = common_perp(gq, generators);
  out.members = to_vector(span_members(gq, generators));
  return out;
}

}  // namespace upir
