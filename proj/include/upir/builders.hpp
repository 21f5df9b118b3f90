#pragma once

#include "upir/algebra.hpp"
#include "upir/incidence.hpp"
#include "upir/quadrangle.hpp"

namespace upir {

/// PG(2, q): q^2+q+1 points and lines. Verified against the plane axioms.
IncidenceStructure build_pg2(const Field& f);

/// W(3, q): all points of PG(3, q) and the lines totally isotropic under
/// u0 v1 - u1 v0 + u2 v3 - u3 v2. Order (q, q).
GeneralisedQuadrangle build_w3(const Field& f);

/// Q(4, q): points of the parabolic quadric x0^2 = x1 x2 + x3 x4 in PG(4, q)
/// and the lines of PG(4, q) contained in it. Order (q, q).
GeneralisedQuadrangle build_q4(const Field& f);

}  // namespace upir

#include <optional>
#include <string_view>

namespace upir {

enum class Family { PG2, W3, Q4 };

std::string_view to_string(Family family);
/// Throws Error{InvalidArgument} for an unknown family name.
Family parse_family(std::string_view name);

/// Builds and verifies the named family over GF(q). Returns the structure
/// and, for quadrangles, its order.
struct BuiltGeometry {
  IncidenceStructure structure;
  GqOrder order;
};
BuiltGeometry construct_family(Family family, unsigned q);

}  // namespace upir
