#pragma once

#include "upir/partition.hpp"
#include "upir/protocol.hpp"
#include "upir/system.hpp"

namespace upir {

// Closed-form pseudonymity partitions. They need a partial linear space whose
// users are pairwise within two spaces (generalised quadrangles, projective
// planes). Anything else throws Error{NotDiameterBounded} or
// Error{InvalidArgument}.

/// Protocol 1, one eavesdropper c: {c}, a singleton per user sharing a space
/// with c, and the users two spaces away grouped by B1(c) ∩ B1(u). In a GQ
/// those groups are the hyperbolic lines sp(c, u) minus c.
PseudonymityPartition analytic_single_p1(const UPIRSystem& sys, UserId c);

/// Protocol 2, one eavesdropper c: {c}, one class per space of c (its other
/// members), and every user two spaces away in a single class.
PseudonymityPartition analytic_single_p2(const UPIRSystem& sys, UserId c);

PseudonymityPartition analytic_single(const UPIRSystem& sys, UserId c, Protocol protocol);

/// Meet of the members' single-eavesdropper partitions.
PseudonymityPartition analytic_coalition(const UPIRSystem& sys, const Coalition& coalition,
                                         Protocol protocol);

}  // namespace upir
