#pragma once

#include <string_view>

#include "upir/partition.hpp"
#include "upir/rng.hpp"
#include "upir/system.hpp"

namespace upir {

/// random: uniform subset.
/// spread: greedy, each new member maximises the number of newly covered
///         users (member plus its neighbours); ties broken by the RNG.
/// line:   covers a space M around a target u in M: one member c1 in M, and
///         for every other user of M a member that neighbours it outside M.
///         Extra members are never neighbours of u. Sizes below the cover
///         size truncate it.
enum class Placement { Random, Spread, Line };

std::string_view to_string(Placement placement);
Placement parse_placement(std::string_view name);

/// Throws Error{InvalidArgument} when size is 0 or >= the user count.
Coalition place_coalition(const UPIRSystem& sys, std::size_t size, Placement placement, Rng& rng);

}  // namespace upir
