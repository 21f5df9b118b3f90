#pragma once

#include <filesystem>
#include <string>

#include "upir/incidence.hpp"

namespace upir {

/// Geometry interchange file:
///   {"family": str, "q": int, "s": int, "t": int,
///    "points": [0, ..., n-1], "blocks": [[...], ...]}
/// Blocks are written sorted (each block and the block list). "s" and "t"
/// are null when block size or point degree is not constant.
std::string geometry_to_string(const IncidenceStructure& inc);

/// Accepts any incidence structure in the schema above. "family" and "q" are
/// optional on input. Throws Error{MalformedStructure} on schema violations.
IncidenceStructure geometry_from_string(const std::string& text);

void write_geometry_file(const std::filesystem::path& path, const IncidenceStructure& inc);
/// Throws Error{Io} if the file cannot be read.
IncidenceStructure read_geometry_file(const std::filesystem::path& path);

}  // namespace upir
