#include "upir/geometry_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "upir/error.hpp"

namespace upir {

using nlohmann::json;

std::string geometry_to_string(const IncidenceStructure& inc) {
  const auto k = inc.uniform_block_size();
  const auto r = inc.uniform_point_degree();
  auto order_field = [](std::optional<std::size_t> v) {
    return v && *v >= 1 ? json(*v - 1) : json(nullptr);
  };

  std::ostringstream os;
  os << "{\n";
  os << "  \"family\": " << json(inc.label().family.empty() ? "file" : inc.label().family).dump()
     << ",\n";
  os << "  \"q\": " << inc.label().q << ",\n";
  os << "  \"s\": " << order_field(k).dump() << ",\n";
  os << "  \"t\": " << order_field(r).dump() << ",\n";
  os << "  \"points\": [";
  for (std::size_t p = 0; p < inc.num_points(); ++p) os << (p ? "," : "") << p;
  os << "],\n";
  os << "  \"blocks\": [\n";
  for (std::size_t b = 0; b < inc.num_blocks(); ++b) {
    os << "    " << json(inc.blocks()[b]).dump() << (b + 1 < inc.num_blocks() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

IncidenceStructure geometry_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedStructure, std::string("geometry file is not JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("points") || !doc.contains("blocks"))
      throw Error(Errc::MalformedStructure, "geometry file needs \"points\" and \"blocks\"");
    const auto points = doc.at("points").get<std::vector<long long>>();
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i] != static_cast<long long>(i))
        throw Error(Errc::MalformedStructure, "\"points\" must be 0..n-1 in order");
    }
    auto blocks = doc.at("blocks").get<std::vector<std::vector<PointId>>>();
    StructureLabel label;
    label.family = doc.value("family", std::string("file"));
    label.q = doc.value("q", 0u);
    return IncidenceStructure(points.size(), std::move(blocks), std::move(label));
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedStructure, std::string("bad geometry file: ") + e.what());
  }
}

void write_geometry_file(const std::filesystem::path& path, const IncidenceStructure& inc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << geometry_to_string(inc);
}

IncidenceStructure read_geometry_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return geometry_from_string(buf.str());
}

}  // namespace upir
