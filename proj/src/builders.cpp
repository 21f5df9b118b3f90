#include "upir/builders.hpp"

#include <functional>
#include <string>

#include "upir/error.hpp"
#include "upir/verify.hpp"

namespace upir {

namespace {

// Points of a projective space with a coordinate -> id lookup. Ids follow
// the lexicographic order of canonical coordinates.
class PointIndex {
 public:
  PointIndex(const Field& f, std::size_t len, std::vector<ProjectivePoint> points)
      : f_(f), points_(std::move(points)) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < len; ++i) size *= f.order();
    lookup_.assign(size, -1);
    for (std::size_t i = 0; i < points_.size(); ++i)
      lookup_[encode(points_[i].coords())] = static_cast<std::int32_t>(i);
  }

  std::size_t size() const { return points_.size(); }
  const ProjectivePoint& operator[](PointId id) const { return points_[id]; }

  /// Id of the normalised v, or -1 if that point is not indexed.
  std::int32_t find(std::span<const Elem> v) const {
    return lookup_[encode(proj_normalize(f_, v).coords())];
  }

 private:
  std::size_t encode(std::span<const Elem> v) const {
    std::size_t code = 0;
    for (Elem x : v) code = code * f_.order() + x;
    return code;
  }

  const Field& f_;
  std::vector<ProjectivePoint> points_;
  std::vector<std::int32_t> lookup_;
};

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  Elem acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

// Points of the projective line through x and y: x itself and lambda*x + y.
std::vector<Elem> combine(const Field& f, Elem lambda, std::span<const Elem> x,
                          std::span<const Elem> y) {
  std::vector<Elem> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = f.add(f.mul(lambda, x[i]), y[i]);
  return v;
}

// Collects every line of the ambient projective space that joins two indexed
// points, passes `admissible` for the pair, and lies entirely in the index.
std::vector<std::vector<PointId>> collect_lines(
    const Field& f, const PointIndex& index,
    const std::function<bool(const ProjectivePoint&, const ProjectivePoint&)>& admissible) {
  const std::size_t n = index.size();
  std::vector<bool> covered(n * n, false);
  std::vector<std::vector<PointId>> lines;
  for (PointId x = 0; x < n; ++x) {
    for (PointId y = x + 1; y < n; ++y) {
      if (covered[x * n + y]) continue;
      if (!admissible(index[x], index[y])) continue;
      std::vector<PointId> line{x};
      bool inside = true;
      for (unsigned lambda = 0; lambda < f.order(); ++lambda) {
        const auto v = combine(f, static_cast<Elem>(lambda), index[x].coords(), index[y].coords());
        const std::int32_t id = index.find(v);
        if (id < 0) {
          inside = false;
          break;
        }
        line.push_back(static_cast<PointId>(id));
      }
      if (!inside) continue;
      for (PointId a : line)
        for (PointId b : line) covered[a * n + b] = true;
      lines.push_back(std::move(line));
    }
  }
  return lines;
}

GeneralisedQuadrangle finish_gq(IncidenceStructure inc, unsigned q) {
  GeneralisedQuadrangle gq(std::move(inc));
  if (gq.s() != q || gq.t() != q) {
    throw Error(Errc::AxiomViolation,
                "constructed quadrangle has order (" + std::to_string(gq.s()) + "," +
                    std::to_string(gq.t()) + "), expected (" + std::to_string(q) + "," +
                    std::to_string(q) + ")");
  }
  return gq;
}

}  // namespace

IncidenceStructure build_pg2(const Field& f) {
  auto points = projective_points(f, 3);
  const auto forms = points;  // dual coordinates enumerate the lines
  std::vector<std::vector<PointId>> blocks;
  blocks.reserve(forms.size());
  for (const auto& a : forms) {
    std::vector<PointId> blk;
    for (PointId p = 0; p < points.size(); ++p)
      if (dot(f, a.coords(), points[p].coords()) == 0) blk.push_back(p);
    blocks.push_back(std::move(blk));
  }
  IncidenceStructure inc(points.size(), std::move(blocks), {"pg2", f.order()});
  verify_projective_plane(inc);
  return inc;
}

GeneralisedQuadrangle build_w3(const Field& f) {
  const PointIndex index(f, 4, projective_points(f, 4));
  auto symplectic = [&f](const ProjectivePoint& pu, const ProjectivePoint& pv) {
    const auto u = pu.coords();
    const auto v = pv.coords();
    Elem acc = f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0]));
    acc = f.add(acc, f.sub(f.mul(u[2], v[3]), f.mul(u[3], v[2])));
    return acc == 0;
  };
  auto lines = collect_lines(f, index, symplectic);
  return finish_gq(IncidenceStructure(index.size(), std::move(lines), {"w3", f.order()}),
                   f.order());
}

GeneralisedQuadrangle build_q4(const Field& f) {
  auto on_quadric = [&f](std::span<const Elem> x) {
    const Elem lhs = f.mul(x[0], x[0]);
    const Elem rhs = f.add(f.mul(x[1], x[2]), f.mul(x[3], x[4]));
    return lhs == rhs;
  };
  std::vector<ProjectivePoint> quadric;
  for (auto& p : projective_points(f, 5))
    if (on_quadric(p.coords())) quadric.push_back(std::move(p));
  const PointIndex index(f, 5, std::move(quadric));
  auto any_pair = [](const ProjectivePoint&, const ProjectivePoint&) { return true; };
  auto lines = collect_lines(f, index, any_pair);
  return finish_gq(IncidenceStructure(index.size(), std::move(lines), {"q4", f.order()}),
                   f.order());
}

}  // namespace upir

namespace upir {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::PG2: return "pg2";
    case Family::W3: return "w3";
    case Family::Q4: return "q4";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (auto f : {Family::PG2, Family::W3, Family::Q4})
    if (to_string(f) == name) return f;
  throw Error(Errc::InvalidArgument, "unknown family '" + std::string(name) + "'");
}

BuiltGeometry construct_family(Family family, unsigned q) {
  const Field f = Field::make(q);
  switch (family) {
    case Family::PG2:
      return {build_pg2(f), GqOrder{q, q}};
    case Family::W3: {
      auto gq = build_w3(f);
      return {gq.structure(), gq.order()};
    }
    case Family::Q4: {
      auto gq = build_q4(f);
      return {gq.structure(), gq.order()};
    }
  }
  throw Error(Errc::InvalidArgument, "unknown family");
}

}  // namespace upir
