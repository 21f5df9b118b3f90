#include "upir/placement.hpp"

#include <algorithm>
#include <string>

#include "upir/error.hpp"

namespace upir {

std::string_view to_string(Placement placement) {
  switch (placement) {
    case Placement::Random: return "random";
    case Placement::Spread: return "spread";
    case Placement::Line: return "line";
  }
  return "unknown";
}

Placement parse_placement(std::string_view name) {
  for (auto p : {Placement::Random, Placement::Spread, Placement::Line})
    if (to_string(p) == name) return p;
  throw Error(Errc::InvalidArgument, "unknown placement '" + std::string(name) + "'");
}

namespace {

UserId pick(const PointSet& pool, Rng& rng) {
  const auto ids = to_vector(pool);
  if (ids.empty()) throw Error(Errc::InvalidArgument, "no user left to place");
  return ids[rng.uniform(ids.size())];
}

std::vector<UserId> random_members(const UPIRSystem& sys, std::size_t size, Rng& rng) {
  std::vector<UserId> users(sys.num_users());
  for (UserId u = 0; u < users.size(); ++u) users[u] = u;
  for (std::size_t i = 0; i < size; ++i) std::swap(users[i], users[i + rng.uniform(users.size() - i)]);
  users.resize(size);
  return users;
}

std::vector<UserId> spread_members(const UPIRSystem& sys, std::size_t size, Rng& rng) {
  const std::size_t n = sys.num_users();
  std::vector<UserId> chosen;
  PointSet covered(n);
  PointSet taken(n);
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t best_gain = 0;
    std::vector<UserId> best;
    for (UserId u = 0; u < n; ++u) {
      if (taken.test(u)) continue;
      PointSet closed = sys.neighbours(u);
      closed.set(u);
      closed -= covered;
      const std::size_t gain = closed.count();
      if (best.empty() || gain > best_gain) {
        best_gain = gain;
        best = {u};
      } else if (gain == best_gain) {
        best.push_back(u);
      }
    }
    const UserId u = best[rng.uniform(best.size())];
    chosen.push_back(u);
    taken.set(u);
    covered |= sys.neighbours(u);
    covered.set(u);
  }
  return chosen;
}

std::vector<UserId> line_members(const UPIRSystem& sys, std::size_t size, Rng& rng) {
  const std::size_t n = sys.num_users();
  const SpaceId line = static_cast<SpaceId>(rng.uniform(sys.num_spaces()));
  const auto on_line = sys.members(line);
  if (on_line.size() < 2) throw Error(Errc::InvalidArgument, "line placement needs a space of size >= 2");
  const PointSet line_set = to_set(n, on_line);

  const UserId c1 = on_line[rng.uniform(on_line.size())];
  PointSet rest = line_set;
  rest.reset(c1);
  const UserId target = pick(rest, rng);

  std::vector<UserId> chosen{c1};
  PointSet taken(n);
  taken.set(c1);
  PointSet forbidden = sys.neighbours(target);
  forbidden.set(target);
  for (UserId m : on_line) {
    if (m == c1 || m == target || chosen.size() >= size) continue;
    PointSet pool = sys.neighbours(m);
    pool -= line_set;
    pool -= taken;
    pool -= forbidden;
    if (pool.none()) continue;
    const UserId c = pick(pool, rng);
    chosen.push_back(c);
    taken.set(c);
  }
  while (chosen.size() < size) {
    PointSet pool(n);
    pool.set();
    pool -= taken;
    pool -= forbidden;
    if (pool.none()) pool = ~taken;  // tiny structures: fall back to anyone
    const UserId c = pick(pool, rng);
    chosen.push_back(c);
    taken.set(c);
  }
  return chosen;
}

}  // namespace

Coalition place_coalition(const UPIRSystem& sys, std::size_t size, Placement placement, Rng& rng) {
  if (size == 0 || size >= sys.num_users())
    throw Error(Errc::InvalidArgument, "coalition size must be in [1, n)");
  switch (placement) {
    case Placement::Random: return make_coalition(sys, random_members(sys, size, rng));
    case Placement::Spread: return make_coalition(sys, spread_members(sys, size, rng));
    case Placement::Line: return make_coalition(sys, line_members(sys, size, rng));
  }
  throw Error(Errc::InvalidArgument, "unknown placement");
}

}  // namespace upir
