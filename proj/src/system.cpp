#include "upir/system.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "upir/error.hpp"

namespace upir {

namespace {
constexpr std::uint8_t kUnreached = std::numeric_limits<std::uint8_t>::max();
}

UPIRSystem::UPIRSystem(std::shared_ptr<const IncidenceStructure> inc)
    : inc_(std::move(inc)), coll_(collinearity(*inc_)) {
  const std::size_t n = inc_->num_points();
  dist_.assign(n * n, kUnreached);
  for (UserId src = 0; src < n; ++src) {
    std::uint8_t* row = &dist_[src * n];
    row[src] = 0;
    std::deque<UserId> frontier{src};
    while (!frontier.empty()) {
      const UserId w = frontier.front();
      frontier.pop_front();
      const auto& nb = coll_[w];
      for (auto x = nb.find_first(); x != PointSet::npos; x = nb.find_next(x)) {
        if (row[x] != kUnreached) continue;
        if (row[w] + 1 >= kUnreached) throw Error(Errc::Unsupported, "user graph diameter too large");
        row[x] = static_cast<std::uint8_t>(row[w] + 1);
        frontier.push_back(static_cast<UserId>(x));
      }
    }
    for (UserId v = 0; v < n; ++v) {
      if (row[v] == kUnreached) {
        throw Error(Errc::Disconnected, "users " + std::to_string(src) + " and " +
                                            std::to_string(v) + " are in different components");
      }
      diameter_ = std::max<unsigned>(diameter_, row[v]);
    }
  }
  for (UserId u = 0; u < n && partial_linear_; ++u) {
    const auto& nb = coll_[u];
    for (auto v = nb.find_next(u); v != PointSet::npos; v = nb.find_next(v)) {
      if (shared_spaces(u, static_cast<UserId>(v)).size() > 1) {
        partial_linear_ = false;
        break;
      }
    }
  }
}

PointSet UPIRSystem::at_distance(UserId u, unsigned d) const {
  PointSet out(num_users());
  for (UserId v = 0; v < num_users(); ++v)
    if (distance(u, v) == d) out.set(v);
  return out;
}

std::vector<SpaceId> UPIRSystem::shared_spaces(UserId u, UserId v) const {
  const auto a = spaces_of(u);
  const auto b = spaces_of(v);
  std::vector<SpaceId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<UserPath> UPIRSystem::shortest_paths(UserId u, UserId v) const {
  if (u == v) throw Error(Errc::InvalidArgument, "shortest_paths needs distinct users");
  std::vector<UserPath> out;
  UserPath partial;
  partial.users.push_back(u);
  // Depth-first over users that step one closer to v, in ascending space
  // then user order, which yields lexicographic output.
  auto extend = [&](auto&& self, UserId w) -> void {
    if (w == v) {
      out.push_back(partial);
      return;
    }
    const unsigned remaining = distance(w, v);
    for (SpaceId m : spaces_of(w)) {
      for (UserId x : members(m)) {
        if (x == w || distance(x, v) + 1 != remaining) continue;
        partial.spaces.push_back(m);
        partial.users.push_back(x);
        self(self, x);
        partial.spaces.pop_back();
        partial.users.pop_back();
      }
    }
  };
  extend(extend, u);
  return out;
}

}  // namespace upir
