#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "upir/analytic.hpp"
#include "upir/builders.hpp"
#include "upir/error.hpp"
#include "upir/inference.hpp"
#include "upir/placement.hpp"
#include "upir/security.hpp"
#include "upir/sweep.hpp"

using namespace upir;

namespace {

UPIRSystem make_system(Family fam, unsigned q) {
  return UPIRSystem(construct_family(fam, q).structure);
}

// Brute-force collinearity and spans from the block list.
struct Oracle {
  std::size_t n;
  std::vector<std::vector<bool>> coll;

  explicit Oracle(const IncidenceStructure& inc)
      : n(inc.num_points()), coll(n, std::vector<bool>(n, false)) {
    for (const auto& b : inc.blocks())
      for (PointId x : b)
        for (PointId y : b)
          if (x != y) coll[x][y] = true;
  }
  std::vector<PointId> perp(const std::vector<PointId>& xs) const {
    std::vector<PointId> out;
    for (PointId z = 0; z < n; ++z) {
      bool all = true;
      for (PointId x : xs) all = all && coll[x][z];
      if (all) out.push_back(z);
    }
    return out;
  }
  std::vector<PointId> span(PointId x, PointId y) const { return perp(perp({x, y})); }

  // Distance by plain BFS over the collinearity matrix.
  std::vector<unsigned> bfs(PointId s) const {
    std::vector<unsigned> d(n, ~0u);
    std::vector<PointId> queue{s};
    d[s] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (PointId y = 0; y < n; ++y)
        if (coll[queue[i]][y] && d[y] == ~0u) {
          d[y] = d[queue[i]] + 1;
          queue.push_back(y);
        }
    return d;
  }
};

std::set<std::vector<UserId>> class_set(const PseudonymityPartition& p) {
  return {p.classes().begin(), p.classes().end()};
}

std::vector<QueryWorkload> single(UserId source, std::uint32_t count) {
  return {QueryWorkload{source, "t", count}};
}

// Law of an eavesdropper's per-query observation (its topic-readable requests,
// in order), conditioned on the query being visible at all. Queries the
// eavesdropper never sees look the same for every source.
std::map<std::string, double> observation_distribution(const UPIRSystem& sys, Protocol proto,
                                                       UserId c, UserId source,
                                                       std::uint32_t queries, std::uint64_t seed) {
  Rng rng(seed);
  const auto tr = run_protocol(sys, proto, single(source, queries), rng);
  const auto view = observer_view(tr, sys, c);
  std::vector<std::string> per_query(queries);
  for (const auto& e : view.events) {
    if (e.kind != EventKind::WriteRequest || !e.topic) continue;
    std::ostringstream key;
    key << *e.space << ":";
    for (std::size_t i = 0; i < e.route.users.size(); ++i) {
      key << e.route.users[i];
      if (i < e.route.spaces.size()) key << "/" << e.route.spaces[i] << "/";
    }
    per_query[*e.query] += key.str() + ";";
  }
  std::map<std::string, double> dist;
  double seen = 0;
  for (const auto& k : per_query) {
    if (k.empty()) continue;
    dist[k] += 1;
    seen += 1;
  }
  for (auto& [k, v] : dist) v /= seen;
  return dist;
}

double total_variation(const std::map<std::string, double>& a,
                       const std::map<std::string, double>& b) {
  std::set<std::string> keys;
  for (const auto& [k, _] : a) keys.insert(k);
  for (const auto& [k, _] : b) keys.insert(k);
  double tv = 0;
  for (const auto& k : keys) {
    const double pa = a.count(k) ? a.at(k) : 0.0;
    const double pb = b.count(k) ? b.at(k) : 0.0;
    tv += std::abs(pa - pb);
  }
  return tv / 2;
}

}  // namespace

TEST(Partition, FromLabelsAndHistogram) {
  const std::uint64_t labels[] = {7, 3, 7, 9, 3, 7};
  const auto p = PseudonymityPartition::from_labels(labels, Provenance::Empirical);
  EXPECT_EQ(p.num_classes(), 3u);
  EXPECT_EQ(p.classes()[0], (std::vector<UserId>{0, 2, 5}));
  EXPECT_EQ(p.classes()[1], (std::vector<UserId>{1, 4}));
  EXPECT_EQ(p.largest_class_size(), 3u);
  EXPECT_EQ(p.size_histogram(), (std::map<std::size_t, std::size_t>{{1, 1}, {2, 1}, {3, 1}}));
  const std::uint64_t finer[] = {0, 1, 0, 2, 3, 4};
  const auto f = PseudonymityPartition::from_labels(finer, Provenance::Empirical);
  EXPECT_TRUE(f.refines(p));
  EXPECT_FALSE(p.refines(f));
}

TEST(Partition, MeetIsTheCoarsestCommonRefinement) {
  const std::uint64_t la[] = {0, 0, 0, 1, 1, 2, 2, 2};
  const std::uint64_t lb[] = {5, 5, 6, 6, 6, 6, 5, 5};
  const auto a = PseudonymityPartition::from_labels(la, Provenance::Empirical);
  const auto b = PseudonymityPartition::from_labels(lb, Provenance::Empirical);
  const auto m = meet(a, b);
  EXPECT_TRUE(m.refines(a));
  EXPECT_TRUE(m.refines(b));
  for (UserId u = 0; u < 8; ++u)
    for (UserId v = 0; v < 8; ++v)
      EXPECT_EQ(m.class_of(u) == m.class_of(v), la[u] == la[v] && lb[u] == lb[v]);
}

TEST(Analytic, W33ProtocolOneMatchesSpans) {
  const auto sys = make_system(Family::W3, 3);
  const Oracle o(sys.structure());
  for (UserId c : {0u, 13u, 39u}) {
    const auto p = analytic_single_p1(sys, c);
    EXPECT_EQ(p.size_histogram(), (std::map<std::size_t, std::size_t>{{1, 13}, {3, 9}}));
    for (UserId u = 0; u < 40; ++u) {
      if (u == c || o.coll[c][u]) {
        EXPECT_EQ(p.class_members(u).size(), 1u);
        continue;
      }
      auto sp = o.span(c, u);
      sp.erase(std::find(sp.begin(), sp.end(), c));
      EXPECT_EQ(p.class_members(u), sp);
    }
  }
}

TEST(Analytic, Q43ProtocolOneIsDegenerate) {
  const auto sys = make_system(Family::Q4, 3);
  const auto p = analytic_single(sys, 5, Protocol::P1);
  EXPECT_TRUE(p.all_singletons());
  try {
    security_margin(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegeneratePartition);
  }
  const auto r = summarize_security(p);
  EXPECT_FALSE(r.epsilon_star.has_value());
  EXPECT_EQ(r.giant, 1u);
}

TEST(Analytic, ProtocolTwoClasses) {
  for (Family fam : {Family::W3, Family::Q4}) {
    const auto sys = make_system(fam, 3);
    const Oracle o(sys.structure());
    const UserId c = 7;
    const auto p = analytic_single_p2(sys, c);
    EXPECT_EQ(p.size_histogram(), (std::map<std::size_t, std::size_t>{{1, 1}, {3, 4}, {27, 1}}));
    std::vector<UserId> far;
    for (UserId u = 0; u < 40; ++u)
      if (u != c && !o.coll[c][u]) far.push_back(u);
    EXPECT_EQ(p.class_members(far.front()), far);
  }
}

TEST(Analytic, ProjectivePlaneProtocolOneResolvesEveryone) {
  const auto sys = make_system(Family::PG2, 3);
  EXPECT_TRUE(analytic_single_p1(sys, 0).all_singletons());
  // Protocol 2 still hides users behind their shared line.
  const auto p2 = analytic_single_p2(sys, 0);
  EXPECT_EQ(p2.num_classes(), 1u + 4u);
}

TEST(Analytic, RejectsUnboundedSystems) {
  const UPIRSystem chain(IncidenceStructure(4, {{0, 1}, {1, 2}, {2, 3}}));
  try {
    analytic_single_p1(chain, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotDiameterBounded);
  }
}

TEST(Analytic, CoalitionIsMeetOfMembers) {
  const auto sys = make_system(Family::W3, 3);
  const Oracle o(sys.structure());
  UserId c2 = 1;
  while (o.coll[0][c2]) ++c2;
  for (Protocol proto : {Protocol::P1, Protocol::P2}) {
    const auto coal = make_coalition(sys, {0, c2});
    const auto p = analytic_coalition(sys, coal, proto);
    const auto expected = meet(analytic_single(sys, 0, proto), analytic_single(sys, c2, proto));
    EXPECT_EQ(class_set(p), class_set(expected));
    EXPECT_TRUE(p.refines(analytic_single(sys, 0, proto)));
  }
  // Two far-apart eavesdroppers under Protocol 2 leave 40 - (2 + 12 + 12 - 4) users in the giant.
  const auto p = analytic_coalition(sys, make_coalition(sys, {0, c2}), Protocol::P2);
  EXPECT_EQ(p.largest_class_size(), 18u);
}

TEST(Security, EpsilonStarOnW35) {
  const auto sys = make_system(Family::W3, 5);
  const auto p = analytic_single_p2(sys, 0);
  const auto r = security_margin(p, 0.25);
  EXPECT_EQ(r.n, 156u);
  EXPECT_EQ(r.giant, 125u);
  EXPECT_EQ(r.residue, 31u);
  ASSERT_TRUE(r.epsilon_star.has_value());
  EXPECT_NEAR(*r.epsilon_star, 1.0 - std::log(31.0) / std::log(156.0), 1e-12);
  EXPECT_TRUE(r.secure.value());
  EXPECT_TRUE(r.secure_at(0.3));
  EXPECT_FALSE(r.secure_at(0.33));
}

TEST(Inference, RouteRuleMatchesPathOracle) {
  for (Family fam : {Family::W3, Family::PG2}) {
    const auto sys = make_system(fam, 3);
    const Oracle o(sys.structure());
    std::vector<std::vector<unsigned>> d(sys.num_users());
    for (UserId u = 0; u < sys.num_users(); ++u) d[u] = o.bfs(u);
    Rng rng(4);
    std::vector<QueryWorkload> wl;
    for (UserId s = 0; s < 6; ++s) wl.push_back({s * 2, "t" + std::to_string(s), 40});
    const auto tr = run_protocol1(sys, wl, rng);
    for (const auto& e : tr.events) {
      if (e.kind != EventKind::WriteRequest) continue;
      const PointSet got = route_consistent_sources(sys, *e.space, e.route);
      const UserId v = e.route.proxy();
      const std::size_t k = e.route.remaining_spaces();
      for (UserId w = 0; w < sys.num_users(); ++w) {
        // Some writer x in the space, other than the next hop, sits on a
        // shortest w -> v walk exactly k + 1 spaces before v.
        bool ok = false;
        for (UserId x : sys.members(*e.space))
          ok = ok || (x != e.route.next_hop() && d[w][x] + 1 + k == d[w][v]);
        ASSERT_EQ(got.test(w), ok);
      }
      ASSERT_TRUE(got.test(tr.sources[e.topic]));  // the true source always survives
    }
  }
}

TEST(Inference, CandidatesStaySoundAndAboveFloor) {
  const auto sys = make_system(Family::W3, 3);
  for (Protocol proto : {Protocol::P1, Protocol::P2}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      Rng place(seed);
      const auto coal = place_coalition(sys, 1 + seed % 3, Placement::Random, place);
      const auto floor = analytic_coalition(sys, coal, proto);
      Rng rng(seed * 31);
      std::vector<QueryWorkload> wl;
      for (std::size_t k = 0; k < 4; ++k) {
        UserId s;
        do s = static_cast<UserId>(rng.uniform(40));
        while (coal.contains(s));
        wl.push_back({s, "t" + std::to_string(k), 1500});
      }
      const auto tr = run_protocol(sys, proto, wl, rng);
      std::vector<ObservedView> views;
      for (UserId c : coal.members) views.push_back(observer_view(tr, sys, c));
      for (bool aware : {false, true}) {
        InferenceOptions opt;
        opt.metadata_aware_relays = aware;
        const auto states = empirical_infer(views, sys, proto, opt);
        ASSERT_EQ(states.size(), wl.size());
        for (const auto& [t, st] : states) {
          const auto& cls = floor.class_members(tr.sources[t]);
          ASSERT_TRUE(std::includes(st.candidates.begin(), st.candidates.end(), cls.begin(),
                                    cls.end()))
              << "seed " << seed << " topic " << t;
          for (UserId c : coal.members)
            ASSERT_FALSE(std::binary_search(st.candidates.begin(), st.candidates.end(), c));
          for (std::size_t i = 1; i < st.trajectory.size(); ++i)
            ASSERT_LT(st.trajectory[i].size, st.trajectory[i - 1].size);
        }
      }
    }
  }
}

TEST(Inference, ConvergesToSpanUnderProtocolOne) {
  const auto sys = make_system(Family::W3, 3);
  const Oracle o(sys.structure());
  const UserId c = 0;
  UserId u = 1;
  while (o.coll[c][u]) ++u;
  Rng rng(99);
  const auto tr = run_protocol1(sys, single(u, 3000), rng);
  const ObservedView views[] = {observer_view(tr, sys, c)};
  const auto st = empirical_infer(views, sys, Protocol::P1).at(0);
  auto sp = o.span(c, u);
  sp.erase(std::find(sp.begin(), sp.end(), c));
  EXPECT_EQ(st.candidates, sp);
  EXPECT_TRUE(st.converged);
  ASSERT_TRUE(st.converged_at_query.has_value());
  EXPECT_EQ(st.evidence.front().verdict, DistanceVerdict::Two);
}

TEST(Inference, IndistinguishableWithinAClass) {
  // Same-class sources give the eavesdropper the same observation law; a
  // pair from different classes does not.
  const auto sys = make_system(Family::W3, 3);
  const Oracle o(sys.structure());
  const UserId c = 0;
  UserId u = 1;
  while (o.coll[c][u]) ++u;
  auto sp = o.span(c, u);
  const UserId twin = sp.back() == u ? sp[sp.size() - 2] : sp.back();
  ASSERT_NE(twin, c);
  UserId other = 1;
  while (o.coll[c][other] || std::count(sp.begin(), sp.end(), other)) ++other;
  constexpr std::uint32_t kQueries = 10000;
  constexpr double kThreshold = 0.1;

  const auto a = observation_distribution(sys, Protocol::P1, c, u, kQueries, 1);
  const auto b = observation_distribution(sys, Protocol::P1, c, twin, kQueries, 2);
  const auto x = observation_distribution(sys, Protocol::P1, c, other, kQueries, 3);
  EXPECT_LT(total_variation(a, b), kThreshold);
  EXPECT_GT(total_variation(a, x), 2 * kThreshold);

  // Under Protocol 2 every distance-2 user is in one class.
  // Only queries proxied by c are readable under Protocol 2, so more are needed.
  const auto pa = observation_distribution(sys, Protocol::P2, c, u, 4 * kQueries, 4);
  const auto px = observation_distribution(sys, Protocol::P2, c, other, 4 * kQueries, 5);
  EXPECT_LT(total_variation(pa, px), kThreshold);
  UserId near = static_cast<UserId>(sys.neighbours(c).find_first());
  const auto pn = observation_distribution(sys, Protocol::P2, c, near, 4 * kQueries, 6);
  EXPECT_GT(total_variation(pa, pn), 2 * kThreshold);
}

TEST(Placement, SizesAndDeterminism) {
  const auto sys = make_system(Family::W3, 3);
  for (Placement pl : {Placement::Random, Placement::Spread, Placement::Line}) {
    for (std::size_t size : {1u, 2u, 4u, 6u}) {
      Rng a(5), b(5);
      const auto ca = place_coalition(sys, size, pl, a);
      const auto cb = place_coalition(sys, size, pl, b);
      EXPECT_EQ(ca.members.size(), size);
      EXPECT_EQ(ca.members, cb.members);
      EXPECT_TRUE(std::is_sorted(ca.members.begin(), ca.members.end()));
    }
  }
  Rng rng(1);
  EXPECT_THROW(place_coalition(sys, 0, Placement::Random, rng), Error);
  EXPECT_THROW(place_coalition(sys, 40, Placement::Random, rng), Error);
  EXPECT_EQ(parse_placement("spread"), Placement::Spread);
  EXPECT_THROW(parse_placement("ring"), Error);
}

TEST(Placement, SpreadCoversAtLeastAsMuchAsOneRandomDraw) {
  const auto sys = make_system(Family::W3, 5);
  auto coverage = [&](const Coalition& c) {
    PointSet cov(sys.num_users());
    for (UserId m : c.members) {
      cov |= sys.neighbours(m);
      cov.set(m);
    }
    return cov.count();
  };
  Rng a(3), b(3);
  const auto spread = place_coalition(sys, 3, Placement::Spread, a);
  // Three pairwise non-collinear members cover 3 * (1 + 30) - overlaps; greedy takes the max first step.
  EXPECT_GE(coverage(spread), coverage(place_coalition(sys, 1, Placement::Random, b)) * 2);
}

TEST(Placement, LineCoalitionResolvesADistanceOneUser) {
  for (unsigned q : {3u, 5u}) {
    const auto sys = make_system(Family::W3, q);
    Rng rng(17);
    const auto coal = place_coalition(sys, q + 1, Placement::Line, rng);
    const auto p = analytic_coalition(sys, coal, Protocol::P2);
    std::size_t resolved = 0;
    for (UserId u = 0; u < sys.num_users(); ++u) {
      if (coal.contains(u)) continue;
      bool near = false;
      for (UserId c : coal.members) near = near || sys.distance(c, u) == 1;
      resolved += near && p.class_members(u).size() == 1;
    }
    EXPECT_GE(resolved, 1u) << q;
  }
}

TEST(Sweep, RowsAndInvariants) {
  SweepConfig cfg;
  cfg.family = Family::W3;
  cfg.qs = {2, 3, 5, 7};
  cfg.coalition_sizes = {1, 2, 3};
  cfg.protocol = Protocol::P2;
  cfg.seed = 2026;
  const auto rows = coalition_sweep(cfg);
  ASSERT_EQ(rows.size(), 12u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.security.giant + r.security.residue, r.n);
    EXPECT_TRUE(r.bound_check);
    EXPECT_GE(r.security.residue, r.coalition_size);
    if (r.coalition_size == 1) {
      EXPECT_EQ(r.security.residue, r.n - r.s * r.s * r.t);
    }
  }
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  const std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "family,q,s,t,n,protocol,coalition_size,placement,giant,residue,epsilon_star,"
            "bound_check");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 13);
  const auto again = coalition_sweep(cfg);
  std::ostringstream csv2;
  write_sweep_csv(csv2, again);
  EXPECT_EQ(csv2.str(), text);
}
