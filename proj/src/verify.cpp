#include "upir/verify.hpp"

#include <cstdint>
#include <sstream>

#include "upir/error.hpp"

namespace upir {

namespace {

constexpr std::int32_t kNoBlock = -1;

// For each point pair, the first block containing both (or kNoBlock); reports
// the first pair that lies on two blocks.
struct PairBlocks {
  std::size_t n;
  std::vector<std::int32_t> first;
  std::vector<std::uint16_t> count;
  std::string overlap_witness;

  explicit PairBlocks(const IncidenceStructure& inc)
      : n(inc.num_points()), first(n * n, kNoBlock), count(n * n, 0) {
    for (BlockId b = 0; b < inc.num_blocks(); ++b) {
      const auto blk = inc.block(b);
      for (std::size_t i = 0; i < blk.size(); ++i) {
        for (std::size_t j = i + 1; j < blk.size(); ++j) {
          const std::size_t at = blk[i] * n + blk[j];
          if (count[at] < UINT16_MAX) ++count[at];
          if (first[at] == kNoBlock) {
            first[at] = static_cast<std::int32_t>(b);
          } else if (overlap_witness.empty()) {
            std::ostringstream os;
            os << "blocks " << first[at] << " and " << b << " share points " << blk[i]
               << " and " << blk[j];
            overlap_witness = os.str();
          }
        }
      }
    }
  }

  std::int32_t block_of(PointId x, PointId y) const {
    return x < y ? first[x * n + y] : first[y * n + x];
  }
  std::uint16_t times_covered(PointId x, PointId y) const {
    return x < y ? count[x * n + y] : count[y * n + x];
  }
};

CheckResult pass(std::string name) { return {std::move(name), true, false, {}}; }
CheckResult fail(std::string name, std::string witness) {
  return {std::move(name), false, false, std::move(witness)};
}
CheckResult skip(std::string name) { return {std::move(name), false, true, "prerequisite failed"}; }

}  // namespace

bool higman_holds(std::size_t s, std::size_t t) {
  if (s <= 1 || t <= 1) return true;
  return s <= t * t && t <= s * s;
}

bool VerificationReport::passed() const { return first_failure() == nullptr; }

const CheckResult* VerificationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

VerificationReport check_gq(const IncidenceStructure& inc) {
  VerificationReport report;
  const std::size_t n = inc.num_points();
  const PairBlocks pairs(inc);
  const auto coll = collinearity(inc);

  report.checks.push_back(pairs.overlap_witness.empty()
                              ? pass("blocks_meet_at_most_once")
                              : fail("blocks_meet_at_most_once", pairs.overlap_witness));

  const auto k = inc.uniform_block_size();
  report.checks.push_back(k ? pass("constant_block_size")
                            : fail("constant_block_size", "block sizes differ"));
  const auto r = inc.uniform_point_degree();
  report.checks.push_back(r ? pass("constant_point_degree")
                            : fail("constant_point_degree", "point degrees differ"));

  // Three pairwise collinear points not on one common block form a triangle.
  {
    std::string witness;
    for (BlockId b = 0; b < inc.num_blocks() && witness.empty(); ++b) {
      const auto blk = inc.block(b);
      const PointSet on_block = to_set(n, blk);
      for (std::size_t i = 0; i < blk.size() && witness.empty(); ++i) {
        for (std::size_t j = i + 1; j < blk.size() && witness.empty(); ++j) {
          PointSet third = coll[blk[i]] & coll[blk[j]];
          third -= on_block;
          const auto z = third.find_first();
          if (z != PointSet::npos) {
            std::ostringstream os;
            os << "points " << blk[i] << ", " << blk[j] << ", " << z
               << " are pairwise collinear on three distinct blocks";
            witness = os.str();
          }
        }
      }
    }
    report.checks.push_back(witness.empty() ? pass("triangle_free")
                                            : fail("triangle_free", witness));
  }

  {
    std::string witness;
    for (PointId x = 0; x < n && witness.empty(); ++x) {
      for (BlockId b = 0; b < inc.num_blocks(); ++b) {
        if (inc.incident(x, b)) continue;
        std::size_t hits = 0;
        for (PointId y : inc.block(b)) hits += coll[x].test(y) ? 1 : 0;
        if (hits != 1) {
          std::ostringstream os;
          os << "point " << x << " is collinear with " << hits << " points of block " << b;
          witness = os.str();
          break;
        }
      }
    }
    report.checks.push_back(witness.empty() ? pass("gq_axiom") : fail("gq_axiom", witness));
  }

  if (k && r && *k >= 1 && *r >= 1) {
    const std::size_t s = *k - 1;
    const std::size_t t = *r - 1;
    const std::size_t expected = (s + 1) * (s * t + 1);
    if (expected == n) {
      report.checks.push_back(pass("point_count"));
    } else {
      std::ostringstream os;
      os << n << " points, expected (s+1)(st+1) = " << expected << " for order (" << s << ","
         << t << ")";
      report.checks.push_back(fail("point_count", os.str()));
    }
    if (higman_holds(s, t)) {
      report.checks.push_back(pass("higman"));
    } else {
      std::ostringstream os;
      os << "order (" << s << "," << t << ") violates s <= t^2 and t <= s^2";
      report.checks.push_back(fail("higman", os.str()));
    }
    report.order = GqOrder{s, t};
  } else {
    report.checks.push_back(skip("point_count"));
    report.checks.push_back(skip("higman"));
  }
  return report;
}

GqOrder verify_gq(const IncidenceStructure& inc) {
  if (inc.num_points() == 0) throw Error(Errc::AxiomViolation, "empty structure");
  const auto report = check_gq(inc);
  if (const auto* bad = report.first_failure()) {
    const Errc code = bad->name == "higman" ? Errc::HigmanViolation : Errc::AxiomViolation;
    throw Error(code, bad->name + ": " + bad->witness);
  }
  return *report.order;
}

VerificationReport check_projective_plane(const IncidenceStructure& inc) {
  VerificationReport report;
  const std::size_t n = inc.num_points();
  const PairBlocks pairs(inc);

  {
    std::string witness;
    for (PointId x = 0; x < n && witness.empty(); ++x) {
      for (PointId y = x + 1; y < n; ++y) {
        if (pairs.times_covered(x, y) != 1) {
          std::ostringstream os;
          os << "points " << x << " and " << y << " lie on " << pairs.times_covered(x, y)
             << " blocks";
          witness = os.str();
          break;
        }
      }
    }
    report.checks.push_back(witness.empty() ? pass("pair_coverage")
                                            : fail("pair_coverage", witness));
  }

  {
    std::string witness;
    const std::size_t b = inc.num_blocks();
    for (BlockId a = 0; a < b && witness.empty(); ++a) {
      const PointSet sa = to_set(n, inc.block(a));
      for (BlockId c = a + 1; c < b; ++c) {
        std::size_t common = 0;
        for (PointId p : inc.block(c)) common += sa.test(p) ? 1 : 0;
        if (common != 1) {
          std::ostringstream os;
          os << "blocks " << a << " and " << c << " meet in " << common << " points";
          witness = os.str();
          break;
        }
      }
    }
    report.checks.push_back(witness.empty() ? pass("blocks_meet_once")
                                            : fail("blocks_meet_once", witness));
  }

  // Four points with no three on a block.
  {
    auto collinear3 = [&](PointId a, PointId b, PointId c) {
      const auto blk = pairs.block_of(a, b);
      return blk != kNoBlock && inc.incident(c, static_cast<BlockId>(blk));
    };
    bool found = false;
    for (PointId a = 0; a < n && !found; ++a)
      for (PointId b = a + 1; b < n && !found; ++b)
        for (PointId c = b + 1; c < n && !found; ++c) {
          if (collinear3(a, b, c)) continue;
          for (PointId d = c + 1; d < n; ++d) {
            if (!collinear3(a, b, d) && !collinear3(a, c, d) && !collinear3(b, c, d)) {
              found = true;
              break;
            }
          }
        }
    report.checks.push_back(found ? pass("non_degenerate")
                                  : fail("non_degenerate", "no four points in general position"));
  }

  if (const auto k = inc.uniform_block_size(); k && *k >= 2)
    report.order = GqOrder{*k - 1, *k - 1};
  return report;
}

void verify_projective_plane(const IncidenceStructure& inc) {
  const auto report = check_projective_plane(inc);
  if (const auto* bad = report.first_failure())
    throw Error(Errc::AxiomViolation, bad->name + ": " + bad->witness);
}

}  // namespace upir
