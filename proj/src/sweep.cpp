#include "upir/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "upir/analytic.hpp"

namespace upir {

namespace {

std::string format_epsilon(const std::optional<double>& eps) {
  if (!eps) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *eps);
  return buf;
}

}  // namespace

std::vector<SweepRow> coalition_sweep(const SweepConfig& config) {
  std::vector<SweepRow> rows;
  for (unsigned q : config.qs) {
    auto built = construct_family(config.family, q);
    const UPIRSystem sys(std::move(built.structure));
    const std::size_t s = built.order.s;
    const std::size_t t = built.order.t;
    for (std::size_t size : config.coalition_sizes) {
      for (Placement placement : config.placements) {
        for (std::size_t sample = 0; sample < config.samples; ++sample) {
          std::uint64_t stream = derive_seed(config.seed, q);
          stream = derive_seed(stream, size);
          stream = derive_seed(stream, static_cast<std::uint64_t>(placement));
          Rng rng(derive_seed(stream, sample));

          SweepRow row;
          row.family = config.family;
          row.q = q;
          row.s = s;
          row.t = t;
          row.n = sys.num_users();
          row.protocol = config.protocol;
          row.coalition_size = size;
          row.placement = placement;
          row.sample = sample;
          const Coalition coalition = place_coalition(sys, size, placement, rng);
          row.members = coalition.members;
          const auto partition = analytic_coalition(sys, coalition, config.protocol);
          row.security = summarize_security(partition, config.epsilon);
          const std::size_t c = coalition.members.size();
          row.bound_check = row.security.residue <= c * (s * t + s) + c * c * (t + 1);
          if (config.epsilon) {
            row.epsilon_bound = static_cast<double>(c * (s * t + s)) <=
                                std::pow(static_cast<double>(row.n), 1.0 - *config.epsilon);
          }
          for (UserId u = 0; u < sys.num_users(); ++u) {
            if (coalition.contains(u) || partition.class_members(u).size() != 1) continue;
            bool near = false;
            for (UserId m : coalition.members) near = near || sys.distance(m, u) == 1;
            if (near) ++row.resolved_distance1;
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "family,q,s,t,n,protocol,coalition_size,placement,giant,residue,epsilon_star,bound_check\n";
  for (const auto& r : rows) {
    out << to_string(r.family) << ',' << r.q << ',' << r.s << ',' << r.t << ',' << r.n << ','
        << static_cast<int>(r.protocol) << ',' << r.coalition_size << ',' << to_string(r.placement)
        << ',' << r.security.giant << ',' << r.security.residue << ','
        << format_epsilon(r.security.epsilon_star) << ',' << (r.bound_check ? "pass" : "fail")
        << '\n';
  }
}

void write_sweep_plot_data(std::ostream& out, std::span<const SweepRow> rows) {
  out << "# n coalition_size residue epsilon_star\n";
  for (const auto& r : rows) {
    const auto eps = format_epsilon(r.security.epsilon_star);
    out << r.n << ' ' << r.coalition_size << ' ' << r.security.residue << ' '
        << (eps.empty() ? "nan" : eps) << '\n';
  }
}

}  // namespace upir
