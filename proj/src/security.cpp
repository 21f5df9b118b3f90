#include "upir/security.hpp"

#include <algorithm>
#include <cmath>

#include "upir/error.hpp"

namespace upir {

bool SecurityReport::secure_at(double eps) const {
  if (!epsilon_star) return false;
  return static_cast<double>(residue) <= std::pow(static_cast<double>(n), 1.0 - eps) * (1 + 1e-12);
}

SecurityReport summarize_security(const PseudonymityPartition& partition,
                                  std::optional<double> epsilon) {
  SecurityReport r;
  r.n = partition.num_users();
  r.coalition_size = partition.coalition().size();
  r.num_classes = partition.num_classes();
  r.giant = partition.largest_class_size();
  r.residue = r.n - r.giant;
  if (!partition.all_singletons() && r.n > 1) {
    r.epsilon_star = r.residue <= 1 ? 1.0
                                    : 1.0 - std::log(static_cast<double>(r.residue)) /
                                                std::log(static_cast<double>(r.n));
  }
  if (epsilon) {
    r.epsilon = epsilon;
    r.secure = r.secure_at(*epsilon);
  }
  return r;
}

SecurityReport security_margin(const PseudonymityPartition& partition,
                               std::optional<double> epsilon) {
  if (partition.all_singletons())
    throw Error(Errc::DegeneratePartition, "every pseudonymity class is a singleton");
  return summarize_security(partition, epsilon);
}

}  // namespace upir
