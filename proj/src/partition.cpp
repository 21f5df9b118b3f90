#include "upir/partition.hpp"

#include <algorithm>
#include <unordered_map>

#include "upir/error.hpp"

namespace upir {

bool Coalition::contains(UserId u) const {
  return std::binary_search(members.begin(), members.end(), u);
}

Coalition make_coalition(const UPIRSystem& sys, std::vector<UserId> members) {
  if (members.empty()) throw Error(Errc::InvalidArgument, "coalition must not be empty");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.back() >= sys.num_users())
    throw Error(Errc::InvalidArgument, "coalition member out of range");
  return Coalition{std::move(members), true};
}

PseudonymityPartition PseudonymityPartition::from_labels(std::span<const std::uint64_t> labels,
                                                         Provenance provenance,
                                                         std::vector<UserId> coalition) {
  PseudonymityPartition p;
  p.provenance_ = provenance;
  std::sort(coalition.begin(), coalition.end());
  p.coalition_ = std::move(coalition);
  p.class_of_.resize(labels.size());
  std::unordered_map<std::uint64_t, std::uint32_t> renumber;
  for (UserId u = 0; u < labels.size(); ++u) {
    auto [it, fresh] = renumber.emplace(labels[u], static_cast<std::uint32_t>(p.classes_.size()));
    if (fresh) p.classes_.emplace_back();
    p.class_of_[u] = it->second;
    p.classes_[it->second].push_back(u);
  }
  return p;
}

std::size_t PseudonymityPartition::largest_class_size() const {
  std::size_t best = 0;
  for (const auto& c : classes_) best = std::max(best, c.size());
  return best;
}

std::map<std::size_t, std::size_t> PseudonymityPartition::size_histogram() const {
  std::map<std::size_t, std::size_t> h;
  for (const auto& c : classes_) ++h[c.size()];
  return h;
}

bool PseudonymityPartition::refines(const PseudonymityPartition& coarser) const {
  if (coarser.num_users() != num_users()) return false;
  for (const auto& cls : classes_) {
    const auto target = coarser.class_of(cls.front());
    for (UserId u : cls)
      if (coarser.class_of(u) != target) return false;
  }
  return true;
}

PseudonymityPartition meet(const PseudonymityPartition& a, const PseudonymityPartition& b) {
  if (a.num_users() != b.num_users())
    throw Error(Errc::InvalidArgument, "meet of partitions over different user sets");
  std::vector<std::uint64_t> labels(a.num_users());
  for (UserId u = 0; u < labels.size(); ++u)
    labels[u] = (std::uint64_t{a.class_of(u)} << 32) | b.class_of(u);
  std::vector<UserId> coalition = a.coalition();
  coalition.insert(coalition.end(), b.coalition().begin(), b.coalition().end());
  std::sort(coalition.begin(), coalition.end());
  coalition.erase(std::unique(coalition.begin(), coalition.end()), coalition.end());
  return PseudonymityPartition::from_labels(labels, a.provenance(), std::move(coalition));
}

}  // namespace upir
