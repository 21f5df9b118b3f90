#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace upir {

/// Field elements are encoded as integers 0..q-1. For q = p^k with k >= 2 the
/// base-p digits of the code are the polynomial coefficients, lowest first,
/// so for GF(4) the element x is 2 and x+1 is 3.
using Elem = std::uint16_t;

/// A small finite field GF(q) with materialised operation tables.
///
/// Prime orders use modular arithmetic. The prime powers 4, 8 and 9 use the
/// fixed irreducibles x^2+x+1, x^3+x+1 and x^2+1 respectively. Tables are
/// checked against the field axioms on construction.
class Field {
 public:
  static constexpr unsigned kMaxPrime = 251;

  /// Throws Error{NotAPrimePower} or Error{Unsupported}.
  static Field make(unsigned q);

  unsigned order() const noexcept { return q_; }
  unsigned characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return k_; }
  /// Coefficients of the defining polynomial, lowest degree first (monic).
  /// Empty for prime fields.
  std::span<const unsigned> modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  bool contains(Elem a) const noexcept { return a < q_; }

  Elem add(Elem a, Elem b) const { return add_[index(a, b)]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const { return mul_[index(a, b)]; }
  Elem neg(Elem a) const { return neg_[a]; }
  /// Throws Error{DivisionByZero} for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

 private:
  Field() = default;
  std::size_t index(Elem a, Elem b) const noexcept {
    return static_cast<std::size_t>(a) * q_ + b;
  }
  void build_prime();
  void build_extension();
  void check_axioms() const;

  unsigned q_ = 0;
  unsigned p_ = 0;
  unsigned k_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
};

/// A point of PG(d, q) in canonical form: the first nonzero coordinate is 1.
/// Only `proj_normalize` creates these, so equality of canonical coordinates
/// is equality of projective points.
class ProjectivePoint {
 public:
  std::span<const Elem> coords() const noexcept { return coords_; }
  std::size_t dimension() const noexcept { return coords_.size(); }

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
  friend auto operator<=>(const ProjectivePoint&, const ProjectivePoint&) = default;

 private:
  friend ProjectivePoint proj_normalize(const Field& f, std::span<const Elem> v);
  std::vector<Elem> coords_;
};

/// Scales v so its leftmost nonzero coordinate is 1. Throws Error{ZeroVector}.
ProjectivePoint proj_normalize(const Field& f, std::span<const Elem> v);

bool is_canonical(const Field& f, std::span<const Elem> v);

/// All points of the projective space of vector length `len` (PG(len-1, q)),
/// in lexicographic order of their canonical coordinates.
std::vector<ProjectivePoint> projective_points(const Field& f, std::size_t len);

}  // namespace upir
