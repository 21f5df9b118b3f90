#include "upir/algebra.hpp"

#include <string>

#include "upir/error.hpp"

namespace upir {

namespace {

struct PrimePower {
  unsigned p = 0;
  unsigned k = 0;
};

PrimePower factor_prime_power(unsigned q) {
  if (q < 2) {
    throw Error(Errc::NotAPrimePower, std::to_string(q) + " is not a prime power");
  }
  unsigned p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;  // q itself is prime
  unsigned k = 0;
  unsigned rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) {
    throw Error(Errc::NotAPrimePower,
                std::to_string(q) + " has at least two distinct prime factors");
  }
  return {p, k};
}

std::vector<unsigned> irreducible_for(unsigned q) {
  // Monic, lowest degree first.
  switch (q) {
    case 4: return {1, 1, 1};     // x^2 + x + 1
    case 8: return {1, 1, 0, 1};  // x^3 + x + 1
    case 9: return {1, 0, 1};     // x^2 + 1
    default: return {};
  }
}

}  // namespace

Field Field::make(unsigned q) {
  const PrimePower pk = factor_prime_power(q);
  Field f;
  f.q_ = q;
  f.p_ = pk.p;
  f.k_ = pk.k;
  if (pk.k == 1) {
    if (pk.p > kMaxPrime) {
      throw Error(Errc::Unsupported, "prime field order " + std::to_string(q) +
                                         " exceeds " + std::to_string(kMaxPrime));
    }
    f.build_prime();
  } else {
    f.modulus_ = irreducible_for(q);
    if (f.modulus_.empty()) {
      throw Error(Errc::Unsupported,
                  "no irreducible polynomial configured for GF(" + std::to_string(q) + ")");
    }
    f.build_extension();
  }
  f.check_axioms();
  return f;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  return inv_[a];
}

void Field::build_prime() {
  add_.resize(std::size_t{q_} * q_);
  mul_.resize(std::size_t{q_} * q_);
  for (unsigned a = 0; a < q_; ++a) {
    for (unsigned b = 0; b < q_; ++b) {
      add_[index(a, b)] = static_cast<Elem>((a + b) % q_);
      mul_[index(a, b)] = static_cast<Elem>((a * b) % q_);
    }
  }
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (unsigned a = 0; a < q_; ++a) neg_[a] = static_cast<Elem>((q_ - a) % q_);
  for (unsigned a = 1; a < q_; ++a) {
    for (unsigned b = 1; b < q_; ++b) {
      if ((a * b) % q_ == 1) {
        inv_[a] = static_cast<Elem>(b);
        break;
      }
    }
  }
}

void Field::build_extension() {
  const unsigned p = p_;
  const unsigned k = k_;
  auto digits = [&](unsigned code) {
    std::vector<unsigned> d(k);
    for (unsigned i = 0; i < k; ++i) {
      d[i] = code % p;
      code /= p;
    }
    return d;
  };
  auto encode = [&](const std::vector<unsigned>& d) {
    unsigned code = 0;
    for (unsigned i = k; i-- > 0;) code = code * p + d[i];
    return static_cast<Elem>(code);
  };

  add_.resize(std::size_t{q_} * q_);
  mul_.resize(std::size_t{q_} * q_);
  for (unsigned a = 0; a < q_; ++a) {
    const auto da = digits(a);
    for (unsigned b = 0; b < q_; ++b) {
      const auto db = digits(b);
      std::vector<unsigned> sum(k);
      for (unsigned i = 0; i < k; ++i) sum[i] = (da[i] + db[i]) % p;
      add_[index(a, b)] = encode(sum);

      // Schoolbook product, then reduce by the monic modulus from the top.
      std::vector<unsigned> prod(2 * k - 1, 0);
      for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      for (unsigned deg = 2 * k - 2; deg >= k; --deg) {
        const unsigned lead = prod[deg];
        if (lead == 0) continue;
        for (unsigned i = 0; i <= k; ++i) {
          const unsigned idx = deg - k + i;
          prod[idx] = (prod[idx] + (p - lead) * modulus_[i]) % p;
        }
      }
      prod.resize(k);
      mul_[index(a, b)] = encode(prod);
    }
  }
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (unsigned a = 0; a < q_; ++a) {
    for (unsigned b = 0; b < q_; ++b) {
      if (add_[index(a, b)] == 0) neg_[a] = static_cast<Elem>(b);
      if (a != 0 && mul_[index(a, b)] == 1) inv_[a] = static_cast<Elem>(b);
    }
  }
}

void Field::check_axioms() const {
  auto fail = [&](const std::string& what) {
    throw Error(Errc::Unsupported,
                "GF(" + std::to_string(q_) + ") table check failed: " + what);
  };
  for (unsigned a = 0; a < q_; ++a) {
    if (add(static_cast<Elem>(a), neg_[a]) != 0) fail("additive inverse");
    if (a != 0 && mul(static_cast<Elem>(a), inv_[a]) != 1) fail("multiplicative inverse");
  }
  // Full associativity/distributivity sweeps are cubic; only the small
  // extension fields need them, prime tables are correct by construction.
  if (k_ < 2) return;
  for (unsigned a = 0; a < q_; ++a) {
    for (unsigned b = 0; b < q_; ++b) {
      const auto ea = static_cast<Elem>(a);
      const auto eb = static_cast<Elem>(b);
      if (mul(ea, eb) != mul(eb, ea) || add(ea, eb) != add(eb, ea)) fail("commutativity");
      for (unsigned c = 0; c < q_; ++c) {
        const auto ec = static_cast<Elem>(c);
        if (mul(mul(ea, eb), ec) != mul(ea, mul(eb, ec))) fail("associativity");
        if (mul(ea, add(eb, ec)) != add(mul(ea, eb), mul(ea, ec))) fail("distributivity");
      }
    }
  }
}

ProjectivePoint proj_normalize(const Field& f, std::span<const Elem> v) {
  std::size_t lead = 0;
  while (lead < v.size() && v[lead] == 0) ++lead;
  if (lead == v.size()) throw Error(Errc::ZeroVector, "cannot normalise the zero vector");
  const Elem scale = f.inv(v[lead]);
  ProjectivePoint pt;
  pt.coords_.reserve(v.size());
  for (Elem x : v) pt.coords_.push_back(f.mul(scale, x));
  return pt;
}

bool is_canonical(const Field& f, std::span<const Elem> v) {
  for (Elem x : v) {
    if (!f.contains(x)) return false;
    if (x != 0) return x == 1;
  }
  return false;
}

std::vector<ProjectivePoint> projective_points(const Field& f, std::size_t len) {
  // Canonical vectors in lex order: leading 1 at position `lead`, zeros
  // before it, free coordinates after it counted in base q. A later leading
  // position sorts first.
  std::vector<ProjectivePoint> out;
  const unsigned q = f.order();
  for (std::size_t lead = len; lead-- > 0;) {
    const std::size_t free = len - lead - 1;
    std::vector<Elem> v(len, 0);
    v[lead] = 1;
    std::size_t count = 1;
    for (std::size_t i = 0; i < free; ++i) count *= q;
    for (std::size_t code = 0; code < count; ++code) {
      std::size_t c = code;
      for (std::size_t i = len; i-- > lead + 1;) {
        v[i] = static_cast<Elem>(c % q);
        c /= q;
      }
      out.push_back(proj_normalize(f, v));
    }
  }
  return out;
}

}  // namespace upir
