#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "upir/algebra.hpp"
#include "upir/error.hpp"

using namespace upir;

namespace {

// Schoolbook arithmetic on base-p digit vectors, reduced by a monic modulus.
struct PolyOracle {
  unsigned p;
  std::vector<unsigned> modulus;  // lowest first, monic, length k+1

  std::vector<unsigned> digits(unsigned a) const {
    std::vector<unsigned> d(modulus.size() - 1);
    for (auto& x : d) {
      x = a % p;
      a /= p;
    }
    return d;
  }
  unsigned encode(const std::vector<unsigned>& d) const {
    unsigned a = 0;
    for (std::size_t i = d.size(); i-- > 0;) a = a * p + d[i];
    return a;
  }
  unsigned add(unsigned a, unsigned b) const {
    auto x = digits(a), y = digits(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % p;
    return encode(x);
  }
  unsigned mul(unsigned a, unsigned b) const {
    const auto x = digits(a), y = digits(b);
    const std::size_t k = x.size();
    std::vector<unsigned> prod(2 * k - 1, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    for (std::size_t deg = prod.size(); deg-- > k;) {
      const unsigned c = prod[deg];
      if (!c) continue;
      for (std::size_t i = 0; i <= k; ++i)
        prod[deg - k + i] = (prod[deg - k + i] + p * p - c * modulus[i] % p) % p;
    }
    prod.resize(k);
    return encode(prod);
  }
};

unsigned ipow(unsigned b, unsigned e) {
  unsigned r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST(Field, RejectsNonPrimePowers) {
  for (unsigned q : {0u, 1u, 6u, 10u, 12u, 15u}) {
    try {
      Field::make(q);
      FAIL() << q;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::NotAPrimePower) << q;
    }
  }
}

TEST(Field, UnsupportedPrimePowers) {
  try {
    Field::make(16);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Unsupported);
  }
}

TEST(Field, SpotValues) {
  EXPECT_EQ(Field::make(7).inv(3), 5);
  EXPECT_EQ(Field::make(5).add(2, 4), 1);
  const Field f4 = Field::make(4);
  EXPECT_EQ(f4.mul(2, 2), 3);  // x * x = x + 1
  EXPECT_EQ(Field::make(9).mul(3, 3), 2);  // x * x = -1
  EXPECT_THROW(Field::make(7).inv(0), Error);
}

TEST(Field, PrimeFieldsMatchModularArithmetic) {
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const Field f = Field::make(p);
    EXPECT_EQ(f.characteristic(), p);
    EXPECT_EQ(f.degree(), 1u);
    for (unsigned a = 0; a < p; ++a)
      for (unsigned b = 0; b < p; ++b) {
        ASSERT_EQ(f.add(a, b), (a + b) % p);
        ASSERT_EQ(f.mul(a, b), (a * b) % p);
        ASSERT_EQ(f.sub(a, b), (a + p - b) % p);
      }
  }
}

TEST(Field, ExtensionFieldsMatchPolynomialOracle) {
  const std::vector<std::pair<unsigned, PolyOracle>> cases{
      {4, {2, {1, 1, 1}}},
      {8, {2, {1, 1, 0, 1}}},
      {9, {3, {1, 0, 1}}},
  };
  for (const auto& [q, oracle] : cases) {
    const Field f = Field::make(q);
    EXPECT_EQ(f.order(), q);
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        ASSERT_EQ(f.add(a, b), oracle.add(a, b)) << q << ": " << a << "+" << b;
        ASSERT_EQ(f.mul(a, b), oracle.mul(a, b)) << q << ": " << a << "*" << b;
      }
  }
}

TEST(Field, AxiomSweepUpToNine) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const Field f = Field::make(q);
    for (Elem a = 0; a < q; ++a) {
      ASSERT_EQ(f.add(a, f.neg(a)), 0);
      ASSERT_EQ(f.mul(a, 1), a);
      if (a) {
        ASSERT_EQ(f.mul(a, f.inv(a)), 1);
      }
      for (Elem b = 0; b < q; ++b) {
        ASSERT_EQ(f.add(a, b), f.add(b, a));
        ASSERT_EQ(f.mul(a, b), f.mul(b, a));
        for (Elem c = 0; c < q; ++c) {
          ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
          ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
          ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST(Projective, NormalizeScalesLeadingCoordinate) {
  const Field f = Field::make(5);
  const std::vector<Elem> v{0, 3, 1};
  const auto p = proj_normalize(f, v);
  EXPECT_EQ(std::vector<Elem>(p.coords().begin(), p.coords().end()), (std::vector<Elem>{0, 1, 2}));
  EXPECT_TRUE(is_canonical(f, p.coords()));
  EXPECT_FALSE(is_canonical(f, v));
  const std::vector<Elem> w{0, 1, 2};
  EXPECT_EQ(proj_normalize(f, w), p);
  const std::vector<Elem> zero{0, 0, 0};
  EXPECT_THROW(proj_normalize(f, zero), Error);
}

TEST(Projective, PointCountsFromBruteForceNormalization) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u}) {
    const Field f = Field::make(q);
    for (std::size_t d : {2u, 3u, 4u}) {
      const std::size_t len = d + 1;
      std::set<ProjectivePoint> seen;
      std::vector<Elem> v(len, 0);
      for (unsigned code = 1; code < ipow(q, len); ++code) {
        unsigned c = code;
        for (auto& x : v) {
          x = c % q;
          c /= q;
        }
        seen.insert(proj_normalize(f, v));
      }
      const std::size_t expected = (ipow(q, len) - 1) / (q - 1);
      EXPECT_EQ(seen.size(), expected) << "PG(" << d << "," << q << ")";
      const auto listed = projective_points(f, len);
      ASSERT_EQ(listed.size(), expected);
      EXPECT_TRUE(std::is_sorted(listed.begin(), listed.end()));
      EXPECT_TRUE(std::equal(listed.begin(), listed.end(), seen.begin()));
    }
  }
}
