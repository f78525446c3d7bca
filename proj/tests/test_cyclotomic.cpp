#include <gtest/gtest.h>

#include <random>

#include "charkernel/cyclotomic.hpp"
#include "charkernel/numtheory.hpp"
#include "oracles.hpp"

using namespace charkernel;

namespace {

Cyclotomic z(unsigned e, long long k = 1) { return Cyclotomic::root_of_unity(e, k); }

Cyclotomic random_element(std::mt19937_64& rng, unsigned e) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  std::vector<Rational> c(e);
  for (auto& x : c) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return Cyclotomic::from_powers(e, c);
}

void expect_close(std::complex<double> a, std::complex<double> b) {
  EXPECT_NEAR(a.real(), b.real(), 1e-9);
  EXPECT_NEAR(a.imag(), b.imag(), 1e-9);
}

}  // namespace

TEST(Cyclotomic, BasicIdentities) {
  EXPECT_EQ(z(4) * z(4), Cyclotomic(-1));
  EXPECT_TRUE((Cyclotomic(1) + z(3) + z(3, 2)).is_zero());
  EXPECT_EQ(z(7, 7), Cyclotomic(1));
  EXPECT_EQ(z(12, -1), z(12, 11));
}

TEST(Cyclotomic, SixthRootEqualsOnePlusCubeRoot) {
  const Cyclotomic a = z(6), b = Cyclotomic(1) + z(3);
  EXPECT_EQ(a, b);
  expect_close(a.evaluate(), oracle::root(6, 1));
  expect_close(b.evaluate(), oracle::root(6, 1));
}

TEST(Cyclotomic, MixedConductorsMeetAtTheLcm) {
  const Cyclotomic s = z(4) + z(3);
  EXPECT_EQ(s.conductor() % 12, 0u);
  expect_close(s.evaluate(), oracle::root(4, 1) + oracle::root(3, 1));
  EXPECT_EQ(z(4) * z(3), z(12, 7));
}

TEST(Cyclotomic, Conjugation) {
  EXPECT_EQ(z(5).conjugate(), z(5, 4));
  EXPECT_EQ(Cyclotomic(Rational(3, 7)).conjugate(), Cyclotomic(Rational(3, 7)));
  const Cyclotomic x = Cyclotomic(1) + z(7) * Rational(2);
  const Cyclotomic expected = Cyclotomic(1) + z(7, 6) * Rational(2);
  EXPECT_EQ(x.conjugate(), expected);
  expect_close(x.conjugate().evaluate(), std::conj(x.evaluate()));
  EXPECT_EQ(x.conjugate().conjugate(), x);
}

TEST(Cyclotomic, RationalRecognition) {
  EXPECT_EQ(Cyclotomic(3).as_integer(), Integer(3));
  EXPECT_FALSE(z(3).as_rational().has_value());
  EXPECT_EQ((z(5) + z(5, 2) + z(5, 3) + z(5, 4)).as_integer(), Integer(-1));
  EXPECT_EQ(Cyclotomic(Rational(1, 2)).as_rational(), Rational(1, 2));
  EXPECT_FALSE(Cyclotomic(Rational(1, 2)).as_integer().has_value());
  // z(8) + z(8)^7 = sqrt(2): real, not rational.
  EXPECT_FALSE((z(8) + z(8, 7)).as_rational().has_value());
}

TEST(Cyclotomic, RationalElementsHaveOnlyAConstantCoordinate) {
  const Cyclotomic x = z(9) * z(9, 8) + Cyclotomic(2);
  ASSERT_TRUE(x.as_rational().has_value());
  for (std::size_t t = 1; t < x.coefficients().size(); ++t) EXPECT_EQ(x.coefficients()[t], 0);
}

TEST(Cyclotomic, CoordinatesHavePhiLength) {
  for (unsigned e = 1; e <= 24; ++e) EXPECT_LE(z(e).embed(e).coefficients().size(), euler_phi(e)) << e;
}

TEST(Cyclotomic, FieldLawsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (unsigned e = 1; e <= 24; ++e) {
    for (int t = 0; t < 20; ++t) {
      const auto a = random_element(rng, e), b = random_element(rng, e), c = random_element(rng, e);
      EXPECT_EQ((a + b) + c, a + (b + c)) << e;
      EXPECT_EQ((a * b) * c, a * (b * c)) << e;
      EXPECT_EQ(a * (b + c), a * b + a * c) << e;
      EXPECT_EQ(a * b, b * a) << e;
      EXPECT_TRUE((a - a).is_zero()) << e;
      EXPECT_EQ(a * Cyclotomic(1), a) << e;
    }
  }
}

TEST(Cyclotomic, CanonicalizationIsIdempotent) {
  std::mt19937_64 rng(11);
  for (unsigned e = 1; e <= 24; ++e) {
    const auto a = random_element(rng, e);
    const auto again = Cyclotomic::from_powers(a.conductor(), a.coefficients());
    EXPECT_EQ(again.coefficients(), a.coefficients()) << e;
    EXPECT_EQ(again, a) << e;
  }
}

TEST(Cyclotomic, NumericalShadowMatches) {
  std::mt19937_64 rng(13);
  for (unsigned e = 1; e <= 24; ++e) {
    for (int t = 0; t < 10; ++t) {
      std::uniform_int_distribution<long> num(-9, 9);
      std::vector<Rational> ca(e), cb(e);
      for (auto& x : ca) x = num(rng);
      for (auto& x : cb) x = num(rng);
      const auto a = Cyclotomic::from_powers(e, ca), b = Cyclotomic::from_powers(e, cb);
      const auto na = oracle::evaluate(ca, e), nb = oracle::evaluate(cb, e);
      expect_close(a.evaluate(), na);
      expect_close((a + b).evaluate(), na + nb);
      expect_close((a * b).evaluate(), na * nb);
      expect_close(a.conjugate().evaluate(), std::conj(na));
      expect_close(a.galois(e > 2 ? static_cast<long long>(e - 1) : 1).evaluate(),
                   e > 2 ? std::conj(na) : na);
    }
  }
}

TEST(Cyclotomic, TextRoundTrip) {
  std::mt19937_64 rng(17);
  for (unsigned e = 1; e <= 24; ++e) {
    const auto a = random_element(rng, e);
    EXPECT_EQ(Cyclotomic::parse(a.to_string()), a) << a.to_string();
  }
  EXPECT_EQ(Cyclotomic(0).to_string(), "0");
  EXPECT_EQ(Cyclotomic(-3).to_string(), "-3");
}

TEST(Cyclotomic, GaloisActionIsARingMap) {
  std::mt19937_64 rng(19);
  for (unsigned e : {5u, 7u, 8u, 12u, 15u}) {
    const auto a = random_element(rng, e), b = random_element(rng, e);
    for (long long k = 1; k < e; ++k) {
      if (std::gcd(k, static_cast<long long>(e)) != 1) continue;
      EXPECT_EQ((a * b).galois(k), a.galois(k) * b.galois(k));
      EXPECT_EQ((a + b).galois(k), a.galois(k) + b.galois(k));
    }
  }
}

TEST(Cyclotomic, PolynomialCoefficients) {
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<long long>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<long long>{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<long long>{1, 0, -1, 0, 1}));
}
