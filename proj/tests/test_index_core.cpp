#include <gtest/gtest.h>

#include <random>

#include "reeb/errors.hpp"
#include "reeb/index_core.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using reeb::make_rational;
using reeb::PathModel;
using reeb::Rational;

namespace {

PathModel path(std::int64_t nu, std::vector<Rational> ell, std::vector<std::int64_t> hyp,
               std::int64_t bound = 1) {
  PathModel p;
  p.loop_maslov = nu;
  p.elliptic = std::move(ell);
  p.hyperbolic = std::move(hyp);
  return reeb::validate_path(p, bound);
}

}  // namespace

TEST(CzIndex, SingleBlockExamples) {
  EXPECT_EQ(reeb::cz_index(path(0, {make_rational(5, 2)}, {}), 1), 5);
  EXPECT_EQ(reeb::cz_index(path(0, {make_rational(-3, 10)}, {}), 1), -1);
  EXPECT_EQ(reeb::cz_index(path(0, {}, {2}, 3), 3), 6);
  EXPECT_EQ(reeb::cz_index(path(1, {make_rational(47, 100)}, {}), 1), 3);
}

TEST(CzIndex, MatchesOracleOnIterates) {
  const PathModel p = path(1, {make_rational(41, 100), make_rational(-7, 30)}, {3}, 25);
  for (std::int64_t k = 1; k <= 25; ++k) EXPECT_EQ(reeb::cz_index(p, k), oracle::cz(p, k)) << k;
}

TEST(CzIndex, RejectsIteratesOutsideTheCertificate) {
  const PathModel p = path(0, {make_rational(2, 7)}, {}, 3);
  EXPECT_THROW(reeb::cz_index(p, 4), reeb::IterateOutOfCertifiedRange);
  EXPECT_THROW(reeb::cz_index(p, 0), reeb::InvalidInput);
}

TEST(CzIndex, WideRationalsStayExact) {
  // numerator and denominator beyond 64 bits take the multiprecision path
  PathModel p;
  p.elliptic = {reeb::parse_rational("100000000000000000001/300000000000000000000")};
  p = reeb::validate_path(p, 50);
  for (std::int64_t k = 1; k <= 50; ++k) {
    EXPECT_EQ(reeb::cz_index(p, k), 2 * (k / 3) + 1) << k;
  }
}

TEST(MeanIndex, Examples) {
  EXPECT_EQ(reeb::mean_index(path(0, {make_rational(3, 10)}, {}), 10), 6);
  EXPECT_EQ(reeb::mean_index(path(3, {make_rational(3, 10)}, {5}), 0), 0);
  EXPECT_EQ(reeb::mean_index(path(1, {make_rational(47, 100)}, {}), 1), make_rational(147, 50));
}

TEST(IsGood, ParityOfIterates) {
  const PathModel h1 = path(0, {}, {1}, 3);
  EXPECT_FALSE(reeb::is_good(h1, 2));
  EXPECT_TRUE(reeb::is_good(h1, 3));
  const PathModel e = path(0, {make_rational(2, 7)}, {}, 5);
  EXPECT_TRUE(reeb::is_good(e, 5));
  for (std::int64_t k = 1; k <= 3; ++k) EXPECT_EQ(reeb::is_good(h1, k), oracle::good(h1, k));
}

TEST(Invert, NegatesIndex) {
  const PathModel p = path(0, {make_rational(5, 2)}, {});
  EXPECT_EQ(reeb::cz_index(reeb::invert(p), 1), -5);
}

TEST(DirectSum, AddsIndices) {
  const PathModel s = reeb::direct_sum(path(0, {make_rational(3, 10)}, {}), path(0, {}, {2}));
  EXPECT_EQ(reeb::cz_index(s, 1), 3);
  EXPECT_EQ(s.half_dim(), 2);
}

TEST(ValidatePath, NamesTheFirstDegenerateIterate) {
  PathModel p;
  p.elliptic = {make_rational(1, 3)};
  try {
    reeb::validate_path(p, 3);
    FAIL() << "expected DegenerateIterate";
  } catch (const reeb::DegenerateIterate& e) {
    EXPECT_EQ(e.block(), 0u);
    EXPECT_EQ(e.iterate(), 3);
  }
  EXPECT_EQ(reeb::validate_path(p, 2).nondeg_bound, 2);
  EXPECT_THROW(reeb::validate_path(p, 0), reeb::InvalidInput);
  p.elliptic = {make_rational(2)};
  EXPECT_THROW(reeb::validate_path(p, 1), reeb::DegenerateIterate);
}

TEST(ValidatePath, CertifiableBound) {
  PathModel p;
  p.elliptic = {make_rational(3, 7), make_rational(1, 5)};
  EXPECT_EQ(reeb::max_certifiable_bound(p), 4);
  p.elliptic.clear();
  EXPECT_EQ(reeb::max_certifiable_bound(p), std::numeric_limits<std::int64_t>::max());
}

TEST(SignedIterate, NegativeIteratesInvert) {
  const PathModel p = path(1, {make_rational(41, 100)}, {1}, 10);
  for (std::int64_t l = 1; l <= 10; ++l) {
    EXPECT_EQ(reeb::signed_iterate_index(p, -l), -reeb::cz_index(p, l));
  }
}

// The eight invariants on a smaller random sample than the acceptance run.
TEST(IndexInvariants, RandomPaths) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const PathModel p = gen::random_path(rng, 5, 10'000, 60);
    const PathModel q = gen::random_path(rng, 5, 10'000, 60);
    const Rational m1 = reeb::mean_index(p, 1);
    const PathModel sum = reeb::direct_sum(p, q);
    PathModel shifted = p;
    shifted.loop_maslov += 3;
    for (std::int64_t k = 1; k <= 60; ++k) {
      const std::int64_t mu = reeb::cz_index(p, k);
      ASSERT_EQ(mu, oracle::cz(p, k));
      ASSERT_EQ(reeb::mean_index(p, k), m1 * k);
      ASSERT_LT(abs(reeb::mean_index(p, k) - mu), p.half_dim());
      if (k + 2 <= 60) ASSERT_EQ((mu - reeb::cz_index(p, k + 2)) % 2, 0);
      ASSERT_EQ(reeb::cz_index(reeb::invert(p), k), -mu);
      ASSERT_EQ(reeb::cz_index(sum, k), mu + reeb::cz_index(q, k));
      ASSERT_EQ(reeb::mean_index(sum, k), reeb::mean_index(p, k) + reeb::mean_index(q, k));
      if (p.is_hyperbolic()) ASSERT_EQ(Rational(mu), reeb::mean_index(p, k));
      ASSERT_EQ(reeb::cz_index(shifted, k), mu + 6 * k);
      ASSERT_EQ(reeb::mean_index(shifted, k), reeb::mean_index(p, k) + 6 * k);
      ASSERT_LT(abs(make_rational(mu, k) - m1), make_rational(p.half_dim(), k));
    }
  }
}
