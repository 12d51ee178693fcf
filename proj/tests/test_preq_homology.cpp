#include <gtest/gtest.h>

#include <map>
#include <random>

#include "reeb/errors.hpp"
#include "reeb/preq_homology.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using reeb::BaseManifold;
using reeb::make_rational;
using reeb::MonotoneSign;

namespace {

BaseManifold base(int n, std::vector<std::int64_t> betti, std::int64_t c,
                  MonotoneSign sign = MonotoneSign::positive) {
  BaseManifold b{n, std::move(betti), c, sign};
  reeb::validate_base(b);
  return b;
}

}  // namespace

TEST(HcRank, ComplexProjectiveExamples) {
  const BaseManifold cp1 = reeb::complex_projective(1);
  EXPECT_EQ(cp1, base(1, {1, 0, 1}, 2));
  EXPECT_EQ(reeb::hc_rank(cp1, 3), 1);
  EXPECT_EQ(reeb::hc_rank(cp1, 2), 0);
  const BaseManifold cp2 = reeb::complex_projective(2);
  EXPECT_EQ(cp2, base(2, {1, 0, 1, 0, 1}, 3));
  EXPECT_EQ(reeb::hc_rank(cp2, 4), 1);
  EXPECT_EQ(reeb::hc_rank(cp2, 3), 0);
}

TEST(HcRank, VanishesBelowTheFirstDegree) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    BaseManifold b = gen::random_base(rng);
    b.monotone_sign = MonotoneSign::positive;
    for (std::int64_t m = -40; m < 2 * b.chern_min - b.n; ++m) EXPECT_EQ(reeb::hc_rank(b, m), 0);
  }
}

TEST(HcRank, MatchesOracleForBothSigns) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    const BaseManifold b = gen::random_base(rng);
    for (std::int64_t m = -60; m <= 60; ++m) {
      ASSERT_EQ(reeb::hc_rank(b, m), oracle::hc_rank(b, m)) << m;
    }
  }
}

TEST(HcRank, NegativeMonotoneIsPeriodicBelow) {
  const BaseManifold b = base(2, {1, 0, 2, 0, 1}, 2, MonotoneSign::negative);
  for (std::int64_t m = -40; m < -b.n; ++m) {
    EXPECT_EQ(reeb::hc_rank(b, m), reeb::hc_rank(b, m - 2 * b.chern_min));
  }
  EXPECT_EQ(reeb::hc_rank(b, 10), 0);
}

TEST(MeanEulerChar, Examples) {
  EXPECT_EQ(reeb::mean_euler_char(reeb::complex_projective(2)), make_rational(1, 2));
  EXPECT_EQ(reeb::mean_euler_char(reeb::complex_projective(1)), make_rational(-1, 2));
  EXPECT_EQ(reeb::mean_euler_char(base(1, {1, 2, 1}, 1)), 0);
}

TEST(MeanEulerChar, WindowsAgreeWithClosedForm) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    const BaseManifold b = gen::random_base(rng);
    const auto want = make_rational((b.n % 2 ? -1 : 1) * oracle::euler(b), 2 * b.chern_min);
    EXPECT_EQ(reeb::mean_euler_char(b), want);
    for (std::int64_t s = 0; s < 2 * b.chern_min; ++s) {
      const std::int64_t start = b.monotone_sign == MonotoneSign::positive
                                     ? b.n + 1 + s
                                     : -b.n - 4 * b.chern_min + s;
      EXPECT_EQ(reeb::windowed_mean_euler_char(b, start), want) << start;
    }
  }
}

TEST(Bounds, Examples) {
  for (int n = 1; n <= 7; n += 2) {
    EXPECT_EQ(reeb::r_bound(reeb::complex_projective(n)), n + 1);
  }
  EXPECT_EQ(reeb::r_bound(reeb::complex_projective(2)), 3);
  EXPECT_EQ(reeb::r_nonhyp_bound(reeb::complex_projective(2)), 2);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    const BaseManifold b = gen::random_base(rng);
    EXPECT_EQ(reeb::r_bound(b), oracle::r_bound(b));
    EXPECT_EQ(reeb::r_nonhyp_bound(b), oracle::r_bound(b) - b.betti[static_cast<std::size_t>(b.n)]);
  }
}

TEST(DegBound, Examples) {
  EXPECT_EQ(reeb::deg_lower_bound(3, 3), 2);
  EXPECT_EQ(reeb::deg_lower_bound(2, 3), 1);
  EXPECT_EQ(reeb::deg_lower_bound(5, 2), 0);
  for (std::int64_t n = 1; n <= 12; ++n) {
    for (std::int64_t q = -5; q <= 20; ++q) EXPECT_EQ(reeb::deg_lower_bound(n, q), oracle::deg_bound(n, q));
  }
  EXPECT_THROW(reeb::deg_lower_bound(0, 3), reeb::InvalidInput);
}

TEST(ValidateBase, RejectsBrokenData) {
  EXPECT_THROW(base(1, {1, 0}, 2), reeb::InvalidInput);
  EXPECT_THROW(base(1, {1, 0, 2}, 2), reeb::InvalidInput);
  EXPECT_THROW(base(1, {0, 0, 0}, 2), reeb::InvalidInput);
  EXPECT_THROW(base(1, {1, -1, 1}, 2), reeb::InvalidInput);
  EXPECT_THROW(base(1, {1, 0, 1}, 0), reeb::InvalidInput);
  EXPECT_THROW(base(0, {1}, 1), reeb::InvalidInput);
}

TEST(HypothesisWarnings, FlagSmallChernNumbers) {
  EXPECT_TRUE(reeb::hypothesis_warnings(reeb::complex_projective(3)).empty());
  EXPECT_FALSE(reeb::hypothesis_warnings(base(4, {1, 0, 1, 0, 1, 0, 1, 0, 1}, 2)).empty());
  EXPECT_FALSE(reeb::hypothesis_warnings(base(2, {1, 1, 1, 1, 1}, 2)).empty());
}

TEST(Catalog, EntriesMatchTablesAndRecompute) {
  const auto entries = reeb::cross_catalog(6);
  ASSERT_FALSE(entries.empty());
  for (const auto& e : entries) {
    EXPECT_EQ(reeb::r_bound(e.base), e.r_B) << e.name;
    EXPECT_EQ(reeb::r_nonhyp_bound(e.base), e.r_nonhyp) << e.name;
    EXPECT_EQ(e.base.chern_min, e.c_B) << e.name;
    EXPECT_EQ(oracle::r_bound(e.base), e.r_B) << e.name;
    for (std::size_t i = 1; i < e.base.betti.size(); i += 2) EXPECT_EQ(e.base.betti[i], 0) << e.name;
    std::int64_t total = 0;
    for (auto b : e.base.betti) total += b;
    EXPECT_EQ(total, e.r_B) << e.name;
  }
}

TEST(Catalog, SpotValues) {
  std::map<std::string, std::vector<reeb::CrossEntry>> by_name;
  for (const auto& e : reeb::cross_catalog(6)) by_name[e.name.substr(0, e.name.find(" ["))].push_back(e);
  for (const auto& e : by_name.at("S*HP^m")) {
    const std::int64_t m = (e.base.n + 1) / 4;  // the base has complex dimension 4m - 1
    EXPECT_EQ(e.r_B, 2 * m * (m + 1));
    EXPECT_EQ(e.c_B, 2 * m + 1);
  }
  for (const auto& e : by_name.at("S*S^m or S*RP^m, m odd")) {
    const std::int64_t m = e.base.n + 1;  // the base has real dimension 2m - 2
    EXPECT_EQ(e.r_B, m + 1);
    EXPECT_EQ(e.c_B, m - 1);
    EXPECT_EQ(e.r_nonhyp, m - 1);
  }
  const auto& cap = by_name.at("S*CaP^2").front();
  EXPECT_EQ(cap.r_B, 24);
  EXPECT_EQ(cap.c_B, 11);
}

TEST(Catalog, NonHyperbolicTableRecomputes) {
  for (const auto& row : reeb::cross_nonhyp_table()) {
    for (std::int64_t p = 1; p <= 6; ++p) {
      if (!row.admissible(p)) continue;
      const BaseManifold b = row.base(p);
      EXPECT_EQ(reeb::r_nonhyp_bound(b), row.value(p)) << row.name << " p=" << p;
    }
  }
  for (const auto& row : reeb::cross_rank_table()) {
    for (std::int64_t p = 1; p <= 6; ++p) {
      if (!row.admissible(p)) continue;
      const BaseManifold b = row.base(p);
      EXPECT_EQ(reeb::r_bound(b), row.value(p)) << row.name << " p=" << p;
      EXPECT_EQ(b.chern_min, row.chern(p)) << row.name << " p=" << p;
    }
  }
}
