#include <gtest/gtest.h>

#include <random>

#include "reeb/errors.hpp"
#include "reeb/serialize.hpp"
#include "support/generators.hpp"

using reeb::Json;
using reeb::make_rational;
using reeb::Rational;

namespace {

void expect_same(const reeb::JumpCertificate& a, const reeb::JumpCertificate& b) {
  EXPECT_EQ(a.d_plus, b.d_plus);
  EXPECT_EQ(a.k_plus, b.k_plus);
  EXPECT_EQ(a.d_minus, b.d_minus);
  EXPECT_EQ(a.k_minus, b.k_minus);
  EXPECT_EQ(a.params.eta, b.params.eta);
  EXPECT_EQ(a.params.ell0, b.params.ell0);
  EXPECT_EQ(a.params.divisor, b.params.divisor);
}

reeb::JumpCertificate worked() {
  reeb::JumpCertificate c{4, {5}, 78, {95}, {}};
  c.params.eta = make_rational(1, 4);
  c.params.ell0 = 1;
  c.params.divisor = 1;
  return c;
}

}  // namespace

TEST(Serialize, PathRoundTrips) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    const reeb::PathModel p = gen::random_path(rng, 4, 1000, 20);
    EXPECT_EQ(reeb::path_from_json(reeb::parse_json(reeb::to_json(p).dump())), p);
    const auto records = reeb::parse_records(reeb::render_records({reeb::to_record(p)}));
    ASSERT_EQ(records.size(), 1u);
    EXPECT_EQ(reeb::path_from_record(records[0]), p);
  }
}

TEST(Serialize, OptionalFieldsAndIntegerRationals) {
  const auto p = reeb::path_from_json(reeb::parse_json(R"({"elliptic": ["41/100", "-3/7"], "hyperbolic": [2], "nondeg_bound": 6})"));
  EXPECT_EQ(p.loop_maslov, 0);
  EXPECT_EQ(p.elliptic, (std::vector<Rational>{make_rational(41, 100), make_rational(-3, 7)}));
  EXPECT_EQ(p.hyperbolic, std::vector<std::int64_t>{2});
  EXPECT_EQ(p.nondeg_bound, 6);
  const auto s = reeb::system_from_json(reeb::parse_json(
      R"({"orbits": [{"label": "a", "path": {"hyperbolic": [2]}, "period": 3}],
          "base": {"n": 1, "betti": [1, 0, 1], "c_B": 2}})"));
  EXPECT_EQ(s.orbits[0].period, Rational(3));
}

TEST(Serialize, RejectsUnknownFieldsAndInexactNumbers) {
  EXPECT_THROW(reeb::path_from_json(reeb::parse_json(R"({"elliptic": [], "spin": 1})")), reeb::InvalidInput);
  EXPECT_THROW(reeb::path_from_json(reeb::parse_json(R"({"elliptic": [0.41]})")), reeb::InvalidInput);
  EXPECT_THROW(reeb::path_from_json(reeb::parse_json(R"({"loop_maslov": 1.5})")), reeb::InvalidInput);
  EXPECT_THROW(reeb::parse_json("{"), reeb::InvalidInput);
  EXPECT_THROW(reeb::base_from_json(reeb::parse_json(R"({"n": 1, "betti": [1,0,1], "c_B": 2, "x": 0})")),
               reeb::InvalidInput);
  EXPECT_THROW(reeb::path_from_record({{"loop_maslov", "0"}, {"elliptic", ""}, {"hyperbolic", "1"},
                                       {"nondeg_bound", "1"}, {"extra", "1"}}),
               reeb::InvalidInput);
  EXPECT_THROW(reeb::parse_records("novalue\n"), reeb::InvalidInput);
}

TEST(Serialize, BaseRoundTrips) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    const reeb::BaseManifold b = gen::random_base(rng);
    EXPECT_EQ(reeb::base_from_json(reeb::to_json(b)), b);
    EXPECT_EQ(reeb::base_from_record(reeb::to_record(b)), b);
  }
}

TEST(Serialize, SystemRoundTrips) {
  const reeb::SystemModel s =
      reeb::ellipsoid_system({Rational(1), make_rational(161, 100), make_rational(237, 100)});
  EXPECT_EQ(reeb::system_from_json(reeb::parse_json(reeb::to_json(s).dump(2))), s);
  Json bad = reeb::to_json(s);
  bad["flags"].push_back("mystery");
  EXPECT_THROW(reeb::system_from_json(bad), reeb::InvalidInput);
  Json extra = reeb::to_json(s);
  extra["orbits"][0]["colour"] = "red";
  EXPECT_THROW(reeb::system_from_json(extra), reeb::InvalidInput);
  EXPECT_EQ(reeb::paths_from_json(reeb::to_json(s)).size(), 3u);
}

TEST(Serialize, PathListForms) {
  const auto list = reeb::paths_from_json(reeb::parse_json(R"({"paths": [{"hyperbolic": [2]}, {"elliptic": ["1/3"]}]})"));
  EXPECT_EQ(list.size(), 2u);
  EXPECT_EQ(reeb::paths_from_json(reeb::parse_json(R"({"hyperbolic": [2]})")).size(), 1u);
}

TEST(Serialize, CertificateFormats) {
  const auto cert = worked();
  expect_same(reeb::read_certificate(reeb::to_json(cert).dump()), cert);
  expect_same(reeb::read_certificate(reeb::render_records({reeb::to_record(cert)})), cert);
  expect_same(reeb::read_certificate(
                  "d_plus=4\nk_plus=5\nd_minus=78\nk_minus=95\neta=1/4\nell0=1\ndivisor=1\n"),
              cert);
  EXPECT_THROW(reeb::read_certificate("d_plus=4\n\nd_plus=5\n"), reeb::InvalidInput);
  EXPECT_THROW(reeb::read_certificate(R"({"d_plus": 4})"), reeb::InvalidInput);
}

TEST(Serialize, RecordsSeparateOnBlankLines) {
  const auto records = reeb::parse_records("a=1\nb=2\n\n\nc=x=y\r\n");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[1][0].second, "x=y");
  EXPECT_EQ(reeb::render_records(records), "a=1\nb=2\n\nc=x=y\n");
}
