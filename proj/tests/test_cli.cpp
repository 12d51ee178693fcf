#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "reeb/cli.hpp"
#include "reeb/serialize.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = reeb::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "reebcount_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string golden(const std::string& name) { return reeb::read_file(std::string(REEB_GOLDEN_DIR) + "/" + name); }

const char* kWorkedPath = R"({"loop_maslov": 0, "elliptic": ["41/100"], "hyperbolic": []})";

}  // namespace

TEST(Cli, CatalogMatchesGoldenFiles) {
  const auto text = run({"catalog"});
  EXPECT_EQ(text.code, 0);
  EXPECT_EQ(text.out, golden("catalog.txt"));
  const auto machine = run({"--output", "machine", "catalog"});
  EXPECT_EQ(machine.code, 0);
  EXPECT_EQ(machine.out, golden("catalog_machine.txt"));
}

TEST(Cli, DegenerateBound) {
  const auto r = run({"bound", "--deg", "-n", "3", "-q", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "2\n");
}

TEST(Cli, JumpFindsAndVerifiesTheWorkedCertificate) {
  const std::string input = write_temp("worked.json", kWorkedPath);
  const auto found = run({"--input", input, "--eta", "1/4", "--output", "machine", "jump"});
  ASSERT_EQ(found.code, 0) << found.err;
  const auto records = reeb::parse_records(found.out);
  ASSERT_FALSE(records.empty());
  const auto cert = reeb::certificate_from_record(records.front());
  EXPECT_EQ(cert.d_plus, 4);
  EXPECT_EQ(cert.k_plus, std::vector<std::int64_t>{5});

  const std::string good = write_temp(
      "good.cert", "d_plus=4\nk_plus=5\nd_minus=78\nk_minus=95\neta=1/4\nell0=1\ndivisor=1\n");
  EXPECT_EQ(run({"--input", input, "jump", "--verify", "--certificate", good}).code, 0);
  const std::string tampered = write_temp(
      "tampered.cert", "d_plus=5\nk_plus=5\nd_minus=78\nk_minus=95\neta=1/4\nell0=1\ndivisor=1\n");
  const auto bad = run({"--input", input, "jump", "--verify", "--certificate", tampered});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("l=1"), std::string::npos) << bad.out;
}

TEST(Cli, ExhaustedSearchExitsTwo) {
  const std::string input = write_temp("worked2.json", kWorkedPath);
  EXPECT_EQ(run({"--input", input, "--eta", "1/4", "--search-bound", "4", "jump"}).code, 2);
}

TEST(Cli, BadInputExitsThree) {
  EXPECT_EQ(run({"--input", write_temp("broken.json", "{\"elliptic\": [0.41]}"), "jump"}).code, 3);
  EXPECT_EQ(run({"--input", write_temp("malformed.json", "{"), "index"}).code, 3);
  EXPECT_EQ(run({"--input", "/nonexistent/file.json", "index"}).code, 3);
  EXPECT_EQ(run({"--eta", "1/2", "--input", write_temp("w3.json", kWorkedPath), "jump"}).code, 3);
  EXPECT_EQ(run({"frobnicate"}).code, 3);
  EXPECT_EQ(run({"bound", "--deg", "-n", "0", "-q", "3"}).code, 3);
}

TEST(Cli, IndexTable) {
  const std::string input = write_temp("idx.json", kWorkedPath);
  const auto r = run({"--input", input, "--output", "machine", "index", "--from", "1", "--to", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto records = reeb::parse_records(r.out);
  ASSERT_EQ(records.size(), 5u);
  std::map<std::string, std::string> last(records[4].begin(), records[4].end());
  EXPECT_EQ(last.at("mu"), "5");
  EXPECT_EQ(last.at("mean_index"), "41/10");
}

TEST(Cli, CertifyEllipsoidIsDeterministic) {
  const auto gen = run({"--seed", "1", "ellipsoid", "--random-n", "1"});
  ASSERT_EQ(gen.code, 0) << gen.err;
  const std::string system = write_temp("ellipsoid.json", gen.out);
  const auto a = run({"--input", system, "--output", "machine", "certify"});
  const auto b = run({"--input", system, "--output", "machine", "--workers", "3", "certify"});
  ASSERT_EQ(a.code, 0) << a.err << a.out;
  EXPECT_EQ(a.out, b.out);
  const auto records = reeb::parse_records(a.out);
  ASSERT_FALSE(records.empty());
  std::map<std::string, std::string> head(records[0].begin(), records[0].end());
  EXPECT_EQ(head.at("verdict"), "CONSISTENT");
}

TEST(Cli, CertifyRefutesMissingOrbit) {
  auto j = reeb::parse_json(run({"--seed", "1", "ellipsoid", "--random-n", "1"}).out);
  j["orbits"].erase(1);
  const std::string system = write_temp("missing.json", j.dump());
  const auto r = run({"--input", system, "certify"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("REFUTED"), std::string::npos);
}

TEST(Cli, EllipsoidRejectsEqualWeights) {
  EXPECT_EQ(run({"ellipsoid", "--weights", "1,1"}).code, 3);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("certify"), std::string::npos);
}
