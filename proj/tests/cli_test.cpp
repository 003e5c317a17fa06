#include "cli.hpp"

#include "toric/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace toric {
namespace {

namespace fs = std::filesystem;

std::string data(const std::string& name) { return std::string(TORIC_TEST_DATA) + "/" + name; }

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("toricgen_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, FanCheckP2) {
  auto r = run({"fan", "check", data("p2.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("smooth = true"), std::string::npos);
  EXPECT_NE(r.out.find("complete = true"), std::string::npos);
  EXPECT_NE(r.out.find("codim>=2 strata = true"), std::string::npos);
}

TEST_F(Cli, FanCheckInvalidFanFails) {
  std::ofstream(tmp("bad.json")) << R"({"rank":2,"rays":[[1,0],[-1,0]],"max_cones":[[0,1]]})";
  EXPECT_EQ(run({"fan", "check", tmp("bad.json")}).code, 1);
}

TEST_F(Cli, SchemaErrorIsInputError) {
  std::ofstream(tmp("np.json")) << R"({"rank":2,"rays":[[2,4]],"max_cones":[[0]]})";
  auto r = run({"fan", "check", tmp("np.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("rays[0]: ray (2,4) is not primitive"), std::string::npos) << r.err;
  EXPECT_EQ(run({"fan", "check", tmp("missing.json")}).code, 2);
}

TEST_F(Cli, FrobeniusP1) {
  auto r = run({"frobenius", data("p1.json"), "-m", "2", "--method", "both", "--out", tmp("f.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("methods agree"), std::string::npos);
  auto j = io::read_json_file(tmp("f.json"));
  EXPECT_TRUE(j["agree"].get<bool>());
  ASSERT_EQ(j["cube"]["table"].size(), 2u);
  EXPECT_EQ(j["cube"]["table"][0]["class"]["free"], io::Json::array({-1}));
  EXPECT_EQ(j["cube"]["table"][1]["class"]["free"], io::Json::array({0}));
  EXPECT_EQ(j["cube"]["table"][0]["multiplicity"], 1);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobenius", data("p1.json")}).code, 2);
  EXPECT_EQ(run({"frobenius", data("p1.json"), "-m", "2", "--method", "fast"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"bondal", "run", data("p2_instance.json"), "--grid", "4", "--c0", "x"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, Thomsen) {
  auto r = run({"thomsen", data("p2.json"), "--out", "-"});
  EXPECT_EQ(r.code, 0);
  auto pos = r.out.find('{');
  ASSERT_NE(pos, std::string::npos);
  auto j = io::parse_json_text(r.out.substr(pos));
  EXPECT_EQ(j["classes"].size(), 3u);
}

TEST_F(Cli, BlowupChains) {
  EXPECT_EQ(run({"fan", "blowup", data("p2.json"), "--cone", "0,1", "--out", tmp("f1.json")}).code, 0);
  auto r = run({"fan", "check", tmp("f1.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("class group = Z^2"), std::string::npos);
  EXPECT_EQ(run({"fan", "blowup", data("p2.json"), "--cone", "0"}).code, 2);
}

TEST_F(Cli, ResolveVerifyAndTamper) {
  EXPECT_EQ(run({"gensys", "resolve", data("clockwise.json"), "--out", tmp("c.json")}).code, 0);
  EXPECT_EQ(run({"gensys", "verify", tmp("c.json"), data("clockwise.json")}).code, 0);
  auto j = io::read_json_file(tmp("c.json"));
  j["nodes"][0]["target"]["Z"] = 1;
  io::write_file(tmp("t.json"), io::dump(j));
  auto r = run({"gensys", "verify", tmp("t.json"), data("clockwise.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("REJECTED"), std::string::npos);
}

TEST_F(Cli, OutputIsByteIdentical) {
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(run({"gensys", "resolve", data("rotating.json"), "--out", tmp("r" + std::to_string(i))}).code, 0);
    EXPECT_EQ(run({"bondal", "run", data("p3_instance.json"), "--grid", "4", "--out", tmp("b" + std::to_string(i))}).code, 0);
  }
  EXPECT_EQ(slurp(tmp("r0")), slurp(tmp("r1")));
  EXPECT_EQ(slurp(tmp("b0")), slurp(tmp("b1")));
  EXPECT_FALSE(slurp(tmp("b0")).empty());
}

TEST_F(Cli, BondalWindowOverride) {
  auto r = run({"bondal", "run", data("p3_instance.json"), "--grid", "4", "--c0", "1/2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("d window: {1, 2}, expected {1, 2}"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace toric
