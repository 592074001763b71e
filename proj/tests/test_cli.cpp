#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = tak::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Perft) {
  EXPECT_EQ(run({"perft", "--depth", "2"}).out, "72\n");
  const CliResult r = run({"perft", "--size", "5", "--depth", "1", "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["nodes"], 25);
  // 7 empty squares with flat or wall, plus two steps of the White flat on c3.
  EXPECT_EQ(run({"perft", "--depth", "1", "--opening", "a1 c3"}).out, "16\n");
}

TEST(Cli, Falls) {
  EXPECT_EQ(run({"falls", "--height", "3", "--carry", "3"}).out, "1\n11\n2\n111\n12\n21\n3\n");
  EXPECT_EQ(run({"falls", "--height", "10", "--carry", "5", "--count"}).out, "31\n");
  const auto j = nlohmann::json::parse(run({"falls", "--height", "2", "--carry", "2", "--json"}).out);
  EXPECT_EQ(j["count"], 3);
  EXPECT_EQ(j["patterns"], (nlohmann::json{{1}, {1, 1}, {2}}));
}

TEST(Cli, Solve) {
  const CliResult r = run({"solve", "--opening", "b:a1 w:b2", "--json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"]["winner"], "white");
  EXPECT_EQ(j["value"]["plies"], 7);
  EXPECT_EQ(j["pv"].size(), 7u);
  // Nothing provable in two plies from the empty board.
  EXPECT_EQ(run({"solve", "--max-depth", "2"}).code, 1);
}

TEST(Cli, SolveAturan) {
  const CliResult r = run({"solve", "--aturan", "--json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["entries"].size(), 72u);
  EXPECT_EQ(j["all_white_wins"], true);
  EXPECT_EQ(run({"solve", "--aturan", "--size", "4"}).code, 2);
}

TEST(Cli, VerifyLines) {
  const std::string path = std::string(TAK_SOURCE_DIR) + "/data/lines/gameB.lines";
  CliResult r = run({"verify-lines", path});
  EXPECT_EQ(r.code, 0) << r.out;
  r = run({"verify-lines", path, "--json"});
  EXPECT_EQ(nlohmann::json::parse(r.out)["passed"], true);
  r = run({"verify-lines", std::string(TAK_SOURCE_DIR) + "/data/lines/game2.lines"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("UNCOVERED"), std::string::npos);
  EXPECT_EQ(run({"verify-lines", "/no/such/file.lines"}).code, 2);
}

TEST(Cli, Play) {
  // Human Black against the engine from the Game 1 start; random replies.
  const CliResult r = run({"play", "--opening", "b:b1 w:a1 a2", "--auto", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("result: road-win white"), std::string::npos) << r.out;
}

TEST(Cli, PlayReadsMoves) {
  const CliResult r = run({"play", "--opening", "b:b1 w:a1 a2"}, "a1\nzz\nSa3\n");
  EXPECT_NE(r.out.find("illegal move a1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("bad move"), std::string::npos);
  EXPECT_NE(r.out.find("black to move>"), std::string::npos);
  EXPECT_EQ(r.code, 1);  // input ran out before the game ended
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"perft", "--size", "9"}).code, 2);
  EXPECT_EQ(run({"perft", "--opening", "a1 a1"}).code, 2);
  EXPECT_EQ(run({"falls", "--height", "3"}).code, 2);
  const CliResult help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("verify-lines"), std::string::npos);
}
