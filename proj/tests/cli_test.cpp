#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "trapdoor/harness/cli.hpp"

using namespace trapdoor;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = 0;
  Json json;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "trapdoor");
  std::vector<char const*> argv;
  for (auto const& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.json = Json::parse(out.str(), nullptr, false);
  return r;
}

class CliPipeline : public ::testing::Test {
protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / "trapdoor_cli_test";
    fs::remove_all(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string d() const { return dir.string(); }
  fs::path dir;
};

} // namespace

TEST_F(CliPipeline, GenerateValidateTruthScorePromptSolveBench) {
  ASSERT_EQ(run({"generate", "--family", "III", "--seed", "3", "--count", "2", "--decoys", "3,5,1000003", "--preset",
                 "desk", "--out", d()})
                .status,
            0);
  ASSERT_EQ(run({"generate", "--family", "IV-v2", "--k", "octahedral_s4", "--preset", "desk", "--out", d()}).status, 0);
  ASSERT_EQ(run({"generate", "--family", "IV-v3", "--N", "5", "--out", d()}).status, 0);
  ASSERT_EQ(run({"generate", "--family", "II", "--decoys", "7,1000003", "--out", d()}).status, 0);
  auto v = run({"generate", "--family", "V", "--out", d()});
  ASSERT_EQ(v.status, 0);
  EXPECT_EQ(v.json["generated"].size(), 5u);

  auto val = run({"validate", "--dir", d()});
  EXPECT_EQ(val.status, 0) << val.json.dump(2);
  EXPECT_EQ(val.json["instances"], 10);
  EXPECT_EQ(val.json["failed"], 0);

  std::string key = (dir / "key.json").string();
  ASSERT_EQ(run({"truth", "--dir", d(), "--out", key}).status, 0);

  auto self = run({"score", "--answers", key, "--key", key, "--split-infinite"});
  ASSERT_EQ(self.status, 0) << self.json.dump(2);
  EXPECT_EQ(self.json["scorecard"]["records"], 10);
  EXPECT_EQ(self.json["scorecard"]["total"]["commit_correct"], 10);

  auto merged = run({"score", "--answers", key, "--key", key});
  ASSERT_EQ(merged.status, 0);
  EXPECT_EQ(merged.json["scorecard"]["total"]["commit_wrong"], 0);
  EXPECT_EQ(merged.json["scorecard"]["total"]["abstain_wrong"], 0);

  auto prompts = run({"prompt", "--dir", d()});
  EXPECT_EQ(prompts.status, 0);
  EXPECT_EQ(prompts.json["prompts"].size(), 10u);
  EXPECT_EQ(run({"prompt", "--dir", d(), "--split-infinite", "--id", "S2_02"}).json["prompts"].size(), 1u);

  std::string answers = (dir / "answers.jsonl").string();
  auto solved = run({"solve", "--dir", d(), "--answers-out", answers});
  ASSERT_EQ(solved.status, 0) << solved.json.dump(2);
  for (auto const& r : solved.json["results"])
    if (r["family"] == "IV-v2") {
      EXPECT_EQ(r["committed"], false);
    }
  auto scored = run({"score", "--answers", answers, "--key", key, "--split-infinite"});
  ASSERT_EQ(scored.status, 0) << scored.json.dump(2);
  // Every committed solver answer is correct.
  EXPECT_EQ(scored.json["scorecard"]["total"]["commit_wrong"], 0) << scored.json.dump(2);
  EXPECT_GE(scored.json["scorecard"]["total"]["commit_correct"], 5);
  EXPECT_TRUE(scored.json["crosstab"].get<std::string>().find("trapdoor-solve") != std::string::npos);

  auto bench = run({"bench", "--dir", d(), "--repeat", "3"});
  EXPECT_EQ(bench.status, 0);
  EXPECT_EQ(bench.json["instances"], 10);
  EXPECT_EQ(bench.json["per_instance"].size(), 10u);
}

TEST_F(CliPipeline, FailuresExitNonzero) {
  EXPECT_NE(run({"validate", "--dir", d()}).status, 0);
  fs::create_directories(dir);
  EXPECT_NE(run({"validate", "--dir", d()}).status, 0);
  EXPECT_NE(run({"generate", "--family", "VI", "--out", d()}).status, 0);
  EXPECT_NE(run({"generate", "--out", d()}).status, 0);
  EXPECT_NE(run({}).status, 0);

  ASSERT_EQ(run({"generate", "--family", "IV-v1", "--out", d()}).status, 0);
  auto again = run({"generate", "--family", "IV-v1", "--out", d()});
  EXPECT_NE(again.status, 0);
  EXPECT_TRUE(again.json.contains("error"));
  EXPECT_EQ(run({"generate", "--family", "IV-v1", "--out", d(), "--force"}).status, 0);

  // A perturbed public file fails validation.
  fs::path pub = dir / "IV-v1-s1.instance.json";
  Json j = Json::parse(std::ifstream(pub));
  j["generators"][0][0][1] = "2";
  std::ofstream(pub) << j.dump();
  auto val = run({"validate", "--dir", d()});
  EXPECT_NE(val.status, 0);
  EXPECT_EQ(val.json["failed"], 1);
}

TEST_F(CliPipeline, UnparseableAnswerScoresCommitWrong) {
  ASSERT_EQ(run({"generate", "--family", "V", "--out", d()}).status, 0);
  std::string key = (dir / "key.json").string();
  ASSERT_EQ(run({"truth", "--dir", d(), "--out", key}).status, 0);
  std::string answers = (dir / "a.jsonl").string();
  std::ofstream(answers) << R"({"id": "S2_02", "raw": "maybe 12?"})" << '\n'
                         << R"({"id": "S2_01", "raw": ""})" << '\n';
  auto s = run({"score", "--answers", answers, "--key", key});
  ASSERT_EQ(s.status, 0) << s.json.dump(2);
  EXPECT_EQ(s.json["scorecard"]["total"]["commit_wrong"], 2);
  EXPECT_EQ(s.json["records"][1]["detail"], "no-output");
}
