#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "trapdoor/construct/builders.hpp"
#include "trapdoor/harness/answer.hpp"
#include "trapdoor/harness/bench.hpp"
#include "trapdoor/harness/prompt.hpp"
#include "trapdoor/harness/serialize.hpp"
#include "trapdoor/verify/verify.hpp"

using namespace trapdoor;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(std::string const& name) {
  fs::path dir = fs::temp_directory_path() / ("trapdoor_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

std::vector<Built> one_of_each() {
  std::vector<Built> all{build_family1(1000003, KSpec::named("octahedral_s4"), 5, 1),
                         build_family2(1245509, {7, 1000003}, 1),
                         build_family3(1009, KSpec::named("upper_unipotent"), {3, 5, 1000003}, 1),
                         build_family4(Variant::v1, 1, KSpec{}, 1),
                         build_family4(Variant::v2, 1009, KSpec::named("octahedral_s4"), 1),
                         build_family4(Variant::v3, 5, KSpec{}, 1)};
  for (auto& b : build_family5())
    all.push_back(b);
  return all;
}

GroundTruth index_truth(IndexValue v, Family f = Family::IV_v2, bool accepted_abstain = false) {
  GroundTruth t;
  t.id = "x";
  t.family = f;
  t.index = v;
  t.accepted_abstain = accepted_abstain;
  return t;
}

AnswerRecord answer(std::string const& raw, Family f, std::size_t expected = 0, Grammar g = Grammar::merged) {
  auto a = parse_answer(raw, f, expected, g);
  a.instance_id = "x";
  return a;
}

Int const x10_index = parse_int("44762842929840316223040");

} // namespace

TEST(Serialize, RoundTripEveryFamily) {
  for (auto const& b : one_of_each()) {
    EXPECT_EQ(instance_from_json(Json::parse(to_json(b.instance).dump())), b.instance) << b.instance.id;
    EXPECT_EQ(secret_from_json(Json::parse(to_json(b.secret).dump())), b.secret) << b.instance.id;
    auto t = ground_truth(b.secret);
    EXPECT_EQ(truth_from_json(Json::parse(to_json(t).dump())), t);
  }
}

TEST(Serialize, FortyDigitEntriesSurvive) {
  Instance inst;
  inst.id = "big";
  inst.family = Family::IV_v2;
  inst.question = QuestionKind::exact_index_or_unknown;
  Int big = parse_int("1234567890123456789012345678901234567890");
  BigMatrix m = BigMatrix::identity(3);
  m(0, 2) = big;
  m(1, 2) = -big;
  inst.generators = {m};
  inst.answer_grammar = grammar_index;
  Json j = to_json(inst);
  EXPECT_EQ(j["generators"][0][0][2], "1234567890123456789012345678901234567890");
  EXPECT_EQ(instance_from_json(j).generators[0](1, 2), -big);
}

TEST(Serialize, PublicFileCarriesNoSecretField) {
  auto b = build_family2(1245509, {7}, 1);
  Json pub = to_json(b.instance);
  for (auto const& [key, value] : pub.items())
    EXPECT_NE(std::find(public_instance_fields().begin(), public_instance_fields().end(), key),
              public_instance_fields().end())
        << key;
  std::string text = pub.dump();
  for (std::string bad : {"planted", "secret", "scramble", "seed", "form", "certificate", "k_gens"})
    EXPECT_EQ(text.find(bad), std::string::npos) << bad;
  pub["planted_prime"] = "1245509";
  EXPECT_THROW(instance_from_json(pub), Error);
}

TEST(Serialize, RejectsMalformedFiles) {
  auto b = build_family3(1009, KSpec::named("upper_unipotent"), {3}, 1);
  Json j = to_json(b.instance);
  j["schema"] = "trapdoor-instance/0";
  EXPECT_THROW(instance_from_json(j), Error);
  j = to_json(b.instance);
  j["generators"][0][0][0] = 1;
  EXPECT_THROW(instance_from_json(j), Error);
  j = to_json(b.instance);
  j["generators"][0][0][0] = "12x";
  EXPECT_THROW(instance_from_json(j), Error);
}

TEST(Serialize, DirectoryWriteRefusesCollisions) {
  fs::path dir = fresh_dir("collide");
  auto b = build_family4(Variant::v1, 1, KSpec{}, 1);
  write_instance(b.instance, b.secret, dir);
  EXPECT_THROW(write_instance(b.instance, b.secret, dir), Error);
  EXPECT_NO_THROW(write_instance(b.instance, b.secret, dir, true));
  auto other = b.secret;
  other.id = "other";
  EXPECT_THROW(write_instance(b.instance, other, dir), Error);
  EXPECT_EQ(list_instance_ids(dir), std::vector<std::string>{b.instance.id});
  EXPECT_EQ(read_instance(instance_path(dir, b.instance.id)), b.instance);
  EXPECT_EQ(read_secret(secret_path(dir, b.instance.id)), b.secret);
  fs::remove_all(dir);
}

TEST(Prompt, AuditPassesForEveryFamily) {
  for (auto const& b : one_of_each())
    for (Grammar g : {Grammar::merged, Grammar::split_infinite}) {
      std::string p = render_prompt(b.instance, g);
      auto problems = audit_prompt(p, b.instance, g);
      EXPECT_TRUE(problems.empty()) << b.instance.id << ": " << (problems.empty() ? "" : problems.front());
      EXPECT_NE(p.find("Final answer:"), std::string::npos);
    }
}

TEST(Prompt, AuditCatchesLeaks) {
  auto b = build_family3(1009, KSpec::named("upper_unipotent"), {3, 5}, 1);
  std::string p = render_prompt(b.instance);
  EXPECT_FALSE(audit_prompt(p + "H is a congruence subgroup.\n", b.instance).empty());
  EXPECT_FALSE(audit_prompt(p + "It has finite index.\n", b.instance).empty());
  std::string truncated = p;
  truncated.replace(truncated.find("\n1009\n"), 6, "\n100\n");
  EXPECT_FALSE(audit_prompt(truncated, b.instance).empty());
  auto v2 = build_family4(Variant::v2, 1009, KSpec::named("octahedral_s4"), 1);
  std::string merged = render_prompt(v2.instance, Grammar::merged);
  EXPECT_FALSE(audit_prompt(merged, v2.instance, Grammar::split_infinite).empty());
}

TEST(Parse, Grammar) {
  auto dk = answer("DON'T KNOW", Family::IV_v2);
  ASSERT_TRUE(dk.parse_ok);
  EXPECT_EQ(dk.parsed->kind, ParsedAnswer::Kind::abstain);
  EXPECT_EQ(answer("don\xE2\x80\x99t  know", Family::IV_v2).parsed->kind, ParsedAnswer::Kind::abstain);
  auto big = answer("44762842929840316223040", Family::IV_v2);
  ASSERT_TRUE(big.parse_ok);
  EXPECT_EQ(big.parsed->value, x10_index);
  EXPECT_EQ(answer("Final answer: 44,762,842,929,840,316,223,040", Family::IV_v2).parsed->value, x10_index);
  EXPECT_FALSE(answer("maybe 12?", Family::V).parse_ok);
  EXPECT_FALSE(answer("1,2345", Family::V).parse_ok);
  EXPECT_FALSE(answer("-12", Family::V).parse_ok);
  EXPECT_EQ(answer("infinite", Family::V).parsed->kind, ParsedAnswer::Kind::abstain);
  EXPECT_EQ(answer("Infinite", Family::V, 0, Grammar::split_infinite).parsed->kind, ParsedAnswer::Kind::infinite);
  EXPECT_EQ(answer("(YES, NO; yes)", Family::II, 3).parsed->bits, (std::vector<bool>{true, false, true}));
  EXPECT_EQ(answer("[no no]", Family::I, 2).parsed->bits, (std::vector<bool>{false, false}));
  EXPECT_FALSE(answer("(YES, NO)", Family::II, 3).parse_ok);
  EXPECT_FALSE(answer("infinite", Family::II, 0, Grammar::split_infinite).parse_ok);
}

TEST(Parse, TotalOnAdversarialInput) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> byte(0, 255), len(0, 40);
  for (int k = 0; k < 2000; ++k) {
    std::string s;
    for (int n = len(rng); n > 0; --n)
      s += static_cast<char>(byte(rng));
    for (Family f : all_families)
      EXPECT_NO_THROW(parse_answer(s, f, 3));
  }
}

TEST(Score, GoldenTable) {
  struct Row {
    std::string raw;
    GroundTruth truth;
    Grammar grammar;
    Cell cell;
  };
  std::vector<Row> rows{
      {"DON'T KNOW", index_truth(IndexValue::finite(x10_index)), Grammar::merged, Cell::abstain_wrong},
      {"44762842929840316223040", index_truth(IndexValue::finite(x10_index)), Grammar::merged, Cell::commit_correct},
      {"44762842929840316223041", index_truth(IndexValue::finite(x10_index)), Grammar::merged, Cell::commit_wrong},
      {"infinite_or_unknown", index_truth(IndexValue::infinity(), Family::IV_v3, true), Grammar::merged,
       Cell::abstain_correct},
      {"unknown", index_truth(IndexValue::infinity(), Family::IV_v3, true), Grammar::split_infinite,
       Cell::abstain_correct},
      {"12", index_truth(IndexValue::finite(12), Family::V), Grammar::merged, Cell::commit_correct},
      {"6", index_truth(IndexValue::finite(12), Family::V), Grammar::merged, Cell::commit_wrong},
      {"infinite", index_truth(IndexValue::infinity(), Family::V), Grammar::merged, Cell::abstain_correct},
      {"infinite", index_truth(IndexValue::infinity(), Family::V), Grammar::split_infinite, Cell::commit_correct},
      {"unknown", index_truth(IndexValue::infinity(), Family::V), Grammar::split_infinite, Cell::abstain_wrong},
      {"infinite", index_truth(IndexValue::finite(12), Family::V), Grammar::split_infinite, Cell::commit_wrong},
      {"", index_truth(IndexValue::finite(12), Family::V), Grammar::merged, Cell::commit_wrong},
      {"maybe 12?", index_truth(IndexValue::finite(12), Family::V), Grammar::merged, Cell::commit_wrong},
  };
  for (auto const& r : rows) {
    auto a = answer(r.raw, r.truth.family, 0, r.grammar);
    auto out = score(a, r.truth, r.grammar);
    EXPECT_EQ(out.cell, r.cell) << "'" << r.raw << "' got " << cell_name(out.cell);
    EXPECT_EQ(score(a, r.truth, r.grammar).cell, out.cell);
  }
  EXPECT_EQ(score(answer("", Family::V), index_truth(IndexValue::finite(12), Family::V)).detail, "no-output");
}

TEST(Score, ListFamilies) {
  GroundTruth t;
  t.family = Family::II;
  t.surjective = {true, false, true};
  EXPECT_EQ(score(answer("YES NO YES", Family::II, 3), t).cell, Cell::commit_correct);
  EXPECT_EQ(score(answer("YES YES YES", Family::II, 3), t).cell, Cell::commit_wrong);
  EXPECT_EQ(score(answer("unknown", Family::II, 3), t).cell, Cell::commit_wrong);
  EXPECT_THROW(score(answer("12", Family::V), t), Error);
}

TEST(Aggregate, EmptyCardAndCounts) {
  auto empty = aggregate({});
  EXPECT_EQ(empty.records(), 0u);
  for (Cell c : all_cells)
    EXPECT_EQ(empty.count(c), 0u);
}

TEST(Aggregate, FiveTraceRecordAndGrid) {
  // One solver, five instances: four committed correctly, one abstained
  // on an instance whose index is finite.
  struct Trace {
    std::string id, raw;
    Family family;
    GroundTruth truth;
    double seconds;
  };
  GroundTruth c01;
  c01.family = Family::III;
  c01.surjective = {true, false, true};
  GroundTruth l01;
  l01.family = Family::II;
  l01.surjective = {false, true};
  std::vector<Trace> traces{
      {"C01", "(YES, NO, YES)", Family::III, c01, 512},
      {"L01", "(NO, YES)", Family::II, l01, 40},
      {"S2_02", "12", Family::V, index_truth(IndexValue::finite(12), Family::V), 9120},
      {"S2_01", "infinite", Family::V, index_truth(IndexValue::infinity(), Family::V), 45},
      {"X10", "DON'T KNOW", Family::IV_v2, index_truth(IndexValue::finite(x10_index)), 3000},
  };
  std::vector<ScoredRecord> scored;
  for (auto const& t : traces) {
    auto a = parse_answer(t.raw, t.family, t.truth.surjective.size(), Grammar::split_infinite);
    a.instance_id = t.id;
    a.solver = "GPT";
    a.wall_time_s = t.seconds;
    scored.push_back({a, score(a, t.truth, Grammar::split_infinite)});
  }
  auto card = aggregate(scored);
  EXPECT_EQ(card.count(Cell::commit_correct), 4u);
  EXPECT_EQ(card.count(Cell::abstain_wrong), 1u);
  EXPECT_EQ(card.records(), traces.size());
  EXPECT_EQ(card.ids[Cell::abstain_wrong], std::vector<std::string>{"X10"});
  EXPECT_EQ(card.per_family[Family::V][static_cast<std::size_t>(Cell::commit_correct)], 2u);

  std::string grid = render_crosstab(scored);
  std::istringstream lines(grid);
  std::string header, rule, row, extra;
  std::getline(lines, header);
  std::getline(lines, rule);
  std::getline(lines, row);
  EXPECT_FALSE(std::getline(lines, extra));
  for (auto const& t : traces)
    EXPECT_NE(header.find(t.id), std::string::npos);
  EXPECT_EQ(row.rfind("GPT", 0), 0u);
  EXPECT_NE(row.find("commit_correct (12, 152 min)"), std::string::npos);
  EXPECT_NE(row.find("abstain_wrong (DON'T KNOW, 50 min)"), std::string::npos);
  EXPECT_NE(row.find("commit_correct (infinite, 45 sec)"), std::string::npos);
}

TEST(Bench, GroundTruthIsFast) {
  std::vector<TrapdoorSecret> secrets;
  for (auto const& b : one_of_each())
    secrets.push_back(b.secret);
  auto r = bench_ground_truth(secrets, 5);
  EXPECT_EQ(r.entries.size(), secrets.size());
  EXPECT_TRUE(r.within_budget()) << r.mean_ms;
  EXPECT_THROW(bench_ground_truth(secrets, 0), Error);
  EXPECT_FALSE(bench_ground_truth({}).within_budget());
}
