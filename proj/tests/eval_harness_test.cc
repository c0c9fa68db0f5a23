#include "kalm/eval_harness.h"

#include <gtest/gtest.h>

#include <random>

#include "kalm/errors.h"
#include "oracles.h"
#include "testing.h"

namespace kalm {
namespace {

using testing::bundled;
using testing::kCorpusDir;
using testing::slurp;

const SynsetId kPerson = SynsetId::from("bn:00046516n");
const SynsetId kCar = SynsetId::from("bn:00007309n");
const SynsetId kRailcar = SynsetId::from("bn:00015652n");

ResolvedBinding bind(std::string surface, SynsetId s) {
  ResolvedBinding b;
  b.filler.surface = std::move(surface);
  b.synset = s;
  return b;
}

GoldAnnotation mary_gold() {
  return parse_gold(
             "Mary buys a car from John. => Commerce_Buy{Buyer:\"Mary\"@bn:00046516n,"
             "Goods:\"car\"@bn:00007309n,Seller:\"John\"@bn:00046516n}")
      .at(0);
}

SentenceResult mary_result() {
  DisambiguatedInstance inst;
  inst.frame = "Commerce_Buy";
  inst.bindings["Buyer"] = bind("Mary", kPerson);
  inst.bindings["Goods"] = bind("car", kCar);
  inst.bindings["Seller"] = bind("John", kPerson);
  return {{inst}, ""};
}

TEST(Classify, ExactMatchIsFrSynC) {
  EXPECT_EQ(classify(mary_result(), mary_gold()), Verdict::kFrSynC);
}

TEST(Classify, WrongSenseIsFrC) {
  auto r = mary_result();
  r.instances[0].bindings["Goods"].synset = kRailcar;
  std::string why;
  EXPECT_EQ(classify(r, mary_gold(), &why), Verdict::kFrC);
  EXPECT_NE(why.find("bn:00015652n"), std::string::npos);
}

TEST(Classify, MissingOptionalRoleIsPFrC) {
  auto r = mary_result();
  r.instances[0].bindings.erase("Seller");
  EXPECT_EQ(classify(r, mary_gold()), Verdict::kPFrC);
}

TEST(Classify, ContradictionsAreWrong) {
  auto filler = mary_result();
  filler.instances[0].bindings["Seller"] = bind("Bob", kPerson);
  EXPECT_EQ(classify(filler, mary_gold()), Verdict::kWrong);
  auto role = mary_result();
  role.instances[0].bindings["Recipient"] = bind("Ann", kPerson);
  EXPECT_EQ(classify(role, mary_gold()), Verdict::kWrong);
  auto frame = mary_result();
  frame.instances[0].frame = "Commerce_Sell";
  EXPECT_EQ(classify(frame, mary_gold()), Verdict::kWrong);
  EXPECT_EQ(classify({{}, ""}, mary_gold()), Verdict::kWrong);
  EXPECT_EQ(classify({{}, "parse error"}, mary_gold()), Verdict::kWrong);
}

TEST(Classify, ExpectedRejection) {
  GoldAnnotation none{"Mary buys a sunrise.", {}};
  EXPECT_EQ(classify({{}, "pruned"}, none), Verdict::kFrSynC);
  EXPECT_EQ(classify({{}, ""}, none), Verdict::kFrSynC);
  EXPECT_EQ(classify(mary_result(), none), Verdict::kWrong);
}

TEST(Classify, AgreesWithRestatedDefinitions) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 2000; ++i) {
    auto c = oracle::random_verdict_case(rng);
    ASSERT_EQ(classify(c.result, c.gold), oracle::classify(c.result, c.gold)) << i;
  }
}

TEST(ParseGold, Format) {
  auto gold = parse_gold(
      "# comment\n"
      "Mary buys a car. => Commerce_Buy{Buyer:\"Mary\"@bn:00046516n}\n"
      "\n"
      "Mary is happy. => none\n"
      "X. => Giving{Donor:\"a\"@bn:00000001n};Travel{Traveler:\"b\"@bn:00000002n}\n");
  ASSERT_EQ(gold.size(), 3u);
  EXPECT_EQ(gold[0].sentence, "Mary buys a car.");
  EXPECT_EQ(gold[0].expected[0].roles.at("Buyer").filler, "Mary");
  EXPECT_TRUE(gold[1].expected.empty());
  EXPECT_EQ(gold[2].expected.size(), 2u);
  EXPECT_THROW(parse_gold("no arrow\n"), SyntaxError);
  EXPECT_THROW(parse_gold("S. => F{R:\"a\"@bn:1n}\n"), SyntaxError);
  EXPECT_THROW(parse_gold("S. => F{R:a@bn:00000001n}\n"), SyntaxError);
  EXPECT_THROW(parse_gold("S. => F{R:\"a\"@bn:00000001n} extra\n"), SyntaxError);
}

TEST(CheckGold, UnknownNames) {
  EXPECT_THROW(check_gold(parse_gold("S. => Nope{A:\"a\"@bn:00000001n}"), bundled().frames),
               UnknownFrame);
  EXPECT_THROW(
      check_gold(parse_gold("S. => Giving{Payer:\"a\"@bn:00000001n}"), bundled().frames),
      UnknownRole);
  EXPECT_NO_THROW(check_gold(parse_gold(slurp(kCorpusDir + "/authoring.gold")),
                             bundled().frames));
}

TEST(Report, EmptyCorpus) {
  Pipeline p(bundled());
  auto r = run_authoring(p, {});
  EXPECT_EQ(r.total, 0u);
  EXPECT_EQ(r.frc + r.pfrc + r.wrong, 0u);
  EXPECT_EQ(r.lines(), "FrSynC\t0\t0.00\nFrC\t0\t0.00\nPFrC\t0\t0.00\nWrong\t0\t0.00\n");
}

TEST(Report, PercentagesRecomputeFromCounts) {
  Pipeline p(bundled());
  auto corpus = parse_gold(
      "Mary buys a car. => Commerce_Buy{Buyer:\"Mary\"@bn:00046516n,Goods:\"car\"@bn:00015652n}\n"
      "Mary buys a car. => Commerce_Buy{Buyer:\"Mary\"@bn:00046516n,Goods:\"car\"@bn:00007309n}\n"
      "Mary buys a car. => Giving{Donor:\"Mary\"@bn:00046516n}\n");
  auto r = run_authoring(p, corpus);
  EXPECT_EQ(r.frsync, 1u);
  EXPECT_EQ(r.frc, 2u);
  EXPECT_EQ(r.wrong, 1u);
  EXPECT_EQ(r.lines(), "FrSynC\t1\t33.33\nFrC\t2\t66.67\nPFrC\t0\t0.00\nWrong\t1\t33.33\n");
  EXPECT_EQ(r.verdicts[0].verdict, Verdict::kFrC);
  EXPECT_NE(r.table().find("66.67"), std::string::npos) << r.table();
}

TEST(Report, ParallelRunsMatchSequential) {
  Pipeline p(bundled());
  auto corpus = parse_gold(slurp(kCorpusDir + "/authoring.gold"));
  auto one = run_authoring(p, corpus, 1);
  auto many = run_authoring(p, corpus, 6);
  EXPECT_EQ(one.table(), many.table());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    EXPECT_EQ(one.verdicts[i].verdict, many.verdicts[i].verdict);
    EXPECT_EQ(one.verdicts[i].reason, many.verdicts[i].reason);
  }
}

TEST(Qa, ParseQuestions) {
  auto items = parse_questions("Who buys a car? => \"Mary\",\"Bob\"\nWho flies? => none\n");
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0].answers, (std::vector<std::string>{"Bob", "Mary"}));
  EXPECT_TRUE(items[1].answers.empty());
  EXPECT_THROW(parse_questions("Who? => Mary\n"), SyntaxError);
  EXPECT_EQ(parse_kb_corpus("# c\nMary buys a car. => ignored\nBob eats bread.\n"),
            (std::vector<std::string>{"Mary buys a car.", "Bob eats bread."}));
}

TEST(Qa, SmallRun) {
  Pipeline p(bundled());
  auto r = run_qa(p, {"Mary buys a car.", "Bob buys a zzyzx."},
                  parse_questions("Who buys a car? => \"Mary\"\n"
                                  "Who sells a car? => none\n"
                                  "Buys who? => none\n"));
  EXPECT_EQ(r.authored, 1u);
  ASSERT_EQ(r.rejected.size(), 1u);
  EXPECT_EQ(r.correct, 2u);
  EXPECT_FALSE(r.items[2].correct);
  EXPECT_FALSE(r.items[2].error.empty());
  EXPECT_EQ(r.lines(), "accuracy\t2\t66.67\n");
}

}  // namespace
}  // namespace kalm
