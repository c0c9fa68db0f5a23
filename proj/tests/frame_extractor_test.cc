#include "kalm/frame_extractor.h"

#include <gtest/gtest.h>

#include <random>

#include "kalm/errors.h"
#include "testing.h"

namespace kalm {
namespace {

using testing::bundled;
using testing::parse;

const FrameOnt &ont() { return bundled().frames; }

Filler named(int x, std::string s) {
  return {Ref::entity(x), std::move(s), Filler::Kind::kNamed, ""};
}
Filler common(int x, std::string s) {
  return {Ref::entity(x), std::move(s), Filler::Kind::kCommon, ""};
}

TEST(ApplyPattern, VerbPaths) {
  Drs d = parse("Mary buys a car.");
  EXPECT_EQ(apply_pattern(d, Ref::event(1), PatternPath::parse("verb->subject")),
            named(1, "Mary"));
  EXPECT_EQ(apply_pattern(d, Ref::event(1), PatternPath::parse("verb->object")),
            common(2, "car"));
  EXPECT_FALSE(apply_pattern(d, Ref::event(1), PatternPath::parse("verb->pp[from]->dep")));
  EXPECT_FALSE(apply_pattern(d, Ref::event(1), PatternPath::parse("verb->indobject")));
}

TEST(ApplyPattern, NounPaths) {
  Drs d = parse("Mary makes a purchase of a car.");
  Ref purchase = Ref::entity(2);
  EXPECT_EQ(apply_pattern(d, purchase, PatternPath::parse("noun->support[make]->subject")),
            named(1, "Mary"));
  EXPECT_FALSE(apply_pattern(d, purchase, PatternPath::parse("noun->support[do]->subject")));
  EXPECT_EQ(apply_pattern(d, purchase, PatternPath::parse("noun->of->dep")), common(3, "car"));
  EXPECT_EQ(apply_pattern(d, purchase, PatternPath::parse("noun->self")),
            common(2, "purchase"));

  Drs q = parse("Who is a buyer of a car?");
  auto who = apply_pattern(q, Ref::entity(2), PatternPath::parse("noun->isa->subject"));
  ASSERT_TRUE(who);
  EXPECT_EQ(who->kind, Filler::Kind::kQueryVar);
  EXPECT_EQ(who->ref, Ref::entity(1));
}

TEST(ApplyPattern, NumericFiller) {
  Drs d = parse("Mary buys a car from John for 5000 dollars.");
  auto money = apply_pattern(d, Ref::event(1), PatternPath::parse("verb->pp[for]->dep"));
  ASSERT_TRUE(money);
  EXPECT_EQ(money->kind, Filler::Kind::kNumeric);
  EXPECT_EQ(money->surface, "5000");
  EXPECT_EQ(money->unit, "dollar");
}

TEST(Extract, MaryBuysACar) {
  auto insts = extract(parse("Mary buys a car."), ont());
  ASSERT_EQ(insts.size(), 1u);
  EXPECT_EQ(insts[0].frame, "Commerce_Buy");
  EXPECT_EQ(insts[0].provenance, "buy/v/Commerce_Buy");
  EXPECT_EQ(insts[0].lu_ref, Ref::event(1));
  EXPECT_EQ(insts[0].bindings,
            (std::map<std::string, Filler>{{"Buyer", named(1, "Mary")},
                                           {"Goods", common(2, "car")}}));
}

TEST(Extract, CollidingPpBindsBothCandidates) {
  auto insts = extract(parse("Mary buys a car from John for 5000 dollars."), ont());
  ASSERT_EQ(insts.size(), 1u);
  const auto &b = insts[0].bindings;
  EXPECT_EQ(b.at("Seller"), named(3, "John"));
  // Recipient and Money share verb->pp[for]->dep; disambiguation decides.
  EXPECT_EQ(b.at("Money").surface, "5000");
  EXPECT_EQ(b.at("Recipient").ref, b.at("Money").ref);
}

TEST(Extract, QueryVariable) {
  auto insts = extract(parse("Who buys a car?"), ont());
  ASSERT_EQ(insts.size(), 1u);
  EXPECT_EQ(insts[0].bindings.at("Buyer").kind, Filler::Kind::kQueryVar);
  EXPECT_EQ(insts[0].bindings.at("Goods"), common(2, "car"));
}

TEST(Extract, NoLexicalUnitIsSilent) {
  EXPECT_TRUE(extract(parse("Mary is happy."), ont()).empty());
}

TEST(Extract, MissingRequiredBindingThrows) {
  EXPECT_THROW(extract(parse("Mary is a buyer."), ont()), NoFrameMatched);
}

TEST(Extract, FirstBoundPatternWinsForARole) {
  auto insts = extract(parse("John sells Mary a car."), ont());
  ASSERT_EQ(insts.size(), 1u);
  EXPECT_EQ(insts[0].bindings.at("Buyer"), named(2, "Mary"));
  auto to = extract(parse("John sells a car to Mary."), ont());
  EXPECT_EQ(to[0].bindings.at("Buyer").surface, "Mary");
}

TEST(Properties, ParaphraseStandardization) {
  auto a = extract(parse("Mary buys a car."), ont());
  auto b = extract(parse("Mary makes a purchase of a car."), ont());
  ASSERT_EQ(a.size(), 1u);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_TRUE(same_reading(a[0], b[0]));
  EXPECT_NE(a[0].provenance, b[0].provenance);
  auto c = extract(parse("Mary owns a car."), ont());
  EXPECT_FALSE(same_reading(a[0], c[0]));
}

TEST(Properties, OptionalPpIsMonotone) {
  auto base = extract(parse("Mary buys a car."), ont());
  auto more = extract(parse("Mary buys a car from John."), ont());
  for (const auto &[role, f] : base[0].bindings) {
    ASSERT_TRUE(more[0].bindings.count(role)) << role;
    EXPECT_EQ(more[0].bindings.at(role).surface, f.surface);
  }
}

// Random sentences from a small template grammar; those that parse must
// yield complete, well-typed instances, identically on every run.
TEST(Properties, RequiredPatternCompleteness) {
  const std::vector<std::string> subjects{"Mary", "A teacher", "The dog", "Google", "Bob"};
  const std::vector<std::string> verbs{"buys", "sells", "gives", "works", "employs",
                                       "travels", "eats", "owns", "makes", "flies"};
  const std::vector<std::string> objects{"", "a car", "Mary", "a purchase of a book",
                                         "bread", "a house"};
  const std::vector<std::string> pps{"", " from John", " for 20 dollars", " to Paris",
                                     " in London", " for Alice"};
  std::mt19937_64 rng(7);
  auto one = [&](const auto &xs) {
    return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
  };
  int parsed = 0;
  for (int i = 0; i < 500; ++i) {
    std::string s = one(subjects) + " " + one(verbs);
    const std::string obj = one(objects);
    if (!obj.empty()) s += " " + obj;
    s += one(pps) + one(pps) + ".";
    Drs d;
    try {
      d = parse(s);
    } catch (const Error &) {
      continue;
    }
    ++parsed;
    std::vector<FrameInstance> insts;
    try {
      insts = extract(d, ont());
    } catch (const NoFrameMatched &) {
      continue;
    }
    EXPECT_EQ(insts, extract(d, ont())) << s;
    for (const auto &inst : insts) {
      const FrameDecl *frame = ont().frame(inst.frame);
      ASSERT_NE(frame, nullptr);
      for (const auto &[role, f] : inst.bindings) EXPECT_NE(frame->role(role), nullptr);
      for (const auto &lvp : ont().lvps()) {
        if (lvp.id() != inst.provenance) continue;
        for (const auto &p : lvp.patterns) {
          if (p.required()) EXPECT_TRUE(inst.bindings.count(p.role)) << s << " " << p.role;
        }
      }
    }
  }
  EXPECT_GT(parsed, 100);
}

}  // namespace
}  // namespace kalm
