#include "kalm/frame_ontology.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "kalm/errors.h"
#include "testing.h"

namespace kalm {
namespace {

using testing::bundled;
using testing::kFixtureDir;
using testing::slurp;

TEST(LoadFrames, CommerceBuyListing) {
  auto frames = load_frames(slurp(kFixtureDir + "/commerce_buy.fp"));
  ASSERT_EQ(frames.size(), 1u);
  const FrameDecl &f = frames[0];
  EXPECT_EQ(f.name, "Commerce_Buy");
  ASSERT_EQ(f.roles.size(), 5u);
  EXPECT_EQ(f.roles[0].name, "Buyer");
  EXPECT_EQ(f.roles[0].meanings, std::vector<SynsetId>{SynsetId::from("bn:00014332n")});
  EXPECT_EQ(f.roles[2].meanings.size(), 2u);
  EXPECT_EQ(f.role("Money")->constraints, std::vector<std::string>{"currency"});
  EXPECT_TRUE(f.role("Buyer")->constraints.empty());
  EXPECT_EQ(f.role_index("Recipient"), 3);
  EXPECT_EQ(f.role("Nope"), nullptr);
}

TEST(LoadFrames, EmptyFile) { EXPECT_TRUE(load_frames("").empty()); }

TEST(LoadFrames, Errors) {
  try {
    load_frames("fp(F,[role(R,[bn:123n],[])]).");
    FAIL();
  } catch (const BadSynsetId &e) {
    EXPECT_EQ(e.token, "bn:123n");
  }
  EXPECT_THROW(load_frames("fp(F,[role(R,[bn:00000001n],[])]).\n"
                           "fp(F,[role(R,[bn:00000001n],[])])."),
               DuplicateFrame);
  EXPECT_THROW(load_frames("fp(F,[role(R,[bn:00000001n],[cheap])])."), SyntaxError);
  EXPECT_THROW(load_frames("fp(F,[role(R,[],[])])."), SyntaxError);
  EXPECT_THROW(load_frames("fp(F,[])."), SyntaxError);
  EXPECT_THROW(load_frames("frame(F)."), SyntaxError);
  try {
    load_frames("fp(A,[role(R,[bn:00000001n],[])]).\n\nfp(B,[role(R,[bn:00000001n],[])])\n");
    FAIL();
  } catch (const SyntaxError &e) {
    EXPECT_GE(e.line, 3);
  }
}

TEST(LoadFrames, RegistryIsExtensible) {
  ConstraintRegistry reg;
  reg.add("animate");
  auto frames = load_frames("fp(F,[role(R,[bn:00000001n],[animate])]).", reg);
  EXPECT_EQ(frames[0].roles[0].constraints[0], "animate");
}

TEST(LoadLvps, BuyListing) {
  auto frames = load_frames(slurp(kFixtureDir + "/commerce_buy.fp"));
  auto lvps = load_lvps(slurp(kFixtureDir + "/buy.lvp"), frames);
  ASSERT_EQ(lvps.size(), 1u);
  const Lvp &l = lvps[0];
  EXPECT_EQ(l.id(), "buy/v/Commerce_Buy");
  ASSERT_EQ(l.patterns.size(), 5u);
  EXPECT_TRUE(l.patterns[0].required());
  EXPECT_TRUE(l.patterns[1].required());
  for (std::size_t i = 2; i < 5; ++i) EXPECT_FALSE(l.patterns[i].required());
  EXPECT_EQ(l.patterns[3].role, "Money");
  EXPECT_EQ(l.patterns[3].path.step, PatternPath::Step::kPp);
  EXPECT_EQ(l.patterns[3].path.word, "for");
  EXPECT_EQ(l.patterns[4].path.str(), "verb->pp[from]->dep");
}

TEST(LoadLvps, NounPurchaseEntry) {
  auto frames = load_frames(slurp(kFixtureDir + "/commerce_buy.fp"));
  auto lvps = load_lvps(
      "lvp(purchase,n,Commerce_Buy,[pattern(Buyer,noun->support[make]->subject,required),"
      "pattern(Goods,noun->of->dep,required)]).",
      frames);
  ASSERT_EQ(lvps.size(), 1u);
  EXPECT_EQ(lvps[0].pos, LuPos::kNoun);
  EXPECT_EQ(lvps[0].patterns[0].path.step, PatternPath::Step::kSupport);
  EXPECT_EQ(lvps[0].patterns[0].path.word, "make");
  EXPECT_EQ(lvps[0].patterns[1].path.step, PatternPath::Step::kOf);
}

TEST(LoadLvps, Errors) {
  auto frames = load_frames(slurp(kFixtureDir + "/commerce_buy.fp"));
  try {
    load_lvps("lvp(buy,v,Nope,[pattern(Buyer,verb->subject,required)]).", frames);
    FAIL();
  } catch (const UnknownFrame &e) {
    EXPECT_EQ(e.name, "Nope");
  }
  try {
    load_lvps("lvp(buy,v,Commerce_Buy,[pattern(Payer,verb->subject,required)]).", frames);
    FAIL();
  } catch (const UnknownRole &e) {
    EXPECT_EQ(e.role, "Payer");
  }
  EXPECT_THROW(load_lvps("lvp(buy,v,Commerce_Buy,[pattern(Buyer,verb->sideways,required)]).",
                         frames),
               BadPath);
  // Path head must agree with the part of speech.
  EXPECT_THROW(load_lvps("lvp(buy,n,Commerce_Buy,[pattern(Buyer,verb->subject,required)]).",
                         frames),
               BadPath);
  EXPECT_THROW(load_lvps("lvp(buy,v,Commerce_Buy,[pattern(Buyer,noun->self,required)]).",
                         frames),
               BadPath);
  EXPECT_THROW(load_lvps("lvp(buy,v,Commerce_Buy,[pattern(Buyer,verb->subject,required),"
                         "pattern(Buyer,verb->subject,optnl)]).",
                         frames),
               SyntaxError);
  EXPECT_THROW(load_lvps("lvp(buy,v,Commerce_Buy,[pattern(Buyer,verb->subject,maybe)]).",
                         frames),
               SyntaxError);
  EXPECT_THROW(load_lvps("lvp(buy,v,Commerce_Buy,[]).", frames), SyntaxError);
}

TEST(PatternPath, Grammar) {
  const char *good[] = {"verb->subject",         "verb->object",
                        "verb->indobject",       "verb->pp[with]->dep",
                        "noun->self",            "noun->of->dep",
                        "noun->isa->subject",    "noun->support[make]->subject",
                        "noun->pp[from]->dep"};
  for (const char *p : good) EXPECT_EQ(PatternPath::parse(p).str(), p);
  const char *bad[] = {"verb", "verb->", "verb->pp[]->dep", "verb->pp[for]",
                       "verb->of->dep", "noun->subject", "adj->self",
                       "noun->support[make]->object", "verb->subject->dep"};
  for (const char *p : bad) EXPECT_THROW(PatternPath::parse(p), BadPath) << p;
}

TEST(LookupLvps, BundledOntology) {
  const FrameOnt &ont = bundled().frames;
  auto buy = lookup_lvps(ont, "buy", LuPos::kVerb);
  ASSERT_EQ(buy.size(), 1u);
  EXPECT_EQ(buy[0]->frame, "Commerce_Buy");
  EXPECT_TRUE(lookup_lvps(ont, "zzz", LuPos::kVerb).empty());
  auto purchase = lookup_lvps(ont, "purchase", LuPos::kNoun);
  ASSERT_EQ(purchase.size(), 1u);
  EXPECT_EQ(purchase[0]->patterns[0].path.str(), "noun->support[make]->subject");
  EXPECT_EQ(lookup_lvps(ont, "purchase", LuPos::kVerb).size(), 1u);
}

TEST(FrameOnt, IndexHoldsExactlyTheLoadedLvps) {
  const FrameOnt &ont = bundled().frames;
  std::set<std::pair<std::string, LuPos>> keys;
  for (const auto &l : ont.lvps()) {
    auto found = ont.lookup(l.lexical_unit, l.pos);
    EXPECT_NE(std::find(found.begin(), found.end(), &l), found.end()) << l.id();
    keys.insert({l.lexical_unit, l.pos});
    // Referential integrity and path/pos coherence.
    const FrameDecl *f = ont.frame(l.frame);
    ASSERT_NE(f, nullptr);
    for (const auto &p : l.patterns) {
      EXPECT_NE(f->role(p.role), nullptr);
      EXPECT_EQ(p.path.head == PatternPath::Head::kVerb, l.pos == LuPos::kVerb);
    }
  }
  std::size_t indexed = 0;
  for (const auto &[lemma, pos] : keys) indexed += ont.lookup(lemma, pos).size();
  EXPECT_EQ(indexed, ont.lvps().size());
  EXPECT_GE(ont.frames().size(), 6u);
}

TEST(RoundTrip, PrintThenReload) {
  const FrameOnt &ont = bundled().frames;
  auto frames = load_frames(print_frames(ont.frames()));
  EXPECT_EQ(frames, ont.frames());
  EXPECT_EQ(load_lvps(print_lvps(ont.lvps()), frames), ont.lvps());
}

}  // namespace
}  // namespace kalm
