#include "kalm/cli.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "testing.h"

namespace kalm {
namespace {

using testing::kCorpusDir;
using testing::slurp;
using testing::TempDir;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string &input = "") {
  args.insert(args.begin(), "kalm");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

void write(const std::string &path, const std::string &text) {
  std::ofstream(path, std::ios::binary) << text;
}

TEST(Cli, AuthorFromStdin) {
  TempDir dir;
  const auto kb = dir.file("kb.ulr");
  auto r = run({"--kb", kb, "author"}, "Mary buys a car.\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "OK i1 frame=commerce_buy\n");
  EXPECT_EQ(slurp(kb),
            "# next i2\n"
            "frame(commerce_buy,i1).\n"
            "role(i1,buyer,\"Mary\",bn:00046516n).\n"
            "role(i1,goods,\"car\",bn:00007309n).\n");
  EXPECT_FALSE(std::filesystem::exists(kb + ".lock"));
}

TEST(Cli, AuthorFilesAppendToTheKb) {
  TempDir dir;
  const auto kb = dir.file("kb.ulr");
  write(dir.file("a.txt"), "Mary buys a car. Bob buys a zzyzx.");
  write(dir.file("b.txt"), "John sells a car to Mary.");
  auto r = run({"--kb", kb, "author", dir.file("a.txt"), dir.file("b.txt")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out,
            "OK i1 frame=commerce_buy\n"
            "REJECTED unknown token: zzyzx\n"
            "OK i2 frame=commerce_sell\n");
  auto again = run({"--kb", kb, "author"}, "Alice eats an apple.");
  EXPECT_EQ(again.out, "OK i3 frame=ingestion\n");
}

TEST(Cli, EmptyInputLeavesNoKb) {
  TempDir dir;
  auto r = run({"--kb", dir.file("kb.ulr"), "author"}, "   \n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
  EXPECT_FALSE(std::filesystem::exists(dir.file("kb.ulr")));
}

TEST(Cli, LockedKbFails) {
  TempDir dir;
  const auto kb = dir.file("kb.ulr");
  write(kb + ".lock", "");
  auto r = run({"--kb", kb, "author"}, "Mary buys a car.");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("locked"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(kb));
}

TEST(Cli, CorruptKbFails) {
  TempDir dir;
  const auto kb = dir.file("kb.ulr");
  write(kb, "role(i1,buyer,\"Mary\",bn:00046516n).\n");
  EXPECT_EQ(run({"--kb", kb, "author"}, "Mary buys a car.").code, 2);
  EXPECT_EQ(run({"--kb", kb, "query", "Who buys a car?"}).code, 2);
}

TEST(Cli, Query) {
  TempDir dir;
  const auto kb = dir.file("kb.ulr");
  EXPECT_EQ(run({"--kb", kb, "query", "Who buys a car?"}).out, "");
  run({"--kb", kb, "author"}, "Mary buys a car. Bob purchases a car.");
  auto r = run({"--kb", kb, "query", "Who buys a car?"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Bob\nMary\n");
  auto explained = run({"--kb", kb, "--explain", "query", "What does Mary buy?"});
  EXPECT_EQ(explained.out,
            "ulrq: frame(commerce_buy,?I), role(?I,buyer,\"Mary\",?_), "
            "role(?I,goods,?X,?_)\n"
            "answer: ?X\n"
            "car\n");
  auto bad = run({"--kb", kb, "query", "Buys who?"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, ReplMatchesBatchAuthoring) {
  TempDir dir;
  const auto batch = dir.file("batch.ulr");
  const auto repl = dir.file("repl.ulr");
  const std::string text = "Mary buys a car.\nJohn works for Google.\nMary eats an apple.\n";
  run({"--kb", batch, "author"}, text);
  auto r = run({"--kb", repl, "repl"}, text + "Who buys a car?\nBuys who?\n:quit\nBob buys a car.\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(slurp(batch), slurp(repl));
  EXPECT_NE(r.out.find("\nMary\nERROR "), std::string::npos) << r.out;
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  TempDir dir;
  const auto cfg = dir.file("kalm.conf");
  write(cfg, "# settings\nkb = " + dir.file("from_config.ulr") + "\n theta = 0.5 \n");
  run({"--config", cfg, "author"}, "Mary buys a car.");
  EXPECT_TRUE(std::filesystem::exists(dir.file("from_config.ulr")));
  run({"--config", cfg, "--kb", dir.file("from_flag.ulr"), "author"}, "Mary buys a car.");
  EXPECT_TRUE(std::filesystem::exists(dir.file("from_flag.ulr")));

  // A threshold above the best car sense prunes the sentence.
  write(cfg, "theta = 0.9\n");
  auto strict = run({"--config", cfg, "--kb", dir.file("strict.ulr"), "author"},
                    "Mary buys a car.");
  EXPECT_EQ(strict.code, 1);
  auto relaxed = run({"--config", cfg, "--theta", "0.3", "--kb", dir.file("relaxed.ulr"),
                      "author"},
                     "Mary buys a car.");
  EXPECT_EQ(relaxed.code, 0);
}

TEST(Cli, ConfigErrors) {
  TempDir dir;
  const auto cfg = dir.file("kalm.conf");
  for (const char *text : {"colour = red\n", "theta = 1.5\n", "depth = 0\n", "theta\n",
                           "weight.hypernym = much\n", "explain = maybe\n"}) {
    write(cfg, text);
    auto r = run({"--config", cfg, "--kb", dir.file("kb.ulr"), "author"}, "Mary buys a car.");
    EXPECT_EQ(r.code, 2) << text;
    EXPECT_FALSE(r.err.empty());
  }
  EXPECT_EQ(run({"--config", dir.file("missing.conf"), "author"}).code, 2);
  EXPECT_EQ(run({"--theta", "0", "query", "Who buys a car?"}).code, 2);
  EXPECT_EQ(run({"--ontology", dir.file("nowhere"), "query", "Who buys a car?"}).code, 2);
  EXPECT_FALSE(std::filesystem::exists(dir.file("kb.ulr")));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"query"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"eval", "author"}).code, 2);
  auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("author"), std::string::npos);
}

TEST(Cli, EvalAuthor) {
  auto r = run({"eval", "author", "--corpus", kCorpusDir + "/authoring.gold"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("FrSynC\t"), std::string::npos) << r.out;
  auto parallel =
      run({"--jobs", "4", "eval", "author", "--corpus", kCorpusDir + "/authoring.gold"});
  EXPECT_EQ(r.out, parallel.out);
  EXPECT_EQ(run({"eval", "author", "--corpus", "/nonexistent.gold"}).code, 2);
}

TEST(Cli, EvalQa) {
  auto r = run({"eval", "qa", "--kb-corpus", kCorpusDir + "/qa_kb.txt", "--questions",
                kCorpusDir + "/qa_questions.txt"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("accuracy\t"), std::string::npos) << r.out;
}

TEST(Cli, Binary) {
  TempDir dir;
  const std::string cmd = std::string(KALM_BINARY) + " --kb " + dir.file("kb.ulr") +
                          " author < /dev/null; echo $?";
  FILE *p = ::popen(cmd.c_str(), "r");
  ASSERT_NE(p, nullptr);
  char buf[64] = {};
  std::string got;
  while (std::fgets(buf, sizeof buf, p)) got += buf;
  ::pclose(p);
  EXPECT_EQ(got, "0\n");
}

}  // namespace
}  // namespace kalm
