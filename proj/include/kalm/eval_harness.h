#ifndef KALM_EVAL_HARNESS_H_
#define KALM_EVAL_HARNESS_H_

// Authoring metrics over an annotated corpus:
//   FrSynC  frames, roles and fillers correct, every synset correct
//   FrC     frames, roles and fillers correct (includes FrSynC)
//   PFrC    a strict non-empty part correct, nothing contradicted
//   Wrong   some frame, role or filler contradicts the gold annotation
// FrC + PFrC + Wrong equals the corpus size.
//
// Gold line format, one sentence per line:
//   Mary buys a car. => Commerce_Buy{Buyer:"Mary"@bn:00046516n,Goods:"car"@bn:00007309n}
// Several frames are separated by ';'. `none` expects no frame.
//
// QA line format:
//   Who buys a car? => "Bob","Mary"
// `none` expects no answer.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kalm/disambiguator.h"
#include "kalm/pipeline.h"
#include "kalm/synset_id.h"

namespace kalm {

struct GoldRole {
  std::string filler;
  SynsetId synset;
  friend bool operator==(const GoldRole &, const GoldRole &) = default;
};

struct GoldFrame {
  std::string frame;
  std::map<std::string, GoldRole> roles;
  friend bool operator==(const GoldFrame &, const GoldFrame &) = default;
};

struct GoldAnnotation {
  std::string sentence;
  std::vector<GoldFrame> expected;
};

enum class Verdict { kFrSynC, kFrC, kPFrC, kWrong };

std::string_view verdict_name(Verdict v);

// Pipeline output for one sentence; `error` is set when it failed.
struct SentenceResult {
  std::vector<DisambiguatedInstance> instances;
  std::string error;
};

Verdict classify(const SentenceResult &result, const GoldAnnotation &gold,
                 std::string *why = nullptr);

// Throws SyntaxError.
std::vector<GoldAnnotation> parse_gold(std::string_view text);
// Verifies frames and roles exist in the ontology; throws UnknownFrame /
// UnknownRole.
void check_gold(const std::vector<GoldAnnotation> &gold, const FrameOnt &ont);

struct SentenceVerdict {
  std::size_t index = 0;
  std::string sentence;
  Verdict verdict = Verdict::kWrong;
  std::string reason;
};

struct MetricsReport {
  std::size_t total = 0;
  std::size_t frsync = 0;
  std::size_t frc = 0;  // includes frsync
  std::size_t pfrc = 0;
  std::size_t wrong = 0;
  std::vector<SentenceVerdict> verdicts;  // by corpus index

  static double percent(std::size_t count, std::size_t total);
  // Aligned text table.
  std::string table() const;
  // `metric<TAB>count<TAB>percent` lines.
  std::string lines() const;
};

MetricsReport run_authoring(const Pipeline &pipeline,
                            const std::vector<GoldAnnotation> &corpus,
                            unsigned jobs = 1);

struct QaItem {
  std::string question;
  std::vector<std::string> answers;  // sorted
};

// Throws SyntaxError.
std::vector<QaItem> parse_questions(std::string_view text);
// Sentences of a KB corpus file; gold annotations after '=>' are ignored.
std::vector<std::string> parse_kb_corpus(std::string_view text);

struct QaReport {
  struct Item {
    std::string question;
    std::vector<std::string> expected;
    std::vector<std::string> got;
    std::string error;
    bool correct = false;
  };
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t authored = 0;  // KB sentences accepted
  std::vector<std::string> rejected;  // KB sentences rejected, with reasons
  std::vector<Item> items;

  double accuracy() const;
  std::string table() const;
  std::string lines() const;
};

QaReport run_qa(const Pipeline &pipeline, const std::vector<std::string> &kb_sentences,
                const std::vector<QaItem> &questions);

}  // namespace kalm

#endif  // KALM_EVAL_HARNESS_H_
