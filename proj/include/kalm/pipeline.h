#ifndef KALM_PIPELINE_H_
#define KALM_PIPELINE_H_

#include <string>
#include <string_view>
#include <vector>

#include "kalm/cnl_parser.h"
#include "kalm/disambiguator.h"
#include "kalm/frame_extractor.h"
#include "kalm/frame_ontology.h"
#include "kalm/lexicon.h"
#include "kalm/synset_graph.h"
#include "kalm/ulr_kb.h"

namespace kalm {

// Everything loaded from an ontology directory:
//   frames.fp  lvps.lvp  synsets.graph  lexicon.tsv
struct Ontology {
  Lexicon lexicon;
  FrameOnt frames;
  SynsetGraph graph;

  static Ontology load_dir(const std::string &dir);
};

// Parse -> extract -> disambiguate, then assert ULR or answer via ULRQ.
// Stateless apart from the scorer cache; safe to share across threads.
class Pipeline {
 public:
  Pipeline(const Ontology &ontology, DisambiguationConfig config = {});

  struct Analysis {
    Drs drs;
    std::vector<FrameInstance> extracted;
    std::vector<DisambiguatedInstance> kept;
    std::vector<std::string> pruned;  // reason per pruned instance
  };
  // Throws the parser errors. NoFrameMatched is folded into an empty
  // extraction with a pruning reason.
  Analysis analyze(std::string_view sentence) const;

  struct Authored {
    InstanceId id;
    std::string frame;  // ULR frame name
  };
  struct AuthorResult {
    bool ok = false;
    std::vector<Authored> authored;
    std::string reason;  // set when !ok
  };
  // Never throws for sentence-level failures; they become the reason.
  AuthorResult author(std::string_view sentence, KnowledgeBase &kb) const;

  struct QueryResult {
    std::vector<Ulrq> queries;
    std::vector<std::string> answers;
  };
  // Throws the parser errors, or Error for a non-question.
  QueryResult query(std::string_view question, const KnowledgeBase &kb) const;

  const Ontology &ontology() const { return ontology_; }
  const Disambiguator &disambiguator() const { return disambiguator_; }

 private:
  const Ontology &ontology_;
  Disambiguator disambiguator_;
};

// Splits text into sentences ending in '.' or '?'. A '.' between digits
// is a decimal point. A trailing fragment without a mark is kept as is.
std::vector<std::string> split_sentences(std::string_view text);

}  // namespace kalm

#endif  // KALM_PIPELINE_H_
