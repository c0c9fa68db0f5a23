#ifndef KALM_DISAMBIGUATOR_H_
#define KALM_DISAMBIGUATOR_H_

// Role-filler disambiguation.
//
// The similarity between a candidate synset and a role-meaning synset is
// the best product of edge weights over directed paths of at most
// `depth_bound` edges (1.0 for the empty path, 0.0 when unreachable).
// Weights never exceed 1, so products only shrink along a path and a
// best-first search that pops states in descending product order finds
// the optimum the first time it pops the target.

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kalm/frame_extractor.h"
#include "kalm/frame_ontology.h"
#include "kalm/lexicon.h"
#include "kalm/synset_graph.h"

namespace kalm {

struct ScoreConfig {
  WeightProfile weights;
  int depth_bound = 6;
  bool cache = true;
};

class Scorer {
 public:
  Scorer(const SynsetGraph &graph, ScoreConfig config);

  // Max over meanings of the best-path score from cand. Ids absent from
  // the graph score 0 unless cand equals the meaning.
  double score(const SynsetId &cand, std::span<const SynsetId> meanings) const;
  double path_score(const SynsetId &from, const SynsetId &to) const;

  const ScoreConfig &config() const { return config_; }
  std::size_t cache_size() const;

 private:
  struct Key {
    std::size_t from, to;
    int depth;
    std::uint64_t profile;
    bool operator==(const Key &) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key &k) const noexcept;
  };

  double search(std::size_t from, std::size_t to) const;

  const SynsetGraph &graph_;
  ScoreConfig config_;
  std::uint64_t profile_hash_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<Key, double, KeyHash> memo_;
};

// Score of a candidate against one role's meanings.
double score(const Scorer &scorer, const SynsetId &cand,
             std::span<const SynsetId> meanings);

struct ScoredSense {
  SynsetId synset;
  double score = 0.0;
};

struct DisambiguationConfig {
  double theta = 0.3;
  ScoreConfig scoring;
  // Reserved senses for proper names without graph senses and for numbers.
  SynsetId person = SynsetId::from("bn:00046516n");
  SynsetId quantity = SynsetId::from("bn:00064201n");
  // Root of the currency subgraph used by the `currency` constraint.
  SynsetId currency = SynsetId::from("bn:00017803n");
};

struct ResolvedBinding {
  Filler filler;
  std::optional<SynsetId> synset;  // none for query variables
  double score = 0.0;
  friend bool operator==(const ResolvedBinding &, const ResolvedBinding &) = default;
};

struct DisambiguatedInstance {
  std::string frame;
  Ref lu_ref;
  std::string provenance;
  std::map<std::string, ResolvedBinding> bindings;
  friend bool operator==(const DisambiguatedInstance &,
                         const DisambiguatedInstance &) = default;
};

class Disambiguator {
 public:
  // lexicon may be null; the currency constraint then only accepts
  // fillers that disambiguate into the currency subgraph.
  Disambiguator(const SynsetGraph &graph, const FrameOnt &ont,
                const Lexicon *lexicon, DisambiguationConfig config = {});

  // Throws NoSenses for a common noun unknown to the graph.
  std::vector<SynsetId> candidate_synsets(const Filler &filler) const;

  // Highest-scoring candidate; ties go to the earlier sense.
  ScoredSense best_sense(const Filler &filler, const RoleDecl &role) const;

  // Prunes the instance (returns none) when a required binding or a
  // constraint fails, or when two surviving roles share one filler.
  // Failed optional bindings are dropped.
  std::optional<DisambiguatedInstance> disambiguate(
      const FrameInstance &inst, std::string *why = nullptr) const;

  bool constraint_holds(const std::string &constraint, const Filler &filler,
                        const std::optional<SynsetId> &synset) const;

  // True if `id` is the currency root or reaches it over hypernym edges.
  bool in_currency_subgraph(const SynsetId &id) const;

  const Scorer &scorer() const { return scorer_; }
  const DisambiguationConfig &config() const { return config_; }

 private:
  const SynsetGraph &graph_;
  const FrameOnt &ont_;
  const Lexicon *lexicon_;
  DisambiguationConfig config_;
  Scorer scorer_;
};

std::vector<SynsetId> candidate_synsets(const Disambiguator &d, const Filler &filler);

std::optional<DisambiguatedInstance> disambiguate_instance(
    const Disambiguator &d, const FrameInstance &inst, std::string *why = nullptr);

}  // namespace kalm

#endif  // KALM_DISAMBIGUATOR_H_
