#ifndef KALM_SYNSET_GRAPH_H_
#define KALM_SYNSET_GRAPH_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kalm/synset_id.h"

namespace kalm {

enum class SemRelation { kHypernym, kHyponym, kMeronym, kHolonym, kRelated };

std::string_view relation_name(SemRelation r);
bool parse_relation(std::string_view name, SemRelation *r);

// Default weight per relation when an edge carries none.
struct WeightProfile {
  double hypernym = 0.9;
  double hyponym = 0.8;
  double meronym = 0.7;
  double holonym = 0.7;
  double related = 0.5;

  double weight(SemRelation r) const;
  std::uint64_t hash() const;
  bool valid() const;
};

// Directed weighted graph of synsets plus the lemma -> senses index.
//
// File format (UTF-8, '#' comments):
//   s <id> <lemma>[,<lemma>...]
//   e <from> <to> <relation> [<weight>]
// An edge without a weight uses the relation default at scoring time.
class SynsetGraph {
 public:
  struct Edge {
    std::size_t to;
    SemRelation relation;
    std::optional<double> weight;
  };

  SynsetGraph() = default;

  // Throws SyntaxError / BadSynsetId.
  static SynsetGraph parse(std::string_view text);
  static SynsetGraph load_file(const std::string &path);
  std::string print() const;

  // Adding an existing node merges its lemmas.
  std::size_t add_node(const SynsetId &id, const std::vector<std::string> &lemmas);
  void add_edge(const SynsetId &from, const SynsetId &to, SemRelation relation,
                std::optional<double> weight);

  std::size_t size() const { return ids_.size(); }
  std::size_t edge_count() const;
  const SynsetId &id(std::size_t node) const { return ids_[node]; }
  std::optional<std::size_t> node(const SynsetId &id) const;
  bool contains(const SynsetId &id) const { return node(id).has_value(); }
  const std::vector<Edge> &out_edges(std::size_t node) const { return out_[node]; }
  const std::vector<std::string> &lemmas(std::size_t node) const { return lemmas_[node]; }

  // Senses of a lemma in declaration order; empty when unknown.
  const std::vector<SynsetId> &senses(std::string_view lemma) const;

  friend bool operator==(const SynsetGraph &a, const SynsetGraph &b);

 private:
  std::vector<SynsetId> ids_;
  std::vector<std::vector<std::string>> lemmas_;
  std::vector<std::vector<Edge>> out_;
  std::unordered_map<SynsetId, std::size_t> index_;
  std::map<std::string, std::vector<SynsetId>, std::less<>> senses_;
};

}  // namespace kalm

#endif  // KALM_SYNSET_GRAPH_H_
