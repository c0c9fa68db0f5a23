#ifndef KALM_LEXICON_H_
#define KALM_LEXICON_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kalm {

enum class Pos { kNoun, kPropn, kVerb, kAdj, kPrep, kDet, kQword, kPunct, kCop, kNum };

std::string_view pos_name(Pos pos);
// Returns false for an unknown tag name.
bool parse_pos(std::string_view name, Pos *pos);

enum class Valence { kNone, kIntrans, kTrans, kDitrans };

std::string_view valence_name(Valence v);

struct LexEntry {
  std::string lemma;
  Pos pos = Pos::kNoun;
  Valence valence = Valence::kNone;  // verbs only
  // Prepositions whose phrases this word licenses as attachments.
  std::set<std::string> preps;
  // Free-form tags, e.g. "currency-unit".
  std::set<std::string> tags;

  bool licenses(std::string_view prep) const {
    return preps.count(std::string(prep)) > 0;
  }
  bool has_tag(std::string_view tag) const {
    return tags.count(std::string(tag)) > 0;
  }
};

// Surface form -> readings. Immutable after load.
//
// File format: one entry per line, `surface<TAB>lemma<TAB>pos[<TAB>attrs]`
// where attrs is a comma-separated list of a valence keyword (intrans,
// trans, ditrans), `pp:<prep>` licences and plain tags. '#' starts a
// comment line.
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon parse(std::string_view text);
  static Lexicon load_file(const std::string &path);

  void add(std::string surface, LexEntry entry);

  // Exact surface lookup; empty when absent.
  const std::vector<LexEntry> &lookup(std::string_view surface) const;

  // True if any noun reading of `lemma` carries `tag`.
  bool lemma_has_tag(std::string_view lemma, std::string_view tag) const;

  bool propn_fallback() const { return propn_fallback_; }
  void set_propn_fallback(bool on) { propn_fallback_ = on; }

  const std::map<std::string, std::vector<LexEntry>, std::less<>> &entries()
      const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<LexEntry>, std::less<>> entries_;
  std::map<std::string, std::set<std::string>, std::less<>> lemma_tags_;
  bool propn_fallback_ = true;
};

}  // namespace kalm

#endif  // KALM_LEXICON_H_
