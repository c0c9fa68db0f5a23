#ifndef KALM_FRAME_ONTOLOGY_H_
#define KALM_FRAME_ONTOLOGY_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kalm/synset_id.h"

namespace kalm {

// Names of constraints a role may carry. Only "currency" ships.
class ConstraintRegistry {
 public:
  ConstraintRegistry() : names_{"currency"} {}
  void add(std::string name) { names_.insert(std::move(name)); }
  bool contains(std::string_view name) const {
    return names_.count(std::string(name)) > 0;
  }

 private:
  std::set<std::string> names_;
};

struct RoleDecl {
  std::string name;
  std::vector<SynsetId> meanings;  // non-empty
  std::vector<std::string> constraints;
  friend bool operator==(const RoleDecl &, const RoleDecl &) = default;
};

struct FrameDecl {
  std::string name;
  std::vector<RoleDecl> roles;

  const RoleDecl *role(std::string_view name) const;
  // Declaration index of a role, or -1.
  int role_index(std::string_view name) const;

  friend bool operator==(const FrameDecl &, const FrameDecl &) = default;
};

// Grammatical pattern locating a role filler relative to the lexical unit.
//   verb->subject | verb->object | verb->indobject | verb->pp[P]->dep
//   noun->self | noun->of->dep | noun->isa->subject
//   noun->support[V]->subject | noun->pp[P]->dep
struct PatternPath {
  enum class Head { kVerb, kNoun };
  enum class Step { kSubject, kObject, kIndobject, kPp, kSelf, kOf, kIsa, kSupport };

  Head head = Head::kVerb;
  Step step = Step::kSubject;
  std::string word;  // preposition for kPp, verb lemma for kSupport

  // Throws BadPath.
  static PatternPath parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const PatternPath &, const PatternPath &) = default;
};

enum class PatternFlag { kRequired, kOptional };
enum class LuPos { kVerb, kNoun };

std::string_view lu_pos_name(LuPos pos);  // "v" / "n"

struct Pattern {
  std::string role;
  PatternPath path;
  PatternFlag flag = PatternFlag::kRequired;
  bool required() const { return flag == PatternFlag::kRequired; }
  friend bool operator==(const Pattern &, const Pattern &) = default;
};

struct Lvp {
  std::string lexical_unit;
  LuPos pos = LuPos::kVerb;
  std::string frame;
  std::vector<Pattern> patterns;

  // e.g. "buy/v/Commerce_Buy"
  std::string id() const;

  friend bool operator==(const Lvp &, const Lvp &) = default;
};

// Frames plus the lvp store, indexed by (lemma, pos). Immutable once built.
class FrameOnt {
 public:
  FrameOnt() = default;
  FrameOnt(std::vector<FrameDecl> frames, std::vector<Lvp> lvps);

  const FrameDecl *frame(std::string_view name) const;
  const std::vector<FrameDecl> &frames() const { return frame_list_; }
  const std::vector<Lvp> &lvps() const { return lvps_; }

  // All lvps for (lemma, pos) in load order.
  std::vector<const Lvp *> lookup(std::string_view lemma, LuPos pos) const;
  // Load-order position of an lvp owned by this ontology.
  std::size_t ordinal(const Lvp *lvp) const { return lvp - lvps_.data(); }

 private:
  std::vector<FrameDecl> frame_list_;
  std::map<std::string, std::size_t, std::less<>> frames_;
  std::vector<Lvp> lvps_;
  std::map<std::pair<std::string, LuPos>, std::vector<std::size_t>> lvp_index_;
};

// `fp(Name,[role(R,[ids],[cs]),...]).` terms, in file order.
// Throws SyntaxError, DuplicateFrame, BadSynsetId.
std::vector<FrameDecl> load_frames(std::string_view text,
                                   const ConstraintRegistry &registry = {});

// `lvp(lemma,v|n,Frame,[pattern(Role,Path,required|optnl),...]).` terms.
// Throws SyntaxError, UnknownFrame, UnknownRole, BadPath.
std::vector<Lvp> load_lvps(std::string_view text,
                           const std::vector<FrameDecl> &frames);

std::vector<const Lvp *> lookup_lvps(const FrameOnt &ont, std::string_view lemma,
                                     LuPos pos);

std::string print_frames(const std::vector<FrameDecl> &frames);
std::string print_lvps(const std::vector<Lvp> &lvps);

}  // namespace kalm

#endif  // KALM_FRAME_ONTOLOGY_H_
