#ifndef KALM_ULR_KB_H_
#define KALM_ULR_KB_H_

// Unique logical representation (ULR) facts, the fact store, and
// conjunctive ULRQ queries evaluated by unification.
//
//   frame(commerce_buy,i1).
//   role(i1,buyer,"Mary",bn:00046516n).
//   value(i1,money,5000,dollar).

#include <compare>
#include <map>
#include <set>
#include <shared_mutex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kalm/disambiguator.h"
#include "kalm/frame_ontology.h"
#include "kalm/synset_id.h"

namespace kalm {

struct InstanceId {
  int n = 0;
  std::string str() const { return "i" + std::to_string(n); }
  friend auto operator<=>(const InstanceId &, const InstanceId &) = default;
};

// Ground argument of a fact or goal.
struct Value {
  enum class Kind { kAtom, kString, kNumber };
  Kind kind = Kind::kAtom;
  std::string text;

  static Value atom(std::string t) { return {Kind::kAtom, std::move(t)}; }
  static Value string(std::string t) { return {Kind::kString, std::move(t)}; }
  static Value number(std::string t) { return {Kind::kNumber, std::move(t)}; }

  std::string print() const;
  friend auto operator<=>(const Value &, const Value &) = default;
};

namespace fact {

struct Frame {
  std::string frame;
  InstanceId id;
  friend auto operator<=>(const Frame &, const Frame &) = default;
};

struct Role {
  InstanceId id;
  std::string role;
  std::string filler;
  SynsetId synset;
  friend auto operator<=>(const Role &, const Role &) = default;
};

struct Value {
  InstanceId id;
  std::string role;
  std::string number;
  std::string unit;  // empty when the quantity has no unit
  friend auto operator<=>(const Value &, const Value &) = default;
};

}  // namespace fact

using UlrFact = std::variant<fact::Frame, fact::Role, fact::Value>;

// Functor name plus argument tuple.
struct FactRow {
  std::string functor;
  std::vector<Value> args;
  friend auto operator<=>(const FactRow &, const FactRow &) = default;
};

FactRow fact_row(const UlrFact &f);
InstanceId fact_instance(const UlrFact &f);
std::string print_fact(const UlrFact &f);  // without the final period

struct Variable {
  std::string name;  // "_" is anonymous
  bool anonymous() const { return name == "_"; }
  friend auto operator<=>(const Variable &, const Variable &) = default;
};

using GoalArg = std::variant<Value, Variable>;

struct Goal {
  std::string functor;
  std::vector<GoalArg> args;
  friend bool operator==(const Goal &, const Goal &) = default;
};

struct Ulrq {
  std::vector<Goal> goals;
  std::string answer_var;
  friend bool operator==(const Ulrq &, const Ulrq &) = default;
};

std::string print_goal(const Goal &g);
// `frame(commerce_buy,?I), role(?I,buyer,?X,?_), ...`
std::string print_ulrq(const Ulrq &q);

// Ordered fact set with frame, (role, filler) and instance indexes.
// Queries take a shared lock and mutations an exclusive one.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  KnowledgeBase(const KnowledgeBase &other);
  KnowledgeBase &operator=(const KnowledgeBase &other);
  KnowledgeBase(KnowledgeBase &&other) noexcept;
  KnowledgeBase &operator=(KnowledgeBase &&other) noexcept;

  // Reserves the next instance id.
  InstanceId fresh_id();
  // Set semantics: returns false if the fact was already present.
  bool add(const UlrFact &f);
  void add_all(const std::vector<UlrFact> &facts);

  std::vector<UlrFact> facts() const;
  std::vector<FactRow> rows() const;
  std::size_t size() const;
  int next_instance_id() const;

  // Answer bindings, duplicate-free and sorted.
  std::vector<std::string> evaluate(const Ulrq &q) const;

  // `# next i<N>` header then one fact per line. load() throws
  // SyntaxError or KbIntegrityError.
  std::string save() const;
  static KnowledgeBase load(std::string_view text);

  friend bool operator==(const KnowledgeBase &a, const KnowledgeBase &b);

 private:
  bool add_locked(const UlrFact &f);
  std::vector<std::size_t> candidates(const Goal &g,
                                      const std::map<std::string, Value> &env) const;
  void solve(const Ulrq &q, std::vector<bool> &done, std::size_t remaining,
             std::map<std::string, Value> &env, std::set<std::string> &answers) const;

  mutable std::shared_mutex mu_;
  std::vector<UlrFact> facts_;
  std::vector<FactRow> rows_;
  std::set<FactRow> present_;
  std::map<std::string, std::vector<std::size_t>> by_functor_;
  std::map<std::string, std::vector<std::size_t>> by_frame_;
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> by_role_filler_;
  std::map<std::string, std::vector<std::size_t>> by_instance_;
  int next_id_ = 1;
};

// ULR name for a frame or role: lowercase.
std::string ulr_name(std::string_view name);

// Frame fact with a fresh id, then role/value facts in frame-declaration
// order. Does not insert into the KB.
std::vector<UlrFact> to_ulr(const DisambiguatedInstance &inst, const FrameOnt &ont,
                            KnowledgeBase &kb);

// Throws MultipleQueryVars when more than one binding is a query variable
// and Error when there is none.
Ulrq to_ulrq(const FrameInstance &inst, const FrameOnt &ont);
Ulrq to_ulrq(const DisambiguatedInstance &inst, const FrameOnt &ont);

std::vector<std::string> evaluate(const KnowledgeBase &kb, const Ulrq &q);

}  // namespace kalm

#endif  // KALM_ULR_KB_H_
