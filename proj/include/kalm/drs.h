#ifndef KALM_DRS_H_
#define KALM_DRS_H_

#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kalm {

// Discourse referent: entities x1,x2,... and events e1,e2,...
struct Ref {
  enum class Kind { kEntity, kEvent };
  Kind kind = Kind::kEntity;
  int index = 0;

  static Ref entity(int i) { return {Kind::kEntity, i}; }
  static Ref event(int i) { return {Kind::kEvent, i}; }

  bool is_event() const { return kind == Kind::kEvent; }
  std::string str() const;

  friend auto operator<=>(const Ref &, const Ref &) = default;
};

enum class Quant { kIndef, kDef, kBare };
enum class QKind { kWho, kWhat, kWhich };

std::string_view quant_name(Quant q);
std::string_view qkind_name(QKind q);

namespace cond {

struct Object {
  Ref ref;
  std::string lemma;
  Quant quant;
  friend bool operator==(const Object &, const Object &) = default;
};

struct Named {
  Ref ref;
  std::string name;
  friend bool operator==(const Named &, const Named &) = default;
};

struct Predicate {
  Ref event;
  std::string lemma;
  Ref subject;
  std::optional<Ref> object;
  std::optional<Ref> indobject;
  friend bool operator==(const Predicate &, const Predicate &) = default;
};

struct ModifierPp {
  Ref head;  // event or entity
  std::string prep;
  Ref dep;
  friend bool operator==(const ModifierPp &, const ModifierPp &) = default;
};

// Genitive "of" between noun referents.
struct Relation {
  Ref head;
  std::string rel;
  Ref dep;
  friend bool operator==(const Relation &, const Relation &) = default;
};

struct Property {
  Ref ref;
  std::string adj;
  friend bool operator==(const Property &, const Property &) = default;
};

// Copular "X is a Y".
struct Isa {
  Ref subject;
  Ref type;
  friend bool operator==(const Isa &, const Isa &) = default;
};

struct Query {
  Ref ref;
  QKind qkind;
  friend bool operator==(const Query &, const Query &) = default;
};

// Numeric quantity; unit is empty when none was given.
struct Num {
  Ref ref;
  std::string value;
  std::string unit;
  friend bool operator==(const Num &, const Num &) = default;
};

}  // namespace cond

using Condition = std::variant<cond::Object, cond::Named, cond::Predicate,
                               cond::ModifierPp, cond::Relation, cond::Property,
                               cond::Isa, cond::Query, cond::Num>;

// Every referent mentioned by a condition, in argument order.
std::vector<Ref> mentioned_refs(const Condition &c);

std::string print_condition(const Condition &c);

struct Drs {
  std::vector<Ref> referents;  // in order of introduction
  std::vector<Condition> conditions;

  // Conditions of type C, in order.
  template <typename C>
  std::vector<const C *> all() const {
    std::vector<const C *> out;
    for (const auto &c : conditions) {
      if (const auto *p = std::get_if<C>(&c)) out.push_back(p);
    }
    return out;
  }

  const cond::Predicate *predicate_of(Ref event) const;
  const cond::Query *query_of(Ref ref) const;
  bool is_question() const { return !all<cond::Query>().empty(); }

  // Position of ref in `referents`, or -1.
  int order_of(Ref ref) const;

  friend bool operator==(const Drs &, const Drs &) = default;
};

// Multi-line dump: `referents: x1 e1 x2` followed by one condition per line.
std::string print_drs(const Drs &drs);

// Checks the structural invariants; returns human-readable violations.
std::vector<std::string> validate(const Drs &drs);

}  // namespace kalm

#endif  // KALM_DRS_H_
