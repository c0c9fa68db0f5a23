#include "kalm/drs.h"

#include <algorithm>
#include <map>
#include <set>

namespace kalm {

std::string Ref::str() const {
  return (kind == Kind::kEvent ? "e" : "x") + std::to_string(index);
}

std::string_view quant_name(Quant q) {
  switch (q) {
    case Quant::kIndef: return "indef";
    case Quant::kDef: return "def";
    case Quant::kBare: return "bare";
  }
  return "";
}

std::string_view qkind_name(QKind q) {
  switch (q) {
    case QKind::kWho: return "who";
    case QKind::kWhat: return "what";
    case QKind::kWhich: return "which";
  }
  return "";
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::vector<Ref> mentioned_refs(const Condition &c) {
  return std::visit(
      overloaded{
          [](const cond::Object &o) { return std::vector<Ref>{o.ref}; },
          [](const cond::Named &o) { return std::vector<Ref>{o.ref}; },
          [](const cond::Predicate &p) {
            std::vector<Ref> refs{p.event, p.subject};
            if (p.object) refs.push_back(*p.object);
            if (p.indobject) refs.push_back(*p.indobject);
            return refs;
          },
          [](const cond::ModifierPp &m) { return std::vector<Ref>{m.head, m.dep}; },
          [](const cond::Relation &r) { return std::vector<Ref>{r.head, r.dep}; },
          [](const cond::Property &p) { return std::vector<Ref>{p.ref}; },
          [](const cond::Isa &i) { return std::vector<Ref>{i.subject, i.type}; },
          [](const cond::Query &q) { return std::vector<Ref>{q.ref}; },
          [](const cond::Num &n) { return std::vector<Ref>{n.ref}; },
      },
      c);
}

std::string print_condition(const Condition &c) {
  return std::visit(
      overloaded{
          [](const cond::Object &o) {
            return "object(" + o.ref.str() + "," + o.lemma + "," +
                   std::string(quant_name(o.quant)) + ")";
          },
          [](const cond::Named &o) {
            return "named(" + o.ref.str() + ",\"" + o.name + "\")";
          },
          [](const cond::Predicate &p) {
            std::string s = "predicate(" + p.event.str() + "," + p.lemma + "," +
                            p.subject.str();
            if (p.object) s += "," + p.object->str();
            if (p.indobject) s += "," + p.indobject->str();
            return s + ")";
          },
          [](const cond::ModifierPp &m) {
            return "modifier_pp(" + m.head.str() + "," + m.prep + "," +
                   m.dep.str() + ")";
          },
          [](const cond::Relation &r) {
            return "relation(" + r.head.str() + "," + r.rel + "," + r.dep.str() +
                   ")";
          },
          [](const cond::Property &p) {
            return "property(" + p.ref.str() + "," + p.adj + ")";
          },
          [](const cond::Isa &i) {
            return "isa(" + i.subject.str() + "," + i.type.str() + ")";
          },
          [](const cond::Query &q) {
            return "query(" + q.ref.str() + "," +
                   std::string(qkind_name(q.qkind)) + ")";
          },
          [](const cond::Num &n) {
            return "num(" + n.ref.str() + "," + n.value + "," +
                   (n.unit.empty() ? std::string("none") : n.unit) + ")";
          },
      },
      c);
}

const cond::Predicate *Drs::predicate_of(Ref event) const {
  for (const auto &c : conditions) {
    if (const auto *p = std::get_if<cond::Predicate>(&c); p && p->event == event) {
      return p;
    }
  }
  return nullptr;
}

const cond::Query *Drs::query_of(Ref ref) const {
  for (const auto &c : conditions) {
    if (const auto *q = std::get_if<cond::Query>(&c); q && q->ref == ref) return q;
  }
  return nullptr;
}

int Drs::order_of(Ref ref) const {
  auto it = std::find(referents.begin(), referents.end(), ref);
  return it == referents.end() ? -1 : static_cast<int>(it - referents.begin());
}

std::string print_drs(const Drs &drs) {
  std::string out = "referents:";
  for (const auto &r : drs.referents) out += " " + r.str();
  out += "\n";
  for (const auto &c : drs.conditions) out += "  " + print_condition(c) + "\n";
  return out;
}

std::vector<std::string> validate(const Drs &drs) {
  std::vector<std::string> problems;
  std::map<Ref, int> declared;
  for (const auto &r : drs.referents) ++declared[r];
  for (const auto &[ref, count] : declared) {
    if (count != 1) problems.push_back(ref.str() + " declared " +
                                       std::to_string(count) + " times");
  }
  std::set<Ref> mentioned;
  std::map<Ref, int> predicates;
  for (const auto &c : drs.conditions) {
    for (const auto &r : mentioned_refs(c)) {
      mentioned.insert(r);
      if (!declared.count(r)) {
        problems.push_back(r.str() + " used in " + print_condition(c) +
                           " but not declared");
      }
    }
    if (const auto *p = std::get_if<cond::Predicate>(&c)) {
      ++predicates[p->event];
      if (!p->event.is_event()) problems.push_back("predicate on entity " + p->event.str());
    }
  }
  for (const auto &[ref, count] : declared) {
    if (!mentioned.count(ref)) problems.push_back(ref.str() + " declared but unused");
    if (ref.is_event() && predicates[ref] != 1) {
      problems.push_back(ref.str() + " appears in " +
                         std::to_string(predicates[ref]) + " predicates");
    }
  }
  return problems;
}

}  // namespace kalm
