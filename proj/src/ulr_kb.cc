#include "kalm/ulr_kb.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <mutex>

#include "kalm/errors.h"
#include "kalm/term.h"

namespace kalm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Value unit_value(const std::string &unit) {
  return unit.empty() ? Value::string("") : Value::atom(unit);
}

bool parse_instance(const Term &t, InstanceId *id) {
  if (!t.is_atom() || t.text.size() < 2 || t.text[0] != 'i') return false;
  int n = 0;
  for (std::size_t i = 1; i < t.text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(t.text[i]))) return false;
    if (n > (std::numeric_limits<int>::max() - 9) / 10) return false;
    n = n * 10 + (t.text[i] - '0');
  }
  if (n <= 0) return false;
  id->n = n;
  return true;
}

}  // namespace

std::string Value::print() const {
  return kind == Kind::kString ? quote_string(text) : text;
}

FactRow fact_row(const UlrFact &f) {
  return std::visit(
      overloaded{
          [](const fact::Frame &x) {
            return FactRow{"frame", {Value::atom(x.frame), Value::atom(x.id.str())}};
          },
          [](const fact::Role &x) {
            return FactRow{"role",
                           {Value::atom(x.id.str()), Value::atom(x.role),
                            Value::string(x.filler), Value::atom(x.synset.str())}};
          },
          [](const fact::Value &x) {
            return FactRow{"value",
                           {Value::atom(x.id.str()), Value::atom(x.role),
                            Value::number(x.number), unit_value(x.unit)}};
          },
      },
      f);
}

InstanceId fact_instance(const UlrFact &f) {
  return std::visit([](const auto &x) { return x.id; }, f);
}

std::string print_fact(const UlrFact &f) {
  const FactRow row = fact_row(f);
  std::string out = row.functor + "(";
  for (std::size_t i = 0; i < row.args.size(); ++i) {
    if (i) out += ",";
    out += row.args[i].print();
  }
  return out + ")";
}

std::string print_goal(const Goal &g) {
  std::string out = g.functor + "(";
  for (std::size_t i = 0; i < g.args.size(); ++i) {
    if (i) out += ",";
    out += std::visit(overloaded{[](const Value &v) { return v.print(); },
                                 [](const Variable &v) { return "?" + v.name; }},
                      g.args[i]);
  }
  return out + ")";
}

std::string print_ulrq(const Ulrq &q) {
  std::string out;
  for (std::size_t i = 0; i < q.goals.size(); ++i) {
    if (i) out += ", ";
    out += print_goal(q.goals[i]);
  }
  return out;
}

// ---- KnowledgeBase ----

KnowledgeBase::KnowledgeBase(const KnowledgeBase &other) {
  std::shared_lock lock(other.mu_);
  facts_ = other.facts_;
  rows_ = other.rows_;
  present_ = other.present_;
  by_functor_ = other.by_functor_;
  by_frame_ = other.by_frame_;
  by_role_filler_ = other.by_role_filler_;
  by_instance_ = other.by_instance_;
  next_id_ = other.next_id_;
}

KnowledgeBase &KnowledgeBase::operator=(const KnowledgeBase &other) {
  if (this != &other) {
    KnowledgeBase copy(other);
    *this = std::move(copy);
  }
  return *this;
}

KnowledgeBase::KnowledgeBase(KnowledgeBase &&other) noexcept {
  std::unique_lock lock(other.mu_);
  facts_ = std::move(other.facts_);
  rows_ = std::move(other.rows_);
  present_ = std::move(other.present_);
  by_functor_ = std::move(other.by_functor_);
  by_frame_ = std::move(other.by_frame_);
  by_role_filler_ = std::move(other.by_role_filler_);
  by_instance_ = std::move(other.by_instance_);
  next_id_ = other.next_id_;
}

KnowledgeBase &KnowledgeBase::operator=(KnowledgeBase &&other) noexcept {
  if (this != &other) {
    std::scoped_lock lock(mu_, other.mu_);
    facts_ = std::move(other.facts_);
    rows_ = std::move(other.rows_);
    present_ = std::move(other.present_);
    by_functor_ = std::move(other.by_functor_);
    by_frame_ = std::move(other.by_frame_);
    by_role_filler_ = std::move(other.by_role_filler_);
    by_instance_ = std::move(other.by_instance_);
    next_id_ = other.next_id_;
  }
  return *this;
}

InstanceId KnowledgeBase::fresh_id() {
  std::unique_lock lock(mu_);
  return InstanceId{next_id_++};
}

bool KnowledgeBase::add_locked(const UlrFact &f) {
  FactRow row = fact_row(f);
  if (present_.count(row)) return false;
  const std::size_t i = rows_.size();
  present_.insert(row);
  by_functor_[row.functor].push_back(i);
  std::visit(overloaded{
                 [&](const fact::Frame &x) { by_frame_[x.frame].push_back(i); },
                 [&](const fact::Role &x) {
                   by_role_filler_[{x.role, x.filler}].push_back(i);
                 },
                 [](const fact::Value &) {},
             },
             f);
  const InstanceId id = fact_instance(f);
  by_instance_[id.str()].push_back(i);
  next_id_ = std::max(next_id_, id.n + 1);
  facts_.push_back(f);
  rows_.push_back(std::move(row));
  return true;
}

bool KnowledgeBase::add(const UlrFact &f) {
  std::unique_lock lock(mu_);
  return add_locked(f);
}

void KnowledgeBase::add_all(const std::vector<UlrFact> &facts) {
  std::unique_lock lock(mu_);
  for (const auto &f : facts) add_locked(f);
}

std::vector<UlrFact> KnowledgeBase::facts() const {
  std::shared_lock lock(mu_);
  return facts_;
}

std::vector<FactRow> KnowledgeBase::rows() const {
  std::shared_lock lock(mu_);
  return rows_;
}

std::size_t KnowledgeBase::size() const {
  std::shared_lock lock(mu_);
  return facts_.size();
}

int KnowledgeBase::next_instance_id() const {
  std::shared_lock lock(mu_);
  return next_id_;
}

bool operator==(const KnowledgeBase &a, const KnowledgeBase &b) {
  if (&a == &b) return true;
  std::shared_lock la(a.mu_, std::defer_lock);
  std::shared_lock lb(b.mu_, std::defer_lock);
  std::lock(la, lb);
  return a.rows_ == b.rows_ && a.next_id_ == b.next_id_;
}

namespace {

// Resolves a goal argument under env: a constant, or none if unbound.
const Value *resolve(const GoalArg &arg, const std::map<std::string, Value> &env) {
  if (const auto *v = std::get_if<Value>(&arg)) return v;
  const auto &var = std::get<Variable>(arg);
  if (var.anonymous()) return nullptr;
  auto it = env.find(var.name);
  return it == env.end() ? nullptr : &it->second;
}

}  // namespace

std::vector<std::size_t> KnowledgeBase::candidates(
    const Goal &g, const std::map<std::string, Value> &env) const {
  auto lookup = [](const auto &index, const auto &key) -> std::vector<std::size_t> {
    auto it = index.find(key);
    return it == index.end() ? std::vector<std::size_t>{} : it->second;
  };
  if (g.functor == "frame" && g.args.size() == 2) {
    if (const Value *frame = resolve(g.args[0], env)) {
      return lookup(by_frame_, frame->text);
    }
    if (const Value *id = resolve(g.args[1], env)) return lookup(by_instance_, id->text);
  } else if ((g.functor == "role" || g.functor == "value") && g.args.size() == 4) {
    const Value *role = resolve(g.args[1], env);
    const Value *filler = resolve(g.args[2], env);
    if (g.functor == "role" && role && filler && filler->kind == Value::Kind::kString) {
      return lookup(by_role_filler_, std::make_pair(role->text, filler->text));
    }
    if (const Value *id = resolve(g.args[0], env)) return lookup(by_instance_, id->text);
  }
  return lookup(by_functor_, g.functor);
}

void KnowledgeBase::solve(const Ulrq &q, std::vector<bool> &done,
                          std::size_t remaining, std::map<std::string, Value> &env,
                          std::set<std::string> &answers) const {
  if (remaining == 0) {
    if (auto it = env.find(q.answer_var); it != env.end()) {
      answers.insert(it->second.text);
    }
    return;
  }
  // Most selective open goal first.
  std::size_t pick = q.goals.size();
  std::vector<std::size_t> best;
  for (std::size_t i = 0; i < q.goals.size(); ++i) {
    if (done[i]) continue;
    auto c = candidates(q.goals[i], env);
    if (pick == q.goals.size() || c.size() < best.size()) {
      pick = i;
      best = std::move(c);
    }
  }
  const Goal &goal = q.goals[pick];
  done[pick] = true;
  for (std::size_t row_index : best) {
    const FactRow &row = rows_[row_index];
    if (row.functor != goal.functor || row.args.size() != goal.args.size()) continue;
    std::vector<std::string> bound;
    bool ok = true;
    for (std::size_t a = 0; a < goal.args.size() && ok; ++a) {
      if (const auto *c = std::get_if<Value>(&goal.args[a])) {
        ok = *c == row.args[a];
        continue;
      }
      const auto &var = std::get<Variable>(goal.args[a]);
      if (var.anonymous()) continue;
      auto it = env.find(var.name);
      if (it == env.end()) {
        env.emplace(var.name, row.args[a]);
        bound.push_back(var.name);
      } else {
        ok = it->second == row.args[a];
      }
    }
    if (ok) solve(q, done, remaining - 1, env, answers);
    for (const auto &name : bound) env.erase(name);
  }
  done[pick] = false;
}

std::vector<std::string> KnowledgeBase::evaluate(const Ulrq &q) const {
  std::shared_lock lock(mu_);
  std::set<std::string> answers;
  if (q.goals.empty()) return {};
  std::vector<bool> done(q.goals.size(), false);
  std::map<std::string, Value> env;
  solve(q, done, q.goals.size(), env, answers);
  return {answers.begin(), answers.end()};
}

std::vector<std::string> evaluate(const KnowledgeBase &kb, const Ulrq &q) {
  return kb.evaluate(q);
}

std::string KnowledgeBase::save() const {
  std::shared_lock lock(mu_);
  std::string out = "# next i" + std::to_string(next_id_) + "\n";
  for (const auto &f : facts_) out += print_fact(f) + ".\n";
  return out;
}

KnowledgeBase KnowledgeBase::load(std::string_view text) {
  int declared_next = 0;
  if (text.rfind("# next i", 0) == 0) {
    std::size_t i = 8;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      declared_next = declared_next * 10 + (text[i] - '0');
      ++i;
    }
    if (declared_next <= 0) throw SyntaxError(1, "bad '# next i<N>' header");
  }
  KnowledgeBase kb;
  std::map<InstanceId, int> frame_line;
  struct Pending {
    InstanceId id;
    int line;
  };
  std::vector<Pending> uses;
  for (const Term &t : read_clauses(text)) {
    InstanceId id;
    UlrFact f;
    if (t.is_compound("frame", 2)) {
      if (!t.args[0].is_atom() || !parse_instance(t.args[1], &id)) {
        throw SyntaxError(t.line, "expected frame(name,i<N>)");
      }
      if (frame_line.count(id)) {
        throw KbIntegrityError(t.line, "second frame fact for " + id.str());
      }
      frame_line[id] = t.line;
      f = fact::Frame{t.args[0].text, id};
    } else if (t.is_compound("role", 4)) {
      if (!parse_instance(t.args[0], &id) || !t.args[1].is_atom() ||
          t.args[2].kind != Term::Kind::kString || !t.args[3].is_atom()) {
        throw SyntaxError(t.line, "expected role(i<N>,role,\"filler\",synset)");
      }
      auto synset = SynsetId::parse(t.args[3].text);
      if (!synset) throw SyntaxError(t.line, "bad synset id " + t.args[3].text);
      f = fact::Role{id, t.args[1].text, t.args[2].text, *synset};
      uses.push_back({id, t.line});
    } else if (t.is_compound("value", 4)) {
      const Term &unit = t.args[3];
      const bool unit_ok = unit.is_atom() ||
                           (unit.kind == Term::Kind::kString && unit.text.empty());
      if (!parse_instance(t.args[0], &id) || !t.args[1].is_atom() ||
          t.args[2].kind != Term::Kind::kNumber || !unit_ok) {
        throw SyntaxError(t.line, "expected value(i<N>,role,number,unit)");
      }
      f = fact::Value{id, t.args[1].text, t.args[2].text, unit.text};
      uses.push_back({id, t.line});
    } else {
      throw SyntaxError(t.line, "unknown fact " + print_term(t));
    }
    kb.add_locked(f);
  }
  for (const auto &u : uses) {
    if (!frame_line.count(u.id)) {
      throw KbIntegrityError(u.line, "no frame fact for instance " + u.id.str());
    }
  }
  if (declared_next) {
    if (declared_next < kb.next_id_) {
      throw KbIntegrityError(1, "next id i" + std::to_string(declared_next) +
                                    " is not above every stored instance");
    }
    kb.next_id_ = declared_next;
  }
  return kb;
}

// ---- translation ----

std::string ulr_name(std::string_view name) {
  std::string out(name);
  for (auto &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

namespace {

const FrameDecl &frame_or_throw(const FrameOnt &ont, const std::string &name) {
  const FrameDecl *frame = ont.frame(name);
  if (!frame) throw UnknownFrame(name);
  return *frame;
}

}  // namespace

std::vector<UlrFact> to_ulr(const DisambiguatedInstance &inst, const FrameOnt &ont,
                            KnowledgeBase &kb) {
  const FrameDecl &frame = frame_or_throw(ont, inst.frame);
  for (const auto &[role, b] : inst.bindings) {
    if (b.filler.kind == Filler::Kind::kQueryVar) {
      throw Error("cannot assert a question: role " + role + " is a query variable");
    }
  }
  const InstanceId id = kb.fresh_id();
  std::vector<UlrFact> out;
  out.push_back(fact::Frame{ulr_name(frame.name), id});
  for (const auto &role : frame.roles) {
    auto it = inst.bindings.find(role.name);
    if (it == inst.bindings.end()) continue;
    const ResolvedBinding &b = it->second;
    if (b.filler.kind == Filler::Kind::kNumeric) {
      out.push_back(fact::Value{id, ulr_name(role.name), b.filler.surface, b.filler.unit});
    } else {
      out.push_back(fact::Role{id, ulr_name(role.name), b.filler.surface,
                               b.synset.value_or(SynsetId{})});
    }
  }
  return out;
}

namespace {

Ulrq build_ulrq(const std::string &frame_name, const FrameOnt &ont,
                const std::map<std::string, Filler> &bindings) {
  const FrameDecl &frame = frame_or_throw(ont, frame_name);
  int queryvars = 0;
  for (const auto &[role, filler] : bindings) {
    if (filler.kind == Filler::Kind::kQueryVar) ++queryvars;
  }
  if (queryvars > 1) throw MultipleQueryVars();
  if (queryvars == 0) throw Error("question has no query variable");

  Ulrq q;
  q.answer_var = "X";
  const Variable instance{"I"};
  const Variable anon{"_"};
  q.goals.push_back({"frame", {Value::atom(ulr_name(frame.name)), instance}});
  for (const auto &role : frame.roles) {
    auto it = bindings.find(role.name);
    if (it == bindings.end()) continue;
    const Filler &f = it->second;
    const Value role_name = Value::atom(ulr_name(role.name));
    switch (f.kind) {
      case Filler::Kind::kQueryVar:
        q.goals.push_back({"role", {instance, role_name, Variable{q.answer_var}, anon}});
        break;
      case Filler::Kind::kNumeric:
        q.goals.push_back({"value",
                           {instance, role_name, Value::number(f.surface),
                            unit_value(f.unit)}});
        break;
      default:
        q.goals.push_back({"role", {instance, role_name, Value::string(f.surface), anon}});
        break;
    }
  }
  return q;
}

}  // namespace

Ulrq to_ulrq(const FrameInstance &inst, const FrameOnt &ont) {
  return build_ulrq(inst.frame, ont, inst.bindings);
}

Ulrq to_ulrq(const DisambiguatedInstance &inst, const FrameOnt &ont) {
  std::map<std::string, Filler> bindings;
  for (const auto &[role, b] : inst.bindings) bindings.emplace(role, b.filler);
  return build_ulrq(inst.frame, ont, bindings);
}

}  // namespace kalm
