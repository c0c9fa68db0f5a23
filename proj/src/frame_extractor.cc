#include "kalm/frame_extractor.h"

#include <algorithm>

#include "kalm/errors.h"

namespace kalm {

std::string_view filler_kind_name(Filler::Kind kind) {
  switch (kind) {
    case Filler::Kind::kNamed: return "named";
    case Filler::Kind::kCommon: return "common";
    case Filler::Kind::kNumeric: return "numeric";
    case Filler::Kind::kQueryVar: return "queryvar";
  }
  return "";
}

bool same_reading(const FrameInstance &a, const FrameInstance &b) {
  if (a.frame != b.frame || a.bindings.size() != b.bindings.size()) return false;
  for (const auto &[role, fa] : a.bindings) {
    auto it = b.bindings.find(role);
    if (it == b.bindings.end()) return false;
    const Filler &fb = it->second;
    if (fa.kind != fb.kind || fa.surface != fb.surface || fa.unit != fb.unit) {
      return false;
    }
  }
  return true;
}

Filler filler_for(const Drs &drs, Ref ref) {
  Filler f;
  f.ref = ref;
  if (const auto *q = drs.query_of(ref)) {
    f.kind = Filler::Kind::kQueryVar;
    f.surface = std::string(qkind_name(q->qkind));
    return f;
  }
  for (const auto &c : drs.conditions) {
    if (const auto *n = std::get_if<cond::Named>(&c); n && n->ref == ref) {
      f.kind = Filler::Kind::kNamed;
      f.surface = n->name;
      return f;
    }
    if (const auto *n = std::get_if<cond::Num>(&c); n && n->ref == ref) {
      f.kind = Filler::Kind::kNumeric;
      f.surface = n->value;
      f.unit = n->unit;
      return f;
    }
    if (const auto *o = std::get_if<cond::Object>(&c); o && o->ref == ref) {
      f.kind = Filler::Kind::kCommon;
      f.surface = o->lemma;
      return f;
    }
  }
  f.kind = Filler::Kind::kCommon;
  return f;
}

std::optional<Filler> apply_pattern(const Drs &drs, Ref lu_ref,
                                    const PatternPath &path) {
  using Step = PatternPath::Step;
  std::optional<Ref> target;
  if (path.head == PatternPath::Head::kVerb) {
    const cond::Predicate *pred = drs.predicate_of(lu_ref);
    if (!pred) return std::nullopt;
    switch (path.step) {
      case Step::kSubject: target = pred->subject; break;
      case Step::kObject: target = pred->object; break;
      case Step::kIndobject: target = pred->indobject; break;
      case Step::kPp:
        for (const auto *m : drs.all<cond::ModifierPp>()) {
          if (m->head == lu_ref && m->prep == path.word) {
            target = m->dep;
            break;
          }
        }
        break;
      default: break;
    }
  } else {
    switch (path.step) {
      case Step::kSelf: target = lu_ref; break;
      case Step::kOf:
        for (const auto *r : drs.all<cond::Relation>()) {
          if (r->head == lu_ref && r->rel == "of") {
            target = r->dep;
            break;
          }
        }
        break;
      case Step::kIsa:
        for (const auto *i : drs.all<cond::Isa>()) {
          if (i->type == lu_ref) {
            target = i->subject;
            break;
          }
        }
        break;
      case Step::kSupport:
        for (const auto *p : drs.all<cond::Predicate>()) {
          if (p->lemma == path.word && p->object == lu_ref) {
            target = p->subject;
            break;
          }
        }
        break;
      case Step::kPp:
        for (const auto *m : drs.all<cond::ModifierPp>()) {
          if (m->head == lu_ref && m->prep == path.word) {
            target = m->dep;
            break;
          }
        }
        break;
      default: break;
    }
  }
  if (!target) return std::nullopt;
  return filler_for(drs, *target);
}

std::vector<FrameInstance> extract(const Drs &drs, const FrameOnt &ont) {
  struct Occurrence {
    Ref ref;
    std::string lemma;
    LuPos pos;
  };
  std::vector<Occurrence> occurrences;
  for (const auto *p : drs.all<cond::Predicate>()) {
    occurrences.push_back({p->event, p->lemma, LuPos::kVerb});
  }
  for (const auto *o : drs.all<cond::Object>()) {
    occurrences.push_back({o->ref, o->lemma, LuPos::kNoun});
  }
  std::stable_sort(occurrences.begin(), occurrences.end(),
                   [&](const Occurrence &a, const Occurrence &b) {
                     return drs.order_of(a.ref) < drs.order_of(b.ref);
                   });

  std::vector<FrameInstance> out;
  bool any_lvp = false;
  for (const auto &occ : occurrences) {
    for (const Lvp *lvp : ont.lookup(occ.lemma, occ.pos)) {
      any_lvp = true;
      FrameInstance inst;
      inst.frame = lvp->frame;
      inst.lu_ref = occ.ref;
      inst.provenance = lvp->id();
      bool complete = true;
      for (const auto &pattern : lvp->patterns) {
        if (inst.bindings.count(pattern.role)) continue;
        if (auto filler = apply_pattern(drs, occ.ref, pattern.path)) {
          inst.bindings.emplace(pattern.role, std::move(*filler));
        }
      }
      for (const auto &pattern : lvp->patterns) {
        if (pattern.required() && !inst.bindings.count(pattern.role)) {
          complete = false;
        }
      }
      if (complete) out.push_back(std::move(inst));
    }
  }
  if (any_lvp && out.empty()) throw NoFrameMatched();
  return out;
}

}  // namespace kalm
