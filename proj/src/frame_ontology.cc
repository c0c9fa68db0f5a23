#include "kalm/frame_ontology.h"

#include <cctype>
#include <set>

#include "kalm/errors.h"
#include "kalm/term.h"

namespace kalm {

namespace {

bool is_identifier(const Term &t) {
  return t.is_atom() && !t.text.empty() &&
         t.text.find("->") == std::string::npos &&
         t.text.find(':') == std::string::npos;
}

const std::string &identifier(const Term &t, const char *what) {
  if (!is_identifier(t)) {
    throw SyntaxError(t.line, std::string("expected ") + what + ", found " +
                                  print_term(t));
  }
  return t.text;
}

const std::vector<Term> &list_items(const Term &t, const char *what) {
  if (t.kind != Term::Kind::kList) {
    throw SyntaxError(t.line, std::string("expected list of ") + what);
  }
  return t.args;
}

std::string print_path_word(PatternPath::Step step, const std::string &word) {
  switch (step) {
    case PatternPath::Step::kSubject: return "subject";
    case PatternPath::Step::kObject: return "object";
    case PatternPath::Step::kIndobject: return "indobject";
    case PatternPath::Step::kPp: return "pp[" + word + "]->dep";
    case PatternPath::Step::kSelf: return "self";
    case PatternPath::Step::kOf: return "of->dep";
    case PatternPath::Step::kIsa: return "isa->subject";
    case PatternPath::Step::kSupport: return "support[" + word + "]->subject";
  }
  return {};
}

bool is_word(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

// Matches "name[word]" and extracts word.
bool subscripted(std::string_view text, std::string_view name, std::string *word) {
  if (text.size() < name.size() + 3 || text.substr(0, name.size()) != name ||
      text[name.size()] != '[' || text.back() != ']') {
    return false;
  }
  *word = std::string(text.substr(name.size() + 1, text.size() - name.size() - 2));
  return is_word(*word);
}

}  // namespace

const RoleDecl *FrameDecl::role(std::string_view n) const {
  for (const auto &r : roles) {
    if (r.name == n) return &r;
  }
  return nullptr;
}

int FrameDecl::role_index(std::string_view n) const {
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (roles[i].name == n) return static_cast<int>(i);
  }
  return -1;
}

PatternPath PatternPath::parse(std::string_view text) {
  std::vector<std::string> steps;
  std::size_t start = 0;
  for (;;) {
    auto end = text.find("->", start);
    steps.emplace_back(text.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 2;
  }
  PatternPath p;
  std::string word;
  if (steps.size() < 2) throw BadPath(std::string(text));
  if (steps[0] == "verb") {
    p.head = Head::kVerb;
    if (steps.size() == 2 && steps[1] == "subject") {
      p.step = Step::kSubject;
    } else if (steps.size() == 2 && steps[1] == "object") {
      p.step = Step::kObject;
    } else if (steps.size() == 2 && steps[1] == "indobject") {
      p.step = Step::kIndobject;
    } else if (steps.size() == 3 && subscripted(steps[1], "pp", &word) &&
               steps[2] == "dep") {
      p.step = Step::kPp;
      p.word = word;
    } else {
      throw BadPath(std::string(text));
    }
  } else if (steps[0] == "noun") {
    p.head = Head::kNoun;
    if (steps.size() == 2 && steps[1] == "self") {
      p.step = Step::kSelf;
    } else if (steps.size() == 3 && steps[1] == "of" && steps[2] == "dep") {
      p.step = Step::kOf;
    } else if (steps.size() == 3 && steps[1] == "isa" && steps[2] == "subject") {
      p.step = Step::kIsa;
    } else if (steps.size() == 3 && subscripted(steps[1], "support", &word) &&
               steps[2] == "subject") {
      p.step = Step::kSupport;
      p.word = word;
    } else if (steps.size() == 3 && subscripted(steps[1], "pp", &word) &&
               steps[2] == "dep") {
      p.step = Step::kPp;
      p.word = word;
    } else {
      throw BadPath(std::string(text));
    }
  } else {
    throw BadPath(std::string(text));
  }
  return p;
}

std::string PatternPath::str() const {
  return (head == Head::kVerb ? "verb->" : "noun->") + print_path_word(step, word);
}

std::string_view lu_pos_name(LuPos pos) { return pos == LuPos::kVerb ? "v" : "n"; }

std::string Lvp::id() const {
  return lexical_unit + "/" + std::string(lu_pos_name(pos)) + "/" + frame;
}

FrameOnt::FrameOnt(std::vector<FrameDecl> frames, std::vector<Lvp> lvps)
    : frame_list_(std::move(frames)), lvps_(std::move(lvps)) {
  for (std::size_t i = 0; i < frame_list_.size(); ++i) {
    if (!frames_.emplace(frame_list_[i].name, i).second) {
      throw DuplicateFrame(frame_list_[i].name);
    }
  }
  for (std::size_t i = 0; i < lvps_.size(); ++i) {
    const Lvp &l = lvps_[i];
    const FrameDecl *f = frame(l.frame);
    if (!f) throw UnknownFrame(l.frame);
    for (const auto &p : l.patterns) {
      if (!f->role(p.role)) throw UnknownRole(l.frame, p.role);
    }
    lvp_index_[{l.lexical_unit, l.pos}].push_back(i);
  }
}

const FrameDecl *FrameOnt::frame(std::string_view name) const {
  auto it = frames_.find(name);
  return it == frames_.end() ? nullptr : &frame_list_[it->second];
}

std::vector<const Lvp *> FrameOnt::lookup(std::string_view lemma, LuPos pos) const {
  std::vector<const Lvp *> out;
  auto it = lvp_index_.find({std::string(lemma), pos});
  if (it != lvp_index_.end()) {
    for (std::size_t i : it->second) out.push_back(&lvps_[i]);
  }
  return out;
}

std::vector<const Lvp *> lookup_lvps(const FrameOnt &ont, std::string_view lemma,
                                     LuPos pos) {
  return ont.lookup(lemma, pos);
}

std::vector<FrameDecl> load_frames(std::string_view text,
                                   const ConstraintRegistry &registry) {
  std::vector<FrameDecl> frames;
  std::set<std::string> seen;
  for (const Term &clause : read_clauses(text)) {
    if (!clause.is_compound("fp", 2)) {
      throw SyntaxError(clause.line, "expected fp(Name,[roles]) but found " +
                                         print_term(clause));
    }
    FrameDecl frame;
    frame.name = identifier(clause.args[0], "frame name");
    if (!seen.insert(frame.name).second) throw DuplicateFrame(frame.name);
    std::set<std::string> role_names;
    for (const Term &r : list_items(clause.args[1], "roles")) {
      if (!r.is_compound("role", 3)) {
        throw SyntaxError(r.line, "expected role(Name,[meanings],[constraints])");
      }
      RoleDecl role;
      role.name = identifier(r.args[0], "role name");
      if (!role_names.insert(role.name).second) {
        throw SyntaxError(r.line, "duplicate role " + role.name + " in " + frame.name);
      }
      for (const Term &m : list_items(r.args[1], "synset ids")) {
        if (m.kind != Term::Kind::kAtom && m.kind != Term::Kind::kNumber) {
          throw BadSynsetId(print_term(m));
        }
        role.meanings.push_back(SynsetId::from(m.text));
      }
      if (role.meanings.empty()) {
        throw SyntaxError(r.line, "role " + role.name + " has no meanings");
      }
      for (const Term &c : list_items(r.args[2], "constraints")) {
        const std::string &name = identifier(c, "constraint name");
        if (!registry.contains(name)) {
          throw SyntaxError(c.line, "unregistered constraint " + name);
        }
        role.constraints.push_back(name);
      }
      frame.roles.push_back(std::move(role));
    }
    if (frame.roles.empty()) {
      throw SyntaxError(clause.line, "frame " + frame.name + " has no roles");
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

std::vector<Lvp> load_lvps(std::string_view text,
                           const std::vector<FrameDecl> &frames) {
  std::vector<Lvp> lvps;
  for (const Term &clause : read_clauses(text)) {
    if (!clause.is_compound("lvp", 4)) {
      throw SyntaxError(clause.line, "expected lvp(LU,Pos,Frame,[patterns]) but found " +
                                         print_term(clause));
    }
    Lvp lvp;
    lvp.lexical_unit = identifier(clause.args[0], "lexical unit");
    const std::string &pos = identifier(clause.args[1], "part of speech");
    if (pos == "v") {
      lvp.pos = LuPos::kVerb;
    } else if (pos == "n") {
      lvp.pos = LuPos::kNoun;
    } else {
      throw SyntaxError(clause.args[1].line, "part of speech must be v or n");
    }
    lvp.frame = identifier(clause.args[2], "frame name");
    const FrameDecl *frame = nullptr;
    for (const auto &f : frames) {
      if (f.name == lvp.frame) frame = &f;
    }
    if (!frame) throw UnknownFrame(lvp.frame);
    std::set<std::pair<std::string, std::string>> seen;
    for (const Term &p : list_items(clause.args[3], "patterns")) {
      if (!p.is_compound("pattern", 3)) {
        throw SyntaxError(p.line, "expected pattern(Role,Path,Flag)");
      }
      Pattern pat;
      pat.role = identifier(p.args[0], "role name");
      if (!frame->role(pat.role)) throw UnknownRole(lvp.frame, pat.role);
      if (!p.args[1].is_atom()) throw BadPath(print_term(p.args[1]));
      pat.path = PatternPath::parse(p.args[1].text);
      const bool verb_path = pat.path.head == PatternPath::Head::kVerb;
      if (verb_path != (lvp.pos == LuPos::kVerb)) throw BadPath(p.args[1].text);
      const std::string &flag = identifier(p.args[2], "flag");
      if (flag == "required") {
        pat.flag = PatternFlag::kRequired;
      } else if (flag == "optnl") {
        pat.flag = PatternFlag::kOptional;
      } else {
        throw SyntaxError(p.args[2].line, "flag must be required or optnl");
      }
      if (!seen.insert({pat.role, pat.path.str()}).second) {
        throw SyntaxError(p.line, "duplicate pattern for " + pat.role);
      }
      lvp.patterns.push_back(std::move(pat));
    }
    if (lvp.patterns.empty()) {
      throw SyntaxError(clause.line, "lvp " + lvp.id() + " has no patterns");
    }
    lvps.push_back(std::move(lvp));
  }
  return lvps;
}

std::string print_frames(const std::vector<FrameDecl> &frames) {
  std::string out;
  for (const auto &f : frames) {
    out += "fp(" + f.name + ",[";
    for (std::size_t i = 0; i < f.roles.size(); ++i) {
      const auto &r = f.roles[i];
      out += "\n    role(" + r.name + ",[";
      for (std::size_t j = 0; j < r.meanings.size(); ++j) {
        if (j) out += ",";
        out += r.meanings[j].str();
      }
      out += "],[";
      for (std::size_t j = 0; j < r.constraints.size(); ++j) {
        if (j) out += ",";
        out += r.constraints[j];
      }
      out += "])";
      out += i + 1 < f.roles.size() ? "," : "";
    }
    out += "]).\n";
  }
  return out;
}

std::string print_lvps(const std::vector<Lvp> &lvps) {
  std::string out;
  for (const auto &l : lvps) {
    out += "lvp(" + l.lexical_unit + "," + std::string(lu_pos_name(l.pos)) + "," +
           l.frame + ",[";
    for (std::size_t i = 0; i < l.patterns.size(); ++i) {
      const auto &p = l.patterns[i];
      out += "\n    pattern(" + p.role + "," + p.path.str() + "," +
             (p.required() ? "required" : "optnl") + ")";
      out += i + 1 < l.patterns.size() ? "," : "";
    }
    out += "]).\n";
  }
  return out;
}

}  // namespace kalm
