#include "kalm/cnl_parser.h"

#include <algorithm>
#include <cctype>
#include <optional>

#include "kalm/errors.h"

namespace kalm {

namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)); }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
bool is_word(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-' ||
         static_cast<unsigned char>(c) >= 0x80;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, const Lexicon &lex) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (is_word(c)) {
      std::size_t j = i;
      while (j < text.size()) {
        if (is_word(text[j])) {
          ++j;
        } else if (text[j] == '.' && j + 1 < text.size() && is_digit(text[j + 1]) &&
                   j > i && all_digits(text.substr(i, j - i))) {
          ++j;  // decimal point inside a number
        } else {
          break;
        }
      }
      words.emplace_back(text.substr(i, j - i));
      i = j;
    } else {
      words.emplace_back(1, c);
      ++i;
    }
  }
  if (words.empty()) throw EmptyInput();

  std::vector<Token> tokens;
  for (std::size_t k = 0; k < words.size(); ++k) {
    Token t;
    t.surface = words[k];
    t.index = k;
    const std::string &w = t.surface;
    if (w == "." || w == "?" || w == ",") {
      t.lemma = w;
      t.pos = Pos::kPunct;
    } else if (is_digit(w[0])) {
      bool numeric = std::all_of(w.begin(), w.end(),
                                 [](char c) { return is_digit(c) || c == '.'; });
      if (!numeric) throw UnknownToken(w, k);
      t.lemma = w;
      t.pos = Pos::kNum;
    } else {
      const auto *readings = &lex.lookup(w);
      if (readings->empty() && k == 0) readings = &lex.lookup(lower(w));
      if (!readings->empty()) {
        t.readings = *readings;
        t.lemma = t.readings.front().lemma;
        t.pos = t.readings.front().pos;
      } else if (is_upper(w[0]) && lex.propn_fallback()) {
        t.lemma = w;
        t.pos = Pos::kPropn;
      } else {
        throw UnknownToken(w, k);
      }
    }
    tokens.push_back(std::move(t));
  }
  return tokens;
}

namespace {

// A noun referent introduced inside the verb phrase, with the lexicon
// entry that decides which prepositions it licenses.
struct VpNoun {
  Ref ref;
  const LexEntry *entry;
};

struct State {
  std::size_t pos = 0;
  Drs drs;
  int next_x = 1;
  int next_e = 1;
  std::optional<Ref> gap;  // unfilled wh-referent (do-support questions)
  std::vector<VpNoun> vp_nouns;

  Ref new_entity() {
    Ref r = Ref::entity(next_x++);
    drs.referents.push_back(r);
    return r;
  }
  Ref new_event() {
    Ref r = Ref::event(next_e++);
    drs.referents.push_back(r);
    return r;
  }
  void add(Condition c) { drs.conditions.push_back(std::move(c)); }
};

struct NpResult {
  State state;
  Ref head;
};

class Parser {
 public:
  explicit Parser(const std::vector<Token> &tokens) : toks_(tokens) {}

  Drs run(bool question) {
    std::vector<State> done;
    State start;
    if (question) {
      parse_question(start, done);
    } else {
      for (const auto &t : toks_) {
        if (t.pos == Pos::kQword) throw ParseError(t.index, "declarative word");
      }
      for (auto &np : parse_np(start, "subject-NP")) {
        for (auto &s : parse_vp(np.state, np.head)) finish(s, ".", done);
      }
    }
    std::vector<Drs> distinct;
    for (auto &s : done) {
      if (std::find(distinct.begin(), distinct.end(), s.drs) == distinct.end()) {
        distinct.push_back(std::move(s.drs));
      }
    }
    if (distinct.empty()) throw ParseError(fail_pos_, fail_expected_);
    if (distinct.size() > 1) throw AmbiguityError(distinct.size());
    return std::move(distinct.front());
  }

 private:
  const Token *at(std::size_t pos) const {
    return pos < toks_.size() ? &toks_[pos] : nullptr;
  }

  void fail(std::size_t pos, std::string expected) {
    if (!failed_ || pos > fail_pos_) {
      failed_ = true;
      fail_pos_ = pos;
      fail_expected_ = std::move(expected);
    }
  }

  bool is_punct(std::size_t pos, std::string_view p) const {
    const Token *t = at(pos);
    return t && t->pos == Pos::kPunct && t->surface == p;
  }

  // Readings of the token at pos with the given part of speech. Tokens
  // without lexicon readings (names, numbers) match on their own tag.
  std::vector<const LexEntry *> readings(std::size_t pos, Pos want) const {
    std::vector<const LexEntry *> out;
    if (const Token *t = at(pos)) {
      for (const auto &r : t->readings) {
        if (r.pos == want) out.push_back(&r);
      }
    }
    return out;
  }

  bool has(std::size_t pos, Pos want) const {
    const Token *t = at(pos);
    if (!t) return false;
    if (t->readings.empty()) return t->pos == want;
    return !readings(pos, want).empty();
  }

  bool lemma_is(std::size_t pos, Pos want, std::string_view lemma) const {
    for (const auto *r : readings(pos, want)) {
      if (r->lemma == lemma) return true;
    }
    return false;
  }

  void finish(State s, std::string_view mark, std::vector<State> &done) {
    if (!is_punct(s.pos, mark)) {
      fail(s.pos, "'" + std::string(mark) + "'");
      return;
    }
    if (s.pos + 1 != toks_.size()) {
      fail(s.pos + 1, "end of sentence");
      return;
    }
    if (s.gap) {
      fail(s.pos, "question gap");
      return;
    }
    s.pos++;
    done.push_back(std::move(s));
  }

  // Adj* Noun with the referent already allocated; appends the object
  // and property conditions.
  std::vector<NpResult> parse_nominal(State s, Quant quant,
                                      std::optional<QKind> which) {
    std::vector<std::string> adjs;
    while (has(s.pos, Pos::kAdj) && !has(s.pos, Pos::kNoun)) {
      adjs.push_back(readings(s.pos, Pos::kAdj).front()->lemma);
      s.pos++;
    }
    std::vector<NpResult> out;
    const auto nouns = readings(s.pos, Pos::kNoun);
    if (nouns.empty()) {
      fail(s.pos, "noun");
      return out;
    }
    for (const auto *noun : nouns) {
      State n = s;
      Ref x = n.new_entity();
      if (which) n.add(cond::Query{x, *which});
      n.add(cond::Object{x, noun->lemma, quant});
      for (const auto &a : adjs) n.add(cond::Property{x, a});
      n.vp_nouns.push_back({x, noun});
      n.pos++;
      for (auto &r : parse_of_tail(std::move(n), x)) out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<NpResult> parse_of_tail(State s, Ref head) {
    if (!(has(s.pos, Pos::kPrep) && lemma_is(s.pos, Pos::kPrep, "of"))) {
      return {{std::move(s), head}};
    }
    std::vector<NpResult> out;
    s.pos++;
    const std::size_t slot = s.drs.conditions.size();
    s.add(cond::Relation{head, "of", head});
    for (auto &dep : parse_np(std::move(s), "of-NP")) {
      std::get<cond::Relation>(dep.state.drs.conditions[slot]).dep = dep.head;
      dep.head = head;
      out.push_back(std::move(dep));
    }
    return out;
  }

  std::vector<NpResult> parse_np(State s, const std::string &label) {
    const Token *t = at(s.pos);
    std::vector<NpResult> out;
    if (!t) {
      fail(s.pos, label);
      return out;
    }
    if (has(s.pos, Pos::kPropn)) {
      State n = s;
      Ref x = n.new_entity();
      n.add(cond::Named{x, t->surface});
      n.vp_nouns.push_back({x, nullptr});
      n.pos++;
      return parse_of_tail(std::move(n), x);
    }
    if (t->pos == Pos::kNum) {
      State n = s;
      Ref x = n.new_entity();
      n.pos++;
      std::string unit;
      const LexEntry *unit_entry = nullptr;
      if (const auto units = readings(n.pos, Pos::kNoun); !units.empty()) {
        unit_entry = units.front();
        unit = unit_entry->lemma;
        n.pos++;
      }
      n.add(cond::Num{x, t->lemma, unit});
      n.vp_nouns.push_back({x, unit_entry});
      out.push_back({std::move(n), x});
      return out;
    }
    bool started = false;
    for (const auto *det : readings(s.pos, Pos::kDet)) {
      started = true;
      State n = s;
      n.pos++;
      Quant q = det->lemma == "the" ? Quant::kDef : Quant::kIndef;
      for (auto &r : parse_nominal(std::move(n), q, std::nullopt)) {
        out.push_back(std::move(r));
      }
    }
    if (has(s.pos, Pos::kAdj) || has(s.pos, Pos::kNoun)) {
      started = true;
      for (auto &r : parse_nominal(s, Quant::kBare, std::nullopt)) {
        out.push_back(std::move(r));
      }
    }
    if (!started) fail(s.pos, label);
    return out;
  }

  // Wh-phrase at the start of a question.
  std::vector<NpResult> parse_wh(State s) {
    std::vector<NpResult> out;
    const Token *t = at(s.pos);
    if (!t || readings(s.pos, Pos::kQword).empty()) {
      fail(s.pos, "question word");
      return out;
    }
    const std::string &w = readings(s.pos, Pos::kQword).front()->lemma;
    s.pos++;
    if (w == "which") return parse_nominal(std::move(s), Quant::kBare, QKind::kWhich);
    QKind kind;
    if (w == "who") {
      kind = QKind::kWho;
    } else if (w == "what") {
      kind = QKind::kWhat;
    } else {
      fail(s.pos - 1, "who, what or which");
      return out;
    }
    Ref x = s.new_entity();
    s.add(cond::Query{x, kind});
    out.push_back({std::move(s), x});
    return out;
  }

  // Attachment sites for a PP headed by `prep`.
  std::vector<Ref> attachment_sites(const State &s, Ref event,
                                    const LexEntry &verb,
                                    const std::string &prep) const {
    std::vector<Ref> sites;
    if (verb.licenses(prep)) sites.push_back(event);
    const VpNoun *nearest = nullptr;
    const VpNoun *licensed = nullptr;
    for (auto it = s.vp_nouns.rbegin(); it != s.vp_nouns.rend(); ++it) {
      if (!nearest) nearest = &*it;
      if (it->entry && it->entry->licenses(prep)) {
        licensed = &*it;
        break;
      }
    }
    if (licensed) {
      sites.push_back(licensed->ref);
    } else if (sites.empty()) {
      sites.push_back(nearest ? nearest->ref : event);
    }
    return sites;
  }

  // PP* after the verb's arguments. A preposition directly before '?'
  // strands the wh-gap.
  void parse_pps(State s, Ref event, const LexEntry &verb,
                 std::vector<State> &out) {
    const auto preps = readings(s.pos, Pos::kPrep);
    if (preps.empty()) {
      out.push_back(std::move(s));
      return;
    }
    const std::string prep = preps.front()->lemma;
    const std::size_t prep_pos = s.pos;
    if (s.gap && is_punct(prep_pos + 1, "?")) {
      for (Ref site : attachment_sites(s, event, verb, prep)) {
        State n = s;
        n.pos = prep_pos + 1;
        n.add(cond::ModifierPp{site, prep, *n.gap});
        n.gap.reset();
        out.push_back(std::move(n));
      }
      return;
    }
    for (Ref site : attachment_sites(s, event, verb, prep)) {
      State n = s;
      n.pos = prep_pos + 1;
      const std::size_t slot = n.drs.conditions.size();
      n.add(cond::ModifierPp{site, prep, site});
      for (auto &dep : parse_np(std::move(n), "PP-object-NP")) {
        std::get<cond::ModifierPp>(dep.state.drs.conditions[slot]).dep = dep.head;
        parse_pps(std::move(dep.state), event, verb, out);
      }
    }
  }

  // Verb with its arguments. `subject` is already introduced. With
  // do_support the verb follows "does NP" and one argument may be the gap.
  std::vector<State> parse_verb(State s, Ref subject, bool do_support) {
    std::vector<State> out;
    const auto verbs = readings(s.pos, Pos::kVerb);
    for (const auto *verb : verbs) {
      if (!do_support && verb->lemma == "do") continue;
      State v = s;
      v.pos++;
      v.vp_nouns.clear();
      Ref e = v.new_event();
      const std::size_t slot = v.drs.conditions.size();
      v.add(cond::Predicate{e, verb->lemma, subject, std::nullopt, std::nullopt});

      std::vector<std::pair<State, std::vector<Ref>>> framed;
      const int wanted = verb->valence == Valence::kDitrans ? 2
                         : verb->valence == Valence::kTrans ? 1
                                                            : 0;
      collect_args(std::move(v), wanted, {}, framed);
      for (auto &[a, args] : framed) {
        auto &pred = std::get<cond::Predicate>(a.drs.conditions[slot]);
        if (wanted == 1) pred.object = args[0];
        if (wanted == 2) {
          pred.indobject = args[0];
          pred.object = args[1];
        }
        parse_pps(std::move(a), e, *verb, out);
      }
    }
    return out;
  }

  // Reads `wanted` object NPs; in a gapped question a missing NP may be
  // filled by the gap (the gap takes the direct-object slot).
  void collect_args(State s, int wanted, std::vector<Ref> args,
                    std::vector<std::pair<State, std::vector<Ref>>> &out) {
    if (static_cast<int>(args.size()) == wanted) {
      out.emplace_back(std::move(s), std::move(args));
      return;
    }
    const bool np_starts = has(s.pos, Pos::kPropn) || has(s.pos, Pos::kNum) ||
                           has(s.pos, Pos::kDet) || has(s.pos, Pos::kNoun) ||
                           has(s.pos, Pos::kAdj);
    if (s.gap && !np_starts) {
      // "What does John give Mary?": the NP already read is the indirect
      // object and the gap is the direct object.
      State g = s;
      std::vector<Ref> a = args;
      a.push_back(*g.gap);
      g.gap.reset();
      collect_args(std::move(g), wanted, std::move(a), out);
      return;
    }
    for (auto &np : parse_np(s, "object-NP")) {
      std::vector<Ref> a = args;
      a.push_back(np.head);
      collect_args(std::move(np.state), wanted, std::move(a), out);
    }
  }

  std::vector<State> parse_vp(State s, Ref subject) {
    std::vector<State> out;
    if (has(s.pos, Pos::kCop)) {
      State c = s;
      c.pos++;
      c.vp_nouns.clear();
      if (const auto adjs = readings(c.pos, Pos::kAdj);
          !adjs.empty() && !has(c.pos, Pos::kNoun) && !has(c.pos + 1, Pos::kNoun)) {
        c.add(cond::Property{subject, adjs.front()->lemma});
        c.pos++;
        out.push_back(std::move(c));
        return out;
      }
      const std::size_t slot = c.drs.conditions.size();
      c.add(cond::Isa{subject, subject});
      for (auto &np : parse_np(std::move(c), "complement-NP")) {
        std::get<cond::Isa>(np.state.drs.conditions[slot]).type = np.head;
        out.push_back(std::move(np.state));
      }
      return out;
    }
    if (!has(s.pos, Pos::kVerb)) {
      fail(s.pos, "verb");
      return out;
    }
    return parse_verb(std::move(s), subject, false);
  }

  void parse_question(State start, std::vector<State> &done) {
    if (!is_punct(toks_.size() - 1, "?")) {
      fail(toks_.size() - 1, "'?'");
      return;
    }
    for (auto &wh : parse_wh(std::move(start))) {
      // subject gap
      for (auto &s : parse_vp(wh.state, wh.head)) finish(s, "?", done);
      // do-support: WhNP does NP Verb ...
      if (lemma_is(wh.state.pos, Pos::kVerb, "do")) {
        State d = wh.state;
        d.pos++;
        d.gap = wh.head;
        for (auto &subj : parse_np(std::move(d), "subject-NP")) {
          if (!has(subj.state.pos, Pos::kVerb)) {
            fail(subj.state.pos, "verb");
            continue;
          }
          for (auto &s : parse_verb(std::move(subj.state), subj.head, true)) {
            finish(s, "?", done);
          }
        }
      }
    }
  }

  const std::vector<Token> &toks_;
  bool failed_ = false;
  std::size_t fail_pos_ = 0;
  std::string fail_expected_;
};

}  // namespace

Drs parse_sentence(const std::vector<Token> &tokens) {
  if (tokens.empty()) throw EmptyInput();
  return Parser(tokens).run(false);
}

Drs parse_question(const std::vector<Token> &tokens) {
  if (tokens.empty()) throw EmptyInput();
  return Parser(tokens).run(true);
}

Drs parse_any(const std::vector<Token> &tokens) {
  if (tokens.empty()) throw EmptyInput();
  const Token &last = tokens.back();
  if (last.pos == Pos::kPunct && last.surface == "?") return parse_question(tokens);
  return parse_sentence(tokens);
}

}  // namespace kalm
