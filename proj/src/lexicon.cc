#include "kalm/lexicon.h"

#include <fstream>
#include <sstream>

#include "kalm/errors.h"

namespace kalm {

namespace {

constexpr std::string_view kPosNames[] = {"noun", "propn", "verb", "adj",
                                          "prep", "det",   "qword", "punct",
                                          "cop",  "num"};

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = s.find(sep, start);
    parts.emplace_back(s.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \r\t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \r\t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view pos_name(Pos pos) { return kPosNames[static_cast<int>(pos)]; }

bool parse_pos(std::string_view name, Pos *pos) {
  for (std::size_t i = 0; i < std::size(kPosNames); ++i) {
    if (kPosNames[i] == name) {
      *pos = static_cast<Pos>(i);
      return true;
    }
  }
  return false;
}

std::string_view valence_name(Valence v) {
  switch (v) {
    case Valence::kIntrans: return "intrans";
    case Valence::kTrans: return "trans";
    case Valence::kDitrans: return "ditrans";
    case Valence::kNone: break;
  }
  return "none";
}

void Lexicon::add(std::string surface, LexEntry entry) {
  for (const auto &tag : entry.tags) lemma_tags_[entry.lemma].insert(tag);
  entries_[std::move(surface)].push_back(std::move(entry));
}

const std::vector<LexEntry> &Lexicon::lookup(std::string_view surface) const {
  static const std::vector<LexEntry> kEmpty;
  auto it = entries_.find(surface);
  return it == entries_.end() ? kEmpty : it->second;
}

bool Lexicon::lemma_has_tag(std::string_view lemma, std::string_view tag) const {
  auto it = lemma_tags_.find(lemma);
  return it != lemma_tags_.end() && it->second.count(std::string(tag)) > 0;
}

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lex;
  int line_no = 0;
  for (const auto &raw : split(text, '\n')) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() < 3 || fields.size() > 4) {
      throw SyntaxError(line_no, "expected surface<TAB>lemma<TAB>pos[<TAB>attrs]");
    }
    LexEntry entry;
    entry.lemma = trim(fields[1]);
    if (!parse_pos(trim(fields[2]), &entry.pos)) {
      throw SyntaxError(line_no, "unknown part of speech '" + fields[2] + "'");
    }
    if (fields.size() == 4) {
      for (const auto &a : split(fields[3], ',')) {
        std::string attr = trim(a);
        if (attr.empty()) continue;
        if (attr == "intrans") {
          entry.valence = Valence::kIntrans;
        } else if (attr == "trans") {
          entry.valence = Valence::kTrans;
        } else if (attr == "ditrans") {
          entry.valence = Valence::kDitrans;
        } else if (attr.rfind("pp:", 0) == 0 && attr.size() > 3) {
          entry.preps.insert(attr.substr(3));
        } else {
          entry.tags.insert(attr);
        }
      }
    }
    if (entry.pos == Pos::kVerb && entry.valence == Valence::kNone) {
      throw SyntaxError(line_no, "verb '" + fields[0] + "' needs a valence");
    }
    if (entry.pos != Pos::kVerb && entry.valence != Valence::kNone) {
      throw SyntaxError(line_no, "valence on non-verb '" + fields[0] + "'");
    }
    lex.add(trim(fields[0]), std::move(entry));
  }
  return lex;
}

Lexicon Lexicon::load_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace kalm
