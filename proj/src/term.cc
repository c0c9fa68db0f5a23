#include "kalm/term.h"

#include <cctype>

#include "kalm/errors.h"

namespace kalm {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

// Scans an atom or number starting at i.
std::size_t scan_word(std::string_view text, std::size_t i, bool *path) {
  const std::size_t n = text.size();
  *path = false;
  while (i < n) {
    if (is_word_char(text[i])) {
      ++i;
    } else if (text[i] == ':' && i + 1 < n && is_word_char(text[i + 1]) &&
               i > 0 && is_word_char(text[i - 1])) {
      ++i;
    } else if (text[i] == '-' && i + 2 < n && text[i + 1] == '>' &&
               is_word_char(text[i + 2])) {
      *path = true;
      i += 2;
    } else if (text[i] == '[' && *path && i > 0 && is_word_char(text[i - 1])) {
      // path subscript: pp[for]
      std::size_t j = i + 1;
      while (j < n && is_word_char(text[j])) ++j;
      if (j == i + 1 || j >= n || text[j] != ']') break;
      i = j + 1;
    } else {
      break;
    }
  }
  return i;
}

bool all_numeric(std::string_view s) {
  if (s.empty()) return false;
  bool dot = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '.') {
      if (dot || i == 0 || i + 1 == s.size()) return false;
      dot = true;
    } else if (!is_digit(s[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace

Term Term::atom(std::string text) {
  Term t;
  t.kind = Kind::kAtom;
  t.text = std::move(text);
  return t;
}

Term Term::number(std::string text) {
  Term t;
  t.kind = Kind::kNumber;
  t.text = std::move(text);
  return t;
}

Term Term::string(std::string text) {
  Term t;
  t.kind = Kind::kString;
  t.text = std::move(text);
  return t;
}

Term Term::variable(std::string name) {
  Term t;
  t.kind = Kind::kVariable;
  t.text = std::move(name);
  return t;
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  Term t;
  t.kind = Kind::kCompound;
  t.text = std::move(functor);
  t.args = std::move(args);
  return t;
}

Term Term::list(std::vector<Term> items) {
  Term t;
  t.kind = Kind::kList;
  t.args = std::move(items);
  return t;
}

bool operator==(const Term &a, const Term &b) {
  return a.kind == b.kind && a.text == b.text && a.args == b.args;
}

std::vector<TermToken> lex_terms(std::string_view text) {
  std::vector<TermToken> out;
  int line = 1;
  bool glued = false;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      glued = false;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      glued = false;
      continue;
    }
    if (c == '%' || c == '#') {
      while (i < n && text[i] != '\n') ++i;
      glued = false;
      continue;
    }
    if (c == '"') {
      std::string s;
      ++i;
      const int start_line = line;
      bool closed = false;
      while (i < n) {
        if (text[i] == '\\' && i + 1 < n) {
          s.push_back(text[i + 1]);
          i += 2;
        } else if (text[i] == '"') {
          ++i;
          closed = true;
          break;
        } else {
          if (text[i] == '\n') ++line;
          s.push_back(text[i++]);
        }
      }
      if (!closed) throw SyntaxError(start_line, "unterminated string");
      out.push_back({TermToken::Kind::kString, std::move(s), start_line, glued});
      glued = true;
      continue;
    }
    if (c == '?') {
      std::size_t j = i + 1;
      while (j < n && is_word_char(text[j])) ++j;
      if (j == i + 1) throw SyntaxError(line, "empty variable name");
      out.push_back({TermToken::Kind::kVariable,
                     std::string(text.substr(i + 1, j - i - 1)), line, glued});
      i = j;
      glued = true;
      continue;
    }
    if (is_word_char(c)) {
      bool path = false;
      std::size_t j = scan_word(text, i, &path);
      // decimal numbers: 12.50
      if (!path && j + 1 < n && text[j] == '.' && is_digit(text[j + 1]) &&
          all_numeric(text.substr(i, j - i))) {
        j += 1;
        while (j < n && is_digit(text[j])) ++j;
      }
      std::string word(text.substr(i, j - i));
      const auto kind = all_numeric(word) ? TermToken::Kind::kNumber
                                          : TermToken::Kind::kAtom;
      out.push_back({kind, std::move(word), line, glued});
      i = j;
      glued = true;
      continue;
    }
    if (c == '=' && i + 1 < n && text[i + 1] == '>') {
      out.push_back({TermToken::Kind::kPunct, "=>", line, glued});
      i += 2;
      glued = true;
      continue;
    }
    static constexpr std::string_view kPunct = "()[]{},.:@;";
    if (kPunct.find(c) != std::string_view::npos) {
      out.push_back({TermToken::Kind::kPunct, std::string(1, c), line, glued});
      ++i;
      glued = true;
      continue;
    }
    throw SyntaxError(line, std::string("unexpected character '") + c + "'");
  }
  out.push_back({TermToken::Kind::kEnd, "", line, false});
  return out;
}

namespace {

bool is_punct(const TermToken &t, std::string_view p) {
  return t.kind == TermToken::Kind::kPunct && t.text == p;
}

void expect(const std::vector<TermToken> &tokens, std::size_t &pos,
            std::string_view p) {
  if (!is_punct(tokens[pos], p)) {
    const auto &t = tokens[pos];
    throw SyntaxError(t.line, "expected '" + std::string(p) + "' but found " +
                                  (t.kind == TermToken::Kind::kEnd
                                       ? std::string("end of input")
                                       : "'" + t.text + "'"));
  }
  ++pos;
}

std::vector<Term> read_sequence(const std::vector<TermToken> &tokens,
                                std::size_t &pos, std::string_view close) {
  std::vector<Term> items;
  if (is_punct(tokens[pos], close)) {
    ++pos;
    return items;
  }
  for (;;) {
    items.push_back(read_term(tokens, pos));
    if (is_punct(tokens[pos], ",")) {
      ++pos;
      continue;
    }
    expect(tokens, pos, close);
    return items;
  }
}

}  // namespace

Term read_term(const std::vector<TermToken> &tokens, std::size_t &pos) {
  const TermToken &t = tokens[pos];
  Term result;
  switch (t.kind) {
    case TermToken::Kind::kAtom:
      ++pos;
      if (is_punct(tokens[pos], "(") && tokens[pos].glued) {
        ++pos;
        result = Term::compound(t.text, read_sequence(tokens, pos, ")"));
        if (result.args.empty()) {
          throw SyntaxError(t.line, "compound '" + t.text + "' has no arguments");
        }
      } else {
        result = Term::atom(t.text);
      }
      break;
    case TermToken::Kind::kNumber:
      ++pos;
      result = Term::number(t.text);
      break;
    case TermToken::Kind::kString:
      ++pos;
      result = Term::string(t.text);
      break;
    case TermToken::Kind::kVariable:
      ++pos;
      result = Term::variable(t.text);
      break;
    case TermToken::Kind::kPunct:
      if (t.text == "[") {
        ++pos;
        result = Term::list(read_sequence(tokens, pos, "]"));
        break;
      }
      throw SyntaxError(t.line, "unexpected '" + t.text + "'");
    case TermToken::Kind::kEnd:
      throw SyntaxError(t.line, "unexpected end of input");
  }
  result.line = t.line;
  return result;
}

std::vector<Term> read_clauses(std::string_view text) {
  const auto tokens = lex_terms(text);
  std::vector<Term> clauses;
  std::size_t pos = 0;
  while (tokens[pos].kind != TermToken::Kind::kEnd) {
    clauses.push_back(read_term(tokens, pos));
    expect(tokens, pos, ".");
  }
  return clauses;
}

std::string quote_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string print_term(const Term &term) {
  switch (term.kind) {
    case Term::Kind::kAtom:
    case Term::Kind::kNumber:
      return term.text;
    case Term::Kind::kString:
      return quote_string(term.text);
    case Term::Kind::kVariable:
      return "?" + term.text;
    case Term::Kind::kCompound:
    case Term::Kind::kList: {
      std::string out = term.kind == Term::Kind::kList ? "[" : term.text + "(";
      for (std::size_t i = 0; i < term.args.size(); ++i) {
        if (i > 0) out.push_back(',');
        out += print_term(term.args[i]);
      }
      out.push_back(term.kind == Term::Kind::kList ? ']' : ')');
      return out;
    }
  }
  return {};
}

}  // namespace kalm
