#ifndef KALM_TERM_H_
#define KALM_TERM_H_

// Reader and printer for the Prolog-like fact notation shared by the
// ontology, lvp, KB and gold files:
//
//   fp(Commerce_Buy,[role(Buyer,[bn:00014332n],[])]).
//   lvp(buy,v,Commerce_Buy,[pattern(Seller,verb->pp[from]->dep,optnl)]).
//   role(i1,buyer,"Mary",bn:00046516n).
//
// Atoms are bare words. They may contain ':' between word characters
// (synset ids) and '->' path steps with an optional [word] subscript, so
// grammatical patterns read as single atoms.

#include <string>
#include <string_view>
#include <vector>

namespace kalm {

struct Term {
  enum class Kind { kAtom, kNumber, kString, kVariable, kCompound, kList };

  Kind kind = Kind::kAtom;
  // Atom/number text, unescaped string contents, variable name without
  // '?', or the functor of a compound.
  std::string text;
  std::vector<Term> args;  // compound arguments or list items
  int line = 0;

  static Term atom(std::string text);
  static Term number(std::string text);
  static Term string(std::string text);
  static Term variable(std::string name);
  static Term compound(std::string functor, std::vector<Term> args);
  static Term list(std::vector<Term> items);

  bool is_atom() const { return kind == Kind::kAtom; }
  bool is_compound(std::string_view functor, std::size_t arity) const {
    return kind == Kind::kCompound && text == functor && args.size() == arity;
  }

  // Structural equality; source line numbers are ignored.
  friend bool operator==(const Term &a, const Term &b);
};

// Lexical tokens; exposed so the gold-file reader can reuse the lexer.
struct TermToken {
  enum class Kind {
    kAtom, kNumber, kString, kVariable, kPunct, kEnd
  };
  Kind kind;
  std::string text;
  int line;
  // True when no whitespace separates this token from the previous one.
  bool glued;
};

// Splits text into tokens. Punctuation: ( ) [ ] { } , . : @ ; =>
// Comments run from '%' or '#' to end of line. Throws SyntaxError.
std::vector<TermToken> lex_terms(std::string_view text);

// Parses a sequence of period-terminated clauses. Throws SyntaxError.
std::vector<Term> read_clauses(std::string_view text);

// Parses a single term from a token stream, advancing pos.
Term read_term(const std::vector<TermToken> &tokens, std::size_t &pos);

// Canonical form: no spaces, strings double-quoted with \" and \\ escapes.
std::string print_term(const Term &term);
std::string quote_string(std::string_view s);

}  // namespace kalm

#endif  // KALM_TERM_H_
