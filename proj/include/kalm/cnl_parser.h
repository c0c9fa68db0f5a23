#ifndef KALM_CNL_PARSER_H_
#define KALM_CNL_PARSER_H_

// Tokenizer and grammar for the controlled-English subset.
//
// Declaratives:  NP VP '.'
//   NP  := ProperName | Det Adj* Noun OfTail | Adj* Noun OfTail | Num [Unit]
//   VP  := Verb [NP [NP]] PP*          (by valence: intrans/trans/ditrans)
//        | 'is' NP | 'is' Adj
// Questions (one wh-gap):
//   WhNP VP '?'                         Who buys a car?
//   WhNP 'does' NP VerbBase ... '?'     What does Mary buy?
//                                       Who does Mary buy a car from?
//   WhNP := who | what | which Adj* Noun
//
// A PP attaches to the verb when the verb licenses the preposition, and
// otherwise to the nearest preceding noun that licenses it (or just the
// nearest noun). When both the verb and a noun license it the sentence
// has two readings and is rejected.

#include <string>
#include <string_view>
#include <vector>

#include "kalm/drs.h"
#include "kalm/lexicon.h"

namespace kalm {

struct Token {
  std::string surface;
  std::string lemma;  // lowercase except for proper names
  Pos pos = Pos::kNoun;
  std::size_t index = 0;
  // All lexicon readings; lemma/pos mirror the first one. Empty for
  // proper names, numbers and punctuation.
  std::vector<LexEntry> readings;
};

// Throws EmptyInput or UnknownToken.
std::vector<Token> tokenize(std::string_view text, const Lexicon &lex);

// Throws ParseError or AmbiguityError.
Drs parse_sentence(const std::vector<Token> &tokens);
Drs parse_question(const std::vector<Token> &tokens);

// Dispatches on the final punctuation mark.
Drs parse_any(const std::vector<Token> &tokens);

}  // namespace kalm

#endif  // KALM_CNL_PARSER_H_
