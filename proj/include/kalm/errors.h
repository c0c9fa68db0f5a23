#ifndef KALM_ERRORS_H_
#define KALM_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kalm {

// Base class for every error raised by the pipeline.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- sentence front end ----

class EmptyInput : public Error {
 public:
  EmptyInput() : Error("empty input") {}
};

class UnknownToken : public Error {
 public:
  UnknownToken(std::string surface, std::size_t index)
      : Error("unknown token: " + surface),
        surface(std::move(surface)),
        index(index) {}
  std::string surface;
  std::size_t index;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t index, std::string expected)
      : Error("parse error at token " + std::to_string(index) +
              ": expected " + expected),
        index(index),
        expected(std::move(expected)) {}
  std::size_t index;
  std::string expected;
};

class AmbiguityError : public Error {
 public:
  explicit AmbiguityError(std::size_t count)
      : Error("ambiguous sentence: " + std::to_string(count) + " readings"),
        count(count) {}
  std::size_t count;
};

// ---- fact files ----

class SyntaxError : public Error {
 public:
  SyntaxError(int line, std::string detail)
      : Error("syntax error on line " + std::to_string(line) + ": " + detail),
        line(line),
        detail(std::move(detail)) {}
  int line;
  std::string detail;
};

// A KB file that parses but violates the fact-store invariants.
class KbIntegrityError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class DuplicateFrame : public Error {
 public:
  explicit DuplicateFrame(std::string name)
      : Error("duplicate frame: " + name), name(std::move(name)) {}
  std::string name;
};

class BadSynsetId : public Error {
 public:
  explicit BadSynsetId(std::string token)
      : Error("bad synset id: " + token), token(std::move(token)) {}
  std::string token;
};

class UnknownFrame : public Error {
 public:
  explicit UnknownFrame(std::string name)
      : Error("unknown frame: " + name), name(std::move(name)) {}
  std::string name;
};

class UnknownRole : public Error {
 public:
  UnknownRole(std::string frame, std::string role)
      : Error("unknown role " + role + " in frame " + frame),
        frame(std::move(frame)),
        role(std::move(role)) {}
  std::string frame;
  std::string role;
};

class BadPath : public Error {
 public:
  explicit BadPath(std::string text)
      : Error("bad pattern path: " + text), text(std::move(text)) {}
  std::string text;
};

// ---- semantics ----

class NoFrameMatched : public Error {
 public:
  NoFrameMatched() : Error("no frame matched") {}
};

class NoSenses : public Error {
 public:
  explicit NoSenses(std::string lemma)
      : Error("no senses for: " + lemma), lemma(std::move(lemma)) {}
  std::string lemma;
};

class MultipleQueryVars : public Error {
 public:
  MultipleQueryVars() : Error("question binds more than one query variable") {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace kalm

#endif  // KALM_ERRORS_H_
