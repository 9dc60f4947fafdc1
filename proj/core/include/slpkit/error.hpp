#pragma once

#include <stdexcept>
#include <string>

namespace slpkit {

enum class Errc {
  EmptyString,
  SymbolOutOfRange,
  TooLarge,
  LengthOverflow,
  IndexOutOfRange,
  ParseError,
  ForwardReference,
  PatternLongerThanText,
  AlphabetMismatch,
  UndeclaredSymbol,
  UnequalLength,
  NonBinaryAlphabet,
  TypeMismatch,
  InvalidAlignment,
  WeightBoundViolated,
  NoHalfClique,
  InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& what) { throw Error(c, what); }

}  // namespace slpkit
