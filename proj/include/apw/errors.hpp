#pragma once

#include <stdexcept>
#include <string>

namespace apw {

// Domain gates. Every rejected input or failed precondition carries exactly
// one of these; the CLI maps them to exit code 1 and prints the gate name.
enum class Gate {
  ParseError,
  NonUniform,
  UnknownLetter,
  DuplicateRule,
  EmptyImage,
  AlphabetTooLarge,
  NoFixedPoint,
  NonGrowing,
  NotPrimitive,
  PeriodicInput,
  NotRecurrentInWindow,
  NoConstantFound,
  ConstantTooLarge,
  WindowTooSmall,
  InsufficientLength,
  SearchExhausted,
  IoError,
};

inline const char* gate_name(Gate g) {
  switch (g) {
    case Gate::ParseError: return "ParseError";
    case Gate::NonUniform: return "NonUniform";
    case Gate::UnknownLetter: return "UnknownLetter";
    case Gate::DuplicateRule: return "DuplicateRule";
    case Gate::EmptyImage: return "EmptyImage";
    case Gate::AlphabetTooLarge: return "AlphabetTooLarge";
    case Gate::NoFixedPoint: return "NoFixedPoint";
    case Gate::NonGrowing: return "NonGrowing";
    case Gate::NotPrimitive: return "NotPrimitive";
    case Gate::PeriodicInput: return "PeriodicInput";
    case Gate::NotRecurrentInWindow: return "NotRecurrentInWindow";
    case Gate::NoConstantFound: return "NoConstantFound";
    case Gate::ConstantTooLarge: return "ConstantTooLarge";
    case Gate::WindowTooSmall: return "WindowTooSmall";
    case Gate::InsufficientLength: return "InsufficientLength";
    case Gate::SearchExhausted: return "SearchExhausted";
    case Gate::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Gate gate, const std::string& what) : std::runtime_error(what), gate_(gate) {}
  Gate gate() const { return gate_; }

 private:
  Gate gate_;
};

[[noreturn]] inline void fail(Gate g, const std::string& msg) { throw Error(g, msg); }

}  // namespace apw
