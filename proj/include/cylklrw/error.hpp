#pragma once
#include <stdexcept>
#include <string>

namespace ck {

// Error taxonomy shared by the C++ core, the C API (as codes) and the CLI
// (as exit classes).  Data errors are the caller's fault; engine errors
// indicate an internal invariant or budget failure.
enum class Err {
  Ok = 0,
  WordMismatch,    // stacking diagrams whose interface words differ
  BadWord,         // unparseable or invalid word / event string
  NonTerminating,  // rewrite budget exceeded (engine bug guard)
  NotDivisible,    // commutator not divisible by h
  MalformedTableau,
  SearchTooLarge,
  Inconclusive,    // equivalence solver cannot decide
  UnsupportedWord, // word outside the classified families
  IdentityFailed,  // a verification identity does not hold
  NoReferenceMatch,
  Overflow,        // 64-bit coefficient overflow
  Internal,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

} // namespace ck
