#pragma once

#include <stdexcept>
#include <string>

namespace viq {

enum class Err {
  ZeroInverse,
  NotFullRank,
  TooLarge,
  BadDims,
  Equivariance,
  WindowTooSmall,
  NoExactFit,
  Parse,
  UnsupportedField,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void raise(Err code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Err code, const std::string& what) {
  if (!ok) raise(code, what);
}

// Invariant that must hold by construction; failure means a bug, not bad input.
inline void ensure(bool ok, const std::string& what) {
  if (!ok) raise(Err::Internal, "internal invariant violated: " + what);
}

}  // namespace viq
