#pragma once

#include <gmpxx.h>

#include <string>

#include "viq/error.hpp"

namespace viq {

// Exact rationals backed by GMP, presented through the same ring-context
// interface as FpRing so the linear algebra is generic over both.
struct RatRing {
  using Elem = mpq_class;

  Elem zero() const { return mpq_class(0); }
  Elem one() const { return mpq_class(1); }
  Elem from_long(long long v) const { return mpq_class(static_cast<long>(v)); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    require(a != 0, Err::ZeroInverse, "inverse of zero rational");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const {
    require(b != 0, Err::ZeroInverse, "division by zero rational");
    return a / b;
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string str(const Elem& a) const { return a.get_str(); }
  Elem parse(const std::string& s) const {
    require(!s.empty(), Err::Parse, "empty scalar");
    for (char c : s)
      require((c >= '0' && c <= '9') || c == '-' || c == '/', Err::Parse,
              "rational scalars are decimal strings like \"-3/7\"");
    mpq_class v;
    if (v.set_str(s, 10) != 0) raise(Err::Parse, "bad rational scalar: " + s);
    require(v.get_den() != 0, Err::Parse, "zero denominator: " + s);
    v.canonicalize();
    return v;
  }

  bool operator==(const RatRing&) const { return true; }
};

}  // namespace viq
