#pragma once

#include <cstdint>
#include <string>

#include "viq/error.hpp"

namespace viq {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Prime field F_p with runtime modulus. Elements are canonical residues in
// [0, p); all arithmetic goes through the ring context so the residues stay
// plain integers.
struct FpRing {
  using Elem = std::uint64_t;

  std::uint64_t p = 2;

  FpRing() = default;
  explicit FpRing(std::uint64_t modulus) : p(modulus) {
    require(is_prime(p), Err::UnsupportedField, "modulus must be prime");
  }

  Elem zero() const { return 0; }
  Elem one() const { return p > 1 ? 1 : 0; }
  Elem from_long(long long v) const {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return static_cast<Elem>(r);
  }
  Elem add(Elem a, Elem b) const { return (a + b) % p; }
  Elem sub(Elem a, Elem b) const { return (a + p - b) % p; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const {
    require(a != 0, Err::ZeroInverse, "inverse of zero residue");
    // Fermat: a^(p-2) mod p.
    Elem r = 1, base = a;
    std::uint64_t e = p - 2;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  std::string str(Elem a) const { return std::to_string(a); }
  Elem parse(const std::string& s) const;

  bool operator==(const FpRing& o) const { return p == o.p; }
};

// Smallest generator of the multiplicative group F_p^*.
inline std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  for (std::uint64_t g = 2; g < p; ++g) {
    std::uint64_t x = g % p;
    std::uint64_t order = 1;
    while (x != 1) {
      x = (x * g) % p;
      ++order;
    }
    if (order == p - 1) return g;
  }
  raise(Err::Internal, "no primitive root found");
}

inline FpRing::Elem FpRing::parse(const std::string& s) const {
  auto slash = s.find('/');
  auto to_ll = [](const std::string& t) {
    require(!t.empty(), Err::Parse, "empty scalar");
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(t, &pos);
    } catch (const std::exception&) {
      raise(Err::Parse, "bad integer scalar: " + t);
    }
    require(pos == t.size(), Err::Parse, "trailing characters in scalar");
    return v;
  };
  if (slash == std::string::npos) return from_long(to_ll(s));
  Elem num = from_long(to_ll(s.substr(0, slash)));
  Elem den = from_long(to_ll(s.substr(slash + 1)));
  require(den != 0, Err::Parse, "denominator is zero mod p");
  return div(num, den);
}

}  // namespace viq
