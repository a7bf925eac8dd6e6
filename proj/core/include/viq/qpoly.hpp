#pragma once

#include <vector>

#include "viq/rat.hpp"
#include "viq/mat.hpp"

namespace viq {

struct DimTable {
  std::uint64_t q = 2;
  std::vector<long long> dims;  // degrees 0..N
};

// Polynomial with exact rational coefficients, ascending; the zero polynomial
// has empty coefficient list and degree -1.
struct QPolynomial {
  std::vector<mpq_class> coeffs;
  int valid_from = 0;  // P(q^n) = dim_n holds for n >= valid_from

  int degree() const {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
      if (coeffs[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
  }
  mpq_class eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
      acc = acc * x + coeffs[static_cast<std::size_t>(i)];
    return acc;
  }
};

// Least-degree polynomial with P(q^n) = dims[n] for every n >= window_start,
// found by exact Vandermonde elimination on a prefix of the points and exact
// validation on the rest. Degrees above points-2 are not attempted: at least
// one surplus point must confirm the fit. NoExactFit signals that the window
// still overlaps the torsion range.
inline QPolynomial qpoly_fit(const DimTable& t, int window_start, int degree_bound = -1) {
  RatRing ring;
  const int top = static_cast<int>(t.dims.size()) - 1;
  require(0 <= window_start && window_start <= top, Err::BadDims, "fit window out of range");
  const int points = top - window_start + 1;
  require(points >= 2, Err::BadDims, "fit needs at least two window points");
  int max_deg = points - 2;
  if (degree_bound >= 0) max_deg = std::min(max_deg, degree_bound);
  std::vector<mpq_class> xs, ys;
  for (int n = window_start; n <= top; ++n) {
    mpq_class x = 1;
    for (int i = 0; i < n; ++i) x *= static_cast<long>(t.q);
    xs.push_back(x);
    ys.push_back(mpq_class(static_cast<long>(t.dims[static_cast<std::size_t>(n)])));
  }
  for (int deg = -1; deg <= max_deg; ++deg) {
    QPolynomial p;
    if (deg >= 0) {
      Mat<RatRing> vand(ring, deg + 1, deg + 1);
      Mat<RatRing> rhs(ring, deg + 1, 1);
      for (int i = 0; i <= deg; ++i) {
        mpq_class pw = 1;
        for (int j = 0; j <= deg; ++j) {
          vand.at(i, j) = pw;
          pw *= xs[static_cast<std::size_t>(i)];
        }
        rhs.at(i, 0) = ys[static_cast<std::size_t>(i)];
      }
      Mat<RatRing> sol = solve_full_colrank(vand, rhs);
      for (int i = 0; i <= deg; ++i) p.coeffs.push_back(sol.at(i, 0));
      if (p.degree() < deg) continue;  // lower degree already rejected
    }
    bool all = true;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (p.eval(xs[i]) != ys[i]) {
        all = false;
        break;
      }
    if (all) {
      p.valid_from = window_start;
      return p;
    }
  }
  raise(Err::NoExactFit,
        "no exact polynomial fit in the window; the start degree likely still meets torsion");
}

// Exact holdout check P(q^n) = dims[n] per point.
inline std::vector<bool> qpoly_validate(const QPolynomial& p, const DimTable& t, int from, int to) {
  std::vector<bool> out;
  for (int n = from; n <= to; ++n) {
    mpq_class x = 1;
    for (int i = 0; i < n; ++i) x *= static_cast<long>(t.q);
    out.push_back(p.eval(x) == mpq_class(static_cast<long>(t.dims[static_cast<std::size_t>(n)])));
  }
  return out;
}

inline std::string qpoly_str(const QPolynomial& p) {
  if (p.degree() < 0) return "0";
  std::string s;
  for (int i = p.degree(); i >= 0; --i) {
    const mpq_class& c = p.coeffs[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    std::string term;
    mpq_class a = c > 0 ? c : mpq_class(-c);
    if (i == 0)
      term = a.get_str();
    else {
      if (a != 1) term = a.get_str() + " ";
      term += i == 1 ? "X" : "X^" + std::to_string(i);
    }
    if (s.empty())
      s = (c < 0 ? "-" : "") + term;
    else
      s += (c < 0 ? " - " : " + ") + term;
  }
  return s;
}

}  // namespace viq
