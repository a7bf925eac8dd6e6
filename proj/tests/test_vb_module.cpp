#include <doctest.h>

#include "viq/vb_module.hpp"
#include "viq/rat.hpp"

using namespace viq;

TEST_CASE("builtin representation dimensions") {
  RatRing ring;
  CHECK(builtin_rep(ring, 2, "trivial", 3).dim() == 1);
  CHECK(builtin_rep(ring, 2, "regular", 2).dim() == 6);
  CHECK(builtin_rep(ring, 3, "projective_space_perm", 2).dim() == 4);
  CHECK_THROWS_AS(builtin_rep(ring, 2, "steinberg", 2), Error);
}

TEST_CASE("bar sigma on VB-modules") {
  RatRing ring;

  // trivial in degree 0: nothing above degree 0, so the shift is zero
  VBModule<RatRing> v0(ring, 2);
  v0.add(0, GlRep<RatRing>::trivial(ring, 2, 0));
  CHECK(vb_bar_sigma(v0).deg() == -1);

  // q = 3, regular rep of GL_1 in degree 1: the radical at n = 0 is trivial,
  // so the coinvariants keep the full dimension q - 1 = 2
  VBModule<RatRing> reg1(ring, 3);
  reg1.add(1, GlRep<RatRing>::regular(ring, 3, 1));
  auto s = vb_bar_sigma(reg1);
  CHECK(s.dim(0) == 2);
  CHECK(s.deg() == 0);

  // q = 2, trivial in degree 2: coinvariants of a trivial action stay 1-dim
  VBModule<RatRing> t2(ring, 2);
  t2.add(2, GlRep<RatRing>::trivial(ring, 2, 2));
  auto st2 = vb_bar_sigma(t2);
  CHECK(st2.dim(1) == 1);
  CHECK(st2.deg() == 1);
}

TEST_CASE("bar sigma is additive on direct sums") {
  RatRing ring;
  VBModule<RatRing> u(ring, 2), v(ring, 2), sum(ring, 2);
  u.add(2, GlRep<RatRing>::trivial(ring, 2, 2));
  v.add(2, GlRep<RatRing>::proj_lines(ring, 2, 2));
  sum.add(2, GlRep<RatRing>::trivial(ring, 2, 2));
  sum.add(2, GlRep<RatRing>::proj_lines(ring, 2, 2));
  auto su = vb_bar_sigma(u), sv = vb_bar_sigma(v), ss = vb_bar_sigma(sum);
  for (int n = 0; n <= 1; ++n) CHECK(ss.dim(n) == su.dim(n) + sv.dim(n));
}

TEST_CASE("coinvariant dimension agrees with the averaging idempotent") {
  // over Q the coinvariants of a finite group action have the same dimension
  // as the image of the averaging idempotent
  RatRing ring;
  auto rep = GlRep<RatRing>::regular(ring, 2, 2);
  const int n = 1;  // radical U(F^1) inside GL_2
  std::vector<Mat<RatRing>> ops;
  for (const FqMat& u : unipotent_generators(2, n)) ops.push_back(rep.act(u));
  auto quot = coinvariant_quotient(ops, rep.dim(), ring);

  auto group = unipotent_group(2, n);
  Mat<RatRing> avg(ring, rep.dim(), rep.dim());
  for (const FqMat& u : group) avg = avg + rep.act(u);
  mpq_class scale(1, static_cast<long>(group.size()));
  for (int i = 0; i < avg.rows(); ++i)
    for (int j = 0; j < avg.cols(); ++j) avg.at(i, j) *= scale;
  CHECK(avg * avg == avg);
  CHECK(rank_of(avg) == quot.dim);
}

TEST_CASE("external product dimensions") {
  RatRing ring;
  // unit: trivial in degree 0
  VBModule<RatRing> unit(ring, 2);
  unit.add(0, GlRep<RatRing>::trivial(ring, 2, 0));
  VBModule<RatRing> n(ring, 2);
  n.add(1, GlRep<RatRing>::trivial(ring, 2, 1));
  n.add(2, GlRep<RatRing>::proj_lines(ring, 2, 2));
  auto prod = vb_tensor(unit, n);
  for (int deg = 0; deg <= 2; ++deg) CHECK(prod.dim(deg) == n.dim(deg));

  // trivial (x) trivial in degree 1: [2 choose 1]_2 = 3
  VBModule<RatRing> t1(ring, 2);
  t1.add(1, GlRep<RatRing>::trivial(ring, 2, 1));
  CHECK(vb_tensor(t1, t1).dim(2) == 3);

  // constant-module slices: sum of gaussian binomials 1 + 3 + 1 = 5
  VBModule<RatRing> a(ring, 2);
  for (int d = 0; d <= 2; ++d) a.add(d, GlRep<RatRing>::trivial(ring, 2, d));
  CHECK(vb_tensor(a, a).dim(2) == 5);
}

TEST_CASE("external product carries a genuine group action") {
  RatRing ring;
  VBModule<RatRing> m(ring, 2), n(ring, 2);
  m.add(1, GlRep<RatRing>::trivial(ring, 2, 1));
  n.add(1, GlRep<RatRing>::proj_lines(ring, 2, 1));
  auto prod = vb_tensor(m, n);
  const GlRep<RatRing>* r2 = prod.comp(2);
  REQUIRE(r2 != nullptr);
  auto closure = group_closure(2, 2, gl_generators(2, 2));
  for (const FqMat& a : closure.elements)
    for (const FqMat& b : closure.elements)
      CHECK(r2->act(a * b) == r2->act(a) * r2->act(b));
}

TEST_CASE("derivation identity for the external product") {
  RatRing ring;
  for (std::uint64_t q : {2ull, 3ull}) {
    VBModule<RatRing> m(ring, q), n(ring, q);
    m.add(1, GlRep<RatRing>::trivial(ring, q, 1));
    m.add(2, GlRep<RatRing>::trivial(ring, q, 2));
    n.add(1, GlRep<RatRing>::proj_lines(ring, q, 1));
    n.add(2, GlRep<RatRing>::trivial(ring, q, 2));
    auto lhs = vb_bar_sigma(vb_tensor(m, n));
    auto r1 = vb_tensor(vb_bar_sigma(m), n);
    auto r2 = vb_tensor(m, vb_bar_sigma(n));
    for (int deg = 0; deg <= 3; ++deg) CHECK(lhs.dim(deg) == r1.dim(deg) + r2.dim(deg));
  }
}
