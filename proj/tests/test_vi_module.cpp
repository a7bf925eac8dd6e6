#include <doctest.h>

#include <random>

#include "viq/examples.hpp"
#include "viq/fp.hpp"
#include "viq/rat.hpp"

using namespace viq;

namespace {

RatRing ring;

std::shared_ptr<InducedWindow<RatRing>> induced(std::uint64_t q, int degree, int top,
                                                const std::string& kind = "trivial") {
  VBModule<RatRing> v(ring, q);
  v.add(degree, builtin_rep(ring, q, kind, degree));
  return std::make_shared<InducedWindow<RatRing>>(v, top);
}

}  // namespace

TEST_CASE("induced evaluation dimensions") {
  // constant module: one basis element at every degree
  auto a = induced(2, 0, 5);
  for (int n = 0; n <= 5; ++n) CHECK(a->dim(n) == 1);

  // trivial in degree 2 at q = 2: [4 choose 2]_2 = 35,
  // cross-checked against the coset count
  auto t2 = induced(2, 2, 4);
  CHECK(t2->dim(4) == 35);
  CHECK(t2->basis(4).size() == coset_representatives(2, 2, 4).size());

  // regular rep of GL_1(F_3) in degree 1 at n = 2: 4 * 2 = 8 = q^2 - 1
  VBModule<RatRing> reg(ring, 3);
  reg.add(1, builtin_rep(ring, 3, "regular", 1));
  InducedWindow<RatRing> ireg(reg, 2);
  CHECK(ireg.dim(2) == 8);

  // closed form against basis enumeration for a mixed module
  VBModule<RatRing> v(ring, 2);
  v.add(1, builtin_rep(ring, 2, "trivial", 1));
  v.add(2, builtin_rep(ring, 2, "projective_space_perm", 2));
  InducedWindow<RatRing> iv(v, 4);
  for (int n = 0; n <= 4; ++n) CHECK(iv.dim(n) == induced_dim_formula(v, 2, n));

  // larger fields: [n choose 1]_5 = (5^n - 1)/4
  auto t5 = induced(5, 1, 3);
  CHECK(t5->dim(2) == 6);
  CHECK(t5->dim(3) == 31);
  CHECK(h0_dims(*t5) == std::vector<int>{0, 1, 0, 0});
}

TEST_CASE("induced maps compose functorially") {
  VBModule<RatRing> v(ring, 2);
  v.add(1, builtin_rep(ring, 2, "trivial", 1));
  v.add(2, builtin_rep(ring, 2, "trivial", 2));
  InducedWindow<RatRing> iv(v, 4);

  CHECK(iv.map_along(FqMat::identity(FpRing(2), 3)) ==
        Mat<RatRing>::identity(ring, iv.dim(3)));

  // (g . f)_* = g_* . f_* on 100 random composable pairs within the window
  std::minstd_rand rng(20240801);
  for (int trial = 0; trial < 100; ++trial) {
    int a = static_cast<int>(rng() % 3);            // 0..2
    int b = a + 1 + static_cast<int>(rng() % (3 - a));  // a+1..3
    int c = b + 1 + static_cast<int>(rng() % (4 - b));  // b+1..4
    auto fs = enumerate_injections(2, a, b);
    auto gs = enumerate_injections(2, b, c);
    const FqMat& f = fs[rng() % fs.size()];
    const FqMat& g = gs[rng() % gs.size()];
    CHECK(iv.map_along(g * f) == iv.map_along(g) * iv.map_along(f));
  }

  // nontrivial representation twist: the same functoriality through the
  // permutation action on lines
  VBModule<RatRing> vp(ring, 2);
  vp.add(2, builtin_rep(ring, 2, "projective_space_perm", 2));
  InducedWindow<RatRing> ivp(vp, 4);
  for (int trial = 0; trial < 30; ++trial) {
    auto fs = enumerate_injections(2, 2, 3);
    auto gs = enumerate_injections(2, 3, 4);
    const FqMat& f = fs[(7 * trial + 3) % fs.size()];
    const FqMat& g = gs[(11 * trial + 5) % gs.size()];
    CHECK(ivp.map_along(g * f) == ivp.map_along(g) * ivp.map_along(f));
  }

  // standard inclusion on I(trivial_1), degree 1 -> 2: the column hits the
  // coset of the included line
  auto t1 = induced(2, 1, 2);
  auto incl = t1->inclusion(1);
  REQUIRE(incl.rows() == 3);
  REQUIRE(incl.cols() == 1);
  auto basis2 = t1->basis(2);
  int hits = 0;
  for (int i = 0; i < 3; ++i)
    if (incl.at(i, 0) == 1) {
      // the hit coset is the standard line e_1
      CHECK(basis2[static_cast<std::size_t>(i)].coset ==
            standard_inclusion(2, 1, 2));
      ++hits;
    }
  CHECK(hits == 1);
}

TEST_CASE("presentations truncate to the right dimensions") {
  // no relations: dims equal the induced dims
  auto p_free = example_module(ring, 2, "itriv2");
  auto w_free = build_windows(p_free, 4);
  for (int n = 0; n <= 4; ++n)
    CHECK(w_free.module->dim(n) == gaussian_binomial(2, n, 2));

  // the residue module: (1, 0, 0, ...)
  auto p_k0 = example_module(ring, 2, "k0");
  auto w_k0 = build_windows(p_k0, 4);
  CHECK(w_k0.module->dim(0) == 1);
  for (int n = 1; n <= 4; ++n) CHECK(w_k0.module->dim(n) == 0);

  // the constant module: all ones
  auto p_a = example_module(ring, 2, "A");
  auto w_a = build_windows(p_a, 5);
  for (int n = 0; n <= 5; ++n) CHECK(w_a.module->dim(n) == 1);

  // joint presentation of the direct sum
  auto p_mix = example_module(ring, 2, "itriv1_plus_k0");
  auto w_mix = build_windows(p_mix, 5);
  CHECK(w_mix.module->dim(0) == 1);
  for (int n = 1; n <= 5; ++n)
    CHECK(w_mix.module->dim(n) == (1 << n) - 1);
}

TEST_CASE("H_0 recovers the generating representations") {
  // H_0(I(V)) = V
  for (int d = 0; d <= 2; ++d) {
    auto iv = induced(2, d, 4);
    auto dims = h0_dims(*iv);
    for (int n = 0; n <= 4; ++n) CHECK(dims[static_cast<std::size_t>(n)] == (n == d ? 1 : 0));
    CHECK(t0_estimate(*iv) == d);
  }
  auto w_k0 = build_windows(example_module(ring, 2, "k0"), 4);
  auto dims = h0_dims(*w_k0.module);
  CHECK(dims[0] == 1);
  for (int n = 1; n <= 4; ++n) CHECK(dims[static_cast<std::size_t>(n)] == 0);
  CHECK(t0_estimate(*w_k0.module) == 0);
}

TEST_CASE("Nakayama: H_0 vanishes exactly for the zero module") {
  // kill the generator in degree 0: the quotient is zero everywhere
  PresentedModule<RatRing> p;
  p.ring = ring;
  p.q = 2;
  p.v = VBModule<RatRing>(ring, 2);
  p.w = VBModule<RatRing>(ring, 2);
  p.v.add(0, GlRep<RatRing>::trivial(ring, 2, 0));
  p.w.add(0, GlRep<RatRing>::trivial(ring, 2, 0));
  Mat<RatRing> rel(ring, 1, 1);
  rel.at(0, 0) = ring.one();
  p.rel_maps.emplace(0, rel);
  auto w = build_windows(p, 3);
  CHECK(w.module->is_zero());
  for (int d : h0_dims(*w.module)) CHECK(d == 0);
  CHECK(t0_estimate(*w.module) == -1);
  for (int d : h1_dims(w)) CHECK(d == 0);
  for (int d : torsion_dims(*w.module)) CHECK(d == 0);

  // and conversely a nonzero module has nonzero H_0 somewhere
  auto w_a = build_windows(example_module(ring, 2, "A"), 3);
  CHECK(t0_estimate(*w_a.module) >= 0);
}

TEST_CASE("H_1 via the presentation") {
  // induced modules are homology acyclic
  auto w_free = build_windows(example_module(ring, 2, "itriv1"), 4);
  for (int d : h1_dims(w_free)) CHECK(d == 0);

  // the residue module has its one relation in degree 1 and nothing above
  auto w_k0 = build_windows(example_module(ring, 2, "k0"), 4);
  auto h1 = h1_dims(w_k0);
  CHECK(h1[1] == 1);
  for (int n = 2; n <= 4; ++n) CHECK(h1[static_cast<std::size_t>(n)] == 0);
  CHECK(t1_estimate(w_k0) == 1);
}

TEST_CASE("torsion probes") {
  auto iv = induced(2, 1, 4);
  for (int d : torsion_dims(*iv)) CHECK(d == 0);  // induced modules are torsion-free

  auto w_k0 = build_windows(example_module(ring, 2, "k0"), 4);
  CHECK(torsion_basis(*w_k0.module, 0).cols() == 1);  // the whole stalk
  CHECK(h0_torsion_degree(*w_k0.module) == 0);
}

TEST_CASE("semi-induced certificate") {
  // induced modules pass with exact graded growth
  auto w_free = build_windows(example_module(ring, 2, "itriv2"), 4);
  auto cert = semi_induced_certificate(w_free);
  CHECK(cert.pass);
  CHECK(cert.pass_up_to == 4);

  // torsion modules fail
  auto w_k0 = build_windows(example_module(ring, 2, "k0"), 4);
  cert = semi_induced_certificate(w_k0);
  CHECK_FALSE(cert.pass);
  CHECK(cert.pass_up_to == 0);  // H_1 appears in degree 1
  CHECK_FALSE(cert.torsion_free);

  // a direct sum of induced modules passes (no relations needed)
  PresentedModule<RatRing> p;
  p.ring = ring;
  p.q = 2;
  p.v = VBModule<RatRing>(ring, 2);
  p.w = VBModule<RatRing>(ring, 2);
  p.v.add(0, GlRep<RatRing>::trivial(ring, 2, 0));
  p.v.add(1, GlRep<RatRing>::trivial(ring, 2, 1));
  auto w_sum = build_windows(p, 4);
  CHECK(semi_induced_certificate(w_sum).pass);
}

TEST_CASE("equivariance of relation maps is enforced") {
  // over q = 3 the induced space I(regular_1)(F^1) carries a nontrivial
  // GL_1-action, and the map from the trivial rep hitting one group element
  // is not equivariant
  PresentedModule<RatRing> p;
  p.ring = ring;
  p.q = 3;
  p.v = VBModule<RatRing>(ring, 3);
  p.w = VBModule<RatRing>(ring, 3);
  p.v.add(1, builtin_rep(ring, 3, "regular", 1));
  p.w.add(1, GlRep<RatRing>::trivial(ring, 3, 1));
  Mat<RatRing> rel(ring, 2, 1);
  rel.at(0, 0) = ring.one();
  p.rel_maps.emplace(1, rel);
  CHECK_THROWS_AS(check_equivariance(p), Error);

  // the invariant vector (1, 1) is equivariant
  PresentedModule<RatRing> good = p;
  good.rel_maps.clear();
  Mat<RatRing> inv(ring, 2, 1);
  inv.at(0, 0) = ring.one();
  inv.at(1, 0) = ring.one();
  good.rel_maps.emplace(1, inv);
  CHECK_NOTHROW(check_equivariance(good));
}

TEST_CASE("coinduced modules") {
  auto e_triv = GlRep<RatRing>::trivial(ring, 2, 1);
  CoinducedWindow<RatRing> c(e_triv, 3);
  // vanishes above its degree
  CHECK(c.dim(2) == 0);
  CHECK(c.dim(3) == 0);
  // at its own degree it recovers E
  CHECK(c.dim(1) == 1);
  // single morphism F^0 -> F^1 and trivial GL_1(F_2): one functional
  CHECK(c.dim(0) == 1);

  auto e2 = GlRep<RatRing>::proj_lines(ring, 2, 2);
  CoinducedWindow<RatRing> c2(e2, 3);
  CHECK(c2.dim(2) == e2.dim());
  CHECK(c2.dim(3) == 0);
}

TEST_CASE("coinduced adjunction: both hom spaces agree in dimension") {
  for (int d = 1; d <= 2; ++d) {
    for (const std::string kind : {"trivial", "projective_space_perm"}) {
      auto e = builtin_rep(ring, 2, kind, d);
      auto coind = std::make_shared<CoinducedWindow<RatRing>>(e, d);
      for (int gen_deg = 0; gen_deg <= 2; ++gen_deg) {
        auto iv = induced(2, gen_deg, d);
        int lhs = hom_vi_dim(*iv, *coind);
        // right side: equivariant homs out of I(triv_e)(F^d)
        std::vector<Mat<RatRing>> ma, mb;
        for (const FqMat& g : gl_generators(2, d)) {
          ma.push_back(iv->act(d, g));
          mb.push_back(e.act(g));
        }
        int rhs = equivariant_hom_dim(ring, ma, mb, iv->dim(d), e.dim());
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("modular coefficients give the same dimension tables") {
  FpRing f3(3);
  auto p = example_module(f3, 2, "itriv1_plus_k0");
  auto w = build_windows(p, 4);
  CHECK(w.module->dim(0) == 1);
  for (int n = 1; n <= 4; ++n) CHECK(w.module->dim(n) == (1 << n) - 1);
  auto h1 = h1_dims(w);
  CHECK(h1[1] == 1);
  CHECK(torsion_basis(*w.module, 0).cols() == 1);
  CHECK(t0_estimate(*w.module) == 1);
}

TEST_CASE("torsion equals the union of kernels over all injections") {
  auto p = example_module(ring, 2, "itriv1_plus_k0");
  auto w = build_windows(p, 3);
  for (int n = 0; n <= 1; ++n) {
    auto window_torsion = torsion_basis(*w.module, n);
    // brute force: union of kernels of f_* over every injection out of F^n
    Mat<RatRing> all(ring, w.module->dim(n), 0);
    for (int m = n; m <= 3; ++m)
      for (const FqMat& f : enumerate_injections(2, n, m)) {
        Mat<RatRing> fm = w.module->projection(m) * w.induced->map_along(f) *
                          w.module->section(n);
        auto ker = rank_nullspace(fm).nullspace;
        CHECK(colspan_contains(window_torsion, ker));
        all = hcat(all, ker);
      }
    CHECK(colspan_contains(all, window_torsion));
    CHECK(rank_of(all) == window_torsion.cols());
  }
}
