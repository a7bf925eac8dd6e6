#include <doctest.h>

#include "viq/examples.hpp"
#include "viq/functors.hpp"
#include "viq/rat.hpp"

using namespace viq;

namespace {

RatRing ring;

PresentedWindows<RatRing> make(const std::string& which, int top, std::uint64_t q = 2) {
  return build_windows(example_module(ring, q, which), top);
}

}  // namespace

TEST_CASE("plain shift") {
  auto a = make("A", 5);
  auto shifted = sigma_shift<RatRing>(a.module, 1);
  for (int n = 0; n <= 4; ++n) CHECK(shifted->dim(n) == 1);
  CHECK(sigma_shift<RatRing>(a.module, 0).get() == a.module.get());

  auto t1 = make("itriv1", 5);
  auto s1 = sigma_shift<RatRing>(t1.module, 1);
  for (int n = 0; n <= 4; ++n) CHECK(s1->dim(n) == (1 << (n + 1)) - 1);
}

TEST_CASE("the natural map into the shift is split injective on induced modules") {
  for (const std::string which : {"A", "itriv1", "itriv2"}) {
    auto w = make(which, 5);
    for (int x = 1; x <= 2; ++x) {
      auto nat = sigma_map<RatRing>(w.module, x);
      for (const auto& m : nat.mats) CHECK(rank_of(m) == m.cols());
    }
  }
}

TEST_CASE("shift drops the torsion degree by one") {
  auto w = make("itriv1_plus_k0", 5);
  CHECK(h0_torsion_degree(*w.module) == 0);
  auto shifted = sigma_shift<RatRing>(w.module, 1);
  CHECK(h0_torsion_degree(*shifted) == -1);
}

TEST_CASE("coinvariants shift") {
  auto a = make("A", 5);
  auto bar = bar_sigma<RatRing>(a.module);
  for (int n = 0; n <= 4; ++n) CHECK(bar->dim(n) == 1);

  // q = 3, induced on the regular rep of GL_1: the radical F_3 acts on the
  // 8 nonzero vectors of F_3^2 with orbits {a != 0} (two of size 3) and the
  // two fixed lines in the complement: 4 coinvariants
  VBModule<RatRing> v(ring, 3);
  v.add(1, builtin_rep(ring, 3, "regular", 1));
  auto iv = std::make_shared<InducedWindow<RatRing>>(v, 2);
  auto bar3 = bar_sigma<RatRing>(iv);
  CHECK(bar3->dim(1) == 4);

  // derivation identity per degree
  auto right = vb_bar_sigma(v);
  InducedWindow<RatRing> ivr(right, 1);
  for (int n = 0; n <= 1; ++n) CHECK(bar3->dim(n) == iv->dim(n) + ivr.dim(n));
}

TEST_CASE("difference functor and its kernel") {
  auto a = make("A", 5);
  CHECK(bar_delta<RatRing>(a.module)->is_zero());

  auto t2 = make("itriv2", 5);
  CHECK(kappa<RatRing>(t2.module)->is_zero());  // torsion-free

  // degreewise exactness of 0 -> kappa -> M -> bar_sigma M -> bar_delta -> 0
  for (const std::string which : {"A", "itriv1", "itriv2", "k0", "itriv1_plus_k0"}) {
    auto w = make(which, 5);
    auto nat = bar_sigma_map<RatRing>(w.module);
    auto ker = kernel_window(nat);
    auto coker = cokernel_window(nat);
    for (int n = 0; n <= 4; ++n) {
      CHECK(ker->dim(n) - w.module->dim(n) + nat.target->dim(n) - coker->dim(n) == 0);
      // and the middle really is exact, not only numerically
      CHECK(rank_of(nat.mats[static_cast<std::size_t>(n)]) ==
            w.module->dim(n) - ker->dim(n));
    }
  }

  // generation degree strictly drops under the difference functor
  for (const std::string which : {"itriv1", "itriv2"}) {
    auto w = make(which, 5);
    CHECK(t0_estimate(*bar_delta<RatRing>(w.module)) < t0_estimate(*w.module));
  }
}

TEST_CASE("iterated coinvariants match the two-step radical directly") {
  for (const std::string which : {"itriv1", "itriv1_plus_k0"}) {
    auto w = make(which, 3);
    auto twice = bar_sigma<RatRing>(bar_sigma<RatRing>(w.module));
    for (int n = 0; n <= 1; ++n) {
      // radical of the flag 0 < Z < X_1 + Z < X + Z acting on M_{2+n}
      const int amb = 2 + n;
      std::vector<Mat<RatRing>> ops;
      FpRing fq(2);
      for (int k = 1; k < amb; ++k) {
        FqMat u = FqMat::identity(fq, amb);
        u.at(k, 0) = 1;
        ops.push_back(w.module->act(amb, u));
      }
      for (int k = 2; k < amb; ++k) {
        FqMat u = FqMat::identity(fq, amb);
        u.at(k, 1) = 1;
        ops.push_back(w.module->act(amb, u));
      }
      auto quot = coinvariant_quotient(ops, w.module->dim(amb), ring);
      CHECK(twice->dim(n) == quot.dim);
    }
  }
}

TEST_CASE("coinvariants shift preserves degreewise exactness") {
  for (const std::string which : {"k0", "itriv1_plus_k0"}) {
    auto w = make(which, 5);
    auto sk = bar_sigma<RatRing>(std::static_pointer_cast<const WindowBase<RatRing>>(w.relations));
    auto si = bar_sigma<RatRing>(std::static_pointer_cast<const WindowBase<RatRing>>(w.induced));
    auto sm = bar_sigma<RatRing>(w.module);
    for (int n = 0; n <= 4; ++n) CHECK(sk->dim(n) + sm->dim(n) == si->dim(n));
  }
}

TEST_CASE("coinvariants shift commutes with the torsion functor") {
  for (const std::string which : {"k0", "itriv1_plus_k0", "itriv1"}) {
    auto w = make(which, 5);
    // torsion submodule as a window
    std::vector<Mat<RatRing>> bases;
    for (int n = 0; n <= 4; ++n) bases.push_back(torsion_basis(*w.module, n));
    auto gamma = std::make_shared<SubWindow<RatRing>>(w.module, bases, 4);
    auto lhs = bar_sigma<RatRing>(gamma);             // bar_sigma Gamma M
    auto rhs = bar_sigma<RatRing>(w.module);          // Gamma bar_sigma M
    for (int n = 0; n <= 3; ++n)
      CHECK(lhs->dim(n) == torsion_basis(*rhs, n).cols());
  }
}

TEST_CASE("H_0 of the difference equals the coinvariants of H_0") {
  for (const std::string which : {"itriv2", "itriv1_plus_k0"}) {
    auto w = make(which, 4);
    auto lhs = h0_dims(*bar_delta<RatRing>(w.module));
    auto h0 = h0_maps(*w.module);
    for (int n = 0; n <= 3; ++n) {
      std::vector<Mat<RatRing>> ops;
      for (const FqMat& u : unipotent_generators(2, n))
        ops.push_back(h0.quots[static_cast<std::size_t>(n + 1)].projection *
                      w.module->act(n + 1, u) *
                      h0.quots[static_cast<std::size_t>(n + 1)].section);
      auto quot = coinvariant_quotient(ops, h0.dims[static_cast<std::size_t>(n + 1)], ring);
      CHECK(lhs[static_cast<std::size_t>(n)] == quot.dim);
    }
  }
}

TEST_CASE("shift complex structure") {
  // already semi-induced: the complex closes immediately with the identity pair
  auto free = make("itriv2", 5);
  auto c_free = build_shift_complex<RatRing>(free.module, 3);
  CHECK_FALSE(c_free.exhausted);
  REQUIRE(c_free.shifts.size() == 1);
  CHECK(c_free.shifts[0] == 0);
  auto t_free = local_cohomology(c_free);
  for (const auto& row : t_free.dims)
    for (int d : row) CHECK(d == 0);

  // the residue module: one shift kills it; H^0 is the module itself
  auto k0 = make("k0", 5);
  auto c_k0 = build_shift_complex<RatRing>(k0.module, 3);
  REQUIRE(c_k0.shifts.size() == 1);
  CHECK(c_k0.shifts[0] == 1);
  CHECK(c_k0.terms[1]->is_zero());
  auto t_k0 = local_cohomology(c_k0);
  CHECK(t_k0.dims[0][0] == 1);
  for (std::size_t n = 1; n < t_k0.dims[0].size(); ++n) CHECK(t_k0.dims[0][n] == 0);
  CHECK(t_k0.h[0] == 0);
  CHECK(t_k0.h[1] == -1);

  // mixed: one shift to a certified term, then the certified cokernel
  auto mix = make("itriv1_plus_k0", 5);
  auto c_mix = build_shift_complex<RatRing>(mix.module, 3);
  REQUIRE(c_mix.shifts.size() == 2);
  CHECK(c_mix.shifts[0] == 1);
  CHECK(c_mix.shifts[1] == 0);
  auto t_mix = local_cohomology(c_mix);
  CHECK(t_mix.dims[0][0] == 1);  // the torsion part at degree 0
  for (std::size_t n = 1; n < t_mix.dims[0].size(); ++n) CHECK(t_mix.dims[0][n] == 0);
  for (std::size_t i = 1; i < t_mix.dims.size(); ++i)
    for (int d : t_mix.dims[i]) CHECK(d == 0);
  // generation degrees along the complex: t_0(I^1) = delta(M)
  CHECK(t0_estimate(*c_mix.terms[1]) == 1);
}

TEST_CASE("stable degree") {
  CHECK(stable_degree<RatRing>(make("A", 5).module, 4).delta == 0);
  for (int d = 1; d <= 2; ++d) {
    auto w = make("itriv" + std::to_string(d), 5);
    auto rep = stable_degree<RatRing>(w.module, 4);
    CHECK(rep.delta == d);
    CHECK(rep.shifts_used == 0);
  }
  auto rep_k0 = stable_degree<RatRing>(make("k0", 5).module, 4);
  CHECK(rep_k0.delta == -1);
  CHECK(rep_k0.shifts_used == 1);
  auto rep_mix = stable_degree<RatRing>(make("itriv1_plus_k0", 5).module, 4);
  CHECK(rep_mix.delta == 1);  // max of the summands' stable degrees
  CHECK(rep_mix.shifts_used == 1);
}

TEST_CASE("regularity bounds") {
  auto run = [&](const std::string& which) {
    auto w = make(which, 5);
    auto sdr = stable_degree<RatRing>(w.module, 4);
    auto complex = build_shift_complex<RatRing>(w.module, 4);
    auto table = local_cohomology(complex);
    return regularity_report(table, sdr.delta, t1_estimate(w));
  };
  auto free = run("itriv1");
  CHECK(free.r == -1);
  CHECK(free.t1 == -1);
  CHECK(free.inequality_ok);

  auto k0 = run("k0");
  CHECK(k0.r == 0);
  CHECK(k0.t1 == 1);
  CHECK(k0.inequality_ok);

  auto mix = run("itriv1_plus_k0");
  CHECK(mix.r == 0);
  CHECK(mix.t1 == 1);
  CHECK(mix.inequality_ok);
  CHECK(mix.vanishing_beyond_delta_ok);
}

TEST_CASE("shift-tensor stratification") {
  // d=1, x=1, q=2, n=2: strata of sizes 1 and 6 partition the 7 morphisms
  auto rep = verify_shift_tensor(2, 1, 1, 2);
  CHECK(rep.pass);
  REQUIRE(rep.stratum_sizes.size() == 2);
  CHECK(rep.stratum_sizes[0] == 1);
  CHECK(rep.stratum_sizes[1] == 6);
  CHECK(rep.stratum_sizes[0] + rep.stratum_sizes[1] == injection_count(2, 1, 3));

  // x = 0: everything sits in the top stratum
  rep = verify_shift_tensor(2, 2, 0, 3);
  CHECK(rep.pass);
  CHECK(rep.stratum_sizes[0] == 0);
  CHECK(rep.stratum_sizes[1] == 0);
  CHECK(rep.stratum_sizes[2] == injection_count(2, 2, 3));

  // d=2, x=1, q=2, n=2: strata sum to 42
  rep = verify_shift_tensor(2, 2, 1, 2);
  CHECK(rep.pass);
  CHECK(rep.stratum_sizes[0] + rep.stratum_sizes[1] + rep.stratum_sizes[2] == 42);
}

TEST_CASE("group-algebra identity") {
  CHECK(verify_combinatorial_identity(2, 0));
  CHECK(verify_combinatorial_identity(3, 0));
  CHECK(verify_combinatorial_identity(2, 1));
  CHECK(verify_combinatorial_identity(5, 0));
}

TEST_CASE("six-term dimension count") {
  for (const std::string which : {"A", "itriv1", "k0", "itriv1_plus_k0"}) {
    auto w = make(which, 5);
    auto rep = verify_six_term<RatRing>(w.module);
    CHECK(rep.pass);
  }
}

TEST_CASE("the whole tower runs over a prime coefficient field") {
  // no averaging over the radical happens anywhere, so F_p with p != q gives
  // the same dimension tables as Q
  FpRing f3(3);
  auto p = example_module(f3, 2, "itriv1_plus_k0");
  auto w = build_windows(p, 5);
  auto sdr = stable_degree<FpRing>(w.module, 4);
  CHECK(sdr.delta == 1);
  CHECK(sdr.shifts_used == 1);
  auto table = local_cohomology(build_shift_complex<FpRing>(w.module, 4));
  CHECK(table.dims[0][0] == 1);
  for (std::size_t n = 1; n < table.dims[0].size(); ++n) CHECK(table.dims[0][n] == 0);
  for (std::size_t i = 1; i < table.dims.size(); ++i)
    for (int d : table.dims[i]) CHECK(d == 0);
  CHECK(verify_six_term<FpRing>(w.module).pass);
}

TEST_CASE("window and size guards") {
  auto w = make("A", 5);
  CHECK_THROWS_AS(sigma_shift<RatRing>(w.module, 6), Error);
  auto zero_width = build_windows(example_module(ring, 2, "A"), 0);
  CHECK_THROWS_AS(bar_sigma<RatRing>(zero_width.module), Error);
  // induced dimension cap
  VBModule<RatRing> v(ring, 2);
  v.add(2, builtin_rep(ring, 2, "trivial", 2));
  CHECK_THROWS_AS(InducedWindow<RatRing>(v, 4, /*dim_cap=*/10), Error);
}
