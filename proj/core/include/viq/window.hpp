#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "viq/vb_module.hpp"

namespace viq {

constexpr int kDimCap = 20'000;

// An evaluated VI-module on degrees 0..max_degree: dimensions, the standard
// inclusions M_n -> M_{n+1}, and the action of arbitrary automorphisms.
// Implementations are immutable once constructed; derived windows keep
// shared_ptr references to their parents, so functor pipelines stay cheap.
//
// Every injection factors as automorphism . standard inclusion, so this data
// determines all induced maps inside the window.
template <class R>
class WindowBase {
 public:
  WindowBase(R ring, std::uint64_t q, int max_degree)
      : ring_(ring), q_(q), max_degree_(max_degree) {
    require(max_degree >= 0, Err::WindowTooSmall, "window needs max degree >= 0");
  }
  virtual ~WindowBase() = default;

  const R& ring() const { return ring_; }
  std::uint64_t q() const { return q_; }
  int max_degree() const { return max_degree_; }

  virtual int dim(int n) const = 0;
  virtual Mat<R> inclusion(int n) const = 0;  // M_n -> M_{n+1}, 0 <= n < max_degree
  virtual Mat<R> act(int n, const FqMat& sigma) const = 0;

  bool is_zero() const {
    for (int n = 0; n <= max_degree_; ++n)
      if (dim(n) != 0) return false;
    return true;
  }

 protected:
  void check_degree(int n, bool for_inclusion = false) const {
    require(0 <= n && n <= max_degree_ - (for_inclusion ? 1 : 0), Err::WindowTooSmall,
            "degree outside evaluated window");
  }

  R ring_;
  std::uint64_t q_;
  int max_degree_;
};

template <class R>
using Window = std::shared_ptr<const WindowBase<R>>;

// Composite of standard inclusions M_a -> M_b.
template <class R>
Mat<R> inclusion_composite(const WindowBase<R>& m, int a, int b) {
  Mat<R> f = Mat<R>::identity(m.ring(), m.dim(a));
  for (int n = a; n < b; ++n) f = m.inclusion(n) * f;
  return f;
}

// ---------------------------------------------------------------------------
// Induced modules I(V).
// ---------------------------------------------------------------------------

template <class R>
class InducedWindow final : public WindowBase<R> {
 public:
  struct BasisElem {
    int d;
    FqMat coset;
    int v_index;
  };

  InducedWindow(VBModule<R> v, int max_degree, long long dim_cap = kDimCap)
      : WindowBase<R>(v.ring(), v.q(), max_degree), v_(std::move(v)) {
    per_degree_.resize(static_cast<std::size_t>(max_degree) + 1);
    for (int n = 0; n <= max_degree; ++n) {
      auto& db = per_degree_[static_cast<std::size_t>(n)];
      db.dim = 0;
      for (const auto& [d, rep] : v_.components()) {
        if (d > n) continue;
        auto cosets = coset_representatives(this->q_, d, n);
        FqMatIndex index;
        for (std::size_t i = 0; i < cosets.size(); ++i)
          index.emplace(pack(cosets[i]), static_cast<int>(i));
        db.offset[d] = db.dim;
        db.dim += static_cast<int>(cosets.size()) * rep.dim();
        db.cosets.emplace(d, std::move(cosets));
        db.index.emplace(d, std::move(index));
      }
      require(db.dim <= dim_cap, Err::TooLarge, "induced module dimension exceeds cap");
    }
  }

  const VBModule<R>& vb() const { return v_; }

  int dim(int n) const override {
    this->check_degree(n);
    return per_degree_[static_cast<std::size_t>(n)].dim;
  }

  std::vector<BasisElem> basis(int n) const {
    this->check_degree(n);
    std::vector<BasisElem> out;
    const auto& db = per_degree_[static_cast<std::size_t>(n)];
    for (const auto& [d, cosets] : db.cosets) {
      int vd = v_.dim(d);
      for (const auto& c : cosets)
        for (int i = 0; i < vd; ++i) out.push_back({d, c, i});
    }
    return out;
  }

  // Matrix of f_* : I(V)(F^a) -> I(V)(F^b) for any injection f, in the
  // canonical (coset representative x V-basis) coordinates: f . c factors
  // uniquely as canonical . transform, and the transform acts through V.
  Mat<R> map_along(const FqMat& f) const {
    const int a = f.cols(), b = f.rows();
    this->check_degree(a);
    this->check_degree(b);
    const auto& src = per_degree_[static_cast<std::size_t>(a)];
    const auto& dst = per_degree_[static_cast<std::size_t>(b)];
    Mat<R> out(this->ring_, dst.dim, src.dim);
    for (const auto& [d, cosets] : src.cosets) {
      const GlRep<R>& rep = *v_.comp(d);
      const int vd = rep.dim();
      const auto& dst_index = dst.index.at(d);
      for (std::size_t jc = 0; jc < cosets.size(); ++jc) {
        auto fac = column_echelon_canonical(f * cosets[jc]);
        auto it = dst_index.find(pack(fac.canonical));
        ensure(it != dst_index.end(), "induced map: image coset missing");
        Mat<R> rho = rep.act(fac.transform);
        const int row0 = dst.offset.at(d) + it->second * vd;
        const int col0 = src.offset.at(d) + static_cast<int>(jc) * vd;
        for (int i = 0; i < vd; ++i)
          for (int j = 0; j < vd; ++j) out.at(row0 + i, col0 + j) = rho.at(i, j);
      }
    }
    return out;
  }

  Mat<R> inclusion(int n) const override {
    this->check_degree(n, true);
    return map_along(standard_inclusion(this->q_, n, n + 1));
  }

  Mat<R> act(int n, const FqMat& sigma) const override {
    this->check_degree(n);
    require(sigma.rows() == n && sigma.cols() == n, Err::BadDims, "automorphism of wrong degree");
    return map_along(sigma);
  }

 private:
  struct DegreeBasis {
    int dim = 0;
    std::map<int, int> offset;
    std::map<int, std::vector<FqMat>> cosets;
    std::map<int, FqMatIndex> index;
  };

  VBModule<R> v_;
  std::vector<DegreeBasis> per_degree_;
};

// ---------------------------------------------------------------------------
// Quotients, submodules, shifts, sums.
// ---------------------------------------------------------------------------

// Quotient by per-degree subspaces that are stable under the GL-action and
// carried into each other by the inclusions; both conditions are checked at
// construction.
template <class R>
class QuotientWindow final : public WindowBase<R> {
 public:
  QuotientWindow(Window<R> base, std::vector<Mat<R>> subspace_gens, int max_degree)
      : WindowBase<R>(base->ring(), base->q(), max_degree), base_(std::move(base)) {
    require(max_degree <= base_->max_degree(), Err::WindowTooSmall,
            "quotient window exceeds base window");
    ensure(static_cast<int>(subspace_gens.size()) == max_degree + 1,
           "one generator matrix per degree expected");
    for (int n = 0; n <= max_degree; ++n) {
      auto ech = reduced_column_echelon(subspace_gens[static_cast<std::size_t>(n)]);
      bases_.push_back(ech.echelon);
      quots_.push_back(quotient_by_colspan(base_->dim(n), subspace_gens[static_cast<std::size_t>(n)]));
    }
    for (int n = 0; n <= max_degree; ++n) {
      if (bases_[static_cast<std::size_t>(n)].cols() == 0) continue;
      for (const FqMat& g : gl_generators(this->q_, n))
        ensure(colspan_contains(bases_[static_cast<std::size_t>(n)],
                                base_->act(n, g) * bases_[static_cast<std::size_t>(n)]),
               "quotient subspace not stable under GL action");
      if (n < max_degree)
        ensure(colspan_contains(bases_[static_cast<std::size_t>(n + 1)],
                                base_->inclusion(n) * bases_[static_cast<std::size_t>(n)]),
               "quotient subspace not carried into next degree");
    }
  }

  const Window<R>& base() const { return base_; }
  const Mat<R>& relation_basis(int n) const { return bases_[static_cast<std::size_t>(n)]; }
  const Mat<R>& projection(int n) const { return quots_[static_cast<std::size_t>(n)].projection; }
  const Mat<R>& section(int n) const { return quots_[static_cast<std::size_t>(n)].section; }

  int dim(int n) const override {
    this->check_degree(n);
    return quots_[static_cast<std::size_t>(n)].dim;
  }
  Mat<R> inclusion(int n) const override {
    this->check_degree(n, true);
    return quots_[static_cast<std::size_t>(n + 1)].projection * base_->inclusion(n) *
           quots_[static_cast<std::size_t>(n)].section;
  }
  Mat<R> act(int n, const FqMat& sigma) const override {
    this->check_degree(n);
    return quots_[static_cast<std::size_t>(n)].projection * base_->act(n, sigma) *
           quots_[static_cast<std::size_t>(n)].section;
  }

 private:
  Window<R> base_;
  std::vector<Mat<R>> bases_;
  std::vector<QuotientMaps<R>> quots_;
};

// Submodule spanned degreewise by the given (full-column-rank) bases.
template <class R>
class SubWindow final : public WindowBase<R> {
 public:
  SubWindow(Window<R> base, std::vector<Mat<R>> bases, int max_degree)
      : WindowBase<R>(base->ring(), base->q(), max_degree), base_(std::move(base)) {
    require(max_degree <= base_->max_degree(), Err::WindowTooSmall,
            "sub window exceeds base window");
    for (int n = 0; n <= max_degree; ++n) {
      auto ech = reduced_column_echelon(bases[static_cast<std::size_t>(n)]);
      bases_.push_back(ech.echelon);
    }
    for (int n = 0; n <= max_degree; ++n) {
      for (const FqMat& g : gl_generators(this->q_, n))
        ensure(colspan_contains(bases_[static_cast<std::size_t>(n)],
                                base_->act(n, g) * bases_[static_cast<std::size_t>(n)]),
               "sub basis not stable under GL action");
      if (n < max_degree)
        ensure(colspan_contains(bases_[static_cast<std::size_t>(n + 1)],
                                base_->inclusion(n) * bases_[static_cast<std::size_t>(n)]),
               "sub basis not carried into next degree");
    }
  }

  const Mat<R>& basis(int n) const { return bases_[static_cast<std::size_t>(n)]; }

  int dim(int n) const override {
    this->check_degree(n);
    return bases_[static_cast<std::size_t>(n)].cols();
  }
  Mat<R> inclusion(int n) const override {
    this->check_degree(n, true);
    return restrict(bases_[static_cast<std::size_t>(n + 1)],
                    base_->inclusion(n) * bases_[static_cast<std::size_t>(n)]);
  }
  Mat<R> act(int n, const FqMat& sigma) const override {
    this->check_degree(n);
    return restrict(bases_[static_cast<std::size_t>(n)],
                    base_->act(n, sigma) * bases_[static_cast<std::size_t>(n)]);
  }

 private:
  static Mat<R> restrict(const Mat<R>& basis, const Mat<R>& image) {
    if (basis.cols() == 0) return Mat<R>(image.ring(), 0, image.cols());
    return solve_full_colrank(basis, image);
  }

  Window<R> base_;
  std::vector<Mat<R>> bases_;
};

// Shift by x: degree n evaluates the base at x + n, GL_n acting through the
// block embedding 1_x (+) g; the shifted coordinates occupy the leading rows,
// so the inclusions are simply the base inclusions reindexed.
template <class R>
class ShiftWindow final : public WindowBase<R> {
 public:
  ShiftWindow(Window<R> base, int x)
      : WindowBase<R>(base->ring(), base->q(), shifted_top(*base, x)),
        base_(std::move(base)), x_(x) {}

  int dim(int n) const override {
    this->check_degree(n);
    return base_->dim(x_ + n);
  }
  Mat<R> inclusion(int n) const override {
    this->check_degree(n, true);
    return base_->inclusion(x_ + n);
  }
  Mat<R> act(int n, const FqMat& sigma) const override {
    this->check_degree(n);
    return base_->act(x_ + n, block_diag(FqMat::identity(FpRing(this->q_), x_), sigma));
  }

 private:
  static int shifted_top(const WindowBase<R>& base, int x) {
    require(x >= 0, Err::BadDims, "negative shift");
    require(base.max_degree() >= x, Err::WindowTooSmall, "window too small to shift");
    return base.max_degree() - x;
  }

  Window<R> base_;
  int x_;
};

template <class R>
class SumWindow final : public WindowBase<R> {
 public:
  SumWindow(Window<R> a, Window<R> b)
      : WindowBase<R>(a->ring(), a->q(), std::min(a->max_degree(), b->max_degree())),
        a_(std::move(a)), b_(std::move(b)) {}

  int dim(int n) const override {
    this->check_degree(n);
    return a_->dim(n) + b_->dim(n);
  }
  Mat<R> inclusion(int n) const override {
    this->check_degree(n, true);
    return block_diag(a_->inclusion(n), b_->inclusion(n));
  }
  Mat<R> act(int n, const FqMat& sigma) const override {
    this->check_degree(n);
    return block_diag(a_->act(n, sigma), b_->act(n, sigma));
  }

 private:
  Window<R> a_, b_;
};

template <class R>
class ZeroWindow final : public WindowBase<R> {
 public:
  ZeroWindow(R ring, std::uint64_t q, int max_degree) : WindowBase<R>(ring, q, max_degree) {}
  int dim(int) const override { return 0; }
  Mat<R> inclusion(int) const override { return Mat<R>(this->ring_, 0, 0); }
  Mat<R> act(int, const FqMat&) const override { return Mat<R>(this->ring_, 0, 0); }
};

// ---------------------------------------------------------------------------
// Degreewise helpers.
// ---------------------------------------------------------------------------

// Smallest subspace containing the columns of seed and stable under the
// degree-n GL generators. Deterministic: generators in order, repeated until
// the dimension stops growing.
template <class R>
Mat<R> gl_saturate(const WindowBase<R>& m, int n, const Mat<R>& seed) {
  auto span = reduced_column_echelon(seed).echelon;
  const auto gens = gl_generators(m.q(), n);
  std::vector<Mat<R>> gen_mats;
  for (const FqMat& g : gens) gen_mats.push_back(m.act(n, g));
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& gm : gen_mats) {
      if (span.cols() == 0) break;
      Mat<R> bigger = reduced_column_echelon(hcat(span, gm * span)).echelon;
      if (bigger.cols() != span.cols()) {
        span = bigger;
        grew = true;
      }
    }
  }
  return span;
}

// Span of the images from degrees < n (the evaluation of the submodule
// generated below n); empty span at n = 0.
template <class R>
Mat<R> span_from_below(const WindowBase<R>& m, int n) {
  if (n == 0) return Mat<R>(m.ring(), m.dim(0), 0);
  return gl_saturate(m, n, m.inclusion(n - 1));
}

// Span of the images from degrees <= i at degree n (n >= i).
template <class R>
Mat<R> span_from_degree(const WindowBase<R>& m, int i, int n) {
  if (n == i) return Mat<R>::identity(m.ring(), m.dim(n));
  return gl_saturate(m, n, inclusion_composite(m, i, n));
}

struct H0Data {
  std::vector<int> dims;
};

template <class R>
struct H0Maps {
  std::vector<int> dims;
  std::vector<QuotientMaps<R>> quots;  // per degree: projection onto H_0
};

// VI-homology in degree zero: H_0(M)(F^n) = M_n / (span of images from below).
template <class R>
H0Maps<R> h0_maps(const WindowBase<R>& m) {
  H0Maps<R> out;
  for (int n = 0; n <= m.max_degree(); ++n) {
    auto q = quotient_by_colspan(m.dim(n), span_from_below(m, n));
    out.dims.push_back(q.dim);
    out.quots.push_back(std::move(q));
  }
  return out;
}

template <class R>
std::vector<int> h0_dims(const WindowBase<R>& m) {
  return h0_maps(m).dims;
}

// Largest n <= max_degree with H_0 nonzero; -1 when H_0 vanishes everywhere
// (in particular for the zero module, matching deg 0 = -1).
template <class R>
int t0_estimate(const WindowBase<R>& m) {
  auto dims = h0_dims(m);
  for (int n = m.max_degree(); n >= 0; --n)
    if (dims[static_cast<std::size_t>(n)] != 0) return n;
  return -1;
}

// Torsion probe: kernel of the composite of standard inclusions M_n -> M_D.
// Any injection factors as automorphism . iterated standard inclusion and
// automorphisms act invertibly, so inside the window this kernel is exactly
// the set of elements killed by some injection into degree <= D.
template <class R>
Mat<R> torsion_basis(const WindowBase<R>& m, int n) {
  require(n <= m.max_degree(), Err::WindowTooSmall, "torsion probe outside window");
  auto comp = inclusion_composite(m, n, m.max_degree());
  return rank_nullspace(comp).nullspace;
}

template <class R>
std::vector<int> torsion_dims(const WindowBase<R>& m) {
  std::vector<int> out;
  for (int n = 0; n <= m.max_degree(); ++n) out.push_back(torsion_basis(m, n).cols());
  return out;
}

// Degree of the torsion submodule visible in the window: max n with a nonzero
// torsion probe, or -1.
template <class R>
int h0_torsion_degree(const WindowBase<R>& m) {
  int h = -1;
  for (int n = 0; n <= m.max_degree(); ++n)
    if (torsion_basis(m, n).cols() != 0) h = n;
  return h;
}

// ---------------------------------------------------------------------------
// Snapshot: the concrete truncated model (dims, generator actions,
// inclusions) with the compatibility between them asserted.
// ---------------------------------------------------------------------------

template <class R>
struct Truncated {
  std::uint64_t q = 2;
  int max_degree = 0;
  std::vector<int> dims;
  std::vector<std::vector<Mat<R>>> gen_actions;  // per degree, per GL generator
  std::vector<Mat<R>> inclusions;                // per degree n < max_degree
};

template <class R>
Truncated<R> snapshot(const WindowBase<R>& m) {
  Truncated<R> t;
  t.q = m.q();
  t.max_degree = m.max_degree();
  for (int n = 0; n <= m.max_degree(); ++n) {
    t.dims.push_back(m.dim(n));
    std::vector<Mat<R>> acts;
    for (const FqMat& g : gl_generators(m.q(), n)) acts.push_back(m.act(n, g));
    t.gen_actions.push_back(std::move(acts));
    if (n < m.max_degree()) t.inclusions.push_back(m.inclusion(n));
  }
  // iota_n . rho_n(g) = rho_{n+1}(g (+) 1) . iota_n
  for (int n = 0; n < m.max_degree(); ++n) {
    auto gens = gl_generators(m.q(), n);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      FqMat widened = block_diag(gens[i], FqMat::identity(FpRing(m.q()), 1));
      ensure(t.inclusions[static_cast<std::size_t>(n)] *
                     t.gen_actions[static_cast<std::size_t>(n)][i] ==
                 m.act(n + 1, widened) * t.inclusions[static_cast<std::size_t>(n)],
             "inclusion/action compatibility violated");
    }
  }
  return t;
}

}  // namespace viq
