#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "viq/gl_rep.hpp"

namespace viq {

// Finitely supported sequence of GL_d(F_q)-representations.
template <class R>
class VBModule {
 public:
  VBModule() = default;
  VBModule(R ring, std::uint64_t q) : ring_(ring), q_(q) {}

  const R& ring() const { return ring_; }
  std::uint64_t q() const { return q_; }

  void add(int degree, GlRep<R> rep) {
    if (rep.dim() == 0) return;
    auto it = comps_.find(degree);
    if (it == comps_.end())
      comps_.emplace(degree, std::move(rep));
    else
      it->second = GlRep<R>::direct_sum(it->second, std::move(rep));
  }

  int deg() const { return comps_.empty() ? -1 : comps_.rbegin()->first; }
  int dim(int d) const {
    auto it = comps_.find(d);
    return it == comps_.end() ? 0 : it->second.dim();
  }
  const GlRep<R>* comp(int d) const {
    auto it = comps_.find(d);
    return it == comps_.end() ? nullptr : &it->second;
  }
  const std::map<int, GlRep<R>>& components() const { return comps_; }

 private:
  R ring_;
  std::uint64_t q_ = 2;
  std::map<int, GlRep<R>> comps_;
};

template <class R>
GlRep<R> builtin_rep(R ring, std::uint64_t q, const std::string& kind, int d,
                     long long cap = kGroupEnumCap) {
  if (kind == "trivial") return GlRep<R>::trivial(ring, q, d);
  if (kind == "regular") return GlRep<R>::regular(ring, q, d, cap);
  if (kind == "projective_space_perm") return GlRep<R>::proj_lines(ring, q, d);
  raise(Err::Parse, "unknown builtin representation: " + kind);
}

// Span of the translation images { (A_i - 1) v } for the given operators;
// since every group element is a word in the A_i, the telescoped cocycle
// g v - v lands in the same span, so this is the full coinvariant kernel.
template <class R>
QuotientMaps<R> coinvariant_quotient(const std::vector<Mat<R>>& ops, int dim, const R& ring) {
  Mat<R> stacked(ring, dim, 0);
  Mat<R> id = Mat<R>::identity(ring, dim);
  for (const auto& a : ops) stacked = hcat(stacked, a - id);
  return quotient_by_colspan(dim, stacked);
}

// Coinvariants under the unipotent radical, one degree down:
// (bar V)_n = (V_{1+n})_{U(F^n)} with the GL_n-action through 1 (+) g.
// Only the n elementary translations enter: the translated differences of a
// generating set already span the full coinvariant kernel.
template <class R>
VBModule<R> vb_bar_sigma(const VBModule<R>& v) {
  VBModule<R> out(v.ring(), v.q());
  for (const auto& [degree, rep] : v.components()) {
    if (degree == 0) continue;  // V(F^{1+n}) with 1+n = 0 never occurs
    const int n = degree - 1;
    std::vector<Mat<R>> ops;
    for (const FqMat& u : unipotent_generators(v.q(), n)) ops.push_back(rep.act(u));
    auto quot = coinvariant_quotient(ops, rep.dim(), v.ring());
    if (quot.dim == 0) continue;
    // The relation span must be stable under the embedded GL_n, otherwise
    // the quotient would not carry an action.
    Mat<R> span(v.ring(), rep.dim(), 0);
    Mat<R> id = Mat<R>::identity(v.ring(), rep.dim());
    for (const auto& a : ops) span = hcat(span, a - id);
    for (const FqMat& g : gl_generators(v.q(), n)) {
      FqMat lifted = block_diag(FqMat::identity(FpRing(v.q()), 1), g);
      ensure(colspan_contains(span, rep.act(lifted) * span),
             "unipotent relation span not GL-stable");
    }
    out.add(n, GlRep<R>::quotient_through_embedding(rep, quot.projection, quot.section));
  }
  return out;
}

template <class R>
Mat<R> kron(const Mat<R>& a, const Mat<R>& b) {
  const R& k = a.ring();
  Mat<R> c(k, a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (k.is_zero(a.at(i, j))) continue;
      for (int p = 0; p < b.rows(); ++p)
        for (int r = 0; r < b.cols(); ++r)
          c.at(i * b.rows() + p, j * b.cols() + r) = k.mul(a.at(i, j), b.at(p, r));
    }
  return c;
}

namespace detail {

// Placeholder for components whose action is deliberately not materialized;
// dimensions remain available.
template <class R>
class OpaqueRep final : public GlRepBase<R> {
 public:
  OpaqueRep(R ring, std::uint64_t q, int d, int dim) : GlRepBase<R>(ring, q, d, dim, false) {}
  Mat<R> act(const FqMat&) const override {
    raise(Err::TooLarge, "action not materialized for this tensor component");
  }
};

// Degree-n piece of the external product:
//   (M (x) N)(Y) = (+)_{X <= Y} M(Y/X) (x) N(X),
// with X running over canonical subspace representatives and Y/X identified
// with the coordinates away from the representative's pivot rows.
template <class R>
class TensorDegreeRep final : public GlRepBase<R> {
 public:
  struct Block {
    int k;
    std::vector<FqMat> cosets;
    FqMatIndex coset_index;
    std::vector<std::vector<int>> complement_rows;
    GlRep<R> m_rep;  // degree n-k
    GlRep<R> n_rep;  // degree k
    int offset;      // first basis index of this block
  };

  TensorDegreeRep(R ring, std::uint64_t q, int n, std::vector<Block> blocks, int dim)
      : GlRepBase<R>(ring, q, n, dim, true), blocks_(std::move(blocks)) {}

  Mat<R> act(const FqMat& sigma) const override {
    const FpRing fq(this->q_);
    Mat<R> out(this->ring_, this->dim_, this->dim_);
    for (const auto& blk : blocks_) {
      const int mdim = blk.m_rep.dim(), ndim = blk.n_rep.dim();
      const int cell = mdim * ndim;
      for (std::size_t jc = 0; jc < blk.cosets.size(); ++jc) {
        auto fac = column_echelon_canonical(sigma * blk.cosets[jc]);
        auto it = blk.coset_index.find(pack(fac.canonical));
        ensure(it != blk.coset_index.end(), "tensor action: image subspace not canonical");
        const int jc2 = static_cast<int>(it->second);
        Mat<R> block = kron(blk.m_rep.act(quotient_map(sigma, blk, static_cast<int>(jc), jc2)),
                            blk.n_rep.act(fac.transform));
        const int row0 = blk.offset + jc2 * cell;
        const int col0 = blk.offset + static_cast<int>(jc) * cell;
        for (int i = 0; i < cell; ++i)
          for (int j = 0; j < cell; ++j) out.at(row0 + i, col0 + j) = block.at(i, j);
      }
    }
    return out;
  }

 private:
  // Matrix of the induced isomorphism F^n/X -> F^n/X' in the pivot-complement
  // coordinates of the two subspaces.
  FqMat quotient_map(const FqMat& sigma, const Block& blk, int jc, int jc2) const {
    const FpRing fq(this->q_);
    const auto& src_rows = blk.complement_rows[static_cast<std::size_t>(jc)];
    const auto& dst_rows = blk.complement_rows[static_cast<std::size_t>(jc2)];
    const FqMat& dst = blk.cosets[static_cast<std::size_t>(jc2)];
    std::vector<int> dst_pivots;
    for (int j = 0; j < dst.cols(); ++j) {
      int p = 0;
      while (fq.is_zero(dst.at(p, j))) ++p;
      dst_pivots.push_back(p);
    }
    const int nq = static_cast<int>(src_rows.size());
    FqMat out(fq, nq, nq);
    for (int c = 0; c < nq; ++c) {
      FqMat w(fq, sigma.rows(), 1);
      for (int i = 0; i < sigma.rows(); ++i) w.at(i, 0) = sigma.at(i, src_rows[c]);
      for (int j = 0; j < dst.cols(); ++j) {
        auto f = w.at(dst_pivots[static_cast<std::size_t>(j)], 0);
        if (fq.is_zero(f)) continue;
        for (int i = 0; i < w.rows(); ++i) w.at(i, 0) = fq.sub(w.at(i, 0), fq.mul(f, dst.at(i, j)));
      }
      for (int r = 0; r < nq; ++r) out.at(r, c) = w.at(dst_rows[r], 0);
    }
    ensure(rank_of(out) == nq, "tensor action: quotient map not invertible");
    return out;
  }

  std::vector<Block> blocks_;
};

}  // namespace detail

constexpr int kTensorMaterializeSupport = 2;
constexpr int kTensorMaterializeDegree = 4;

// External product of VB-modules. Dimensions follow
//   dim (M (x) N)_n = sum_k [n,k]_q dim M_{n-k} dim N_k;
// the action is materialized for small supports, otherwise kept opaque.
template <class R>
VBModule<R> vb_tensor(const VBModule<R>& m, const VBModule<R>& n) {
  const std::uint64_t q = m.q();
  VBModule<R> out(m.ring(), q);
  const bool materialize = m.deg() <= kTensorMaterializeSupport &&
                           n.deg() <= kTensorMaterializeSupport;
  const int top = (m.deg() < 0 || n.deg() < 0) ? -1 : m.deg() + n.deg();
  for (int total = 0; total <= top; ++total) {
    long long dim = 0;
    std::vector<typename detail::TensorDegreeRep<R>::Block> blocks;
    for (int k = 0; k <= total; ++k) {
      const GlRep<R>* mr = m.comp(total - k);
      const GlRep<R>* nr = n.comp(k);
      if (!mr || !nr) continue;
      long long cnt = gaussian_binomial(q, total, k);
      if (materialize && total <= kTensorMaterializeDegree) {
        typename detail::TensorDegreeRep<R>::Block blk;
        blk.k = k;
        blk.cosets = coset_representatives(q, k, total);
        for (std::size_t i = 0; i < blk.cosets.size(); ++i) {
          blk.coset_index.emplace(pack(blk.cosets[i]), static_cast<int>(i));
          FpRing fq(q);
          std::vector<bool> is_pivot(static_cast<std::size_t>(total), false);
          for (int j = 0; j < blk.cosets[i].cols(); ++j) {
            int p = 0;
            while (fq.is_zero(blk.cosets[i].at(p, j))) ++p;
            is_pivot[static_cast<std::size_t>(p)] = true;
          }
          std::vector<int> comp;
          for (int r = 0; r < total; ++r)
            if (!is_pivot[static_cast<std::size_t>(r)]) comp.push_back(r);
          blk.complement_rows.push_back(comp);
        }
        blk.m_rep = *mr;
        blk.n_rep = *nr;
        blk.offset = static_cast<int>(dim);
        blocks.push_back(std::move(blk));
      }
      dim += cnt * mr->dim() * nr->dim();
    }
    if (dim == 0) continue;
    if (materialize && total <= kTensorMaterializeDegree)
      out.add(total, GlRep<R>(std::make_shared<detail::TensorDegreeRep<R>>(
                         m.ring(), q, total, std::move(blocks), static_cast<int>(dim))));
    else
      out.add(total, GlRep<R>(std::make_shared<detail::OpaqueRep<R>>(m.ring(), q, total,
                                                                     static_cast<int>(dim))));
  }
  return out;
}

}  // namespace viq
