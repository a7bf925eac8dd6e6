#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "viq/mat.hpp"
#include "viq/vi_category.hpp"

namespace viq {

// A finite-dimensional representation of GL_d(F_q) over the coefficient ring
// R, evaluable at arbitrary group elements. Built-ins evaluate in closed
// form; explicit generator-matrix reps go through a breadth-first word table
// whose construction doubles as the homomorphism check.
template <class R>
class GlRepBase {
 public:
  GlRepBase(R ring, std::uint64_t q, int d, int dim, bool verified)
      : ring_(ring), q_(q), d_(d), dim_(dim), verified_(verified) {}
  virtual ~GlRepBase() = default;

  const R& ring() const { return ring_; }
  std::uint64_t q() const { return q_; }
  int degree() const { return d_; }
  int dim() const { return dim_; }
  bool verified() const { return verified_; }

  virtual Mat<R> act(const FqMat& sigma) const = 0;

 protected:
  R ring_;
  std::uint64_t q_;
  int d_;
  int dim_;
  bool verified_;
};

template <class R>
class GlRep {
 public:
  GlRep() = default;
  explicit GlRep(std::shared_ptr<const GlRepBase<R>> impl) : impl_(std::move(impl)) {}

  static GlRep trivial(R ring, std::uint64_t q, int d);
  static GlRep regular(R ring, std::uint64_t q, int d, long long cap = kGroupEnumCap);
  static GlRep proj_lines(R ring, std::uint64_t q, int d);
  static GlRep explicit_rep(R ring, std::uint64_t q, int d, int dim,
                            std::vector<Mat<R>> gen_actions, long long cap = kGroupEnumCap);
  static GlRep direct_sum(GlRep a, GlRep b);
  // Coinvariants-style quotient of a degree-(d+1) rep: acts through the
  // block embedding GL_d -> GL_{d+1} fixing the first coordinate, then
  // descends along projection/section.
  static GlRep quotient_through_embedding(GlRep<R> parent, Mat<R> projection, Mat<R> section);

  bool null() const { return !impl_; }
  const R& ring() const { return impl_->ring(); }
  std::uint64_t q() const { return impl_->q(); }
  int degree() const { return impl_->degree(); }
  int dim() const { return impl_->dim(); }
  bool verified() const { return impl_->verified(); }
  Mat<R> act(const FqMat& sigma) const {
    require(sigma.rows() == impl_->degree() && sigma.cols() == impl_->degree(), Err::BadDims,
            "group element has wrong degree");
    return impl_->act(sigma);
  }
  std::vector<Mat<R>> gen_actions() const {
    std::vector<Mat<R>> out;
    for (const FqMat& g : gl_generators(q(), degree())) out.push_back(act(g));
    return out;
  }

 private:
  std::shared_ptr<const GlRepBase<R>> impl_;
};

namespace detail {

template <class R>
class TrivialRep final : public GlRepBase<R> {
 public:
  TrivialRep(R ring, std::uint64_t q, int d) : GlRepBase<R>(ring, q, d, 1, true) {}
  Mat<R> act(const FqMat&) const override { return Mat<R>::identity(this->ring_, 1); }
};

template <class R>
class RegularRep final : public GlRepBase<R> {
 public:
  RegularRep(R ring, std::uint64_t q, int d, long long cap)
      : GlRepBase<R>(ring, q, d, 0, true),
        closure_(group_closure(q, d, gl_generators(q, d), cap)) {
    this->dim_ = static_cast<int>(closure_.elements.size());
    ensure(this->dim_ == gl_order(q, d), "regular rep: closure misses elements");
  }
  Mat<R> act(const FqMat& sigma) const override {
    Mat<R> m(this->ring_, this->dim_, this->dim_);
    for (int j = 0; j < this->dim_; ++j) {
      FqMat prod = sigma * closure_.elements[j];
      auto it = closure_.index.find(pack(prod));
      ensure(it != closure_.index.end(), "regular rep: element outside group");
      m.at(it->second, j) = this->ring_.one();
    }
    return m;
  }

 private:
  GroupClosure closure_;
};

template <class R>
class ProjLinesRep final : public GlRepBase<R> {
 public:
  ProjLinesRep(R ring, std::uint64_t q, int d) : GlRepBase<R>(ring, q, d, 0, true), fq_(q) {
    require(d >= 1, Err::BadDims, "projective line rep needs degree >= 1");
    // Canonical line representatives: first nonzero coordinate equals 1,
    // enumerated by pivot position then free entries in odometer order.
    for (int p = 0; p < d; ++p) {
      std::vector<std::uint64_t> tail(static_cast<std::size_t>(d - p - 1), 0);
      while (true) {
        FqMat v(fq_, d, 1);
        v.at(p, 0) = fq_.one();
        for (int i = p + 1; i < d; ++i) v.at(i, 0) = tail[static_cast<std::size_t>(i - p - 1)];
        index_.emplace(pack(v), static_cast<int>(lines_.size()));
        lines_.push_back(v);
        std::size_t pos = 0;
        for (; pos < tail.size(); ++pos) {
          if (++tail[pos] < q) break;
          tail[pos] = 0;
        }
        if (pos == tail.size()) break;
      }
    }
    this->dim_ = static_cast<int>(lines_.size());
  }
  Mat<R> act(const FqMat& sigma) const override {
    Mat<R> m(this->ring_, this->dim_, this->dim_);
    for (int j = 0; j < this->dim_; ++j) {
      FqMat w = sigma * lines_[j];
      int p = 0;
      while (fq_.is_zero(w.at(p, 0))) ++p;
      auto inv = fq_.inv(w.at(p, 0));
      for (int i = 0; i < w.rows(); ++i) w.at(i, 0) = fq_.mul(w.at(i, 0), inv);
      auto it = index_.find(pack(w));
      ensure(it != index_.end(), "projective line rep: unknown line");
      m.at(it->second, j) = this->ring_.one();
    }
    return m;
  }

 private:
  FpRing fq_;
  std::vector<FqMat> lines_;
  FqMatIndex index_;
};

template <class R>
class ExplicitRep final : public GlRepBase<R> {
 public:
  ExplicitRep(R ring, std::uint64_t q, int d, int dim, std::vector<Mat<R>> gen_actions,
              long long cap)
      : GlRepBase<R>(ring, q, d, dim, false), gens_(gl_generators(q, d)),
        gen_actions_(std::move(gen_actions)) {
    require(gen_actions_.size() == gens_.size(), Err::BadDims,
            "explicit rep: one matrix per GL generator expected");
    for (const auto& m : gen_actions_)
      require(m.rows() == dim && m.cols() == dim, Err::BadDims,
              "explicit rep: action matrix has wrong shape");
    if (gl_order(q, d) <= cap) {
      build_table();
      this->verified_ = true;
    }
  }

  Mat<R> act(const FqMat& sigma) const override {
    if (!table_.empty()) {
      auto it = index_.find(pack(sigma));
      ensure(it != index_.end(), "explicit rep: element outside group");
      return table_[static_cast<std::size_t>(it->second)];
    }
    // Unverified rep: only the identity and the listed generators evaluate.
    if (sigma == FqMat::identity(FpRing(this->q_), this->d_))
      return Mat<R>::identity(this->ring_, this->dim_);
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i] == sigma) return gen_actions_[i];
    raise(Err::TooLarge, "explicit rep: group too large to evaluate arbitrary elements");
  }

 private:
  void build_table() {
    FpRing fq(this->q_);
    FqMat id = FqMat::identity(fq, this->d_);
    index_.emplace(pack(id), 0);
    elements_.push_back(id);
    table_.push_back(Mat<R>::identity(this->ring_, this->dim_));
    for (std::size_t head = 0; head < elements_.size(); ++head) {
      for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
        FqMat next = gens_[gi] * elements_[head];
        Mat<R> mat = gen_actions_[gi] * table_[head];
        auto key = pack(next);
        auto it = index_.find(key);
        if (it == index_.end()) {
          index_.emplace(key, static_cast<int>(elements_.size()));
          elements_.push_back(next);
          table_.push_back(mat);
        } else {
          // Same group element reached along two words: the matrices must
          // agree, otherwise the generator matrices are not a representation.
          require(table_[static_cast<std::size_t>(it->second)] == mat, Err::Equivariance,
                  "generator matrices do not define a representation of GL_d");
        }
      }
    }
    ensure(static_cast<long long>(elements_.size()) == gl_order(this->q_, this->d_),
           "explicit rep: generators do not generate GL_d");
  }

  std::vector<FqMat> gens_;
  std::vector<Mat<R>> gen_actions_;
  std::vector<FqMat> elements_;
  std::vector<Mat<R>> table_;
  FqMatIndex index_;
};

template <class R>
class SumRep final : public GlRepBase<R> {
 public:
  SumRep(GlRep<R> a, GlRep<R> b)
      : GlRepBase<R>(a.ring(), a.q(), a.degree(), a.dim() + b.dim(),
                     a.verified() && b.verified()),
        a_(std::move(a)), b_(std::move(b)) {
    require(a_.q() == b_.q() && a_.degree() == b_.degree(), Err::BadDims,
            "direct sum of reps of different groups");
  }
  Mat<R> act(const FqMat& sigma) const override {
    return block_diag(a_.act(sigma), b_.act(sigma));
  }

 private:
  GlRep<R> a_, b_;
};

template <class R>
class QuotientRep final : public GlRepBase<R> {
 public:
  QuotientRep(GlRep<R> parent, Mat<R> projection, Mat<R> section)
      : GlRepBase<R>(parent.ring(), parent.q(), parent.degree() - 1, projection.rows(),
                     parent.verified()),
        parent_(std::move(parent)), projection_(std::move(projection)),
        section_(std::move(section)) {
    require(this->d_ >= 0, Err::BadDims, "quotient rep needs parent degree >= 1");
  }
  Mat<R> act(const FqMat& sigma) const override {
    FqMat lifted = block_diag(FqMat::identity(FpRing(this->q_), 1), sigma);
    return projection_ * parent_.act(lifted) * section_;
  }

 private:
  GlRep<R> parent_;
  Mat<R> projection_, section_;
};

}  // namespace detail

template <class R>
GlRep<R> GlRep<R>::trivial(R ring, std::uint64_t q, int d) {
  return GlRep(std::make_shared<detail::TrivialRep<R>>(ring, q, d));
}
template <class R>
GlRep<R> GlRep<R>::regular(R ring, std::uint64_t q, int d, long long cap) {
  require(gl_order(q, d) <= cap, Err::TooLarge, "regular rep: group exceeds cap");
  return GlRep(std::make_shared<detail::RegularRep<R>>(ring, q, d, cap));
}
template <class R>
GlRep<R> GlRep<R>::proj_lines(R ring, std::uint64_t q, int d) {
  return GlRep(std::make_shared<detail::ProjLinesRep<R>>(ring, q, d));
}
template <class R>
GlRep<R> GlRep<R>::explicit_rep(R ring, std::uint64_t q, int d, int dim,
                                std::vector<Mat<R>> gen_actions, long long cap) {
  return GlRep(std::make_shared<detail::ExplicitRep<R>>(ring, q, d, dim,
                                                        std::move(gen_actions), cap));
}
template <class R>
GlRep<R> GlRep<R>::direct_sum(GlRep a, GlRep b) {
  return GlRep(std::make_shared<detail::SumRep<R>>(std::move(a), std::move(b)));
}
template <class R>
GlRep<R> GlRep<R>::quotient_through_embedding(GlRep<R> parent, Mat<R> projection,
                                              Mat<R> section) {
  return GlRep(std::make_shared<detail::QuotientRep<R>>(std::move(parent), std::move(projection),
                                                        std::move(section)));
}

}  // namespace viq
