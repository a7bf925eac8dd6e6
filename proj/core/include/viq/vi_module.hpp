#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "viq/window.hpp"

namespace viq {

// A VI-module presented as the cokernel of I(W) -> I(V); the map is recorded
// degreewise on the generating representations W_e, one matrix per relation
// degree, with columns in the canonical induced basis of I(V)(F^e).
template <class R>
struct PresentedModule {
  R ring;
  std::uint64_t q = 2;
  VBModule<R> v;
  VBModule<R> w;
  std::map<int, Mat<R>> rel_maps;
  std::string name;
};

template <class R>
struct PresentedWindows {
  std::shared_ptr<const InducedWindow<R>> induced;   // I(V)
  std::shared_ptr<const QuotientWindow<R>> module;   // M = coker(I(W) -> I(V))
  std::shared_ptr<const SubWindow<R>> relations;     // K = im(I(W) -> I(V))
};

// The relation map must be a map of representations in each degree; failures
// are reported with the offending degree and generator index.
template <class R>
void check_equivariance(const PresentedModule<R>& p) {
  for (const auto& [e, rel] : p.rel_maps) {
    const GlRep<R>* we = p.w.comp(e);
    require(we != nullptr, Err::Parse, "relation map at a degree with no relation generators");
    InducedWindow<R> iv(p.v, e);
    require(rel.rows() == iv.dim(e) && rel.cols() == we->dim(), Err::BadDims,
            "relation map has wrong shape");
    auto gens = gl_generators(p.q, e);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (iv.act(e, gens[i]) * rel == rel * we->act(gens[i])) continue;
      raise(Err::Equivariance, "relation map at degree " + std::to_string(e) +
                                   " is not equivariant for generator " + std::to_string(i));
    }
  }
}

// Evaluate the presentation on degrees 0..max_degree. The VI-span of the
// relations at degree n is the span of g_*(rel(W_e)) over all canonical coset
// representatives g : F^e -> F^n; equivariance of the relation maps makes
// this span GL_n-stable by construction.
template <class R>
PresentedWindows<R> build_windows(const PresentedModule<R>& p, int max_degree,
                                  long long dim_cap = kDimCap) {
  PresentedWindows<R> out;
  out.induced = std::make_shared<InducedWindow<R>>(p.v, max_degree, dim_cap);
  std::vector<Mat<R>> spans;
  for (int n = 0; n <= max_degree; ++n) {
    Mat<R> span(p.ring, out.induced->dim(n), 0);
    for (const auto& [e, rel] : p.rel_maps) {
      if (e > n) continue;
      for (const FqMat& g : coset_representatives(p.q, e, n))
        span = hcat(span, out.induced->map_along(g) * rel);
    }
    spans.push_back(std::move(span));
  }
  std::vector<Mat<R>> bases;
  for (const auto& s : spans) bases.push_back(reduced_column_echelon(s).echelon);
  out.module = std::make_shared<QuotientWindow<R>>(out.induced, spans, max_degree);
  out.relations = std::make_shared<SubWindow<R>>(out.induced, bases, max_degree);
  return out;
}

// dim I(V)(F^n) = sum_d [n choose d]_q dim V_d  (closed form).
template <class R>
long long induced_dim_formula(const VBModule<R>& v, std::uint64_t q, int n) {
  long long total = 0;
  for (const auto& [d, rep] : v.components()) total += gaussian_binomial(q, n, d) * rep.dim();
  return total;
}

// H_1 via the long exact sequence of 0 -> K -> I(V) -> M -> 0: induced
// modules are homology acyclic, so H_1(M)_n = ker(H_0(K)_n -> H_0(I(V))_n).
template <class R>
std::vector<int> h1_dims(const PresentedWindows<R>& w) {
  auto h0k = h0_maps(*w.relations);
  auto h0i = h0_maps(*w.induced);
  std::vector<int> out;
  for (int n = 0; n <= w.relations->max_degree(); ++n) {
    if (h0k.dims[static_cast<std::size_t>(n)] == 0) {
      out.push_back(0);
      continue;
    }
    Mat<R> t = h0i.quots[static_cast<std::size_t>(n)].projection * w.relations->basis(n) *
               h0k.quots[static_cast<std::size_t>(n)].section;
    out.push_back(h0k.dims[static_cast<std::size_t>(n)] - rank_of(t));
  }
  return out;
}

// Largest n in window with H_1 nonzero; -1 when none.
template <class R>
int t1_estimate(const PresentedWindows<R>& w) {
  auto dims = h1_dims(w);
  for (int n = static_cast<int>(dims.size()) - 1; n >= 0; --n)
    if (dims[static_cast<std::size_t>(n)] != 0) return n;
  return -1;
}

// ---------------------------------------------------------------------------
// Semi-induced certificate.
// ---------------------------------------------------------------------------

struct GradedPieceReport {
  int i = 0;                    // filtration stage
  int dim_at_i = 0;             // dim of the graded piece at its generating degree
  std::vector<int> degrees;     // checked degrees
  std::vector<bool> induced_ok; // dim equals [n choose i]_q * dim_at_i
  bool pass = true;
};

struct CertificateReport {
  bool pass = false;            // certificate verdict through the window
  int pass_up_to = -1;          // largest degree n with H_1_m = 0 for all m <= n
  std::vector<int> h1;          // present when computed from a presentation
  std::vector<GradedPieceReport> filtration;
  bool torsion_free = true;
  int window = 0;
};

// Window certificate usable on any evaluated module: every graded piece of
// the degree filtration must grow like an induced module, and the torsion
// probe must vanish. A presented module additionally gets the H_1 criterion.
template <class R>
CertificateReport filtration_certificate(const WindowBase<R>& m) {
  CertificateReport rep;
  rep.window = m.max_degree();
  rep.torsion_free = true;
  for (int n = 0; n <= m.max_degree(); ++n)
    if (torsion_basis(m, n).cols() != 0) rep.torsion_free = false;
  int t0 = t0_estimate(m);
  bool all_ok = true;
  for (int i = 0; i <= t0; ++i) {
    GradedPieceReport g;
    g.i = i;
    std::vector<int> le_dims, lt_dims;
    for (int n = i; n <= m.max_degree(); ++n) {
      le_dims.push_back(n == i ? m.dim(n) : span_from_degree(m, i, n).cols());
      lt_dims.push_back(i == 0 ? 0 : span_from_degree(m, i - 1, n).cols());
    }
    g.dim_at_i = le_dims[0] - lt_dims[0];
    for (int n = i; n <= m.max_degree(); ++n) {
      int got = le_dims[static_cast<std::size_t>(n - i)] - lt_dims[static_cast<std::size_t>(n - i)];
      long long want = gaussian_binomial(m.q(), n, i) * g.dim_at_i;
      g.degrees.push_back(n);
      g.induced_ok.push_back(got == want);
      if (got != want) g.pass = false;
    }
    all_ok = all_ok && g.pass;
    rep.filtration.push_back(std::move(g));
  }
  rep.pass = all_ok && rep.torsion_free;
  rep.pass_up_to = rep.pass ? m.max_degree() : -1;
  return rep;
}

template <class R>
CertificateReport semi_induced_certificate(const PresentedWindows<R>& w) {
  CertificateReport rep = filtration_certificate(*w.module);
  rep.h1 = h1_dims(w);
  rep.pass_up_to = w.module->max_degree();
  for (int n = 0; n <= w.module->max_degree(); ++n)
    if (rep.h1[static_cast<std::size_t>(n)] != 0) {
      rep.pass_up_to = n - 1;
      break;
    }
  rep.pass = rep.pass && rep.pass_up_to == w.module->max_degree();
  return rep;
}

// ---------------------------------------------------------------------------
// Coinduced modules  Hom_{GL_d}(k[Hom_VI(-, F^d)], E).
// ---------------------------------------------------------------------------

template <class R>
class CoinducedWindow final : public WindowBase<R> {
 public:
  CoinducedWindow(GlRep<R> e, int max_degree, long long cap = kDefaultEnumCap)
      : WindowBase<R>(e.ring(), e.q(), max_degree), e_(std::move(e)), d_(e_.degree()) {
    for (int n = 0; n <= max_degree; ++n) {
      if (n > d_) {
        homs_.push_back({});
        hom_index_.push_back({});
        sols_.push_back(Mat<R>(this->ring_, 0, 0));
        continue;
      }
      auto homs = enumerate_injections(this->q_, n, d_, cap);
      FqMatIndex index;
      for (std::size_t i = 0; i < homs.size(); ++i) index.emplace(pack(homs[i]), static_cast<int>(i));
      const int ed = e_.dim();
      const int big = static_cast<int>(homs.size()) * ed;
      // Equivariance for the generators of GL_d acting by post-composition:
      // psi(g . f) = rho_E(g) psi(f).
      auto gens = gl_generators(this->q_, d_);
      Mat<R> sys(this->ring_, static_cast<int>(gens.size()) * big, big);
      int row0 = 0;
      for (const FqMat& g : gens) {
        Mat<R> rho = e_.act(g);
        for (std::size_t jf = 0; jf < homs.size(); ++jf) {
          auto it = index.find(pack(g * homs[jf]));
          ensure(it != index.end(), "coinduced: post-composition left Hom set");
          const int jg = it->second;
          for (int r = 0; r < ed; ++r) {
            sys.at(row0 + static_cast<int>(jf) * ed + r, jg * ed + r) = this->ring_.one();
            for (int c = 0; c < ed; ++c)
              sys.at(row0 + static_cast<int>(jf) * ed + r, static_cast<int>(jf) * ed + c) =
                  this->ring_.sub(sys.at(row0 + static_cast<int>(jf) * ed + r,
                                         static_cast<int>(jf) * ed + c),
                                  rho.at(r, c));
          }
        }
        row0 += big;
      }
      sols_.push_back(rank_nullspace(sys).nullspace);
      homs_.push_back(std::move(homs));
      hom_index_.push_back(std::move(index));
    }
  }

  int dim(int n) const override {
    this->check_degree(n);
    return sols_[static_cast<std::size_t>(n)].cols();
  }

  Mat<R> act(int n, const FqMat& sigma) const override {
    this->check_degree(n);
    // (sigma_* psi)(h) = psi(h . sigma)
    Mat<R> p = pullback(n, n, sigma);
    const auto& basis = sols_[static_cast<std::size_t>(n)];
    if (basis.cols() == 0) return Mat<R>(this->ring_, 0, 0);
    return solve_full_colrank(basis, p * basis);
  }

  Mat<R> inclusion(int n) const override {
    this->check_degree(n, true);
    const auto& src = sols_[static_cast<std::size_t>(n)];
    const auto& dst = sols_[static_cast<std::size_t>(n + 1)];
    if (dst.cols() == 0) return Mat<R>(this->ring_, 0, src.cols());
    Mat<R> f = pullback(n + 1, n, standard_inclusion(this->q_, n, n + 1));
    return solve_full_colrank(dst, f * src);
  }

 private:
  // Matrix of psi |-> psi(- . f) from functions on Hom(F^b, F^d) to functions
  // on Hom(F^a, F^d), for f : F^b -> F^a.
  Mat<R> pullback(int a, int b, const FqMat& f) const {
    const int ed = e_.dim();
    const auto& src_homs = homs_[static_cast<std::size_t>(b)];
    const auto& src_index = hom_index_[static_cast<std::size_t>(b)];
    const auto& dst_homs = homs_[static_cast<std::size_t>(a)];
    Mat<R> out(this->ring_, static_cast<int>(dst_homs.size()) * ed,
               static_cast<int>(src_homs.size()) * ed);
    for (std::size_t jh = 0; jh < dst_homs.size(); ++jh) {
      auto it = src_index.find(pack(dst_homs[jh] * f));
      ensure(it != src_index.end(), "coinduced: precomposition left Hom set");
      for (int r = 0; r < ed; ++r)
        out.at(static_cast<int>(jh) * ed + r, it->second * ed + r) = this->ring_.one();
    }
    return out;
  }

  GlRep<R> e_;
  int d_;
  std::vector<std::vector<FqMat>> homs_;
  std::vector<FqMatIndex> hom_index_;
  std::vector<Mat<R>> sols_;
};

// dim of the space of VI-module maps M -> N determined inside the window:
// unknown degreewise maps commuting with inclusions and generator actions.
// Valid when N vanishes above the window top (maps are then supported there).
template <class R>
int hom_vi_dim(const WindowBase<R>& m, const WindowBase<R>& n) {
  const R& k = m.ring();
  const int top = std::min(m.max_degree(), n.max_degree());
  std::vector<int> offset;
  int total = 0;
  for (int i = 0; i <= top; ++i) {
    offset.push_back(total);
    total += m.dim(i) * n.dim(i);
  }
  auto var = [&](int deg, int r, int c) { return offset[static_cast<std::size_t>(deg)] + r * m.dim(deg) + c; };
  std::vector<std::vector<typename R::Elem>> rows;
  auto add_commute = [&](int deg, const Mat<R>& a_m, const Mat<R>& a_n, int out_deg) {
    // constraint: phi_{out} . a_m = a_n . phi_{deg}
    for (int r = 0; r < a_n.rows(); ++r)
      for (int c = 0; c < m.dim(deg); ++c) {
        std::vector<typename R::Elem> row(static_cast<std::size_t>(total), k.zero());
        for (int t = 0; t < m.dim(out_deg); ++t)
          row[static_cast<std::size_t>(var(out_deg, r, t))] =
              k.add(row[static_cast<std::size_t>(var(out_deg, r, t))], a_m.at(t, c));
        for (int t = 0; t < n.dim(deg); ++t)
          row[static_cast<std::size_t>(var(deg, t, c))] =
              k.sub(row[static_cast<std::size_t>(var(deg, t, c))], a_n.at(r, t));
        rows.push_back(std::move(row));
      }
  };
  for (int i = 0; i <= top; ++i) {
    for (const FqMat& g : gl_generators(m.q(), i)) add_commute(i, m.act(i, g), n.act(i, g), i);
    if (i < top) add_commute(i, m.inclusion(i), n.inclusion(i), i + 1);
  }
  Mat<R> sys(k, static_cast<int>(rows.size()), total);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < total; ++c) sys.at(static_cast<int>(r), c) = rows[r][static_cast<std::size_t>(c)];
  return total - rank_of(sys);
}

// dim Hom_G(A, B) for two representations given by generator actions.
template <class R>
int equivariant_hom_dim(const R& ring, const std::vector<Mat<R>>& gens_a,
                        const std::vector<Mat<R>>& gens_b, int dim_a, int dim_b) {
  const int total = dim_a * dim_b;
  std::vector<std::vector<typename R::Elem>> rows;
  for (std::size_t gi = 0; gi < gens_a.size(); ++gi) {
    // X . a = b . X
    for (int r = 0; r < dim_b; ++r)
      for (int c = 0; c < dim_a; ++c) {
        std::vector<typename R::Elem> row(static_cast<std::size_t>(total), ring.zero());
        for (int t = 0; t < dim_a; ++t)
          row[static_cast<std::size_t>(r * dim_a + t)] =
              ring.add(row[static_cast<std::size_t>(r * dim_a + t)], gens_a[gi].at(t, c));
        for (int t = 0; t < dim_b; ++t)
          row[static_cast<std::size_t>(t * dim_a + c)] =
              ring.sub(row[static_cast<std::size_t>(t * dim_a + c)], gens_b[gi].at(r, t));
        rows.push_back(std::move(row));
      }
  }
  Mat<R> sys(ring, static_cast<int>(rows.size()), total);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < total; ++c) sys.at(static_cast<int>(r), c) = rows[r][static_cast<std::size_t>(c)];
  return total - rank_of(sys);
}

}  // namespace viq
