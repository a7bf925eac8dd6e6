#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "viq/error.hpp"

namespace viq {

// Dense exact matrix over a ring context R (FpRing or RatRing). Row-major.
// Values are immutable in spirit: operations return fresh matrices.
template <class R>
class Mat {
 public:
  using Elem = typename R::Elem;

  Mat() : ring_(), rows_(0), cols_(0) {}
  Mat(R ring, int rows, int cols)
      : ring_(ring), rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, ring.zero()) {
    require(rows >= 0 && cols >= 0, Err::BadDims, "negative matrix dimension");
  }

  static Mat identity(R ring, int n) {
    Mat m(ring, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ring.one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const R& ring() const { return ring_; }

  Elem& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Elem& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  bool operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(ring_ == o.ring_)) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!ring_.eq(data_[k], o.data_[k])) return false;
    return true;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!ring_.is_zero(e)) return false;
    return true;
  }

  Mat transpose() const {
    Mat t(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Mat col(int j) const {
    Mat c(ring_, rows_, 1);
    for (int i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
    return c;
  }

 private:
  R ring_;
  int rows_, cols_;
  std::vector<Elem> data_;
};

template <class R>
Mat<R> operator*(const Mat<R>& a, const Mat<R>& b) {
  require(a.cols() == b.rows(), Err::BadDims, "matrix product shape mismatch");
  ensure(a.ring() == b.ring(), "matrix product over mismatched rings");
  const R& k = a.ring();
  Mat<R> c(k, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int l = 0; l < a.cols(); ++l) {
      const auto& ail = a.at(i, l);
      if (k.is_zero(ail)) continue;
      for (int j = 0; j < b.cols(); ++j)
        c.at(i, j) = k.add(c.at(i, j), k.mul(ail, b.at(l, j)));
    }
  return c;
}

template <class R>
Mat<R> operator+(const Mat<R>& a, const Mat<R>& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), Err::BadDims, "matrix sum shape mismatch");
  Mat<R> c(a.ring(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.ring().add(a.at(i, j), b.at(i, j));
  return c;
}

template <class R>
Mat<R> operator-(const Mat<R>& a, const Mat<R>& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), Err::BadDims, "matrix diff shape mismatch");
  Mat<R> c(a.ring(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.ring().sub(a.at(i, j), b.at(i, j));
  return c;
}

template <class R>
Mat<R> hcat(const Mat<R>& a, const Mat<R>& b) {
  require(a.rows() == b.rows(), Err::BadDims, "hcat row mismatch");
  Mat<R> c(a.ring(), a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
  }
  return c;
}

template <class R>
Mat<R> block_diag(const Mat<R>& a, const Mat<R>& b) {
  Mat<R> c(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) c.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return c;
}

// ---------------------------------------------------------------------------
// Elimination kernels. All scans run in increasing index order, so results
// are deterministic functions of the input.
// ---------------------------------------------------------------------------

template <class R>
struct RankNullspace {
  int rank = 0;
  Mat<R> nullspace;  // columns span ker(m)
};

// Row-style reduced echelon on a working copy; kernel basis from free columns.
template <class R>
RankNullspace<R> rank_nullspace(const Mat<R>& m) {
  const R& k = m.ring();
  Mat<R> a = m;
  const int rows = a.rows(), cols = a.cols();
  std::vector<int> pivot_col_of_row;
  std::vector<int> pivot_row_of_col(cols, -1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!k.is_zero(a.at(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) std::swap(a.at(piv, j), a.at(r, j));
    auto inv = k.inv(a.at(r, c));
    for (int j = 0; j < cols; ++j) a.at(r, j) = k.mul(a.at(r, j), inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || k.is_zero(a.at(i, c))) continue;
      auto f = a.at(i, c);
      for (int j = 0; j < cols; ++j) a.at(i, j) = k.sub(a.at(i, j), k.mul(f, a.at(r, j)));
    }
    pivot_col_of_row.push_back(c);
    pivot_row_of_col[c] = r;
    ++r;
  }
  RankNullspace<R> out;
  out.rank = r;
  out.nullspace = Mat<R>(k, cols, cols - r);
  int nk = 0;
  for (int c = 0; c < cols; ++c) {
    if (pivot_row_of_col[c] >= 0) continue;
    out.nullspace.at(c, nk) = k.one();
    for (int i = 0; i < r; ++i)
      out.nullspace.at(pivot_col_of_row[i], nk) = k.neg(a.at(i, c));
    ++nk;
  }
  return out;
}

template <class R>
int rank_of(const Mat<R>& m) {
  return rank_nullspace(m).rank;
}

template <class R>
struct ColumnEchelon {
  Mat<R> echelon;               // full-column-rank canonical basis of the column span
  std::vector<int> pivot_rows;  // strictly increasing
  Mat<R> ops;                   // m * ops = [echelon | 0], ops invertible
  int rank = 0;
};

// Reduced column echelon: unique basis of the column span with pivot rows
// p_1 < ... < p_r, pivot entries 1, and zeros elsewhere in each pivot row.
template <class R>
ColumnEchelon<R> reduced_column_echelon(const Mat<R>& m) {
  const R& k = m.ring();
  Mat<R> a = m;
  Mat<R> u = Mat<R>::identity(k, m.cols());
  const int rows = a.rows(), cols = a.cols();
  std::vector<int> pivots;
  int c = 0;
  for (int row = 0; row < rows && c < cols; ++row) {
    int pj = -1;
    for (int j = c; j < cols; ++j)
      if (!k.is_zero(a.at(row, j))) {
        pj = j;
        break;
      }
    if (pj < 0) continue;
    if (pj != c)
      for (int i = 0; i < rows; ++i) std::swap(a.at(i, pj), a.at(i, c));
    if (pj != c)
      for (int i = 0; i < cols; ++i) std::swap(u.at(i, pj), u.at(i, c));
    auto inv = k.inv(a.at(row, c));
    for (int i = 0; i < rows; ++i) a.at(i, c) = k.mul(a.at(i, c), inv);
    for (int i = 0; i < cols; ++i) u.at(i, c) = k.mul(u.at(i, c), inv);
    for (int j = 0; j < cols; ++j) {
      if (j == c || k.is_zero(a.at(row, j))) continue;
      auto f = a.at(row, j);
      for (int i = 0; i < rows; ++i) a.at(i, j) = k.sub(a.at(i, j), k.mul(f, a.at(i, c)));
      for (int i = 0; i < cols; ++i) u.at(i, j) = k.sub(u.at(i, j), k.mul(f, u.at(i, c)));
    }
    pivots.push_back(row);
    ++c;
  }
  ColumnEchelon<R> out;
  out.rank = c;
  out.pivot_rows = pivots;
  out.echelon = Mat<R>(k, rows, c);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < c; ++j) out.echelon.at(i, j) = a.at(i, j);
  out.ops = u;
  return out;
}

template <class R>
Mat<R> inverse(const Mat<R>& m) {
  require(m.rows() == m.cols(), Err::BadDims, "inverse of non-square matrix");
  const R& k = m.ring();
  const int n = m.rows();
  Mat<R> a = hcat(m, Mat<R>::identity(k, n));
  int r = 0;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = r; i < n; ++i)
      if (!k.is_zero(a.at(i, c))) {
        piv = i;
        break;
      }
    require(piv >= 0, Err::NotFullRank, "singular matrix");
    if (piv != r)
      for (int j = 0; j < 2 * n; ++j) std::swap(a.at(piv, j), a.at(r, j));
    auto inv = k.inv(a.at(r, c));
    for (int j = 0; j < 2 * n; ++j) a.at(r, j) = k.mul(a.at(r, j), inv);
    for (int i = 0; i < n; ++i) {
      if (i == r || k.is_zero(a.at(i, c))) continue;
      auto f = a.at(i, c);
      for (int j = 0; j < 2 * n; ++j) a.at(i, j) = k.sub(a.at(i, j), k.mul(f, a.at(r, j)));
    }
    ++r;
  }
  Mat<R> out(k, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = a.at(i, n + j);
  return out;
}

template <class R>
struct CanonicalFactorization {
  Mat<R> canonical;  // reduced column echelon, depends only on the column span
  Mat<R> transform;  // input = canonical * transform, transform invertible
};

template <class R>
CanonicalFactorization<R> column_echelon_canonical(const Mat<R>& m) {
  auto ech = reduced_column_echelon(m);
  require(ech.rank == m.cols(), Err::NotFullRank, "matrix does not have full column rank");
  return {ech.echelon, inverse(ech.ops)};
}

template <class R>
struct QuotientMaps {
  Mat<R> projection;  // quotient_dim x ambient, kernel = span of the generators
  Mat<R> section;     // ambient x quotient_dim, projection * section = identity
  int dim = 0;
};

// Quotient of K^ambient by the column span of gens, in the coordinates of the
// non-pivot rows of the span's echelon basis.
template <class R>
QuotientMaps<R> quotient_by_colspan(int ambient_dim, const Mat<R>& gens) {
  const R& k = gens.ring();
  require(gens.rows() == ambient_dim, Err::BadDims, "subspace generators have wrong ambient dim");
  auto ech = reduced_column_echelon(gens);
  std::vector<bool> is_pivot(ambient_dim, false);
  for (int p : ech.pivot_rows) is_pivot[p] = true;
  QuotientMaps<R> out;
  out.dim = ambient_dim - ech.rank;
  out.projection = Mat<R>(k, out.dim, ambient_dim);
  out.section = Mat<R>(k, ambient_dim, out.dim);
  int row = 0;
  for (int i = 0; i < ambient_dim; ++i) {
    if (is_pivot[i]) continue;
    out.projection.at(row, i) = k.one();
    for (int j = 0; j < ech.rank; ++j)
      out.projection.at(row, ech.pivot_rows[j]) = k.neg(ech.echelon.at(i, j));
    out.section.at(i, row) = k.one();
    ++row;
  }
  return out;
}

// Solve B * X = C for B of full column rank; raises if inconsistent.
template <class R>
Mat<R> solve_full_colrank(const Mat<R>& b, const Mat<R>& c) {
  const R& k = b.ring();
  require(b.rows() == c.rows(), Err::BadDims, "solve shape mismatch");
  Mat<R> a = hcat(b, c);
  const int rows = a.rows(), bc = b.cols(), ac = a.cols();
  int r = 0;
  std::vector<int> pivot_row_of_col(bc, -1);
  for (int col = 0; col < bc; ++col) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!k.is_zero(a.at(i, col))) {
        piv = i;
        break;
      }
    require(piv >= 0, Err::NotFullRank, "solve: matrix not of full column rank");
    if (piv != r)
      for (int j = 0; j < ac; ++j) std::swap(a.at(piv, j), a.at(r, j));
    auto inv = k.inv(a.at(r, col));
    for (int j = 0; j < ac; ++j) a.at(r, j) = k.mul(a.at(r, j), inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || k.is_zero(a.at(i, col))) continue;
      auto f = a.at(i, col);
      for (int j = 0; j < ac; ++j) a.at(i, j) = k.sub(a.at(i, j), k.mul(f, a.at(r, j)));
    }
    pivot_row_of_col[col] = r;
    ++r;
  }
  for (int i = r; i < rows; ++i)
    for (int j = bc; j < ac; ++j)
      ensure(k.is_zero(a.at(i, j)), "solve: inconsistent system");
  Mat<R> x(k, bc, c.cols());
  for (int col = 0; col < bc; ++col)
    for (int j = 0; j < c.cols(); ++j) x.at(col, j) = a.at(pivot_row_of_col[col], bc + j);
  return x;
}

// Does every column of m lie in the column span of basis?
template <class R>
bool colspan_contains(const Mat<R>& basis, const Mat<R>& m) {
  int rb = rank_of(basis);
  return rank_of(hcat(basis, m)) == rb;
}

template <class R>
std::string to_string(const Mat<R>& m) {
  std::string s = "[";
  for (int i = 0; i < m.rows(); ++i) {
    s += i ? "; " : "";
    for (int j = 0; j < m.cols(); ++j) s += (j ? "," : "") + m.ring().str(m.at(i, j));
  }
  return s + "]";
}

}  // namespace viq
