#include "viq/vi_category.hpp"

#include <algorithm>

namespace viq {

std::size_t FqMatHash::operator()(const std::vector<std::uint32_t>& key) const {
  std::size_t h = 1469598103934665603ull;
  for (std::uint32_t v : key) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::uint32_t> pack(const FqMat& m) {
  std::vector<std::uint32_t> key;
  key.reserve(static_cast<std::size_t>(m.rows()) * m.cols() + 2);
  key.push_back(static_cast<std::uint32_t>(m.rows()));
  key.push_back(static_cast<std::uint32_t>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) key.push_back(static_cast<std::uint32_t>(m.at(i, j)));
  return key;
}

namespace {

long long ipow(std::uint64_t q, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<long long>(q);
  return r;
}

}  // namespace

long long injection_count(std::uint64_t q, int d, int n) {
  if (d > n) return 0;
  long long r = 1;
  long long qn = ipow(q, n);
  for (int i = 0; i < d; ++i) r *= qn - ipow(q, i);
  return r;
}

long long gl_order(std::uint64_t q, int n) { return injection_count(q, n, n); }

long long gaussian_binomial(std::uint64_t q, int n, int d) {
  if (d < 0 || d > n) return 0;
  long long num = injection_count(q, d, n);
  long long den = gl_order(q, d);
  ensure(den != 0 && num % den == 0, "gaussian binomial not integral");
  return num / den;
}

std::vector<FqMat> enumerate_injections(std::uint64_t q, int d, int n, long long cap) {
  FpRing k(q);
  std::vector<FqMat> out;
  if (d > n) return out;
  long long total = injection_count(q, d, n);
  require(total <= cap, Err::TooLarge, "injection enumeration exceeds cap");
  out.reserve(static_cast<std::size_t>(total));
  // Extend column by column with every vector outside the span so far;
  // columns run through F_q^n in odometer order, so the output is
  // deterministic. d = 0 contributes the single empty morphism.
  long long vectors = ipow(q, n);
  FqMat partial(k, n, d);
  auto extend = [&](auto&& self, int col) -> void {
    if (col == d) {
      out.push_back(partial);
      return;
    }
    std::vector<std::uint64_t> v(n, 0);
    for (long long idx = 0; idx < vectors; ++idx) {
      for (int i = 0; i < n; ++i) partial.at(i, col) = v[i];
      FqMat head(k, n, col + 1);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j <= col; ++j) head.at(i, j) = partial.at(i, j);
      if (rank_of(head) == col + 1) self(self, col + 1);
      for (int pos = 0; pos < n; ++pos) {
        if (++v[pos] < q) break;
        v[pos] = 0;
      }
    }
    for (int i = 0; i < n; ++i) partial.at(i, col) = k.zero();
  };
  extend(extend, 0);
  ensure(static_cast<long long>(out.size()) == total, "injection count mismatch");
  return out;
}

std::vector<FqMat> coset_representatives(std::uint64_t q, int d, int n) {
  FpRing k(q);
  std::vector<FqMat> out;
  if (d > n) return out;
  // Reduced column echelon forms: choose pivot rows p_1 < ... < p_d, then all
  // assignments of the free entries (rows below the pivot, not pivot rows).
  std::vector<int> pivots(d);
  for (int i = 0; i < d; ++i) pivots[i] = i;
  auto emit_for_pivots = [&](const std::vector<int>& p) {
    std::vector<bool> is_pivot(n, false);
    for (int v : p) is_pivot[v] = true;
    std::vector<std::pair<int, int>> free_cells;  // (row, col)
    for (int j = 0; j < d; ++j)
      for (int i = p[j] + 1; i < n; ++i)
        if (!is_pivot[i]) free_cells.push_back({i, j});
    std::vector<std::uint64_t> digits(free_cells.size(), 0);
    while (true) {
      FqMat m(k, n, d);
      for (int j = 0; j < d; ++j) m.at(p[j], j) = k.one();
      for (std::size_t c = 0; c < free_cells.size(); ++c)
        m.at(free_cells[c].first, free_cells[c].second) = digits[c];
      out.push_back(m);
      std::size_t pos = 0;
      for (; pos < digits.size(); ++pos) {
        if (++digits[pos] < q) break;
        digits[pos] = 0;
      }
      if (pos == digits.size()) break;
    }
  };
  // Iterate pivot combinations in lexicographic order.
  while (true) {
    emit_for_pivots(pivots);
    int i = d - 1;
    while (i >= 0 && pivots[i] == n - d + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  ensure(static_cast<long long>(out.size()) == gaussian_binomial(q, n, d),
         "coset representative count mismatch");
  return out;
}

FqMat standard_inclusion(std::uint64_t q, int n, int m) {
  require(0 <= n && n <= m, Err::BadDims, "standard inclusion needs n <= m");
  FpRing k(q);
  FqMat f(k, m, n);
  for (int i = 0; i < n; ++i) f.at(i, i) = k.one();
  return f;
}

FqMat cycle_matrix(std::uint64_t q, int m) {
  FpRing k(q);
  FqMat s(k, m, m);
  for (int i = 0; i < m - 1; ++i) s.at(i + 1, i) = k.one();
  if (m > 0) s.at(0, m - 1) = k.one();
  return s;
}

FqMat rotation_matrix(std::uint64_t q, int m, int x) {
  require(0 <= x && x <= m, Err::BadDims, "rotation amount outside range");
  FpRing k(q);
  FqMat s(k, m, m);
  for (int j = 0; j < m; ++j) {
    int target = j < m - x ? x + j : j - (m - x);
    s.at(target, j) = k.one();
  }
  return s;
}

std::vector<FqMat> gl_generators(std::uint64_t q, int n) {
  FpRing k(q);
  std::vector<FqMat> gens;
  if (n == 0) return gens;
  std::uint64_t gamma = primitive_root(q);
  if (n == 1) {
    if (q > 2) {
      FqMat g(k, 1, 1);
      g.at(0, 0) = gamma;
      gens.push_back(g);
    }
    return gens;
  }
  if (q > 2) {
    FqMat diag = FqMat::identity(k, n);
    diag.at(0, 0) = gamma;
    gens.push_back(diag);
  }
  gens.push_back(cycle_matrix(q, n));
  FqMat trans = FqMat::identity(k, n);
  trans.at(0, 1) = k.one();
  gens.push_back(trans);
  return gens;
}

GroupClosure group_closure(std::uint64_t q, int n, const std::vector<FqMat>& gens,
                           long long cap) {
  FpRing k(q);
  GroupClosure out;
  FqMat id = FqMat::identity(k, n);
  out.elements.push_back(id);
  out.index.emplace(pack(id), 0);
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    FqMat cur = out.elements[head];
    for (const FqMat& g : gens) {
      FqMat next = g * cur;
      auto key = pack(next);
      if (out.index.count(key)) continue;
      require(static_cast<long long>(out.elements.size()) < cap, Err::TooLarge,
              "group closure exceeds cap");
      out.index.emplace(key, static_cast<int>(out.elements.size()));
      out.elements.push_back(next);
    }
  }
  return out;
}

std::vector<FqMat> unipotent_generators(std::uint64_t q, int n) {
  FpRing k(q);
  std::vector<FqMat> gens;
  for (int i = 0; i < n; ++i) {
    FqMat u = FqMat::identity(k, 1 + n);
    u.at(1 + i, 0) = k.one();
    gens.push_back(u);
  }
  return gens;
}

std::vector<FqMat> unipotent_group(std::uint64_t q, int n, long long cap) {
  FpRing k(q);
  long long size = ipow(q, n);
  require(size <= cap, Err::TooLarge, "unipotent group exceeds cap");
  std::vector<FqMat> out;
  out.reserve(static_cast<std::size_t>(size));
  std::vector<std::uint64_t> z(n, 0);
  for (long long idx = 0; idx < size; ++idx) {
    FqMat u = FqMat::identity(k, 1 + n);
    for (int i = 0; i < n; ++i) u.at(1 + i, 0) = z[i];
    out.push_back(u);
    for (int pos = 0; pos < n; ++pos) {
      if (++z[pos] < q) break;
      z[pos] = 0;
    }
  }
  return out;
}

int x_rank(const FqMat& f, int x_dim) {
  require(0 <= x_dim && x_dim <= f.rows(), Err::BadDims, "x_rank: bad X dimension");
  const int z = f.rows() - x_dim;
  FqMat bottom(f.ring(), z, f.cols());
  for (int i = 0; i < z; ++i)
    for (int j = 0; j < f.cols(); ++j) bottom.at(i, j) = f.at(x_dim + i, j);
  return rank_of(bottom);
}

XkDecomposition xk_decompose(const FqMat& f, int x_dim) {
  const FpRing& k = f.ring();
  const int d = f.cols();
  const int z = f.rows() - x_dim;
  require(z >= 0, Err::BadDims, "xk_decompose: bad X dimension");
  FqMat top(k, x_dim, d), bottom(k, z, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < x_dim; ++i) top.at(i, j) = f.at(i, j);
    for (int i = 0; i < z; ++i) bottom.at(i, j) = f.at(x_dim + i, j);
  }
  auto ech = reduced_column_echelon(bottom);
  XkDecomposition out;
  out.k = ech.rank;
  out.h = ech.echelon;
  Mat<FpRing> gbot = out.k == 0 ? FqMat(k, 0, d) : solve_full_colrank(out.h, bottom);
  out.g = FqMat(k, x_dim + out.k, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < x_dim; ++i) out.g.at(i, j) = top.at(i, j);
    for (int i = 0; i < out.k; ++i) out.g.at(x_dim + i, j) = gbot.at(i, j);
  }
  return out;
}

FqMat complete_to_automorphism(const FqMat& f) {
  const FpRing& k = f.ring();
  const int n = f.rows(), d = f.cols();
  FqMat s(k, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) s.at(i, j) = f.at(i, j);
  // Greedily extend by standard basis vectors that keep the rank growing.
  int filled = d;
  for (int b = 0; b < n && filled < n; ++b) {
    s.at(b, filled) = k.one();
    FqMat probe(k, n, filled + 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= filled; ++j) probe.at(i, j) = s.at(i, j);
    if (rank_of(probe) == filled + 1)
      ++filled;
    else
      s.at(b, filled) = k.zero();
  }
  ensure(filled == n, "injection could not be completed");
  return s;
}

}  // namespace viq
