#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "viq/fp.hpp"
#include "viq/mat.hpp"

namespace viq {

// Morphisms of VI are injective linear maps F_q^d -> F_q^n, stored as n x d
// matrices whose columns are the images of the standard basis.
using FqMat = Mat<FpRing>;

constexpr long long kDefaultEnumCap = 1'000'000;
constexpr long long kGroupEnumCap = 25'000;

struct FqMatHash {
  std::size_t operator()(const std::vector<std::uint32_t>& key) const;
};
std::vector<std::uint32_t> pack(const FqMat& m);

using FqMatIndex = std::unordered_map<std::vector<std::uint32_t>, int, FqMatHash>;

// Number of d-dimensional subspaces of F_q^n (Gaussian binomial); 0 if d > n.
long long gaussian_binomial(std::uint64_t q, int n, int d);

// |Hom_VI(F^d, F^n)| = (q^n - 1)(q^n - q)...(q^n - q^{d-1}).
long long injection_count(std::uint64_t q, int d, int n);

// |GL_n(F_q)|.
long long gl_order(std::uint64_t q, int n);

// Every injection F^d -> F^n, each exactly once; deterministic order.
std::vector<FqMat> enumerate_injections(std::uint64_t q, int d, int n,
                                        long long cap = kDefaultEnumCap);

// One reduced-column-echelon representative per right GL_d-orbit of
// injections F^d -> F^n; count = gaussian_binomial(n, d).
std::vector<FqMat> coset_representatives(std::uint64_t q, int d, int n);

// The m x n block matrix [I_n; 0].
FqMat standard_inclusion(std::uint64_t q, int n, int m);

// Permutation of GL_m sending e_i -> e_{i+1} (i < m) and e_m -> e_1; composed
// with the standard inclusion it embeds F^{m-1} as the last m-1 coordinates.
FqMat cycle_matrix(std::uint64_t q, int m);

// x-th power of the cycle: carries the first m - x coordinates onto the
// trailing ones.
FqMat rotation_matrix(std::uint64_t q, int m, int x);

// Generators of GL_n(F_q): diag(primitive root, 1, ..) when q > 2, the n-cycle
// permutation and the transvection I + E_12 for n >= 2.
std::vector<FqMat> gl_generators(std::uint64_t q, int n);

// Closure of a generating set under multiplication; raises TooLarge past cap.
// Consistent index order: breadth-first from the identity in generator order.
struct GroupClosure {
  std::vector<FqMat> elements;
  FqMatIndex index;
};
GroupClosure group_closure(std::uint64_t q, int n, const std::vector<FqMat>& gens,
                           long long cap = kGroupEnumCap);

// Unipotent radical U_X(F^n) for one-dimensional X sitting in the first
// coordinate of F^{1+n}: all maps fixing the last n coordinates pointwise and
// sending x to x + z. Generated by the elementary translations u_i.
std::vector<FqMat> unipotent_generators(std::uint64_t q, int n);
std::vector<FqMat> unipotent_group(std::uint64_t q, int n, long long cap = kDefaultEnumCap);

// dim((X + im f)/X) where X is the first x_dim coordinates of the target.
int x_rank(const FqMat& f, int x_dim);

// f = tau^X(h) . g with  g : F^d -> X + F^k,  h : F^k -> Z  and k = x_rank(f);
// h is the canonical echelon representative of its right GL_k-coset.
struct XkDecomposition {
  int k = 0;
  FqMat g;  // (x_dim + k) x d
  FqMat h;  // (target - x_dim) x k, reduced column echelon
};
XkDecomposition xk_decompose(const FqMat& f, int x_dim);

// Extend an injection to an automorphism: returns s in GL_n with
// f = s * standard_inclusion(d, n).
FqMat complete_to_automorphism(const FqMat& f);

}  // namespace viq
