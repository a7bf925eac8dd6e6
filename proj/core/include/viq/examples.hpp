#pragma once

#include <string>

#include "viq/vi_module.hpp"

namespace viq {

// The example modules shipped with the CLI, built programmatically so tests
// and the file format stay in sync:
//   A               — the constant module (trivial generator in degree 0)
//   itriv1, itriv2  — induced from the trivial representation
//   k0              — residue of A at degree 0 (constant module cut above 0)
//   itriv1_plus_k0  — direct sum, presented jointly
template <class R>
PresentedModule<R> example_module(R ring, std::uint64_t q, const std::string& which) {
  PresentedModule<R> p;
  p.ring = ring;
  p.q = q;
  p.v = VBModule<R>(ring, q);
  p.w = VBModule<R>(ring, q);
  p.name = which;
  auto triv = [&](int d) { return GlRep<R>::trivial(ring, q, d); };
  if (which == "A") {
    p.v.add(0, triv(0));
    return p;
  }
  if (which == "itriv1") {
    p.v.add(1, triv(1));
    return p;
  }
  if (which == "itriv2") {
    p.v.add(2, triv(2));
    return p;
  }
  if (which == "k0") {
    p.v.add(0, triv(0));
    p.w.add(1, triv(1));
    Mat<R> rel(ring, 1, 1);
    rel.at(0, 0) = ring.one();
    p.rel_maps.emplace(1, std::move(rel));
    return p;
  }
  if (which == "itriv1_plus_k0") {
    p.v.add(0, triv(0));
    p.v.add(1, triv(1));
    p.w.add(1, triv(1));
    // I(V)(F^1) basis: the degree-0 coset element first, then the degree-1
    // identity coset; the relation kills the constant part above degree 0.
    Mat<R> rel(ring, 2, 1);
    rel.at(0, 0) = ring.one();
    p.rel_maps.emplace(1, std::move(rel));
    return p;
  }
  raise(Err::Parse, "unknown example module: " + which);
}

inline const std::vector<std::string>& example_module_names() {
  static const std::vector<std::string> names = {"A", "itriv1", "itriv2", "k0",
                                                 "itriv1_plus_k0"};
  return names;
}

}  // namespace viq
