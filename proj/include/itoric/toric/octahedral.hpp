#pragma once

#include "itoric/designs.hpp"
#include "itoric/toric/binomial.hpp"

namespace itoric {

// Squarefree binomial on the two sign classes of a pod design.
inline Binomial pod_binomial(const Pod& p, const IncidenceMatrix& a) {
  const NullDesign d = pod_expand(p, a.n);
  Binomial b{a.cols(), Exponents(a.cols(), 0), Exponents(a.cols(), 0)};
  for (const auto& [r, v] : d.values) (sgn(v) > 0 ? b.plus : b.minus)[r] = 1;
  return b.canonical(MonomialOrder::degrevlex(a.cols()));
}

// One binomial per pod, i.e. per hyperoctahedron of the family.
inline BinomialBasis octahedral_generators(int n, int k, int t) {
  const IncidenceMatrix a = build_matrix(n, k, t);
  if (binomial(n, t) >= binomial(n, k)) throw PreconditionFailed("kernel of A(n,k,t) is trivial");
  BinomialBasis out{BasisKind::Octahedral, {}, a};
  for (const auto& p : all_pods(n, k, t)) out.elements.push_back(pod_binomial(p, a));
  assert_kernel_sound(out);
  return out;
}

}  // namespace itoric
