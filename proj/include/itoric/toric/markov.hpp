#pragma once

#include <algorithm>
#include <vector>

#include "itoric/toric/groebner.hpp"

namespace itoric {

inline void require_homogeneous(const std::vector<Binomial>& gens) {
  for (const auto& g : gens)
    if (!g.homogeneous()) throw PreconditionFailed("saturation loop needs standard-graded binomials");
}

// (I : x_v^inf) for homogeneous I: with x_v cheapest in degrevlex, x_v divides
// a Groebner element iff it divides its leading term, so dividing every
// element by its x_v content generates the colon ideal.
inline std::vector<Binomial> saturate_variable(const std::vector<Binomial>& gens, std::size_t v,
                                               const Budgets& budgets) {
  if (gens.empty()) return {};
  const std::size_t n = gens.front().var_count;
  BinomialGroebner gb(n, MonomialOrder::degrevlex_cheapest(n, v), budgets);
  for (const auto& g : gens) gb.add(g);
  gb.complete();
  std::vector<Binomial> out;
  for (auto [a, b] : gb.reduced_terms()) {
    const int m = std::min(a[v], b[v]);
    a[v] -= m;
    b[v] -= m;
    out.push_back({n, std::move(a), std::move(b)});
  }
  return out;
}

// (J : (x_1 ... x_n)^inf) by saturating one variable at a time, ascending.
inline std::vector<Binomial> saturate_all(std::vector<Binomial> gens, const Budgets& budgets) {
  require_homogeneous(gens);
  if (gens.empty()) return gens;
  const std::size_t n = gens.front().var_count;
  for (std::size_t v = 0; v < n; ++v) gens = saturate_variable(gens, v, budgets);
  return gens;
}

inline std::vector<Binomial> lattice_basis_binomials(const IntMatrix& a) {
  std::vector<Binomial> gens;
  for (const auto& v : kernel_basis(a).basis_vectors) gens.push_back(Binomial::from_vector(v));
  return gens;
}

// Reduced Groebner basis of the toric ideal I_A: lattice basis ideal, then
// saturation by every variable, then a final run in the requested order.
inline std::vector<Binomial> toric_groebner(const IntMatrix& a, const MonomialOrder& order,
                                            const Budgets& budgets = {}) {
  auto gens = lattice_basis_binomials(a);
  if (gens.empty()) return {};
  gens = saturate_all(std::move(gens), budgets);
  std::vector<Binomial> out;
  for (const auto& g : groebner_basis(gens, order, budgets)) {
    const Binomial b = Binomial::from_terms(g.plus, g.minus);
    if (!(b == g)) throw Error("reduced Groebner element of a toric ideal with a monomial factor");
    if (!in_kernel(b, a)) throw Error("Groebner element outside the kernel");
    out.push_back(b);
  }
  return out;
}

inline BinomialBasis lattice_ideal_groebner(const IncidenceMatrix& a, const MonomialOrder& order,
                                            const Budgets& budgets = {}) {
  BinomialBasis out{BasisKind::Groebner, toric_groebner(a.matrix, order, budgets), a};
  assert_kernel_sound(out);
  return out;
}

inline BinomialBasis lattice_ideal_groebner(const IncidenceMatrix& a, const Budgets& budgets = {}) {
  return lattice_ideal_groebner(a, MonomialOrder::degrevlex(a.cols()), budgets);
}

// Degree-increasing greedy extraction: keep f unless it already lies in the
// ideal of the kept elements (membership by a Groebner basis of the kept set,
// truncated at deg f).  For homogeneous ideals the kept set is minimal.
inline std::vector<Binomial> minimal_generators(std::vector<Binomial> gens, const Budgets& budgets = {}) {
  if (gens.empty()) return gens;
  require_homogeneous(gens);
  const std::size_t n = gens.front().var_count;
  const MonomialOrder order = MonomialOrder::degrevlex(n);
  std::stable_sort(gens.begin(), gens.end(), [&](const Binomial& x, const Binomial& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return order.compare(x.plus, y.plus) < 0;
  });
  BinomialGroebner gb(n, order, budgets);
  std::vector<Binomial> kept;
  for (const auto& f : gens) {
    gb.complete(f.degree());
    if (gb.contains(f)) continue;
    kept.push_back(f);
    gb.add(f);
  }
  return kept;
}

inline BinomialBasis minimal_markov(const IncidenceMatrix& a, const Budgets& budgets = {}) {
  const auto gb = toric_groebner(a.matrix, MonomialOrder::degrevlex(a.cols()), budgets);
  BinomialBasis out{BasisKind::Markov, minimal_generators(gb, budgets), a};
  assert_kernel_sound(out);
  return out;
}

// Ideal equality by reduction to zero in both directions.
inline bool same_ideal(const std::vector<Binomial>& x, const std::vector<Binomial>& y, const Budgets& budgets = {}) {
  if (x.empty() || y.empty()) return x.empty() == y.empty();
  const std::size_t n = x.front().var_count;
  const MonomialOrder order = MonomialOrder::degrevlex(n);
  BinomialGroebner gx(n, order, budgets), gy(n, order, budgets);
  for (const auto& b : x) gx.add(b);
  for (const auto& b : y) gy.add(b);
  gx.complete();
  gy.complete();
  for (const auto& b : y)
    if (!gx.contains(b)) return false;
  for (const auto& b : x)
    if (!gy.contains(b)) return false;
  return true;
}

// (J : (prod x)^inf) == I_A ?
inline bool saturation_equals(const std::vector<Binomial>& j, const IncidenceMatrix& a, const Budgets& budgets = {}) {
  for (const auto& b : j)
    if (!in_kernel(b, a.matrix)) throw PreconditionFailed("generator outside the kernel");
  const auto sat = saturate_all(j, budgets);
  const auto ia = toric_groebner(a.matrix, MonomialOrder::degrevlex(a.cols()), budgets);
  return same_ideal(sat, ia, budgets);
}

}  // namespace itoric
