#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "itoric/config.hpp"
#include "itoric/toric/binomial.hpp"
#include "itoric/toric/markov.hpp"

namespace itoric {

namespace detail {

struct GVec {
  std::vector<int> v;
  long norm = 0;
  std::uint64_t pos = 0, neg = 0;  // sign masks, bit i mod 64

  GVec() = default;
  explicit GVec(std::vector<int> x) : v(std::move(x)) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      norm += std::abs(v[i]);
      if (v[i] > 0) pos |= std::uint64_t{1} << (i % 64);
      if (v[i] < 0) neg |= std::uint64_t{1} << (i % 64);
    }
  }
  bool zero() const { return norm == 0; }
};

// sign * u is conformal to w and fits inside it:  u ⊑ w.
inline bool conformal_le(const GVec& u, int sign, const GVec& w) {
  if (u.norm > w.norm) return false;
  const std::uint64_t up = sign > 0 ? u.pos : u.neg, un = sign > 0 ? u.neg : u.pos;
  if ((up & ~w.pos) || (un & ~w.neg)) return false;
  for (std::size_t i = 0; i < u.v.size(); ++i) {
    const int x = sign * u.v[i], y = w.v[i];
    if (x == 0) continue;
    if ((x > 0 && (y < x)) || (x < 0 && (y > x))) return false;
  }
  return true;
}

// True when u and sign*w cancel somewhere; otherwise u + sign*w is a
// conformal sum and reduces to zero.
inline bool cancels(const GVec& u, int sign, const GVec& w) {
  const std::uint64_t wp = sign > 0 ? w.pos : w.neg, wn = sign > 0 ? w.neg : w.pos;
  return (u.pos & wn) || (u.neg & wp) ? [&] {
    for (std::size_t i = 0; i < u.v.size(); ++i)
      if (static_cast<long>(u.v[i]) * sign * w.v[i] < 0) return true;
    return false;
  }()
                                      : false;
}

}  // namespace detail

// Graver basis by completion under the conformal order ⊑ (the vector form of
// Buchberger's algorithm on the Lawrence lifting): start from a lattice
// basis, add every irreducible sum f ± g, then keep the ⊑-minimal elements.
// One representative per ± pair is returned.
inline std::vector<IntVector> graver_vectors(const std::vector<IntVector>& lattice_basis, const Budgets& budgets = {}) {
  using detail::GVec;
  std::vector<GVec> g;
  for (const auto& b : lattice_basis) {
    std::vector<int> x(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) x[i] = static_cast<int>(b[i].get_si());
    g.emplace_back(std::move(x));
  }
  auto normal_form = [&](GVec s) {
    bool changed = true;
    while (changed && !s.zero()) {
      changed = false;
      for (const auto& h : g) {
        for (int sign : {1, -1})
          if (detail::conformal_le(h, sign, s)) {
            for (std::size_t i = 0; i < s.v.size(); ++i) s.v[i] -= sign * h.v[i];
            s = GVec(std::move(s.v));
            changed = true;
            break;
          }
        if (changed) break;
      }
    }
    return s;
  };
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      for (int sign : {1, -1}) {
        if (!detail::cancels(g[i], sign, g[j])) continue;
        if (++pairs > budgets.pair_queue)
          throw BudgetExceeded("Graver completion pair budget of " + std::to_string(budgets.pair_queue) + " exhausted");
        std::vector<int> s(g[i].v.size());
        for (std::size_t c = 0; c < s.size(); ++c) s[c] = g[i].v[c] + sign * g[j].v[c];
        GVec r = normal_form(GVec(std::move(s)));
        if (r.zero()) continue;
        if (g.size() >= budgets.basis_size)
          throw BudgetExceeded("Graver basis size budget of " + std::to_string(budgets.basis_size) + " exhausted");
        g.push_back(std::move(r));
      }
  // Keep ⊑-minimal elements.
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < g.size() && minimal; ++j) {
      if (j == i || g[j].norm > g[i].norm) continue;
      for (int sign : {1, -1})
        if (detail::conformal_le(g[j], sign, g[i]) && !(g[j].norm == g[i].norm)) minimal = false;
    }
    if (!minimal) continue;
    IntVector v(g[i].v.begin(), g[i].v.end());
    out.push_back(std::move(v));
  }
  // Canonical sign (first nonzero positive) and deduplication.
  for (auto& v : out) {
    const auto it = std::find_if(v.begin(), v.end(), [](const Integer& x) { return sgn(x) != 0; });
    if (it != v.end() && sgn(*it) < 0)
      for (auto& x : v) x = -x;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline BinomialBasis graver_basis(const IncidenceMatrix& a, const Budgets& budgets = {}) {
  const auto basis = kernel_basis(a.matrix).basis_vectors;
  if (basis.empty()) throw PreconditionFailed("trivial kernel");
  const MonomialOrder order = MonomialOrder::degrevlex(a.cols());
  BinomialBasis out{BasisKind::Graver, {}, a};
  for (const auto& v : graver_vectors(basis, budgets)) out.elements.push_back(Binomial::from_vector(v).canonical(order));
  std::sort(out.elements.begin(), out.elements.end(), [&](const Binomial& x, const Binomial& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return order.compare(x.plus, y.plus) < 0;
  });
  assert_kernel_sound(out);
  return out;
}

// No kernel vector v other than 0 and u with 0 <= v+ <= u+ and 0 <= v- <= u-.
// Exhaustive odometer over the box with an incrementally updated A*v.
inline bool is_primitive(const Binomial& b, const IntMatrix& a, const Budgets& budgets = {}) {
  if (!in_kernel(b, a)) throw PreconditionFailed("binomial outside the kernel");
  const IntVector u = b.vector();
  std::vector<std::size_t> vars;
  std::uint64_t box = 1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (sgn(u[i]) == 0) continue;
    vars.push_back(i);
    const std::uint64_t side = Integer(abs(u[i])).get_ui() + 1;
    if (box > budgets.box_points / side) throw BudgetExceeded("primitivity box exceeds " + std::to_string(budgets.box_points));
    box *= side;
  }
  const std::size_t m = a.rows();
  std::vector<long> col(m * vars.size());
  for (std::size_t j = 0; j < vars.size(); ++j)
    for (std::size_t r = 0; r < m; ++r) col[j * m + r] = a(r, vars[j]).get_si();
  std::vector<long> cur(vars.size(), 0), lim(vars.size()), step(vars.size()), av(m, 0);
  for (std::size_t j = 0; j < vars.size(); ++j) {
    lim[j] = Integer(abs(u[vars[j]])).get_si();
    step[j] = sgn(u[vars[j]]);
  }
  for (std::uint64_t count = 1; count < box; ++count) {
    std::size_t j = 0;
    while (cur[j] == lim[j]) {
      for (std::size_t r = 0; r < m; ++r) av[r] -= step[j] * cur[j] * col[j * m + r];
      cur[j] = 0;
      ++j;
    }
    ++cur[j];
    for (std::size_t r = 0; r < m; ++r) av[r] += step[j] * col[j * m + r];
    if (count + 1 == box) break;  // the last point is u itself
    if (std::all_of(av.begin(), av.end(), [](long x) { return x == 0; })) return false;
  }
  return true;
}

}  // namespace itoric
