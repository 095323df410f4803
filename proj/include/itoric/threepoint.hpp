#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "itoric/combinat.hpp"
#include "itoric/config.hpp"
#include "itoric/exactmath.hpp"
#include "itoric/incidence.hpp"
#include "itoric/toric/markov.hpp"

namespace itoric {

// Edge variables p_ij are indexed by the colex rank of {i,j}; triangle
// variables c_ijk by the colex rank of {i,j,k}.
inline std::size_t edge_index(int i, int j) {
  if (i == j) throw BadParameters("edge needs two distinct vertices");
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(colex_rank(Subset{i, j}));
}

inline std::size_t triangle_index(int i, int j, int k) {
  Subset s{i, j, k};
  std::sort(s.begin(), s.end());
  if (s[0] == s[1] || s[1] == s[2]) throw BadParameters("triangle needs three distinct vertices");
  return static_cast<std::size_t>(colex_rank(s));
}

// Element of the free abelian group on the p_ij, written additively.
struct EdgeVector {
  int n = 0;
  IntVector exponents;

  EdgeVector() = default;
  explicit EdgeVector(int n_) : n(n_), exponents(binomial(n_, 2), Integer(0)) {}

  static EdgeVector edge(int n, int i, int j) {
    check_vertices(n, {i, j});
    EdgeVector v(n);
    v.exponents[edge_index(i, j)] = 1;
    return v;
  }
  // c_ijk = e_ij + e_jk + e_ik
  static EdgeVector triangle(int n, int i, int j, int k) {
    check_vertices(n, {i, j, k});
    return edge(n, i, j) + edge(n, j, k) + edge(n, i, k);
  }
  static EdgeVector all_edges(int n) {
    EdgeVector v(n);
    for (auto& x : v.exponents) x = 1;
    return v;
  }

  Integer degree() const {
    Integer d = 0;
    for (const auto& x : exponents) d += x;
    return d;
  }
  bool nonnegative() const {
    return std::all_of(exponents.begin(), exponents.end(), [](const Integer& x) { return sgn(x) >= 0; });
  }
  bool zero() const { return is_zero<Integer>(exponents); }

  Exponents as_exponents() const {
    Exponents e(exponents.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (sgn(exponents[i]) < 0) throw PreconditionFailed("negative exponent in a monomial");
      e[i] = static_cast<int>(exponents[i].get_si());
    }
    return e;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      if (sgn(exponents[i]) == 0) continue;
      if (!out.empty()) out += sgn(exponents[i]) > 0 ? " + " : " - ";
      else if (sgn(exponents[i]) < 0) out += "-";
      const Integer a = abs(exponents[i]);
      if (a != 1) out += a.get_str();
      out += "e" + subset_label(colex_unrank(n, 2, i), n);
    }
    return out.empty() ? "0" : out;
  }

  EdgeVector& operator+=(const EdgeVector& o) {
    same_n(o);
    for (std::size_t i = 0; i < exponents.size(); ++i) exponents[i] += o.exponents[i];
    return *this;
  }
  EdgeVector& operator-=(const EdgeVector& o) {
    same_n(o);
    for (std::size_t i = 0; i < exponents.size(); ++i) exponents[i] -= o.exponents[i];
    return *this;
  }
  friend EdgeVector operator+(EdgeVector a, const EdgeVector& b) { return a += b; }
  friend EdgeVector operator-(EdgeVector a, const EdgeVector& b) { return a -= b; }
  friend EdgeVector operator*(long s, EdgeVector a) {
    for (auto& x : a.exponents) x *= s;
    return a;
  }
  friend bool operator==(const EdgeVector& a, const EdgeVector& b) {
    return a.n == b.n && a.exponents == b.exponents;
  }
  friend bool operator<(const EdgeVector& a, const EdgeVector& b) {
    return a.n != b.n ? a.n < b.n : a.exponents < b.exponents;
  }

 private:
  void same_n(const EdgeVector& o) const {
    if (o.n != n) throw DimensionMismatch("edge vectors over different n");
  }
  static void check_vertices(int n, std::initializer_list<int> vs) {
    for (int v : vs)
      if (v < 1 || v > n) throw IndexOutOfRange("vertex " + std::to_string(v));
  }
};

// phi(sigma) = sum over m of e_{m, sigma(m)}
inline EdgeVector phi(const Derangement& d) {
  EdgeVector v(d.n);
  for (int m = 1; m <= d.n; ++m) v.exponents[edge_index(m, d(m))] += 1;
  return v;
}

inline std::uint64_t fiber_size_formula(const Derangement& d) {
  return std::uint64_t{1} << (d.t_count - d.s_count);
}

inline void require_derangement_range(int n, const Budgets& budgets) {
  if (n < 2) throw BadParameters("derangements need n >= 2");
  if (n > budgets.derangement_n)
    throw BudgetExceeded("derangement scan for n=" + std::to_string(n) + " exceeds the bound " +
                         std::to_string(budgets.derangement_n));
}

// All derangements of [n] with phi equal to v, by exhaustive search.
inline std::vector<Derangement> fiber(const EdgeVector& v, int n, const Budgets& budgets = {}) {
  if (v.n != n) throw DimensionMismatch("edge vector over a different n");
  require_derangement_range(n, budgets);
  std::vector<Derangement> out;
  for_each_derangement(n, [&](const Derangement& d) {
    if (phi(d) == v) out.push_back(d);
  });
  return out;
}

// C_n: span of the c_ijk inside the edge group.  Generators are the columns
// of the (n,3,2) incidence matrix.
class TriangleLattice {
 public:
  explicit TriangleLattice(int n)
      : n_(n), a_(check(n)), solver_(a_.rows(), columns(a_)) {}

  int n() const { return n_; }
  const IncidenceMatrix& matrix() const { return a_; }
  std::size_t generator_count() const { return a_.cols(); }
  EdgeVector generator(std::size_t j) const {
    EdgeVector v(n_);
    for (std::size_t r = 0; r < a_.rows(); ++r) v.exponents[r] = a_.matrix(r, j);
    return v;
  }
  LatticeBasis reduced_basis() const { return solver_.reduced_basis(); }

  // Integer coefficients on the c_ijk summing to v, or nothing.
  std::optional<IntVector> certificate(const EdgeVector& v) const {
    if (v.n != n_) throw DimensionMismatch("edge vector over a different n");
    return solver_.solve(v.exponents);
  }
  bool contains(const EdgeVector& v) const { return certificate(v).has_value(); }

  EdgeVector evaluate(const IntVector& coeffs) const {
    if (coeffs.size() != a_.cols()) throw DimensionMismatch("certificate length");
    EdgeVector v(n_);
    v.exponents = a_.matrix.apply(coeffs);
    return v;
  }
  bool verify(const IntVector& coeffs, const EdgeVector& v) const { return evaluate(coeffs) == v; }

  std::string certificate_string(const IntVector& coeffs) const {
    std::string out;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (sgn(coeffs[j]) == 0) continue;
      if (!out.empty()) out += sgn(coeffs[j]) > 0 ? " + " : " - ";
      else if (sgn(coeffs[j]) < 0) out += "-";
      const Integer a = abs(coeffs[j]);
      if (a != 1) out += a.get_str();
      out += "c" + a_.col_label(j);
    }
    return out.empty() ? "0" : out;
  }

 private:
  static IncidenceMatrix check(int n) {
    if (n < 3) throw BadParameters("triangle lattice needs n >= 3");
    return build_matrix(n, 3, 2);
  }
  static std::vector<IntVector> columns(const IncidenceMatrix& a) {
    std::vector<IntVector> out;
    for (std::size_t j = 0; j < a.cols(); ++j) out.push_back(a.matrix.column(j));
    return out;
  }

  int n_;
  IncidenceMatrix a_;
  LatticeSolver solver_;
};

inline std::optional<IntVector> coset_member(const EdgeVector& v, int n) {
  return TriangleLattice(n).certificate(v);
}

// --- transposition identities ------------------------------------------------

namespace detail {
inline void require_distinct(int n, std::initializer_list<int> vs) {
  std::vector<int> x(vs);
  for (int v : x)
    if (v < 1 || v > n) throw IndexOutOfRange("index " + std::to_string(v));
  std::sort(x.begin(), x.end());
  if (std::adjacent_find(x.begin(), x.end()) != x.end()) throw PreconditionFailed("indices must be distinct");
}
}  // namespace detail

// e_ki + e_js = e_kj + e_is + c_kit + c_jst - c_kjt - c_ist
inline bool transposition_identity_1(int n, int i, int j, int k, int s, int t) {
  detail::require_distinct(n, {i, j, k, s, t});
  using E = EdgeVector;
  const E lhs = E::edge(n, k, i) + E::edge(n, j, s);
  const E rhs = E::edge(n, k, j) + E::edge(n, i, s) + E::triangle(n, k, i, t) + E::triangle(n, j, s, t) -
                E::triangle(n, k, j, t) - E::triangle(n, i, s, t);
  return lhs == rhs;
}

// 2e_ij = 2e_ks + c_ijk + c_ijs - c_iks - c_jks
inline bool transposition_identity_2(int n, int i, int j, int k, int s) {
  detail::require_distinct(n, {i, j, k, s});
  using E = EdgeVector;
  const E lhs = 2 * E::edge(n, i, j);
  const E rhs = 2 * E::edge(n, k, s) + E::triangle(n, i, j, k) + E::triangle(n, i, j, s) -
                E::triangle(n, i, k, s) - E::triangle(n, j, k, s);
  return lhs == rhs;
}

struct TranspositionCheck {
  int n = 0;
  std::size_t identity1_checked = 0, identity2_checked = 0;
  bool holds = true;
};

// Both identities for every ordered choice of 5 distinct indices.
inline TranspositionCheck transposition_relations_check(int n) {
  if (n < 5) throw PreconditionFailed("transposition identities need n >= 5");
  TranspositionCheck out{n};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int s = 1; s <= n; ++s)
          for (int t = 1; t <= n; ++t) {
            const std::vector<int> x{i, j, k, s, t};
            std::vector<int> y = x;
            std::sort(y.begin(), y.end());
            if (std::adjacent_find(y.begin(), y.end()) != y.end()) continue;
            out.holds = out.holds && transposition_identity_1(n, i, j, k, s, t);
            out.holds = out.holds && transposition_identity_2(n, i, j, k, s);
            ++out.identity1_checked;
            ++out.identity2_checked;
          }
  return out;
}

// --- polynomials in p or c ---------------------------------------------------

// Sparse polynomial over Q; variable names come from `prefix` plus the colex
// label of a `arity`-subset of [n].
struct SymbolicPoly {
  int n = 0;
  int arity = 2;
  std::map<Exponents, Rational> terms;

  SymbolicPoly() = default;
  SymbolicPoly(int n_, int arity_) : n(n_), arity(arity_) {}

  std::size_t var_count() const { return binomial(n, arity); }
  std::size_t size() const { return terms.size(); }
  bool zero() const { return terms.empty(); }

  static SymbolicPoly monomial(int n, int arity, const Exponents& e, Rational c = 1) {
    SymbolicPoly p(n, arity);
    p.add_term(e, c);
    return p;
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != var_count()) throw DimensionMismatch("monomial length");
    if (sgn(c) == 0) return;
    auto [it, fresh] = terms.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (sgn(it->second) == 0) terms.erase(it);
    }
  }

  SymbolicPoly& operator+=(const SymbolicPoly& o) {
    same_ring(o);
    for (const auto& [e, c] : o.terms) add_term(e, c);
    return *this;
  }
  SymbolicPoly& operator-=(const SymbolicPoly& o) {
    same_ring(o);
    for (const auto& [e, c] : o.terms) add_term(e, -c);
    return *this;
  }
  friend SymbolicPoly operator+(SymbolicPoly a, const SymbolicPoly& b) { return a += b; }
  friend SymbolicPoly operator-(SymbolicPoly a, const SymbolicPoly& b) { return a -= b; }
  friend SymbolicPoly operator*(const SymbolicPoly& a, const SymbolicPoly& b) {
    a.same_ring(b);
    SymbolicPoly out(a.n, a.arity);
    for (const auto& [ea, ca] : a.terms)
      for (const auto& [eb, cb] : b.terms) {
        Exponents e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend bool operator==(const SymbolicPoly& a, const SymbolicPoly& b) {
    return a.n == b.n && a.arity == b.arity && a.terms == b.terms;
  }

  // Componentwise minimum of the exponents: the largest monomial factor.
  Exponents monomial_content() const {
    if (terms.empty()) return Exponents(var_count(), 0);
    Exponents m = terms.begin()->first;
    for (const auto& [e, c] : terms)
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
    return m;
  }
  SymbolicPoly divide_monomial(const Exponents& m) const {
    SymbolicPoly out(n, arity);
    for (const auto& [e, c] : terms) {
      Exponents x(e.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = e[i] - m[i];
        if (x[i] < 0) throw PreconditionFailed("monomial does not divide");
      }
      out.terms.emplace(std::move(x), c);
    }
    return out;
  }

  std::string variable(std::size_t i) const {
    return (arity == 2 ? "p" : "c") + subset_label(colex_unrank(n, arity, i), n);
  }

  std::string to_string() const {
    if (terms.empty()) return "0";
    std::string out;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      const auto& [e, c] = *it;
      const bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
      if (!out.empty()) out += sgn(c) > 0 ? " + " : " - ";
      else if (sgn(c) < 0) out += "-";
      const Rational a = abs(c);
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!mono.empty()) mono += '*';
        mono += variable(i);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (a != 1 || constant) out += a.get_str() + (constant ? "" : "*");
      out += mono;
    }
    return out;
  }

 private:
  void same_ring(const SymbolicPoly& o) const {
    if (o.n != n || o.arity != arity) throw DimensionMismatch("polynomials in different rings");
  }
};

// Exact quotient f / d over Q in lex order, or nothing when d does not divide
// f.  A single polynomial is a Groebner basis of its ideal, so a nonzero
// remainder means f is outside (d).
inline std::optional<SymbolicPoly> divide_exact(SymbolicPoly f, const SymbolicPoly& d) {
  if (d.zero()) throw BadParameters("division by zero");
  const auto& [ld, cd] = *d.terms.rbegin();
  SymbolicPoly q(f.n, f.arity);
  while (!f.zero()) {
    const auto [lf, cf] = *f.terms.rbegin();
    Exponents m(lf.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      m[i] = lf[i] - ld[i];
      if (m[i] < 0) return std::nullopt;
    }
    const SymbolicPoly step = SymbolicPoly::monomial(f.n, f.arity, m, cf / cd);
    q += step;
    f -= step * d;
  }
  return q;
}

// Symmetric matrix P with zero diagonal, entries p_ij.
inline std::vector<std::vector<SymbolicPoly>> symbolic_gram(int n) {
  std::vector<std::vector<SymbolicPoly>> m(static_cast<std::size_t>(n),
                                           std::vector<SymbolicPoly>(static_cast<std::size_t>(n), SymbolicPoly(n, 2)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      Exponents e(binomial(n, 2), 0);
      e[edge_index(i, j)] = 1;
      m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = SymbolicPoly::monomial(n, 2, e);
    }
  return m;
}

// det(P_n) = sum over derangements of sign(sigma) p^phi(sigma).
inline SymbolicPoly det_leibniz(int n, const Budgets& budgets = {}) {
  require_derangement_range(n, budgets);
  if (n > 7) throw BudgetExceeded("Leibniz expansion limited to n <= 7");
  SymbolicPoly out(n, 2);
  for_each_derangement(n, [&](const Derangement& d) {
    out.add_term(phi(d).as_exponents(), permutation_sign(d.images));
  });
  return out;
}

// Laplace expansion along the first row; independent of the derangement code.
inline SymbolicPoly det_cofactor(int n) {
  if (n < 1 || n > 6) throw BadParameters("cofactor expansion limited to 1 <= n <= 6");
  const auto m = symbolic_gram(n);
  std::function<SymbolicPoly(std::vector<int>, int)> rec = [&](std::vector<int> cols, int row) {
    if (cols.empty()) return SymbolicPoly::monomial(n, 2, Exponents(binomial(n, 2), 0));
    SymbolicPoly acc(n, 2);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const SymbolicPoly& entry = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(cols[c])];
      if (entry.zero()) continue;
      std::vector<int> rest = cols;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(c));
      SymbolicPoly minor = entry * rec(rest, row + 1);
      if (c % 2) acc -= minor;
      else acc += minor;
    }
    return acc;
  };
  std::vector<int> cols(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cols[static_cast<std::size_t>(i)] = i;
  return rec(cols, 0);
}

// c -> p: c^y maps to p^(A y) with A the (n,3,2) incidence matrix.
inline Exponents c_to_p(const IncidenceMatrix& a, const Exponents& y) {
  Exponents e(a.rows(), 0);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (!y[j]) continue;
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (sgn(a.matrix(r, j)) != 0) e[r] += y[j];
  }
  return e;
}

inline SymbolicPoly substitute_triangles(const SymbolicPoly& f) {
  if (f.arity != 3) throw PreconditionFailed("substitution expects a polynomial in the c variables");
  const IncidenceMatrix a = build_matrix(f.n, 3, 2);
  SymbolicPoly out(f.n, 2);
  for (const auto& [y, c] : f.terms) out.add_term(c_to_p(a, y), c);
  return out;
}

struct TermCertificate {
  Exponents p_monomial;
  Rational coefficient;
  IntVector c_exponents;  // Laurent c-monomial with the same image
};

// det(P_n) = f / g with f a polynomial and g a monomial in the c_ijk.
struct CExpression {
  int n = 0;
  SymbolicPoly f;
  Exponents g;
  std::vector<TermCertificate> certificates;
  bool verified = false;
};

// Each Leibniz monomial gets the certificate returned by the HNF lattice
// solver; g clears the largest negative exponents; any common monomial
// factor of f and g is then cancelled.  The identity f(p) = det * g(p) is
// checked term by term.
inline CExpression det_as_c_expression(int n, const Budgets& budgets = {}) {
  if (n < 3 || n % 3 != 0) throw PreconditionFailed("det(P_n) as a c-expression needs n divisible by 3");
  if (n > 6) throw BudgetExceeded("c-expression of det(P_n) limited to n <= 6");
  const SymbolicPoly det = det_leibniz(n, budgets);
  const TriangleLattice lattice(n);
  CExpression out;
  out.n = n;
  const std::size_t m = lattice.generator_count();
  for (const auto& [e, c] : det.terms) {
    EdgeVector v(n);
    for (std::size_t i = 0; i < e.size(); ++i) v.exponents[i] = e[i];
    auto cert = lattice.certificate(v);
    if (!cert) throw Error("Leibniz monomial outside C_n");
    if (!lattice.verify(*cert, v)) throw Error("certificate failed to recompute");
    out.certificates.push_back({e, c, *cert});
  }
  out.g.assign(m, 0);
  for (const auto& t : out.certificates)
    for (std::size_t j = 0; j < m; ++j)
      if (sgn(t.c_exponents[j]) < 0) out.g[j] = std::max(out.g[j], static_cast<int>(-t.c_exponents[j].get_si()));
  out.f = SymbolicPoly(n, 3);
  for (const auto& t : out.certificates) {
    Exponents y(m);
    for (std::size_t j = 0; j < m; ++j) y[j] = static_cast<int>(t.c_exponents[j].get_si()) + out.g[j];
    out.f.add_term(y, t.coefficient);
  }
  Exponents common = out.f.monomial_content();
  for (std::size_t j = 0; j < m; ++j) common[j] = std::min(common[j], out.g[j]);
  out.f = out.f.divide_monomial(common);
  for (std::size_t j = 0; j < m; ++j) out.g[j] -= common[j];

  const SymbolicPoly gp = SymbolicPoly::monomial(n, 2, c_to_p(lattice.matrix(), out.g));
  out.verified = substitute_triangles(out.f) == det * gp;
  if (!out.verified) throw Error("c-expression of det(P_n) failed to verify");
  return out;
}

// I~_{n,n} generators together with (f : (prod c)^inf).  For a principal
// ideal in a polynomial ring the saturation is generated by f with its
// monomial content removed.  Only the forward containment is checked:
// every generator must map into (det P_n).
struct TildeIdeal {
  int n = 0;
  std::vector<Binomial> toric;
  std::vector<bool> toric_in_det;
  SymbolicPoly f;
  SymbolicPoly saturated;
  Exponents removed;  // monomial content stripped from f
  bool saturated_in_det = false;

  bool unit_ideal() const {
    return saturated.size() == 1 &&
           std::all_of(saturated.terms.begin()->first.begin(), saturated.terms.begin()->first.end(),
                       [](int x) { return x == 0; });
  }
  bool containment() const {
    return saturated_in_det && std::all_of(toric_in_det.begin(), toric_in_det.end(), [](bool b) { return b; });
  }
};

inline TildeIdeal tilde_ideal_generators(int n, const Budgets& budgets = {}) {
  const CExpression ce = det_as_c_expression(n, budgets);
  const SymbolicPoly det = det_leibniz(n, budgets);
  const IncidenceMatrix a = build_matrix(n, 3, 2);
  TildeIdeal out;
  out.n = n;
  if (kernel_basis(a.matrix).rank() > 0) out.toric = minimal_markov(a, budgets).elements;
  for (const auto& h : out.toric) {
    SymbolicPoly image = SymbolicPoly::monomial(n, 2, c_to_p(a, h.plus));
    image -= SymbolicPoly::monomial(n, 2, c_to_p(a, h.minus));
    out.toric_in_det.push_back(divide_exact(image, det).has_value());
  }
  out.f = ce.f;
  out.removed = ce.f.monomial_content();
  out.saturated = ce.f.divide_monomial(out.removed);
  // Generators are defined up to a unit; make the leading coefficient 1.
  const Rational lead = out.saturated.terms.rbegin()->second;
  for (auto& [e, c] : out.saturated.terms) c /= lead;
  out.saturated_in_det = divide_exact(substitute_triangles(out.saturated), det).has_value();
  return out;
}

// --- membership claims -------------------------------------------------------

struct MembershipCertificate {
  EdgeVector target;
  IntVector coefficients;
  bool recomputes = false;
};

struct Claim {
  std::string id;
  std::string statement;
  bool holds = true;
  std::size_t instances = 0;
  std::vector<MembershipCertificate> certificates;
  std::vector<std::string> derived_from;
};

struct ThreePointReport {
  int n = 0;
  std::size_t derangements = 0;
  std::size_t distinct_images = 0;
  std::vector<Claim> claims;

  const Claim* find(const std::string& id) const {
    for (const auto& c : claims)
      if (c.id == id) return &c;
    return nullptr;
  }
  bool all_hold() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.holds; });
  }
};

namespace detail {
inline void require_member(const TriangleLattice& lattice, Claim& claim, const EdgeVector& v) {
  ++claim.instances;
  const auto cert = lattice.certificate(v);
  if (!cert) {
    claim.holds = false;
    claim.certificates.push_back({v, {}, false});
    return;
  }
  const bool ok = lattice.verify(*cert, v);
  claim.holds = claim.holds && ok;
  claim.certificates.push_back({v, *cert, ok});
}

// Coset representatives for the triple-product claims.
inline std::vector<EdgeVector> triple_representatives(int n) {
  using E = EdgeVector;
  if (n % 3 == 2) return {2 * E::edge(n, 1, 2), 2 * E::edge(n, 1, 3), 2 * E::edge(n, 2, 3)};
  return {2 * E::edge(n, 1, 2) + 2 * E::edge(n, 3, 4), 2 * E::edge(n, 1, 3) + 2 * E::edge(n, 2, 4),
          2 * E::edge(n, 1, 4) + 2 * E::edge(n, 2, 3)};
}
}  // namespace detail

// Every membership statement that applies to this n, each with recomputed
// certificates.  Triple products are reduced to single-coset facts: every
// phi(sigma) lies in r + C_n for each representative r, and r1 + r2 + r3 is
// in C_n.
inline ThreePointReport check_three_point(int n, const Budgets& budgets = {}) {
  require_derangement_range(n, budgets);
  if (n < 3) throw BadParameters("need n >= 3");
  const TriangleLattice lattice(n);
  const auto ds = derangements(n);
  ThreePointReport rep;
  rep.n = n;
  rep.derangements = ds.size();
  std::map<EdgeVector, std::size_t> images;
  for (const auto& d : ds) ++images[phi(d)];
  rep.distinct_images = images.size();

  Claim fib{"fiber_size", "|phi^-1(phi(sigma))| = 2^(t-s) for every derangement"};
  for (const auto& d : ds) {
    ++fib.instances;
    fib.holds = fib.holds && images.at(phi(d)) == fiber_size_formula(d);
  }
  rep.claims.push_back(std::move(fib));

  if (n >= 5) {
    Claim merge{"merge_step",
                "phi((i j) sigma) - phi(sigma) is the explicit c-combination for i, j in different cycles"};
    for (const auto& d : ds) {
      if (d.t_count < 2) continue;
      ++merge.instances;
      const int i = d.cycles[0][0], j = d.cycles[1][0];
      int a = 0, b = 0;
      for (int m = 1; m <= n; ++m) {
        if (d(m) == i) a = m;
        if (d(m) == j) b = m;
      }
      std::vector<int> img = d.images;
      img[static_cast<std::size_t>(a - 1)] = j;
      img[static_cast<std::size_t>(b - 1)] = i;
      const Derangement merged = make_derangement(img);
      int l = 1;
      while (l == i || l == j || l == a || l == b) ++l;
      using E = EdgeVector;
      const E step = E::triangle(n, a, j, l) + E::triangle(n, b, i, l) - E::triangle(n, a, i, l) -
                     E::triangle(n, j, b, l);
      merge.holds = merge.holds && merged.t_count == d.t_count - 1 && phi(merged) - phi(d) == step;
    }
    rep.claims.push_back(std::move(merge));

    Claim trans{"single_coset", "phi(sigma1) - phi(sigma2) in C_n for all pairs of images"};
    const EdgeVector base = images.begin()->first;
    for (const auto& [v, count] : images) detail::require_member(lattice, trans, v - base);
    rep.claims.push_back(std::move(trans));
  }

  if (n % 3 == 0) {
    Claim zero{"zero_mod_3", "phi(sigma) in C_n for every derangement"};
    for (const auto& d : ds) detail::require_member(lattice, zero, phi(d));
    rep.claims.push_back(std::move(zero));
    Claim det{"det_in_KC", "every Leibniz term of det(P_n) lies in C_n", true, 1};
    det.holds = rep.find("zero_mod_3")->holds;
    det.derived_from = {"zero_mod_3"};
    rep.claims.push_back(std::move(det));
  }

  if (n % 2 == 1 && n % 3 == 2) {
    using E = EdgeVector;
    Claim lemma{"product_lemma", "sum of all edges - (e13 + e23 + e24 + e14) in C_n"};
    detail::require_member(lattice, lemma,
                           E::all_edges(n) - E::edge(n, 1, 3) - E::edge(n, 2, 3) - E::edge(n, 2, 4) -
                               E::edge(n, 1, 4));
    rep.claims.push_back(std::move(lemma));
    Claim two{"two_mod_3", "phi(sigma) + sum of all edges in C_n for every derangement"};
    for (const auto& d : ds) detail::require_member(lattice, two, phi(d) + E::all_edges(n));
    rep.claims.push_back(std::move(two));
    Claim det{"det_times_edges_in_KC", "every term of det(P_n) * prod p_ij lies in C_n", true, 1};
    det.holds = rep.find("two_mod_3")->holds;
    det.derived_from = {"two_mod_3"};
    rep.claims.push_back(std::move(det));
  }

  if ((n % 3 == 2) || (n % 3 == 1 && n > 4)) {
    const auto reps = detail::triple_representatives(n);
    Claim coset{"triple_cosets", "phi(sigma) - r in C_n for every derangement and representative r"};
    for (const auto& r : reps)
      for (const auto& d : ds) detail::require_member(lattice, coset, phi(d) - r);
    rep.claims.push_back(std::move(coset));
    Claim canon{"triple_canonical", "r1 + r2 + r3 in C_n"};
    detail::require_member(lattice, canon, reps[0] + reps[1] + reps[2]);
    rep.claims.push_back(std::move(canon));
    Claim triple{"triple_product", "phi(s1) + phi(s2) + phi(s3) in C_n for all derangements", true, 1};
    triple.holds = rep.find("triple_cosets")->holds && rep.find("triple_canonical")->holds;
    triple.derived_from = {"triple_cosets", "triple_canonical"};
    rep.claims.push_back(std::move(triple));
  }

  if (n != 4) {
    Claim cube{"det_cubed_in_KC", "every term of det(P_n)^3 lies in C_n", true, 1};
    if (n % 3 == 0) {
      cube.holds = rep.find("zero_mod_3")->holds;
      cube.derived_from = {"zero_mod_3"};
    } else {
      cube.holds = rep.find("triple_product")->holds;
      cube.derived_from = {"triple_product"};
    }
    rep.claims.push_back(std::move(cube));
  }
  return rep;
}

// A triple phi(s1) + phi(s2) + phi(s3) written as an explicit C_n element by
// adding the coset certificates of its parts.
inline IntVector compose_triple_certificate(const TriangleLattice& lattice, const std::vector<EdgeVector>& parts) {
  const int n = lattice.n();
  const auto reps = detail::triple_representatives(n);
  if (parts.size() != 3) throw BadParameters("need three parts");
  IntVector total(lattice.generator_count(), Integer(0));
  EdgeVector rsum(n);
  for (std::size_t a = 0; a < 3; ++a) {
    const auto c = lattice.certificate(parts[a] - reps[a]);
    if (!c) throw Error("part outside its coset");
    for (std::size_t j = 0; j < total.size(); ++j) total[j] += (*c)[j];
    rsum += reps[a];
  }
  const auto c = lattice.certificate(rsum);
  if (!c) throw Error("representative sum outside C_n");
  for (std::size_t j = 0; j < total.size(); ++j) total[j] += (*c)[j];
  return total;
}

// --- JSON --------------------------------------------------------------------

inline nlohmann::json edge_vector_json(const EdgeVector& v) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < v.exponents.size(); ++i)
    if (sgn(v.exponents[i]) != 0) j[subset_label(colex_unrank(v.n, 2, i), v.n)] = v.exponents[i].get_si();
  return j;
}

inline nlohmann::json coefficients_json(const TriangleLattice& lattice, const IntVector& c) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (sgn(c[i]) != 0) j[lattice.matrix().col_label(i)] = c[i].get_si();
  return j;
}

inline nlohmann::json to_json(const ThreePointReport& r, bool with_certificates = true) {
  const TriangleLattice lattice(r.n);
  nlohmann::json claims = nlohmann::json::array();
  for (const auto& c : r.claims) {
    nlohmann::json jc{{"id", c.id}, {"statement", c.statement}, {"holds", c.holds}, {"instances", c.instances}};
    if (!c.derived_from.empty()) jc["derived_from"] = c.derived_from;
    if (with_certificates && !c.certificates.empty()) {
      nlohmann::json cs = nlohmann::json::array();
      for (const auto& m : c.certificates)
        cs.push_back({{"target", edge_vector_json(m.target)},
                      {"coefficients", m.coefficients.empty() ? nlohmann::json(nullptr)
                                                              : coefficients_json(lattice, m.coefficients)},
                      {"recomputes", m.recomputes}});
      jc["certificates"] = std::move(cs);
    }
    claims.push_back(std::move(jc));
  }
  return {{"n", r.n}, {"derangements", r.derangements}, {"distinct_images", r.distinct_images},
          {"all_hold", r.all_hold()}, {"claims", std::move(claims)}};
}

inline nlohmann::json to_json(const CExpression& e) {
  SymbolicPoly g = SymbolicPoly::monomial(e.n, 3, e.g);
  return {{"n", e.n}, {"f", e.f.to_string()}, {"f_terms", e.f.size()}, {"g", g.to_string()},
          {"leibniz_terms", e.certificates.size()}, {"verified", e.verified}};
}

inline nlohmann::json to_json(const TildeIdeal& t) {
  std::size_t in_det = 0;
  for (bool b : t.toric_in_det) in_det += b;
  return {{"n", t.n},
          {"toric_generators", t.toric.size()},
          {"toric_in_det", in_det},
          {"f", t.f.to_string()},
          {"saturated_generator", t.saturated.to_string()},
          {"unit_ideal", t.unit_ideal()},
          {"saturated_in_det", t.saturated_in_det},
          {"containment", t.containment()}};
}

}  // namespace itoric
