#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "itoric/combinat.hpp"
#include "itoric/exactmath.hpp"
#include "itoric/incidence.hpp"

namespace itoric {

using Exponents = std::vector<int>;

// Term order: graded reverse lexicographic with an explicit variable ranking.
// significance[0] is the largest variable, significance.back() the cheapest.
struct MonomialOrder {
  std::vector<std::size_t> significance;

  static MonomialOrder degrevlex(std::size_t nvars) {
    MonomialOrder o;
    o.significance.resize(nvars);
    std::iota(o.significance.begin(), o.significance.end(), std::size_t{0});
    return o;
  }

  // Default order with variable v moved to the cheapest position.
  static MonomialOrder degrevlex_cheapest(std::size_t nvars, std::size_t v) {
    MonomialOrder o = degrevlex(nvars);
    o.significance.erase(o.significance.begin() + static_cast<std::ptrdiff_t>(v));
    o.significance.push_back(v);
    return o;
  }

  // <0, 0, >0 as a is smaller, equal, larger than b.
  int compare(const Exponents& a, const Exponents& b) const {
    long da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da < db ? -1 : 1;
    for (auto it = significance.rbegin(); it != significance.rend(); ++it)
      if (a[*it] != b[*it]) return a[*it] > b[*it] ? -1 : 1;
    return 0;
  }
};

// x^plus - x^minus with disjoint supports.
struct Binomial {
  std::size_t var_count = 0;
  Exponents plus;
  Exponents minus;

  static Binomial from_vector(const IntVector& v) {
    Binomial b{v.size(), Exponents(v.size(), 0), Exponents(v.size(), 0)};
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].fits_sint_p()) throw Error("exponent too large");
      const int x = static_cast<int>(v[i].get_si());
      (x > 0 ? b.plus[i] : b.minus[i]) = std::abs(x);
    }
    return b;
  }

  // Cancels the common monomial factor of two arbitrary monomials.
  static Binomial from_terms(const Exponents& a, const Exponents& b) {
    Binomial out{a.size(), a, b};
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int m = std::min(a[i], b[i]);
      out.plus[i] -= m;
      out.minus[i] -= m;
    }
    return out;
  }

  IntVector vector() const {
    IntVector v(var_count);
    for (std::size_t i = 0; i < var_count; ++i) v[i] = plus[i] - minus[i];
    return v;
  }
  long plus_degree() const { return std::accumulate(plus.begin(), plus.end(), 0L); }
  long minus_degree() const { return std::accumulate(minus.begin(), minus.end(), 0L); }
  long degree() const { return std::max(plus_degree(), minus_degree()); }
  bool homogeneous() const { return plus_degree() == minus_degree(); }
  bool is_zero() const { return plus == minus; }
  bool squarefree() const {
    for (std::size_t i = 0; i < var_count; ++i)
      if (plus[i] > 1 || minus[i] > 1) return false;
    return true;
  }
  Binomial negated() const { return {var_count, minus, plus}; }

  // Plus part becomes the larger monomial in the given order.
  Binomial canonical(const MonomialOrder& order) const {
    return order.compare(plus, minus) >= 0 ? *this : negated();
  }

  friend bool operator==(const Binomial& a, const Binomial& b) {
    return a.plus == b.plus && a.minus == b.minus;
  }
  friend bool operator<(const Binomial& a, const Binomial& b) {
    return a.plus != b.plus ? a.plus < b.plus : a.minus < b.minus;
  }
};

inline bool equal_up_to_sign(const Binomial& a, const Binomial& b) {
  return a == b || a == b.negated();
}

inline bool in_kernel(const Binomial& b, const IntMatrix& a) {
  return is_zero<Integer>(a.apply(b.vector()));
}

// Monomial from subset labels, e.g. {"136","246"} -> c136 c246.
inline Exponents monomial_from_labels(const IncidenceMatrix& a, const std::vector<std::string>& labels) {
  Exponents e(a.cols(), 0);
  for (const auto& l : labels) ++e[a.column_of(parse_subset_label(l))];
  return e;
}

inline Binomial binomial_from_labels(const IncidenceMatrix& a, const std::vector<std::string>& plus,
                                     const std::vector<std::string>& minus) {
  return {a.cols(), monomial_from_labels(a, plus), monomial_from_labels(a, minus)};
}

inline nlohmann::json monomial_json(const IncidenceMatrix& a, const Exponents& e) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) j[a.col_label(i)] = e[i];
  return j;
}

inline std::string monomial_string(const IncidenceMatrix& a, const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!out.empty()) out += '*';
    out += "c" + a.col_label(i);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

inline nlohmann::json to_json(const IncidenceMatrix& a, const Binomial& b) {
  return {{"plus", monomial_json(a, b.plus)}, {"minus", monomial_json(a, b.minus)}};
}

inline std::string to_string(const IncidenceMatrix& a, const Binomial& b) {
  return monomial_string(a, b.plus) + " - " + monomial_string(a, b.minus);
}

enum class BasisKind { Markov, Graver, Groebner, Octahedral };

inline const char* basis_kind_name(BasisKind k) {
  switch (k) {
    case BasisKind::Markov: return "markov";
    case BasisKind::Graver: return "graver";
    case BasisKind::Groebner: return "groebner";
    case BasisKind::Octahedral: return "octahedral";
  }
  return "?";
}

struct BinomialBasis {
  BasisKind kind;
  std::vector<Binomial> elements;
  IncidenceMatrix matrix;

  // Degree -> count, ascending.
  std::vector<std::pair<long, std::size_t>> degree_multiset() const {
    std::map<long, std::size_t> m;
    for (const auto& b : elements) ++m[b.degree()];
    return {m.begin(), m.end()};
  }
};

inline nlohmann::json to_json(const BinomialBasis& b) {
  nlohmann::json elems = nlohmann::json::array();
  for (const auto& e : b.elements) elems.push_back(to_json(b.matrix, e));
  nlohmann::json degrees = nlohmann::json::object();
  for (auto [d, c] : b.degree_multiset()) degrees[std::to_string(d)] = c;
  return {{"kind", basis_kind_name(b.kind)},
          {"n", b.matrix.n},
          {"k", b.matrix.k},
          {"t", b.matrix.t},
          {"count", b.elements.size()},
          {"degrees", degrees},
          {"elements", elems}};
}

// Every element must lie in ker_Z(A); checked on construction of each basis.
inline void assert_kernel_sound(const BinomialBasis& b) {
  for (const auto& e : b.elements)
    if (!in_kernel(e, b.matrix.matrix)) throw Error("binomial outside the kernel: " + to_string(b.matrix, e));
}

}  // namespace itoric
