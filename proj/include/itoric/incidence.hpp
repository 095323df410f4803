#pragma once

#include <map>
#include <string>
#include <vector>

#include "itoric/combinat.hpp"
#include "itoric/exactmath.hpp"
#include "itoric/simplicial.hpp"

namespace itoric {

// 0/1 containment matrix of t-subsets (rows) in k-subsets (columns) of [n],
// both in colex order.
struct IncidenceMatrix {
  int n = 0, k = 0, t = 0;
  IntMatrix matrix;
  std::vector<Subset> row_labels;
  std::vector<Subset> col_labels;

  std::size_t rows() const { return matrix.rows(); }
  std::size_t cols() const { return matrix.cols(); }
  std::string col_label(std::size_t j) const { return subset_label(col_labels[j], n); }
  std::string row_label(std::size_t i) const { return subset_label(row_labels[i], n); }

  // Column index of a k-subset.
  std::size_t column_of(const Subset& s) const {
    if (static_cast<int>(s.size()) != k) throw DimensionMismatch("subset size differs from k");
    for (int v : s)
      if (v < 1 || v > n) throw IndexOutOfRange("element " + std::to_string(v));
    return static_cast<std::size_t>(colex_rank(s));
  }
  // Row index of a t-subset.
  std::size_t row_of(const Subset& s) const {
    if (static_cast<int>(s.size()) != t) throw DimensionMismatch("subset size differs from t");
    for (int v : s)
      if (v < 1 || v > n) throw IndexOutOfRange("element " + std::to_string(v));
    return static_cast<std::size_t>(colex_rank(s));
  }
};

inline IncidenceMatrix build_matrix(int n, int k, int t, bool allow_identity = false) {
  if (t < 1 || k > n || t > k || (t == k && !allow_identity))
    throw BadParameters("need 1 <= t < k <= n, got n=" + std::to_string(n) +
                        " k=" + std::to_string(k) + " t=" + std::to_string(t));
  IncidenceMatrix a;
  a.n = n;
  a.k = k;
  a.t = t;
  a.row_labels = all_subsets(n, t);
  a.col_labels = all_subsets(n, k);
  a.matrix = IntMatrix(a.row_labels.size(), a.col_labels.size());
  for (std::size_t j = 0; j < a.col_labels.size(); ++j) {
    // Rows hit by column j are the t-subsets of its k-subset.
    const Subset& kappa = a.col_labels[j];
    for (const auto& pick : all_subsets(k, t)) {
      Subset tau;
      for (int i : pick) tau.push_back(kappa[static_cast<std::size_t>(i - 1)]);
      a.matrix(static_cast<std::size_t>(colex_rank(tau)), j) = 1;
    }
  }
  return a;
}

struct IncidenceComplex {
  SimplicialComplex complex;
  std::vector<Subset> vertex_labels;  // vertex v of `complex` is the face vertex_labels[v-1]
};

// H_delta(t, k): vertices are the t-dimensional faces of delta, one facet per
// k-dimensional face collecting the t-faces inside it.
inline IncidenceComplex incidence_complex(const SimplicialComplex& delta, int t, int k) {
  if (!delta.is_pure()) throw NotPure("incidence complex needs a pure complex");
  if (delta.dimension() < k)
    throw DimensionTooSmall("dimension " + std::to_string(delta.dimension()) + " < " +
                            std::to_string(k));
  if (t < 0 || t > k) throw BadParameters("need 0 <= t <= k");
  IncidenceComplex out;
  out.vertex_labels = delta.faces(t);
  std::map<Subset, int> index;
  for (std::size_t i = 0; i < out.vertex_labels.size(); ++i)
    index[out.vertex_labels[i]] = static_cast<int>(i) + 1;
  std::vector<Subset> facets;
  for (const auto& face : delta.faces(k)) {
    Subset f;
    for (const auto& pick : all_subsets(k + 1, t + 1)) {
      Subset sub;
      for (int i : pick) sub.push_back(face[static_cast<std::size_t>(i - 1)]);
      f.push_back(index.at(sub));
    }
    facets.push_back(std::move(f));
  }
  out.complex = SimplicialComplex(static_cast<int>(out.vertex_labels.size()), std::move(facets));
  return out;
}

struct ModPRankEntry {
  std::uint64_t p;
  std::size_t rank;        // of the multiplication map, (k-t)! * A
  bool full;
  bool predicted_full;     // p > min(k, n - t)
  std::size_t plain_rank;  // of the 0/1 matrix A itself
};

// Matrix of multiplication by (x_1 + ... + x_n)^(k-t) from degree t to degree
// k in K[x]/(x_1^2, ..., x_n^2): every incidence is hit (k-t)! times.  Over Z it has the rank of A; modulo p <= k-t it vanishes.
inline IntMatrix lefschetz_matrix(const IncidenceMatrix& a) {
  Integer f = 1;
  for (int i = 2; i <= a.k - a.t; ++i) f *= i;
  IntMatrix m = a.matrix;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) m(i, j) = f;
  return m;
}

struct RankTheoremEntry {
  int n, k, t;
  std::size_t rank_q;
  std::size_t expected;  // min(C(n,t), C(n,k))
  std::vector<ModPRankEntry> mod_p;

  bool rank_law_holds() const { return rank_q == expected; }
  bool mod_p_law_holds() const {
    for (const auto& e : mod_p)
      if (e.full != e.predicted_full) return false;
    return true;
  }
};

inline std::vector<RankTheoremEntry> check_rank_theorems(int n_max,
                                                         std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13}) {
  std::vector<RankTheoremEntry> out;
  for (int n = 2; n <= n_max; ++n)
    for (int k = 2; k <= n; ++k)
      for (int t = 1; t < k; ++t) {
        const IncidenceMatrix a = build_matrix(n, k, t);
        RankTheoremEntry e{n, k, t, rank_q(a.matrix),
                           static_cast<std::size_t>(std::min(binomial(n, t), binomial(n, k))), {}};
        const IntMatrix l = lefschetz_matrix(a);
        for (auto p : primes) {
          const std::size_t r = rank_mod_p(l, p);
          e.mod_p.push_back({p, r, r == e.expected,
                             p > static_cast<std::uint64_t>(std::min(k, n - t)),
                             rank_mod_p(a.matrix, p)});
        }
        out.push_back(std::move(e));
      }
  return out;
}

}  // namespace itoric
