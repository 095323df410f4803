#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "itoric/combinat.hpp"
#include "itoric/exactmath.hpp"
#include "itoric/incidence.hpp"

namespace itoric {

// Integer function on the k-subsets of [n], stored sparsely by colex rank.
struct NullDesign {
  int n = 0, k = 0;
  std::map<std::uint64_t, Integer> values;

  Integer at(const Subset& s) const {
    const auto it = values.find(colex_rank(s));
    return it == values.end() ? Integer(0) : it->second;
  }
  void set(const Subset& s, const Integer& v) {
    if (static_cast<int>(s.size()) != k) throw DimensionMismatch("design entry of wrong size");
    if (sgn(v) == 0)
      values.erase(colex_rank(s));
    else
      values[colex_rank(s)] = v;
  }
  std::vector<Subset> support_plus() const {
    std::vector<Subset> out;
    for (const auto& [r, v] : values)
      if (sgn(v) > 0) out.push_back(colex_unrank(n, k, r));
    return out;
  }
  std::vector<Subset> support_minus() const {
    std::vector<Subset> out;
    for (const auto& [r, v] : values)
      if (sgn(v) < 0) out.push_back(colex_unrank(n, k, r));
    return out;
  }
  NullDesign negated() const {
    NullDesign d = *this;
    for (auto& [r, v] : d.values) v = -v;
    return d;
  }
  friend bool operator==(const NullDesign& a, const NullDesign& b) {
    return a.n == b.n && a.k == b.k && a.values == b.values;
  }
};

// First nonzero value in colex order made positive.
inline NullDesign normalize_sign(const NullDesign& d) {
  if (!d.values.empty() && sgn(d.values.begin()->second) < 0) return d.negated();
  return d;
}

struct DesignCheck {
  bool ok = true;
  std::optional<Subset> violated;  // first t-subset (colex) whose sum is nonzero
};

// Every t-subset X must satisfy sum_{F contains X} f(F) = 0.  Checking only
// |X| = t suffices for k-uniform designs.
inline DesignCheck is_null_design(const NullDesign& f, int t) {
  if (t < 0 || t > f.k) throw BadParameters("strength must satisfy 0 <= t <= k");
  std::map<std::uint64_t, Integer> sums;
  for (const auto& [r, v] : f.values) {
    const Subset s = colex_unrank(f.n, f.k, r);
    for (const auto& pick : all_subsets(f.k, t)) {
      Subset x;
      for (int i : pick) x.push_back(s[static_cast<std::size_t>(i - 1)]);
      sums[colex_rank(x)] += v;
    }
  }
  for (const auto& [r, v] : sums)
    if (sgn(v) != 0) return {false, colex_unrank(f.n, t, r)};
  return {};
}

struct Pod {
  std::vector<std::pair<int, int>> diff_pairs;  // (x_a - x_b) factors, t+1 of them
  std::vector<int> singletons;                  // k-t-1 plain factors

  int t() const { return static_cast<int>(diff_pairs.size()) - 1; }
  int k() const { return static_cast<int>(diff_pairs.size() + singletons.size()); }
};

// Expands prod (x_a - x_b) * prod x_s into a signed sum of k-subsets.
inline NullDesign pod_expand(const Pod& p, int n) {
  std::set<int> seen;
  auto check = [&](int v) {
    if (v < 1 || v > n) throw IndexOutOfRange("pod index " + std::to_string(v));
    if (!seen.insert(v).second) throw BadParameters("pod indices must be distinct");
  };
  for (auto [a, b] : p.diff_pairs) {
    check(a);
    check(b);
  }
  for (int s : p.singletons) check(s);
  NullDesign d{n, p.k(), {}};
  const std::size_t pairs = p.diff_pairs.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    Subset f(p.singletons.begin(), p.singletons.end());
    int sign = 1;
    for (std::size_t i = 0; i < pairs; ++i) {
      if (mask >> i & 1) {
        f.push_back(p.diff_pairs[i].second);
        sign = -sign;
      } else {
        f.push_back(p.diff_pairs[i].first);
      }
    }
    std::sort(f.begin(), f.end());
    d.set(f, sign);
  }
  return d;
}

// Canonical pods: pairs (a,b) with a < b sorted by a, singletons ascending.
// One per choice of singleton set and perfect matching of 2(t+1) further
// indices; these are the hyperoctahedra of the (n,k,t) family.
inline std::vector<Pod> all_pods(int n, int k, int t) {
  if (t < 0 || t >= k || k > n) throw BadParameters("need 0 <= t < k <= n");
  const int singles = k - t - 1, paired = 2 * (t + 1);
  std::vector<Pod> out;
  if (singles + paired > n) return out;
  for (const auto& sing : all_subsets(n, singles)) {
    std::vector<int> rest;
    for (int v = 1; v <= n; ++v)
      if (!std::binary_search(sing.begin(), sing.end(), v)) rest.push_back(v);
    for (const auto& pick : all_subsets(static_cast<int>(rest.size()), paired)) {
      std::vector<int> idx;
      for (int i : pick) idx.push_back(rest[static_cast<std::size_t>(i - 1)]);
      // Perfect matchings: pair the smallest remaining with each other one.
      std::vector<std::pair<int, int>> cur;
      std::vector<bool> used(idx.size(), false);
      std::function<void()> rec = [&]() {
        std::size_t first = 0;
        while (first < idx.size() && used[first]) ++first;
        if (first == idx.size()) {
          out.push_back({cur, sing});
          return;
        }
        used[first] = true;
        for (std::size_t j = first + 1; j < idx.size(); ++j) {
          if (used[j]) continue;
          used[j] = true;
          cur.emplace_back(idx[first], idx[j]);
          rec();
          cur.pop_back();
          used[j] = false;
        }
        used[first] = false;
      };
      rec();
    }
  }
  return out;
}

inline IntVector design_kernel_iso(const NullDesign& d) {
  IntVector v(binomial(d.n, d.k), Integer(0));
  for (const auto& [r, x] : d.values) v[r] = x;
  return v;
}

inline NullDesign vector_to_design(const IntVector& v, int n, int k) {
  if (v.size() != binomial(n, k)) throw DimensionMismatch("vector length differs from C(n,k)");
  NullDesign d{n, k, {}};
  for (std::size_t r = 0; r < v.size(); ++r)
    if (sgn(v[r]) != 0) d.values[r] = v[r];
  return d;
}

inline nlohmann::json to_json(const NullDesign& d) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [r, v] : d.values) {
    const std::string key = subset_label(colex_unrank(d.n, d.k, r), d.n);
    if (v.fits_slong_p())
      j[key] = v.get_si();
    else
      j[key] = v.get_str();
  }
  return j;
}

// Z-span of all pod vectors compared with ker_Z(A(n,k,t)) by mutual HNF
// membership.
inline bool pods_span_kernel(int n, int k, int t) {
  const auto a = build_matrix(n, k, t);
  std::vector<IntVector> pods;
  for (const auto& p : all_pods(n, k, t)) pods.push_back(design_kernel_iso(pod_expand(p, n)));
  const LatticeBasis ker = kernel_basis(a.matrix);
  const LatticeBasis span = pods.empty() ? LatticeBasis{binomial(n, k), {}}
                                         : column_lattice_basis(IntMatrix::from_columns(pods, binomial(n, k)));
  return lattice_equal(ker, span);
}

struct SupportScan {
  bool kernel_trivial = false;
  std::optional<std::size_t> min_plus_support;
  IntVector witness;
  bool witness_is_pod = false;
  std::uint64_t positive_supports_tried = 0;
};

// Minimum |supp+| over nonzero {-1,0,1} kernel vectors, scanning positive
// supports P by size.  Since the all-ones vector is in the row span, |N| = |P|;
// N is found by covering the remaining row demand of A 1_P one row at a time.
inline SupportScan min_support_scan_pm1(const IncidenceMatrix& a, std::size_t max_plus) {
  SupportScan out;
  if (kernel_basis(a.matrix).rank() == 0) {
    out.kernel_trivial = true;
    return out;
  }
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::vector<std::size_t>> col_rows(cols), row_cols(rows);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i)
      if (sgn(a.matrix(i, j)) != 0) {
        col_rows[j].push_back(i);
        row_cols[i].push_back(j);
      }

  for (std::size_t s = 1; s <= max_plus && s <= cols / 2; ++s) {
    for (const auto& pick : all_subsets(static_cast<int>(cols), static_cast<int>(s))) {
      ++out.positive_supports_tried;
      std::vector<int> demand(rows, 0);
      std::vector<bool> blocked(cols, false);
      for (int c : pick) {
        blocked[static_cast<std::size_t>(c - 1)] = true;
        for (auto i : col_rows[static_cast<std::size_t>(c - 1)]) ++demand[i];
      }
      std::vector<std::size_t> chosen;
      std::function<bool()> rec = [&]() -> bool {
        std::size_t row = rows;
        for (std::size_t i = 0; i < rows; ++i)
          if (demand[i] > 0) {
            row = i;
            break;
          }
        if (row == rows) return chosen.size() == s;
        if (chosen.size() == s) return false;
        for (auto j : row_cols[row]) {
          if (blocked[j]) continue;
          bool fits = true;
          for (auto i : col_rows[j]) fits = fits && demand[i] > 0;
          if (!fits) continue;
          blocked[j] = true;
          chosen.push_back(j);
          for (auto i : col_rows[j]) --demand[i];
          if (rec()) return true;
          for (auto i : col_rows[j]) ++demand[i];
          chosen.pop_back();
          blocked[j] = false;
        }
        return false;
      };
      if (!rec()) continue;
      IntVector v(cols, Integer(0));
      for (int c : pick) v[static_cast<std::size_t>(c - 1)] = 1;
      for (auto j : chosen) v[j] = -1;
      if (!is_zero<Integer>(a.matrix.apply(v))) throw Error("support scan produced a non-kernel vector");
      out.min_plus_support = s;
      out.witness = v;
      for (const auto& p : all_pods(a.n, a.k, a.t)) {
        const IntVector pv = design_kernel_iso(pod_expand(p, a.n));
        IntVector neg = pv;
        for (auto& x : neg) x = -x;
        if (pv == v || neg == v) {
          out.witness_is_pod = true;
          break;
        }
      }
      return out;
    }
  }
  return out;
}

// Exhaustive scan over the box [-b, b]^C(n,k); refuses when the box exceeds
// the budget.
inline SupportScan min_support_scan_box(const IncidenceMatrix& a, int box_bound, std::uint64_t budget) {
  SupportScan out;
  const std::size_t cols = a.cols();
  const double size = std::pow(2.0 * box_bound + 1.0, static_cast<double>(cols));
  if (size > static_cast<double>(budget))
    throw BudgetExceeded("box has " + std::to_string(size) + " points, budget " + std::to_string(budget));
  if (kernel_basis(a.matrix).rank() == 0) {
    out.kernel_trivial = true;
    return out;
  }
  IntVector v(cols, Integer(-box_bound));
  while (true) {
    ++out.positive_supports_tried;
    if (!is_zero<Integer>(v) && is_zero<Integer>(a.matrix.apply(v))) {
      std::size_t plus = 0;
      for (const auto& x : v) plus += sgn(x) > 0;
      if (!out.min_plus_support || plus < *out.min_plus_support) {
        out.min_plus_support = plus;
        out.witness = v;
      }
    }
    std::size_t i = 0;
    while (i < cols && v[i] == box_bound) v[i++] = -box_bound;
    if (i == cols) break;
    ++v[i];
  }
  return out;
}

}  // namespace itoric
