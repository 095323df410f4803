#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "itoric/errors.hpp"

namespace itoric {

// Subsets of [n] are strictly increasing 1-based vectors.
using Subset = std::vector<int>;

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

struct SubsetIndex {
  int n = 0;
  Subset members;
  int k() const { return static_cast<int>(members.size()); }
};

// rank(S) = sum_i C(s_i - 1, i) with 1-based positions.  Independent of n.
inline std::uint64_t colex_rank(const Subset& s) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < s.size(); ++i) r += binomial(s[i] - 1, static_cast<int>(i + 1));
  return r;
}

inline std::uint64_t colex_rank(const SubsetIndex& s) { return colex_rank(s.members); }

inline Subset colex_unrank(int n, int k, std::uint64_t r) {
  if (k < 0 || k > n || r >= binomial(n, k))
    throw RankOutOfRange("rank " + std::to_string(r) + " for C(" + std::to_string(n) + "," +
                         std::to_string(k) + ")");
  Subset s(static_cast<std::size_t>(k));
  int top = n;
  for (int i = k; i >= 1; --i) {
    int v = i;  // largest v with C(v-1, i) <= r
    while (v + 1 <= top && binomial(v, i) <= r) ++v;
    s[static_cast<std::size_t>(i - 1)] = v;
    r -= binomial(v - 1, i);
    top = v - 1;
  }
  return s;
}

// Advances to the colex successor; false after the last subset.
inline bool next_colex(Subset& s, int n) {
  const std::size_t k = s.size();
  for (std::size_t i = 0; i < k; ++i) {
    const int limit = (i + 1 < k) ? s[i + 1] : n + 1;
    if (s[i] + 1 < limit) {
      ++s[i];
      for (std::size_t j = 0; j < i; ++j) s[j] = static_cast<int>(j) + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<Subset> all_subsets(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  out.reserve(binomial(n, k));
  Subset s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = i + 1;
  do out.push_back(s);
  while (next_colex(s, n));
  return out;
}

inline bool is_subset_of(const Subset& a, const Subset& b) {
  std::size_t j = 0;
  for (int x : a) {
    while (j < b.size() && b[j] < x) ++j;
    if (j == b.size() || b[j] != x) return false;
  }
  return true;
}

inline std::string subset_label(const Subset& s, int n) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (n > 9 && i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

// Accepts "136" (single digits) or "1,3,6"; result is sorted.
inline Subset parse_subset_label(const std::string& label) {
  Subset s;
  if (label.find(',') != std::string::npos) {
    std::size_t start = 0;
    while (start <= label.size()) {
      const auto end = label.find(',', start);
      s.push_back(std::stoi(label.substr(start, end - start)));
      if (end == std::string::npos) break;
      start = end + 1;
    }
  } else {
    for (char c : label) {
      if (c < '0' || c > '9') throw BadParameters("bad subset label '" + label + "'");
      s.push_back(c - '0');
    }
  }
  std::sort(s.begin(), s.end());
  return s;
}

// --- permutations ------------------------------------------------------------

struct Derangement {
  int n = 0;
  std::vector<int> images;               // images[i-1] = sigma(i)
  std::vector<std::vector<int>> cycles;  // smallest element first, cycles by first element
  int t_count = 0;                       // cycles
  int s_count = 0;                       // transpositions among them

  int operator()(int i) const { return images[static_cast<std::size_t>(i - 1)]; }
};

inline std::vector<std::vector<int>> cycle_decomposition(const std::vector<int>& images) {
  const int n = static_cast<int>(images.size());
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  std::vector<std::vector<int>> cycles;
  for (int i = 1; i <= n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::vector<int> c;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = images[static_cast<std::size_t>(j - 1)]) {
      seen[static_cast<std::size_t>(j)] = true;
      c.push_back(j);
    }
    cycles.push_back(std::move(c));
  }
  return cycles;
}

inline Derangement make_derangement(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<bool> hit(static_cast<std::size_t>(n) + 1, false);
  for (int i = 1; i <= n; ++i) {
    const int v = images[static_cast<std::size_t>(i - 1)];
    if (v < 1 || v > n || hit[static_cast<std::size_t>(v)])
      throw BadParameters("not a permutation");
    if (v == i) throw BadParameters("fixed point " + std::to_string(i));
    hit[static_cast<std::size_t>(v)] = true;
  }
  Derangement d;
  d.n = n;
  d.images = std::move(images);
  d.cycles = cycle_decomposition(d.images);
  d.t_count = static_cast<int>(d.cycles.size());
  for (const auto& c : d.cycles)
    if (c.size() == 2) ++d.s_count;
  return d;
}

// Builds from cycle notation, e.g. {{1,2},{3,4,5}}.
inline Derangement derangement_from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> images(static_cast<std::size_t>(n), 0);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 1 || c[i] > n) throw IndexOutOfRange("cycle entry " + std::to_string(c[i]));
      images[static_cast<std::size_t>(c[i] - 1)] = c[(i + 1) % c.size()];
    }
  for (int i = 1; i <= n; ++i)
    if (images[static_cast<std::size_t>(i - 1)] == 0) images[static_cast<std::size_t>(i - 1)] = i;
  return make_derangement(std::move(images));
}

inline std::pair<int, int> cycle_stats(const Derangement& d) { return {d.t_count, d.s_count}; }

inline int permutation_sign(const std::vector<int>& images) {
  int parity = 0;
  for (const auto& c : cycle_decomposition(images)) parity += static_cast<int>(c.size()) - 1;
  return parity % 2 ? -1 : 1;
}

// Visits every derangement of [n] in lexicographic order of image tuples.
inline void for_each_derangement(int n, const std::function<void(const Derangement&)>& fn) {
  if (n < 2) throw BadParameters("derangements need n >= 2");
  std::vector<int> images(static_cast<std::size_t>(n));
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  std::function<void(int)> rec = [&](int i) {
    if (i > n) {
      fn(make_derangement(images));
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (v == i || used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      images[static_cast<std::size_t>(i - 1)] = v;
      rec(i + 1);
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  rec(1);
}

inline std::vector<Derangement> derangements(int n) {
  std::vector<Derangement> out;
  for_each_derangement(n, [&](const Derangement& d) { out.push_back(d); });
  return out;
}

// --- tableaux ---------------------------------------------------------------

struct TwoRowTableau {
  std::vector<int> top_row;
  std::vector<int> bottom_row;
};

inline bool is_standard(const TwoRowTableau& t) {
  if (t.bottom_row.size() > t.top_row.size()) return false;
  auto increasing = [](const std::vector<int>& r) {
    for (std::size_t i = 1; i < r.size(); ++i)
      if (r[i - 1] >= r[i]) return false;
    return true;
  };
  if (!increasing(t.top_row) || !increasing(t.bottom_row)) return false;
  for (std::size_t i = 0; i < t.bottom_row.size(); ++i)
    if (t.bottom_row[i] <= t.top_row[i]) return false;
  std::vector<int> all(t.top_row);
  all.insert(all.end(), t.bottom_row.begin(), t.bottom_row.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] != static_cast<int>(i) + 1) return false;
  return true;
}

// Standard tableaux of shape (n-s, s) filled with 1..n.
inline std::vector<TwoRowTableau> standard_two_row_tableaux(int n, int s) {
  if (s < 0 || 2 * s > n) throw BadParameters("need 0 <= 2s <= n");
  std::vector<TwoRowTableau> out;
  TwoRowTableau cur;
  std::function<void(int)> rec = [&](int v) {
    if (v > n) {
      out.push_back(cur);
      return;
    }
    if (static_cast<int>(cur.top_row.size()) < n - s) {
      cur.top_row.push_back(v);
      rec(v + 1);
      cur.top_row.pop_back();
    }
    if (static_cast<int>(cur.bottom_row.size()) < s && cur.bottom_row.size() < cur.top_row.size()) {
      cur.bottom_row.push_back(v);
      rec(v + 1);
      cur.bottom_row.pop_back();
    }
  };
  rec(1);
  return out;
}

}  // namespace itoric
