#pragma once

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "itoric/combinat.hpp"

namespace itoric {

// A simplicial complex on [1..n] stored by its facets.  Facets are kept
// sorted, deduplicated and inclusion-maximal.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  SimplicialComplex(int n, std::vector<Subset> facets) : n_(n) {
    for (auto& f : facets) {
      std::sort(f.begin(), f.end());
      if (std::adjacent_find(f.begin(), f.end()) != f.end())
        throw BadParameters("repeated vertex in a facet");
      for (int v : f)
        if (v < 1 || v > n) throw IndexOutOfRange("vertex " + std::to_string(v));
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    for (const auto& f : facets) {
      bool maximal = true;
      for (const auto& g : facets)
        if (g.size() > f.size() && is_subset_of(f, g)) {
          maximal = false;
          break;
        }
      if (maximal) facets_.push_back(f);
    }
  }

  int n() const { return n_; }
  const std::vector<Subset>& facets() const { return facets_; }
  bool empty() const { return facets_.empty(); }

  int dimension() const {
    std::size_t m = 0;
    for (const auto& f : facets_) m = std::max(m, f.size());
    return static_cast<int>(m) - 1;
  }

  bool is_pure() const {
    for (const auto& f : facets_)
      if (static_cast<int>(f.size()) != dimension() + 1) return false;
    return true;
  }

  // Vertices that occur in some facet.
  std::vector<int> vertices() const {
    std::set<int> vs;
    for (const auto& f : facets_) vs.insert(f.begin(), f.end());
    return {vs.begin(), vs.end()};
  }

  // All faces of the given dimension, sorted lexicographically.
  std::vector<Subset> faces(int dim) const {
    std::set<Subset> out;
    const int size = dim + 1;
    for (const auto& f : facets_) {
      if (static_cast<int>(f.size()) < size) continue;
      for (const auto& pick : all_subsets(static_cast<int>(f.size()), size)) {
        Subset s;
        for (int i : pick) s.push_back(f[static_cast<std::size_t>(i - 1)]);
        out.insert(std::move(s));
      }
    }
    return {out.begin(), out.end()};
  }

  bool contains_face(const Subset& s) const {
    for (const auto& f : facets_)
      if (is_subset_of(s, f)) return true;
    return false;
  }

  SimplicialComplex link(const Subset& sigma) const {
    std::vector<Subset> parts;
    for (const auto& f : facets_) {
      if (!is_subset_of(sigma, f)) continue;
      Subset rest;
      std::set_difference(f.begin(), f.end(), sigma.begin(), sigma.end(), std::back_inserter(rest));
      parts.push_back(std::move(rest));
    }
    return {n_, std::move(parts)};
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.n_ == b.n_ && a.facets_ == b.facets_;
  }

 private:
  int n_ = 0;
  std::vector<Subset> facets_;
};

// The full simplex on [1..n] (dimension n-1).
inline SimplicialComplex simplex(int n) {
  Subset all;
  for (int i = 1; i <= n; ++i) all.push_back(i);
  return {n, {all}};
}

// One facet per line, whitespace separated labels; '#' starts a comment.
inline SimplicialComplex parse_complex(std::istream& in) {
  std::vector<Subset> facets;
  int n = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    Subset f;
    int v;
    while (ls >> v) {
      f.push_back(v);
      n = std::max(n, v);
    }
    if (!ls.eof()) throw BadParameters("unreadable facet line '" + line + "'");
    if (!f.empty()) facets.push_back(std::move(f));
  }
  return {n, std::move(facets)};
}

inline SimplicialComplex read_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadParameters("cannot open " + path);
  return parse_complex(in);
}

inline std::string format_complex(const SimplicialComplex& c) {
  std::string out;
  for (const auto& f : c.facets()) {
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? " " : "") + std::to_string(f[i]);
    out += '\n';
  }
  return out;
}

}  // namespace itoric
