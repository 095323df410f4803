#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "itoric/exactmath.hpp"
#include "itoric/incidence.hpp"
#include "itoric/simplicial.hpp"
#include "itoric/toric/binomial.hpp"
#include "itoric/toric/graver.hpp"

namespace itoric {

// colors[v] in 1..d for v in 1..n; 0 for vertices not in the complex.
using Coloring = std::vector<int>;
// One sign per facet, in the complex's facet order.
using Orientation = std::vector<int>;

// ----------------------------------------------------------- examples

// Boundary of the d-dimensional crosspolytope: vertices 2i-1, 2i form the
// antipodal pair of color i.
inline SimplicialComplex crosspolytope(int d) {
  if (d < 1) throw BadParameters("crosspolytope needs d >= 1");
  std::vector<Subset> facets;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    Subset f;
    for (int i = 0; i < d; ++i) f.push_back(2 * i + 1 + static_cast<int>(mask >> i & 1));
    facets.push_back(f);
  }
  return {2 * d, facets};
}

// A 2-sphere (two cones over triangles joined by a triangulated cylinder)
// with its two apexes identified into vertex 1.  The apexes share no link
// face, so the quotient is a pinched torus.
inline SimplicialComplex pinched_torus() {
  return {7,
          {{1, 2, 3}, {1, 3, 4}, {1, 2, 4},
           {2, 3, 5}, {3, 5, 6}, {3, 4, 6}, {4, 6, 7}, {2, 4, 7}, {2, 5, 7},
           {1, 5, 6}, {1, 6, 7}, {1, 5, 7}}};
}

// The octahedron after one balanced cross-flip at {1,4,5}, on 9 vertices.
inline SimplicialComplex crossflip_example() {
  return {9,
          {{1, 4, 6}, {2, 3, 6}, {1, 3, 5}, {2, 4, 5}, {6, 7, 8}, {1, 7, 9}, {3, 8, 9},
           {7, 8, 9}, {1, 6, 7}, {3, 6, 8}, {1, 3, 9}, {2, 4, 6}, {1, 4, 5}, {2, 3, 5}}};
}

// Vertices are the nonempty faces (numbered in order of dimension, then
// lexicographically); facets are maximal chains.  Always balanced by
// dimension of the face.
inline SimplicialComplex barycentric_subdivision(const SimplicialComplex& c) {
  std::vector<Subset> faces;
  for (int d = 0; d <= c.dimension(); ++d)
    for (auto& f : c.faces(d)) faces.push_back(std::move(f));
  std::map<Subset, int> id;
  for (std::size_t i = 0; i < faces.size(); ++i) id[faces[i]] = static_cast<int>(i) + 1;
  std::vector<Subset> chains;
  auto extend = [&](auto&& self, const Subset& top, Subset chain) -> void {
    chain.push_back(id.at(top));
    if (top.size() == 1) {
      chains.push_back(std::move(chain));
      return;
    }
    for (std::size_t i = 0; i < top.size(); ++i) {
      Subset smaller = top;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
      self(self, smaller, chain);
    }
  };
  for (const auto& f : c.facets()) extend(extend, f, {});
  return {static_cast<int>(faces.size()), std::move(chains)};
}

// ------------------------------------------------------------ structure

namespace detail {

// ridge -> indices of the facets containing it (pure complexes).
inline std::map<Subset, std::vector<std::size_t>> ridge_map(const SimplicialComplex& c) {
  std::map<Subset, std::vector<std::size_t>> m;
  const auto& fs = c.facets();
  for (std::size_t j = 0; j < fs.size(); ++j)
    for (std::size_t i = 0; i < fs[j].size(); ++i) {
      Subset r = fs[j];
      r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
      m[r].push_back(j);
    }
  return m;
}

inline bool graph_connected(std::size_t nodes, const std::vector<std::vector<std::size_t>>& adj) {
  if (nodes == 0) return true;
  std::vector<bool> seen(nodes, false);
  std::deque<std::size_t> q{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    const auto u = q.front();
    q.pop_front();
    for (auto v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        q.push_back(v);
      }
  }
  return count == nodes;
}

// Connectivity of the complex (its 1-skeleton on the vertices in use).
inline bool complex_connected(const SimplicialComplex& c) {
  const auto vs = c.vertices();
  std::map<int, std::size_t> idx;
  for (std::size_t i = 0; i < vs.size(); ++i) idx[vs[i]] = i;
  std::vector<std::vector<std::size_t>> adj(vs.size());
  for (const auto& f : c.facets())
    for (std::size_t i = 1; i < f.size(); ++i) {
      adj[idx[f[0]]].push_back(idx[f[i]]);
      adj[idx[f[i]]].push_back(idx[f[0]]);
    }
  return graph_connected(vs.size(), adj);
}

// Facet adjacency through ridges shared by exactly two facets.
inline std::vector<std::vector<std::size_t>> facet_ridge_graph(const SimplicialComplex& c) {
  std::vector<std::vector<std::size_t>> adj(c.facets().size());
  for (const auto& [r, fs] : ridge_map(c))
    for (std::size_t a = 0; a < fs.size(); ++a)
      for (std::size_t b = a + 1; b < fs.size(); ++b) {
        adj[fs[a]].push_back(fs[b]);
        adj[fs[b]].push_back(fs[a]);
      }
  return adj;
}

}  // namespace detail

inline bool is_balanced_coloring(const SimplicialComplex& c, const Coloring& col) {
  if (col.size() < static_cast<std::size_t>(c.n()) + 1) return false;
  const int d = c.dimension() + 1;
  for (const auto& f : c.facets()) {
    std::vector<bool> used(static_cast<std::size_t>(d) + 1, false);
    for (int v : f) {
      const int k = col[static_cast<std::size_t>(v)];
      if (k < 1 || k > d || used[static_cast<std::size_t>(k)]) return false;
      used[static_cast<std::size_t>(k)] = true;
    }
  }
  return true;
}

// Exact (dim+1)-coloring of the 1-skeleton by backtracking, vertices by
// decreasing degree.  Color classes are canonicalized by first appearance in
// vertex order.
inline std::optional<Coloring> find_balanced_coloring(const SimplicialComplex& c) {
  const int d = c.dimension() + 1;
  const auto vs = c.vertices();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(c.n()) + 1);
  for (const auto& f : c.facets())
    for (int a : f)
      for (int b : f)
        if (a != b) adj[static_cast<std::size_t>(a)].push_back(b);
  for (auto& l : adj) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  std::vector<int> order = vs;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return adj[static_cast<std::size_t>(a)].size() > adj[static_cast<std::size_t>(b)].size();
  });
  Coloring col(static_cast<std::size_t>(c.n()) + 1, 0);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == order.size()) return true;
    const int v = order[i];
    for (int k = 1; k <= d; ++k) {
      bool ok = true;
      for (int u : adj[static_cast<std::size_t>(v)])
        if (col[static_cast<std::size_t>(u)] == k) {
          ok = false;
          break;
        }
      if (!ok) continue;
      col[static_cast<std::size_t>(v)] = k;
      if (self(self, i + 1)) return true;
    }
    col[static_cast<std::size_t>(v)] = 0;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  std::vector<int> rename(static_cast<std::size_t>(d) + 1, 0);
  int next = 0;
  for (int v : vs) {
    int& r = rename[static_cast<std::size_t>(col[static_cast<std::size_t>(v)])];
    if (!r) r = ++next;
  }
  for (int v : vs) col[static_cast<std::size_t>(v)] = rename[static_cast<std::size_t>(col[static_cast<std::size_t>(v)])];
  return col;
}

// Top boundary matrix restricted to interior ridges (those in two facets),
// with the usual sign (-1)^i for dropping the i-th smallest vertex.
inline IntMatrix interior_boundary_matrix(const SimplicialComplex& c) {
  const auto rm = detail::ridge_map(c);
  std::vector<Subset> interior;
  for (const auto& [r, fs] : rm)
    if (fs.size() == 2) interior.push_back(r);
  std::map<Subset, std::size_t> row;
  for (std::size_t i = 0; i < interior.size(); ++i) row[interior[i]] = i;
  IntMatrix m(interior.size(), c.facets().size());
  for (std::size_t j = 0; j < c.facets().size(); ++j) {
    const auto& f = c.facets()[j];
    for (std::size_t i = 0; i < f.size(); ++i) {
      Subset r = f;
      r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
      if (const auto it = row.find(r); it != row.end()) m(it->second, j) = (i % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

// A generator of the rank-one integer kernel with all entries +-1, if any.
inline std::optional<Orientation> pm1_kernel_generator(const IntMatrix& m) {
  const auto ker = kernel_basis(m);
  if (ker.rank() != 1) return std::nullopt;
  Orientation eps;
  for (const auto& x : ker.basis_vectors[0]) {
    if (abs(x) != 1) return std::nullopt;
    eps.push_back(sgn(x));
  }
  if (eps.front() < 0)
    for (auto& e : eps) e = -e;
  return eps;
}

struct ComplexReport {
  bool pure = false;
  int dimension = -1;
  bool pseudomanifold = false;
  bool boundaryless = false;
  bool normal = false;
  bool balanced = false;
  std::optional<Coloring> coloring;
  bool orientable = false;
  std::optional<Orientation> orientation;
  bool facet_ridge_bipartite = false;
  std::vector<Subset> disconnected_links;  // faces witnessing non-normality
};

// Every predicate is computed on its own:
//  - pseudomanifold: pure, ridges in <= 2 facets, facet-ridge graph connected;
//  - normal: pseudomanifold with connected links of all faces of dim <= d-2
//    (the empty face included);
//  - orientable: pseudomanifold whose interior-ridge boundary matrix has a
//    rank-one kernel generated by a +-1 vector;
//  - bipartite: BFS 2-coloring of the facet-ridge graph.
inline ComplexReport verify(const SimplicialComplex& c) {
  ComplexReport r;
  r.dimension = c.dimension();
  r.pure = c.is_pure();
  if (c.empty()) return r;
  const auto rm = detail::ridge_map(c);
  const auto adj = detail::facet_ridge_graph(c);
  bool at_most_two = true, exactly_two = true;
  for (const auto& [ridge, fs] : rm) {
    at_most_two &= fs.size() <= 2;
    exactly_two &= fs.size() == 2;
  }
  r.pseudomanifold = r.pure && at_most_two && detail::graph_connected(c.facets().size(), adj);
  r.boundaryless = r.pseudomanifold && exactly_two;
  if (r.pseudomanifold) {
    bool normal = true;
    for (int dim = -1; dim <= r.dimension - 2; ++dim) {
      const std::vector<Subset> faces = dim < 0 ? std::vector<Subset>{Subset{}} : c.faces(dim);
      for (const auto& f : faces)
        if (!detail::complex_connected(c.link(f))) {
          normal = false;
          r.disconnected_links.push_back(f);
        }
    }
    r.normal = normal;
  }
  if (r.pure) {
    r.coloring = find_balanced_coloring(c);
    r.balanced = r.coloring.has_value();
  }
  if (r.pseudomanifold) {
    r.orientation = pm1_kernel_generator(interior_boundary_matrix(c));
    r.orientable = r.orientation.has_value();
  }
  std::vector<int> side(c.facets().size(), 0);
  bool bipartite = true;
  for (std::size_t s = 0; s < side.size() && bipartite; ++s) {
    if (side[s]) continue;
    side[s] = 1;
    std::deque<std::size_t> q{s};
    while (!q.empty() && bipartite) {
      const auto u = q.front();
      q.pop_front();
      for (auto v : adj[u]) {
        if (!side[v]) {
          side[v] = -side[u];
          q.push_back(v);
        } else if (side[v] == side[u]) {
          bipartite = false;
        }
      }
    }
  }
  r.facet_ridge_bipartite = bipartite;
  return r;
}

// ------------------------------------------------- boundary and binomial

struct SignedBoundary {
  IntMatrix matrix;             // ridges x facets
  std::vector<Subset> ridges;   // lexicographic
  std::vector<Subset> facets;   // complex order
};

// Top boundary map with vertices ordered by color, then label: the entry for
// facet F and ridge F \ {u} is (-1)^(position of u), which for a balanced
// coloring is (-1)^(color(u)-1).  Rows are checked to be sign-uniform.
inline SignedBoundary signed_boundary_matrix(const SimplicialComplex& c, const Coloring& col) {
  if (!c.is_pure() || !is_balanced_coloring(c, col)) throw NotBalanced("coloring is not balanced for this complex");
  SignedBoundary out;
  out.facets = c.facets();
  out.ridges = c.faces(c.dimension() - 1);
  std::map<Subset, std::size_t> row;
  for (std::size_t i = 0; i < out.ridges.size(); ++i) row[out.ridges[i]] = i;
  out.matrix = IntMatrix(out.ridges.size(), out.facets.size());
  for (std::size_t j = 0; j < out.facets.size(); ++j) {
    Subset f = out.facets[j];
    std::stable_sort(f.begin(), f.end(), [&](int a, int b) {
      return col[static_cast<std::size_t>(a)] < col[static_cast<std::size_t>(b)];
    });
    for (std::size_t pos = 0; pos < f.size(); ++pos) {
      Subset r = out.facets[j];
      r.erase(std::find(r.begin(), r.end(), f[pos]));
      out.matrix(row.at(r), j) = pos % 2 == 0 ? 1 : -1;
    }
  }
  for (std::size_t i = 0; i < out.ridges.size(); ++i) {
    int s = 0;
    for (std::size_t j = 0; j < out.facets.size(); ++j) {
      const int e = sgn(out.matrix(i, j));
      if (e == 0) continue;
      if (s != 0 && e != s) throw Error("boundary row " + std::to_string(i) + " is not sign-uniform");
      s = e;
    }
  }
  return out;
}

struct OrientationBinomial {
  IncidenceMatrix matrix;   // A(n, k, k-1)
  Binomial binomial;
  Orientation epsilon;      // color-ordered orientation, facet order of the complex
};

// prod_{eps=+1} c_F - prod_{eps=-1} c_F for a balanced orientable normal
// pseudomanifold without boundary of dimension k-1 >= 2.  The sign vector is
// the kernel generator of the color-ordered boundary map; kernel membership
// in A(n,k,k-1) and primitivity are asserted.
inline OrientationBinomial orientation_binomial(const SimplicialComplex& c, const Budgets& budgets = {}) {
  const ComplexReport r = verify(c);
  std::vector<std::string> failed;
  const int k = r.dimension + 1;
  if (k < 3) failed.push_back("dimension >= 2");
  if (!r.pseudomanifold) failed.push_back("pseudomanifold");
  if (!r.boundaryless) failed.push_back("without boundary");
  if (!r.normal) failed.push_back("normal");
  if (!r.balanced) failed.push_back("balanced");
  if (!r.orientable) failed.push_back("orientable");
  if (!failed.empty()) {
    std::string msg = "orientation binomial needs:";
    for (const auto& f : failed) msg += " " + f + ";";
    throw PreconditionFailed(msg);
  }
  const SignedBoundary sb = signed_boundary_matrix(c, *r.coloring);
  const auto eps = pm1_kernel_generator(sb.matrix);
  if (!eps) throw Error("color-ordered boundary map lacks a +-1 kernel generator");
  OrientationBinomial out{build_matrix(c.n(), k, k - 1), {}, *eps};
  Binomial b{out.matrix.cols(), Exponents(out.matrix.cols(), 0), Exponents(out.matrix.cols(), 0)};
  for (std::size_t j = 0; j < sb.facets.size(); ++j) {
    const std::size_t v = out.matrix.column_of(sb.facets[j]);
    ((*eps)[j] > 0 ? b.plus : b.minus)[v] = 1;
  }
  out.binomial = b;
  if (!in_kernel(b, out.matrix.matrix)) throw Error("orientation binomial outside the kernel");
  if (!is_primitive(b, out.matrix.matrix, budgets)) throw Error("orientation binomial is not primitive");
  return out;
}

inline nlohmann::json to_json(const ComplexReport& r) {
  nlohmann::json j{{"pure", r.pure},
                   {"dimension", r.dimension},
                   {"pseudomanifold", r.pseudomanifold},
                   {"boundaryless", r.boundaryless},
                   {"normal", r.normal},
                   {"balanced", r.balanced},
                   {"orientable", r.orientable},
                   {"facet_ridge_bipartite", r.facet_ridge_bipartite}};
  if (r.coloring) {
    nlohmann::json col = nlohmann::json::object();
    for (std::size_t v = 1; v < r.coloring->size(); ++v)
      if ((*r.coloring)[v]) col[std::to_string(v)] = (*r.coloring)[v];
    j["coloring"] = col;
  }
  if (r.orientation) j["orientation"] = *r.orientation;
  if (!r.disconnected_links.empty()) {
    nlohmann::json faces = nlohmann::json::array();
    for (const auto& f : r.disconnected_links) faces.push_back(f);
    j["disconnected_links"] = faces;
  }
  return j;
}

}  // namespace itoric
