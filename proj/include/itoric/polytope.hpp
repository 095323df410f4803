#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "itoric/config.hpp"
#include "itoric/exactmath.hpp"
#include "itoric/incidence.hpp"

namespace itoric {

// Points are the columns of `points`.
struct PointConfig {
  IntMatrix points;
  std::vector<std::string> labels;

  std::size_t size() const { return points.cols(); }
  std::size_t ambient() const { return points.rows(); }
  IntVector point(std::size_t j) const { return points.column(j); }
};

inline PointConfig point_config(const IncidenceMatrix& a) {
  PointConfig c{a.matrix, {}};
  for (std::size_t j = 0; j < a.cols(); ++j) c.labels.push_back(a.col_label(j));
  return c;
}

inline PointConfig point_config(const IntMatrix& m) {
  PointConfig c{m, {}};
  for (std::size_t j = 0; j < m.cols(); ++j) c.labels.push_back(std::to_string(j));
  return c;
}

// Points with a row of ones appended; its kernel is the space of affine
// dependences.
inline IntMatrix homogenized(const PointConfig& cfg) {
  IntMatrix h(cfg.ambient() + 1, cfg.size());
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    for (std::size_t r = 0; r < cfg.ambient(); ++r) h(r, j) = cfg.points(r, j);
    h(cfg.ambient(), j) = 1;
  }
  return h;
}

inline std::size_t affine_dimension(const PointConfig& cfg) {
  return cfg.size() == 0 ? 0 : rank_q(homogenized(cfg)) - 1;
}

// ---------------------------------------------------------------- faces

struct FaceResult {
  bool face = false;
  RatVector c;         // face: c.p == beta on the subset, c.p < beta elsewhere
  Rational beta;
  IntVector witness;   // non-face: affine dependence with supp+ inside the subset
  std::vector<std::size_t> subset;
};

inline bool verify_face_certificate(const PointConfig& cfg, const FaceResult& r) {
  std::vector<bool> in(cfg.size(), false);
  for (auto i : r.subset) in[i] = true;
  if (r.face) {
    if (r.c.size() != cfg.ambient()) return false;
    for (std::size_t j = 0; j < cfg.size(); ++j) {
      Rational v = 0;
      for (std::size_t x = 0; x < cfg.ambient(); ++x) v += r.c[x] * cfg.points(x, j);
      if (in[j] ? v != r.beta : v >= r.beta) return false;
    }
    return true;
  }
  if (r.witness.size() != cfg.size() || !is_zero<Integer>(homogenized(cfg).apply(r.witness))) return false;
  bool off_negative = false;
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    if (!in[j] && sgn(r.witness[j]) > 0) return false;
    if (!in[j] && sgn(r.witness[j]) < 0) off_negative = true;
  }
  return off_negative;
}

namespace detail {

// Solves m x = b over Q by Gauss-Jordan elimination; nullopt if inconsistent.
inline std::optional<RatVector> solve_rational(RatMatrix m, RatVector b) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(p, r);
    std::swap(b[p], b[r]);
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational q = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= q * m(r, j);
      b[i] -= q * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (sgn(b[i]) != 0) return std::nullopt;
  RatVector x(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

inline IntVector primitive_integer(const RatVector& v) {
  Integer l = 1;
  for (const auto& y : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), y.get_den_mpz_t());
  IntVector out(v.size());
  Integer g = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    out[j] = Integer(v[j] * l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[j].get_mpz_t());
  }
  if (sgn(g) != 0)
    for (auto& w : out) mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), g.get_mpz_t());
  return out;
}

}  // namespace detail

// Direct formulation, kept as an independent route: one exact LP in (c, beta): c.p_i = beta on the subset, c.p_j <= beta - 1
// off it.  Infeasibility yields a Farkas vector, which is an affine
// dependence negative somewhere off the subset and non-positive everywhere
// off it.
inline FaceResult is_face_direct(const PointConfig& cfg, std::vector<std::size_t> subset) {
  if (subset.empty()) throw BadParameters("face test needs a nonempty subset");
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (subset.back() >= cfg.size()) throw IndexOutOfRange("point index " + std::to_string(subset.back()));
  const std::size_t d = cfg.ambient();
  std::vector<bool> in(cfg.size(), false);
  for (auto i : subset) in[i] = true;
  RationalLpProblem lp;
  lp.objective.assign(d + 1, Rational(0));
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    RatVector a(d + 1);
    for (std::size_t x = 0; x < d; ++x) a[x] = cfg.points(x, j);
    a[d] = -1;
    if (in[j])
      lp.constraints.push_back({std::move(a), Relation::Eq, Rational(0)});
    else
      lp.constraints.push_back({std::move(a), Relation::Le, Rational(-1)});
  }
  const LpResult res = lp_feasible(lp);
  FaceResult out;
  out.subset = subset;
  if (res.status == LpStatus::Optimal) {
    out.face = true;
    out.c.assign(res.point.begin(), res.point.begin() + static_cast<std::ptrdiff_t>(d));
    out.beta = res.point[d];
  } else if (res.status == LpStatus::Infeasible) {
    out.witness = detail::primitive_integer(RatVector(res.farkas.begin(), res.farkas.begin() + static_cast<std::ptrdiff_t>(cfg.size())));
  } else {
    throw Error("face LP reported unbounded on a feasibility problem");
  }
  if (!verify_face_certificate(cfg, out)) throw Error("face certificate failed verification");
  return out;
}

// Face tests against a fixed configuration.  The slacks s_j = beta - c.p_j
// of a supporting functional are exactly the vectors orthogonal to every
// affine dependence, so the LP runs over z >= 0 (s_j = 1 + z_j off the
// subset, 0 on it) with one equation per kernel basis vector.  A Farkas
// vector of this small LP combines the kernel basis into the obstruction.
class FaceOracle {
 public:
  explicit FaceOracle(PointConfig cfg) : cfg_(std::move(cfg)), kernel_(kernel_basis(homogenized(cfg_))) {}

  const PointConfig& config() const { return cfg_; }

  FaceResult test(std::vector<std::size_t> subset) const {
    if (subset.empty()) throw BadParameters("face test needs a nonempty subset");
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    if (subset.back() >= cfg_.size()) throw IndexOutOfRange("point index " + std::to_string(subset.back()));
    std::vector<bool> in(cfg_.size(), false);
    for (auto i : subset) in[i] = true;
    std::vector<std::size_t> off;
    for (std::size_t j = 0; j < cfg_.size(); ++j)
      if (!in[j]) off.push_back(j);
    FaceResult out;
    out.subset = subset;
    RatVector slack(cfg_.size(), Rational(0));
    if (off.empty() || kernel_.basis_vectors.empty()) {
      for (auto j : off) slack[j] = 1;
      return finish_face(std::move(out), slack);
    }
    RationalLpProblem lp;
    lp.objective.assign(off.size(), Rational(0));
    for (const auto& k : kernel_.basis_vectors) {
      RatVector a(off.size());
      Rational rhs = 0;
      for (std::size_t x = 0; x < off.size(); ++x) {
        a[x] = k[off[x]];
        rhs -= k[off[x]];
      }
      lp.constraints.push_back({std::move(a), Relation::Eq, rhs});
    }
    for (std::size_t x = 0; x < off.size(); ++x) {
      RatVector e(off.size(), Rational(0));
      e[x] = 1;
      lp.constraints.push_back({std::move(e), Relation::Ge, Rational(0)});
    }
    const LpResult res = lp_feasible(lp);
    if (res.status == LpStatus::Optimal) {
      for (std::size_t x = 0; x < off.size(); ++x) slack[off[x]] = 1 + res.point[x];
      return finish_face(std::move(out), slack);
    }
    if (res.status != LpStatus::Infeasible) throw Error("face LP reported unbounded on a feasibility problem");
    RatVector w(cfg_.size(), Rational(0));
    for (std::size_t l = 0; l < kernel_.basis_vectors.size(); ++l)
      for (std::size_t j = 0; j < cfg_.size(); ++j) w[j] += res.farkas[l] * kernel_.basis_vectors[l][j];
    out.witness = detail::primitive_integer(w);
    if (!verify_face_certificate(cfg_, out)) throw Error("face witness failed verification");
    return out;
  }

 private:
  // Recovers (c, beta) from the slack vector by an exact linear solve.
  FaceResult finish_face(FaceResult out, const RatVector& slack) const {
    const std::size_t d = cfg_.ambient();
    RatMatrix m(cfg_.size(), d + 1);
    RatVector rhs(cfg_.size());
    for (std::size_t j = 0; j < cfg_.size(); ++j) {
      for (std::size_t x = 0; x < d; ++x) m(j, x) = cfg_.points(x, j);
      m(j, d) = -1;
      rhs[j] = -slack[j];
    }
    const auto sol = detail::solve_rational(std::move(m), std::move(rhs));
    if (!sol) throw Error("slack vector outside the row space");
    out.face = true;
    out.c.assign(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(d));
    out.beta = (*sol)[d];
    if (!verify_face_certificate(cfg_, out)) throw Error("face certificate failed verification");
    return out;
  }

  PointConfig cfg_;
  LatticeBasis kernel_;
};

inline FaceResult is_face(const PointConfig& cfg, std::vector<std::size_t> subset) {
  return FaceOracle(cfg).test(std::move(subset));
}

struct Neighborliness {
  std::size_t s = 0;                                   // every set of <= s points is a face
  std::optional<std::vector<std::size_t>> witness;     // non-face of size s + 1
  std::uint64_t lps = 0;
};

// Checks all subsets of size 1..s_max in colex order, stopping at the first
// non-face.
inline Neighborliness neighborliness(const PointConfig& cfg, std::size_t s_max, const Budgets& budgets = {}) {
  Neighborliness out;
  const FaceOracle oracle(cfg);
  for (std::size_t s = 1; s <= std::min(s_max, cfg.size()); ++s) {
    for (const auto& sub : all_subsets(static_cast<int>(cfg.size()), static_cast<int>(s))) {
      if (++out.lps > budgets.face_lps) throw BudgetExceeded("face LP budget of " + std::to_string(budgets.face_lps) + " exhausted");
      std::vector<std::size_t> idx;
      for (int v : sub) idx.push_back(static_cast<std::size_t>(v - 1));
      if (!oracle.test(idx).face) {
        out.witness = idx;
        return out;
      }
    }
    out.s = s;
  }
  return out;
}

// ------------------------------------------------- the hyperplane H_T

struct SupportingHyperplane {
  std::vector<Subset> family;   // the t-subsets lying in some chosen k-subset
  IntVector normal;             // indicator of `family` over the rows of A
  Integer rhs;                  // C(k,t)
  std::size_t strictly_below = 0;
};

// For chosen columns v_1..v_l of A(n,k,t): the plane summing the coordinates
// indexed by their t-subsets.  Chosen vertices lie on it, all others lie on
// or below it, and some vertex is strictly below.
inline SupportingHyperplane supporting_hyperplane_HT(const IncidenceMatrix& a, const std::vector<std::size_t>& chosen) {
  if (2 * a.k >= a.n) throw PreconditionFailed("H_T needs 2k < n");
  if (chosen.empty() || chosen.size() >= (std::size_t{1} << a.t))
    throw PreconditionFailed("H_T needs 1 <= |subset| < 2^t");
  SupportingHyperplane h;
  h.normal.assign(a.rows(), Integer(0));
  for (auto j : chosen) {
    if (j >= a.cols()) throw IndexOutOfRange("vertex " + std::to_string(j));
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (sgn(a.matrix(r, j)) != 0) h.normal[r] = 1;
  }
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (sgn(h.normal[r]) != 0) h.family.push_back(colex_unrank(a.n, a.t, r));
  h.rhs = Integer(static_cast<unsigned long>(binomial(a.k, a.t)));
  if (h.family.size() > chosen.size() * binomial(a.k, a.t)) throw Error("|T| exceeds l*C(k,t)");
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Integer v = 0;
    for (std::size_t r = 0; r < a.rows(); ++r) v += h.normal[r] * a.matrix(r, j);
    const bool is_chosen = std::find(chosen.begin(), chosen.end(), j) != chosen.end();
    if (is_chosen && v != h.rhs) throw Error("chosen vertex off H_T");
    if (v > h.rhs) throw Error("vertex above H_T");
    if (v < h.rhs) ++h.strictly_below;
  }
  if (h.strictly_below == 0) throw Error("H_T contains every vertex");
  return h;
}

// ------------------------------------------------------ triangulation

struct Triangulation {
  std::size_t dim = 0;
  std::vector<std::vector<std::size_t>> simplices;  // sorted point indices
};

namespace detail {

// Rows on which the given integer vectors (as columns) have full rank.
inline std::vector<std::size_t> independent_rows(const std::vector<IntVector>& vecs, std::size_t ambient) {
  if (vecs.empty()) return {};
  const HnfResult h = hnf(IntMatrix::from_columns(vecs, ambient));
  if (h.rank != vecs.size()) throw Error("vectors are dependent");
  std::vector<std::size_t> rows(h.pivot_rows.begin(), h.pivot_rows.end());
  return rows;
}

inline IntVector diff(const IntVector& a, const IntVector& b) {
  IntVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

inline Integer det_on_rows(const std::vector<IntVector>& cols, const std::vector<std::size_t>& rows) {
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows.size(); ++r) m(r, c) = cols[c][rows[r]];
  return det(m);
}

}  // namespace detail

// Placing triangulation: points are inserted in `order` (default 0..m-1).  A
// point off the current affine hull is coned over every simplex; a point in
// the hull is coned over the boundary facets that strictly separate it from
// the rest of the hull.  Points in the current hull are skipped.
inline Triangulation placing_triangulation(const PointConfig& cfg, std::vector<std::size_t> order = {},
                                           const Budgets& budgets = {}) {
  if (order.empty()) {
    order.resize(cfg.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
  }
  Triangulation tri;
  if (cfg.size() == 0) return tri;
  std::vector<IntVector> pts;
  for (std::size_t j = 0; j < cfg.size(); ++j) pts.push_back(cfg.point(j));

  const std::size_t origin = order.front();
  std::vector<IntVector> hull_dirs;  // affinely independent differences from origin
  std::vector<std::size_t> rows;     // coordinates for orientation tests in the current hull
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> facets;  // facet -> opposite vertices

  auto add_simplex = [&](std::vector<std::size_t> s) {
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::vector<std::size_t> f = s;
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
      facets[f].push_back(s[i]);
    }
    if (tri.simplices.size() >= budgets.volume_simplices)
      throw BudgetExceeded("triangulation exceeds " + std::to_string(budgets.volume_simplices) + " simplices");
    tri.simplices.push_back(std::move(s));
  };
  // Sign of the oriented volume of facet f with apex q in the current hull.
  auto side = [&](const std::vector<std::size_t>& f, const IntVector& q) {
    std::vector<IntVector> cols;
    for (std::size_t i = 1; i < f.size(); ++i) cols.push_back(detail::diff(pts[f[i]], pts[f[0]]));
    cols.push_back(detail::diff(q, pts[f[0]]));
    return sgn(detail::det_on_rows(cols, rows));
  };

  add_simplex({origin});
  for (std::size_t step = 1; step < order.size(); ++step) {
    const std::size_t p = order[step];
    const IntVector dp = detail::diff(pts[p], pts[origin]);
    std::vector<IntVector> trial = hull_dirs;
    trial.push_back(dp);
    if (rank_q(IntMatrix::from_columns(trial, cfg.ambient())) > hull_dirs.size()) {
      hull_dirs = std::move(trial);
      rows = detail::independent_rows(hull_dirs, cfg.ambient());
      auto old = std::move(tri.simplices);
      tri.simplices.clear();
      facets.clear();
      for (auto& s : old) {
        s.push_back(p);
        add_simplex(std::move(s));
      }
      continue;
    }
    std::vector<std::vector<std::size_t>> fresh;
    for (const auto& [f, opp] : facets) {
      if (opp.size() != 1) continue;
      const int sp = side(f, pts[p]);
      if (sp != 0 && sp == -side(f, pts[opp[0]])) {
        auto s = f;
        s.push_back(p);
        fresh.push_back(std::move(s));
      }
    }
    for (auto& s : fresh) add_simplex(std::move(s));
  }
  tri.dim = hull_dirs.size();
  return tri;
}

enum class VolumeLattice { Euclidean, Column };

inline const char* lattice_name(VolumeLattice l) { return l == VolumeLattice::Euclidean ? "euclidean" : "column"; }

// Basis of the lattice used to normalize volume: (direction space) ∩ Z^N, or
// the lattice spanned by all differences of points.
inline LatticeBasis volume_lattice(const PointConfig& cfg, VolumeLattice which) {
  std::vector<IntVector> diffs;
  for (std::size_t j = 1; j < cfg.size(); ++j) diffs.push_back(detail::diff(cfg.point(j), cfg.point(0)));
  if (diffs.empty()) return {cfg.ambient(), {}};
  const IntMatrix d = IntMatrix::from_columns(diffs, cfg.ambient());
  if (which == VolumeLattice::Column) return column_lattice_basis(d);
  // Saturation: the integer kernel of the annihilator of the differences.
  const LatticeBasis annihilator = kernel_basis(d.transpose());
  if (annihilator.basis_vectors.empty()) {
    LatticeBasis full{cfg.ambient(), {}};
    for (std::size_t i = 0; i < cfg.ambient(); ++i) {
      IntVector e(cfg.ambient(), 0);
      e[i] = 1;
      full.basis_vectors.push_back(e);
    }
    return full;
  }
  return kernel_basis(IntMatrix::from_rows(annihilator.basis_vectors, cfg.ambient()));
}

struct VolumeResult {
  Integer volume;
  std::size_t simplices = 0;
  std::size_t dim = 0;
};

// Sum over the simplices of |det| of their edge vectors in a basis of the
// chosen lattice; each term is checked to be an integer.
inline VolumeResult normalized_volume(const PointConfig& cfg, const Triangulation& tri, VolumeLattice which) {
  const LatticeBasis lat = volume_lattice(cfg, which);
  if (lat.rank() != tri.dim) throw Error("lattice rank differs from the affine dimension");
  VolumeResult out{0, tri.simplices.size(), tri.dim};
  if (tri.dim == 0) {
    out.volume = 1;
    return out;
  }
  const auto rows = detail::independent_rows(lat.basis_vectors, cfg.ambient());
  const Integer unit = abs(detail::det_on_rows(lat.basis_vectors, rows));
  for (const auto& s : tri.simplices) {
    std::vector<IntVector> edges;
    for (std::size_t i = 1; i < s.size(); ++i) edges.push_back(detail::diff(cfg.point(s[i]), cfg.point(s[0])));
    const Integer d = abs(detail::det_on_rows(edges, rows));
    if (!mpz_divisible_p(d.get_mpz_t(), unit.get_mpz_t())) throw Error("simplex volume not integral in the lattice");
    out.volume += d / unit;
  }
  return out;
}

inline VolumeResult normalized_volume(const PointConfig& cfg, VolumeLattice which, const Budgets& budgets = {}) {
  return normalized_volume(cfg, placing_triangulation(cfg, {}, budgets), which);
}

// Cover check: random strictly positive combinations of all points must lie
// in exactly one simplex.  Returns the number of samples that did.
inline std::size_t spot_check_cover(const PointConfig& cfg, const Triangulation& tri, std::size_t samples,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> weight(1, 1'000'000);
  std::vector<IntVector> pts;
  for (std::size_t j = 0; j < cfg.size(); ++j) pts.push_back(cfg.point(j));
  std::vector<IntVector> dirs;
  for (std::size_t j = 1; j < pts.size(); ++j) dirs.push_back(detail::diff(pts[j], pts[0]));
  const HnfResult h = hnf(IntMatrix::from_columns(dirs, cfg.ambient()));
  const std::vector<std::size_t> rows(h.pivot_rows.begin(), h.pivot_rows.end());
  const std::size_t d = rows.size();
  std::size_t good = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    RatVector x(d, Rational(0));
    Integer total = 0;
    for (const auto& p : pts) {
      const long w = weight(rng);
      total += w;
      for (std::size_t r = 0; r < d; ++r) x[r] += Rational(w) * p[rows[r]];
    }
    for (auto& v : x) v /= total;
    std::size_t hits = 0;
    for (const auto& s : tri.simplices) {
      // Barycentric coordinates: solve [v_1-v_0 ... v_d-v_0] l = x - v_0.
      RatMatrix m(d, d + 1);
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) m(r, c) = pts[s[c + 1]][rows[r]] - pts[s[0]][rows[r]];
      for (std::size_t r = 0; r < d; ++r) m(r, d) = x[r] - pts[s[0]][rows[r]];
      for (std::size_t c = 0; c < d; ++c) {
        std::size_t p = c;
        while (sgn(m(p, c)) == 0) ++p;
        m.swap_rows(p, c);
        for (std::size_t r = 0; r < d; ++r) {
          if (r == c || sgn(m(r, c)) == 0) continue;
          const Rational q = m(r, c) / m(c, c);
          for (std::size_t j = c; j <= d; ++j) m(r, j) -= q * m(c, j);
        }
      }
      Rational rest = 1;
      bool inside = true;
      for (std::size_t c = 0; c < d && inside; ++c) {
        const Rational l = m(c, d) / m(c, c);
        inside = sgn(l) >= 0;
        rest -= l;
      }
      if (inside && sgn(rest) >= 0) ++hits;
    }
    good += hits == 1;
  }
  return good;
}

}  // namespace itoric
