#pragma once

#include <optional>
#include <vector>

#include "itoric/exactmath/matrix.hpp"

namespace itoric {

enum class Relation { Le, Eq, Ge };
enum class Sense { Minimize, Maximize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpConstraint {
  RatVector a;
  Relation rel;
  Rational b;
};

// Variables are free unless a constraint says otherwise.  An empty objective
// (all zeros) turns the solve into a pure feasibility test.
struct RationalLpProblem {
  RatVector objective;
  std::vector<LpConstraint> constraints;
  Sense sense = Sense::Maximize;

  std::size_t dim() const { return objective.size(); }
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RatVector point;         // Optimal: an optimal vertex
  RatVector farkas;        // Infeasible: one multiplier per constraint
  Rational objective_value;
};

inline Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

inline bool satisfies(const LpConstraint& c, const RatVector& x) {
  const Rational v = dot(c.a, x);
  switch (c.rel) {
    case Relation::Le: return v <= c.b;
    case Relation::Ge: return v >= c.b;
    case Relation::Eq: return v == c.b;
  }
  return false;
}

inline bool verify_point(const RationalLpProblem& p, const RatVector& x) {
  if (x.size() != p.dim()) return false;
  for (const auto& c : p.constraints)
    if (!satisfies(c, x)) return false;
  return true;
}

// y certifies infeasibility when sum y_i a_i = 0, sum y_i b_i > 0, y_i >= 0 on
// >= rows and y_i <= 0 on <= rows.
inline bool verify_farkas(const RationalLpProblem& p, const RatVector& y) {
  if (y.size() != p.constraints.size()) return false;
  RatVector comb(p.dim(), Rational(0));
  Rational rhs = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto& c = p.constraints[i];
    if (c.rel == Relation::Ge && sgn(y[i]) < 0) return false;
    if (c.rel == Relation::Le && sgn(y[i]) > 0) return false;
    if (sgn(y[i]) == 0) continue;
    for (std::size_t j = 0; j < p.dim(); ++j) comb[j] += y[i] * c.a[j];
    rhs += y[i] * c.b;
  }
  for (const auto& v : comb)
    if (sgn(v) != 0) return false;
  return sgn(rhs) > 0;
}

namespace detail {

// Dense two-phase primal simplex on  min c.x, A x = b, x >= 0, b >= 0, with
// Bland's rule for both the entering and the leaving variable.
class Simplex {
 public:
  Simplex(const std::vector<RatVector>& a, const RatVector& b, const RatVector& c)
      : m_(a.size()), n_(c.size()), cost_(c) {
    width_ = n_ + m_ + 1;  // structural, artificial, rhs
    t_.assign(m_, RatVector(width_, Rational(0)));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = a[i][j];
      t_[i][n_ + i] = 1;
      t_[i][width_ - 1] = b[i];
      basis_.push_back(n_ + i);
    }
  }

  LpStatus run() {
    // Phase one: minimize the artificial sum.
    RatVector phase1(n_ + m_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) phase1[n_ + i] = 1;
    load_objective(phase1);
    if (iterate(n_ + m_) != LpStatus::Optimal) throw Error("phase one unbounded");
    if (sgn(z_[width_ - 1]) != 0) return LpStatus::Infeasible;
    expel_artificials();
    RatVector phase2(n_ + m_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) phase2[j] = cost_[j];
    load_objective(phase2);
    return iterate(n_);
  }

  RatVector solution() const {
    RatVector x(n_, Rational(0));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < n_) x[basis_[i]] = t_[i][width_ - 1];
    return x;
  }

 private:
  void load_objective(const RatVector& c) {
    z_.assign(width_, Rational(0));
    for (std::size_t j = 0; j < c.size(); ++j) z_[j] = c[j];
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rational cb = c[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < width_; ++j) z_[j] -= cb * t_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t col) {
    const Rational p = t_[r][col];
    for (auto& v : t_[r]) v /= p;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || sgn(t_[i][col]) == 0) continue;
      const Rational f = t_[i][col];
      for (std::size_t j = 0; j < width_; ++j)
        if (sgn(t_[r][j]) != 0) t_[i][j] -= f * t_[r][j];
    }
    if (sgn(z_[col]) != 0) {
      const Rational f = z_[col];
      for (std::size_t j = 0; j < width_; ++j)
        if (sgn(t_[r][j]) != 0) z_[j] -= f * t_[r][j];
    }
    basis_[r] = col;
  }

  // Columns >= limit may not enter (artificials in phase two).
  LpStatus iterate(std::size_t limit) {
    while (true) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (sgn(z_[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == limit) return LpStatus::Optimal;
      std::size_t leave = t_.size();
      Rational best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i][width_ - 1] / t_[i][enter];
        if (leave == t_.size() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t_.size()) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }

  void expel_artificials() {
    for (std::size_t i = 0; i < t_.size();) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(t_[i][j]) != 0) {
          col = j;
          break;
        }
      if (col == n_) {  // redundant row
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      pivot(i, col);
      ++i;
    }
  }

  std::size_t m_, n_, width_;
  RatVector cost_;
  std::vector<RatVector> t_;
  RatVector z_;
  std::vector<std::size_t> basis_;
};

inline bool is_nonneg_bound(const LpConstraint& c, std::size_t& var) {
  if (sgn(c.b) != 0 || c.rel == Relation::Eq) return false;
  std::size_t found = c.a.size();
  for (std::size_t j = 0; j < c.a.size(); ++j) {
    if (sgn(c.a[j]) == 0) continue;
    if (found != c.a.size()) return false;
    found = j;
  }
  if (found == c.a.size()) return false;
  const int s = sgn(c.a[found]);
  if ((c.rel == Relation::Ge && s > 0) || (c.rel == Relation::Le && s < 0)) {
    var = found;
    return true;
  }
  return false;
}

// Solves without producing a Farkas vector.
inline LpResult solve_primal(const RationalLpProblem& p) {
  const std::size_t n = p.dim();
  std::vector<bool> nonneg(n, false);
  std::vector<const LpConstraint*> rows;
  for (const auto& c : p.constraints) {
    if (c.a.size() != n) throw DimensionMismatch("constraint length differs from objective");
    std::size_t var;
    if (is_nonneg_bound(c, var))
      nonneg[var] = true;
    else
      rows.push_back(&c);
  }
  // Column layout: one column per nonneg variable, two per free variable,
  // then one slack per inequality row.
  std::vector<std::size_t> pos(n), neg(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos[j] = cols++;
    if (!nonneg[j]) neg[j] = cols++;
  }
  const std::size_t structural = cols;
  for (const auto* c : rows)
    if (c->rel != Relation::Eq) ++cols;

  std::vector<RatVector> a;
  RatVector b;
  std::size_t slack = structural;
  for (const auto* c : rows) {
    RatVector row(cols, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      row[pos[j]] = c->a[j];
      if (neg[j] != SIZE_MAX) row[neg[j]] = -c->a[j];
    }
    if (c->rel == Relation::Le) row[slack++] = 1;
    if (c->rel == Relation::Ge) row[slack++] = -1;
    Rational rhs = c->b;
    if (sgn(rhs) < 0) {
      for (auto& v : row) v = -v;
      rhs = -rhs;
    }
    a.push_back(std::move(row));
    b.push_back(rhs);
  }
  RatVector cost(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    const Rational cj = p.sense == Sense::Maximize ? Rational(-p.objective[j]) : p.objective[j];
    cost[pos[j]] = cj;
    if (neg[j] != SIZE_MAX) cost[neg[j]] = -cj;
  }

  Simplex s(a, b, cost);
  LpResult res;
  res.status = s.run();
  if (res.status != LpStatus::Optimal) return res;
  const RatVector y = s.solution();
  res.point.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    res.point[j] = y[pos[j]];
    if (neg[j] != SIZE_MAX) res.point[j] -= y[neg[j]];
  }
  res.objective_value = dot(p.objective, res.point);
  return res;
}

}  // namespace detail

// Exact LP.  Optimal results carry a verified point; infeasible results carry
// a verified Farkas multiplier vector found by a second, always-feasible LP.
inline LpResult lp_feasible(const RationalLpProblem& p) {
  LpResult res = detail::solve_primal(p);
  if (res.status == LpStatus::Optimal) {
    if (!verify_point(p, res.point)) throw Error("LP point failed verification");
    return res;
  }
  if (res.status == LpStatus::Unbounded) return res;

  const std::size_t m = p.constraints.size(), n = p.dim();
  RationalLpProblem dual;
  dual.objective.assign(m, Rational(0));
  dual.sense = Sense::Minimize;
  for (std::size_t i = 0; i < m; ++i) {
    const Relation r = p.constraints[i].rel;
    if (r == Relation::Eq) continue;
    RatVector e(m, Rational(0));
    e[i] = 1;
    dual.constraints.push_back({e, r == Relation::Ge ? Relation::Ge : Relation::Le, Rational(0)});
  }
  for (std::size_t j = 0; j < n; ++j) {
    RatVector row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = p.constraints[i].a[j];
    dual.constraints.push_back({row, Relation::Eq, Rational(0)});
  }
  RatVector rhs(m);
  for (std::size_t i = 0; i < m; ++i) rhs[i] = p.constraints[i].b;
  dual.constraints.push_back({rhs, Relation::Eq, Rational(1)});
  LpResult cert = detail::solve_primal(dual);
  if (cert.status != LpStatus::Optimal || !verify_farkas(p, cert.point))
    throw Error("infeasible LP without a Farkas certificate");
  res.farkas = cert.point;
  return res;
}

}  // namespace itoric
