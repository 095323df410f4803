#pragma once

#include <deque>
#include <map>
#include <vector>

#include "itoric/config.hpp"
#include "itoric/toric/binomial.hpp"

namespace itoric {

struct Fiber {
  IntMatrix matrix;
  IntVector target;
  std::vector<Exponents> points;  // colex-lexicographic order of discovery
};

// All u >= 0 with A u = b, by backtracking over columns.  A must be
// non-negative without zero columns, so the fiber is finite.
inline Fiber fiber_enumerate(const IntMatrix& a, const IntVector& b, const Budgets& budgets = {}) {
  if (b.size() != a.rows()) throw DimensionMismatch("target length");
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<long> entry(m * n);
  for (std::size_t j = 0; j < n; ++j) {
    bool nonzero = false;
    for (std::size_t r = 0; r < m; ++r) {
      if (sgn(a(r, j)) < 0) throw PreconditionFailed("fiber enumeration needs a non-negative matrix");
      entry[j * m + r] = a(r, j).get_si();
      nonzero |= entry[j * m + r] != 0;
    }
    if (!nonzero) throw PreconditionFailed("zero column gives an infinite fiber");
  }
  std::vector<long> rest(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (sgn(b[r]) < 0) return {a, b, {}};
    rest[r] = b[r].get_si();
  }
  // last[r]: the last column touching row r; past it the row must be settled.
  std::vector<std::ptrdiff_t> last(m, -1);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < m; ++r)
      if (entry[j * m + r]) last[r] = static_cast<std::ptrdiff_t>(j);

  Fiber f{a, b, {}};
  Exponents u(n, 0);
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == n) {
      if (std::all_of(rest.begin(), rest.end(), [](long x) { return x == 0; })) {
        if (f.points.size() >= budgets.fiber_points)
          throw BudgetExceeded("fiber exceeds " + std::to_string(budgets.fiber_points) + " points");
        f.points.push_back(u);
      }
      return;
    }
    long hi = -1;
    for (std::size_t r = 0; r < m; ++r)
      if (entry[j * m + r]) {
        const long q = rest[r] / entry[j * m + r];
        hi = hi < 0 ? q : std::min(hi, q);
      }
    for (long x = hi; x >= 0; --x) {
      bool ok = true;
      for (std::size_t r = 0; r < m; ++r) {
        rest[r] -= x * entry[j * m + r];
        if (last[r] == static_cast<std::ptrdiff_t>(j) && rest[r] != 0) ok = false;
      }
      u[j] = static_cast<int>(x);
      if (ok) self(self, j + 1);
      for (std::size_t r = 0; r < m; ++r) rest[r] += x * entry[j * m + r];
    }
    u[j] = 0;
  };
  rec(rec, 0);
  return f;
}

// Connectivity of the fiber graph with moves u -> u +- (b+ - b-) kept >= 0.
inline bool is_markov_on_fiber(const std::vector<Binomial>& moves, const Fiber& f) {
  if (f.points.size() <= 1) return true;
  std::map<Exponents, std::size_t> index;
  for (std::size_t i = 0; i < f.points.size(); ++i) index.emplace(f.points[i], i);
  std::vector<bool> seen(f.points.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const Exponents& u = f.points[queue.front()];
    queue.pop_front();
    for (const auto& mv : moves)
      for (int sign : {1, -1}) {
        const Exponents& take = sign > 0 ? mv.plus : mv.minus;
        const Exponents& give = sign > 0 ? mv.minus : mv.plus;
        Exponents w = u;
        bool ok = true;
        for (std::size_t i = 0; i < w.size() && ok; ++i) {
          w[i] += give[i] - take[i];
          ok = w[i] >= 0;
        }
        if (!ok) continue;
        const auto it = index.find(w);
        if (it == index.end()) throw Error("move left the fiber; binomial outside the kernel");
        if (!seen[it->second]) {
          seen[it->second] = true;
          ++reached;
          queue.push_back(it->second);
        }
      }
  }
  return reached == f.points.size();
}

inline bool is_markov_on_fiber(const BinomialBasis& m, const Fiber& f) { return is_markov_on_fiber(m.elements, f); }

}  // namespace itoric
