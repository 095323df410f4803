#pragma once

#include <cstdint>
#include <vector>

#include "itoric/exactmath/matrix.hpp"

namespace itoric {

struct HnfResult {
  IntMatrix h;
  IntMatrix u;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // pivot_rows[j] is the pivot row of column j < rank
};

namespace detail {

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline int cmpabs(const Integer& a, const Integer& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

inline Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

// Column-style Hermite normal form: m * u = h, u unimodular.  h is lower
// staircase, pivots positive, entries left of a pivot lie in [0, pivot).
// Column operations follow Euclid on the smallest absolute entry, which keeps
// intermediate entries of u small on incidence-type inputs.
inline HnfResult hnf(const IntMatrix& m) {
  HnfResult res{m, IntMatrix::identity(m.cols()), 0, {}};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t piv = 0;

  auto col_op = [&](std::size_t dst, const Integer& q, std::size_t src) {
    h.axpy_column(dst, q, src);
    u.axpy_column(dst, q, src);
  };

  for (std::size_t i = 0; i < rows && piv < cols; ++i) {
    while (true) {
      std::size_t best = cols;
      for (std::size_t j = piv; j < cols; ++j) {
        if (sgn(h(i, j)) == 0) continue;
        if (best == cols || detail::cmpabs(h(i, j), h(i, best)) < 0) best = j;
      }
      if (best == cols) break;
      h.swap_columns(piv, best);
      u.swap_columns(piv, best);
      bool clean = true;
      for (std::size_t j = piv + 1; j < cols; ++j) {
        if (sgn(h(i, j)) == 0) continue;
        col_op(j, detail::trunc_div(h(i, j), h(i, piv)), piv);
        if (sgn(h(i, j)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (sgn(h(i, piv)) == 0) continue;
    if (sgn(h(i, piv)) < 0) {
      h.negate_column(piv);
      u.negate_column(piv);
    }
    for (std::size_t l = 0; l < piv; ++l) {
      Integer q = detail::floor_div(h(i, l), h(i, piv));
      if (sgn(q) != 0) col_op(l, q, piv);
    }
    res.pivot_rows.push_back(i);
    ++piv;
  }
  res.rank = piv;
  return res;
}

// Fraction-free Gaussian elimination (Bareiss).  Returns the rank and, for
// square input, the determinant through `det`.
inline std::size_t bareiss(IntMatrix a, Integer* det = nullptr) {
  const std::size_t rows = a.rows(), cols = a.cols();
  Integer prev = 1;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      a.swap_rows(p, r);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  if (det) {
    if (rows != cols) throw DimensionMismatch("determinant of a non-square matrix");
    *det = (r == rows) ? Integer(sign * prev) : Integer(0);
  }
  return r;
}

inline Integer det(const IntMatrix& m) {
  Integer d;
  bareiss(m, &d);
  return d;
}

inline std::size_t rank_q(const IntMatrix& m) { return bareiss(m); }

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
  if (!is_prime(p)) throw CompositeModulus(std::to_string(p) + " is not prime");
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Integer r;
      mpz_fdiv_r_ui(r.get_mpz_t(), m(i, j).get_mpz_t(), p);
      a[i * cols + j] = r.get_ui();
    }
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return a[i * cols + j]; };
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
  };
  auto inv = [&](std::uint64_t x) {
    std::uint64_t result = 1, e = p - 2;
    while (e) {
      if (e & 1) result = mulmod(result, x);
      x = mulmod(x, x);
      e >>= 1;
    }
    return result;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
    const std::uint64_t iv = inv(at(r, c));
    for (std::size_t j = c; j < cols; ++j) at(r, j) = mulmod(at(r, j), iv);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint64_t f = at(i, c);
      if (!f) continue;
      for (std::size_t j = c; j < cols; ++j)
        at(i, j) = (at(i, j) + p - mulmod(f, at(r, j))) % p;
    }
    ++r;
  }
  return r;
}

// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form.
inline std::vector<Integer> smith_invariants(IntMatrix a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<Integer> out;
  for (std::size_t t = 0; t < rows && t < cols; ++t) {
    while (true) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (sgn(a(i, j)) != 0 && (bi == rows || detail::cmpabs(a(i, j), a(bi, bj)) < 0)) {
            bi = i;
            bj = j;
          }
      if (bi == rows) return out;
      a.swap_rows(t, bi);
      a.swap_columns(t, bj);
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(a(i, t)) == 0) continue;
        Integer q = detail::trunc_div(a(i, t), a(t, t));
        for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
        if (sgn(a(i, t)) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(a(t, j)) == 0) continue;
        a.axpy_column(j, detail::trunc_div(a(t, j), a(t, t)), t);
        if (sgn(a(t, j)) != 0) dirty = true;
      }
      if (dirty) continue;
      // Pivot must divide the rest; otherwise fold an offending row in.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a(t, j) += a(bad, j);
    }
    out.push_back(abs(a(t, t)));
  }
  return out;
}

}  // namespace itoric
