#pragma once

#include <optional>
#include <vector>

#include "itoric/exactmath/matrix.hpp"
#include "itoric/exactmath/normal_form.hpp"

namespace itoric {

struct LatticeBasis {
  std::size_t ambient_dim = 0;
  std::vector<IntVector> basis_vectors;

  std::size_t rank() const { return basis_vectors.size(); }
  IntMatrix as_columns() const {
    return IntMatrix::from_columns(basis_vectors, ambient_dim);
  }
};

// Reduced basis of the lattice generated by the columns of b (HNF columns).
inline LatticeBasis column_lattice_basis(const IntMatrix& b) {
  HnfResult r = hnf(b);
  LatticeBasis out{b.rows(), {}};
  for (std::size_t j = 0; j < r.rank; ++j) out.basis_vectors.push_back(r.h.column(j));
  return out;
}

// ker_Z(m), saturated.  Columns of u past the rank span the kernel because u
// is unimodular; the result is then put in HNF so it is canonical.
inline LatticeBasis kernel_basis(const IntMatrix& m) {
  HnfResult r = hnf(m);
  const std::size_t n = m.cols();
  std::vector<IntVector> raw;
  for (std::size_t j = r.rank; j < n; ++j) raw.push_back(r.u.column(j));
  if (raw.empty()) return {n, {}};
  LatticeBasis out = column_lattice_basis(IntMatrix::from_columns(raw, n));
  for (const auto& b : out.basis_vectors)
    if (!is_zero<Integer>(m.apply(b))) throw Error("kernel basis vector not in kernel");
  for (const auto& d : smith_invariants(out.as_columns()))
    if (d != 1) throw Error("kernel basis is not saturated");
  return out;
}

// Repeated membership queries against the Z-span of a generating set; the
// generators need not be independent.
class LatticeSolver {
 public:
  LatticeSolver(std::size_t ambient_dim, const std::vector<IntVector>& generators)
      : ambient_(ambient_dim),
        gens_(IntMatrix::from_columns(generators, ambient_dim)),
        hnf_(hnf(gens_)) {}

  explicit LatticeSolver(const LatticeBasis& b)
      : LatticeSolver(b.ambient_dim, b.basis_vectors) {}

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t generator_count() const { return gens_.cols(); }
  std::size_t rank() const { return hnf_.rank; }

  LatticeBasis reduced_basis() const {
    LatticeBasis out{ambient_, {}};
    for (std::size_t j = 0; j < hnf_.rank; ++j) out.basis_vectors.push_back(hnf_.h.column(j));
    return out;
  }

  // Coefficients c on the generators with sum c_i g_i = v, or nothing.
  std::optional<IntVector> solve(const IntVector& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("lattice vector length");
    const IntMatrix& h = hnf_.h;
    IntVector y(gens_.cols(), Integer(0));
    for (std::size_t j = 0; j < hnf_.rank; ++j) {
      const std::size_t r = hnf_.pivot_rows[j];
      Integer s = v[r];
      for (std::size_t l = 0; l < j; ++l)
        if (sgn(y[l]) != 0) s -= h(r, l) * y[l];
      if (!mpz_divisible_p(s.get_mpz_t(), h(r, j).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[j].get_mpz_t(), s.get_mpz_t(), h(r, j).get_mpz_t());
    }
    if (h.apply(y) != v) return std::nullopt;
    IntVector c = hnf_.u.apply(y);
    if (gens_.apply(c) != v) throw Error("lattice certificate failed to recompute");
    return c;
  }

  bool contains(const IntVector& v) const { return solve(v).has_value(); }

 private:
  std::size_t ambient_;
  IntMatrix gens_;
  HnfResult hnf_;
};

inline std::optional<IntVector> lattice_member(const LatticeBasis& basis, const IntVector& v) {
  if (v.size() != basis.ambient_dim) throw DimensionMismatch("lattice vector length");
  return LatticeSolver(basis).solve(v);
}

// Every generator of `inner` lies in span(outer).
inline bool lattice_contains(const LatticeBasis& outer, const LatticeBasis& inner) {
  if (outer.ambient_dim != inner.ambient_dim) throw DimensionMismatch("ambient dimensions");
  LatticeSolver s(outer);
  for (const auto& v : inner.basis_vectors)
    if (!s.contains(v)) return false;
  return true;
}

inline bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b) {
  return lattice_contains(a, b) && lattice_contains(b, a);
}

}  // namespace itoric
