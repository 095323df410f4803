#pragma once

#include <cstdint>

#include "itoric/combinat.hpp"
#include "itoric/exactmath/normal_form.hpp"

namespace itoric {

struct MinorsGcd {
  Integer gcd;                  // gcd of the enumerated minors (0 if all vanish)
  std::uint64_t enumerated = 0;
  std::uint64_t total = 0;
  bool complete = false;
};

inline std::uint64_t minor_count(const IntMatrix& m, std::size_t size) {
  return binomial(static_cast<int>(m.rows()), static_cast<int>(size)) *
         binomial(static_cast<int>(m.cols()), static_cast<int>(size));
}

// Minors with linear index in [first, first + count).  Index = row_rank *
// C(cols, size) + col_rank, both ranks colex.  Chunks merge by gcd.
inline Integer gcd_minors_chunk(const IntMatrix& m, std::size_t size, std::uint64_t first,
                                std::uint64_t count) {
  const int r = static_cast<int>(m.rows()), c = static_cast<int>(m.cols()), s = static_cast<int>(size);
  const std::uint64_t ncols = binomial(c, s);
  const std::uint64_t total = minor_count(m, size);
  if (first >= total || count == 0) return 0;
  Subset rs = colex_unrank(r, s, first / ncols);
  Subset cs = colex_unrank(c, s, first % ncols);
  std::vector<std::size_t> ri(size), ci(size);
  Integer g = 0;
  for (std::uint64_t done = 0; done < count && first + done < total; ++done) {
    for (std::size_t i = 0; i < size; ++i) {
      ri[i] = static_cast<std::size_t>(rs[i] - 1);
      ci[i] = static_cast<std::size_t>(cs[i] - 1);
    }
    const Integer d = det(m.select_rows(ri).select_columns(ci));
    if (sgn(d) != 0) g = gcd(g, d);
    if (!next_colex(cs, c)) {
      cs = colex_unrank(c, s, 0);
      next_colex(rs, r);
    }
  }
  return g;
}

inline MinorsGcd gcd_maximal_minors(const IntMatrix& m, std::size_t size, std::uint64_t budget) {
  if (size > std::min(m.rows(), m.cols())) throw BadParameters("minor size exceeds matrix shape");
  MinorsGcd out;
  out.total = minor_count(m, size);
  out.enumerated = std::min(out.total, budget);
  out.gcd = gcd_minors_chunk(m, size, 0, out.enumerated);
  out.complete = out.enumerated == out.total;
  return out;
}

}  // namespace itoric
