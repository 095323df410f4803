#pragma once

#include <cstdint>

namespace itoric {

// Hard caps for every search that can blow up.  Exceeding one raises
// BudgetExceeded; nothing is ever truncated silently.  Defaults are sized so
// the whole acceptance suite fits on a laptop.
struct Budgets {
  std::uint64_t pair_queue = 5'000'000;      // S-pairs / completion pairs processed
  std::uint64_t basis_size = 200'000;        // elements held by a Groebner or Graver run
  std::uint64_t fiber_points = 2'000'000;    // points in one enumerated fiber
  std::uint64_t box_points = 50'000'000;     // box enumeration in primitivity / support scans
  std::uint64_t minor_sample = 1'000'000;    // minors enumerated by gcd_maximal_minors
  std::uint64_t volume_simplices = 5'000'000;  // simplices in one triangulation
  std::uint64_t face_lps = 200'000;          // LPs in one neighborliness run
  int derangement_n = 8;                     // largest n for exhaustive derangement scans
};

enum class OutputFormat { Json, Text };

struct RunConfig {
  Budgets budgets;
  OutputFormat format = OutputFormat::Json;
  unsigned workers = 1;
  bool meta = true;  // include the timestamp block in JSON output
};

}  // namespace itoric
