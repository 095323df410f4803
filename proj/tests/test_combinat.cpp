#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "itoric/combinat.hpp"

using namespace itoric;

TEST_CASE("colex order of pairs and triples of [4]") {
  CHECK(colex_unrank(4, 2, 0) == Subset{1, 2});
  CHECK(colex_unrank(4, 2, 1) == Subset{1, 3});
  CHECK(colex_unrank(4, 2, 2) == Subset{2, 3});
  CHECK(colex_unrank(4, 2, 3) == Subset{1, 4});
  CHECK(colex_unrank(4, 2, 5) == Subset{3, 4});
  CHECK(colex_unrank(4, 3, 3) == Subset{2, 3, 4});
  CHECK_THROWS_AS(colex_unrank(4, 2, 6), RankOutOfRange);
}

TEST_CASE("colex rank and unrank are inverse") {
  for (int n = 0; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto all = all_subsets(n, k);
      REQUIRE(all.size() == binomial(n, k));
      for (std::uint64_t r = 0; r < all.size(); ++r) {
        CHECK(colex_rank(all[r]) == r);
        CHECK(colex_unrank(n, k, r) == all[r]);
      }
    }
}

TEST_CASE("colex order compares largest elements first") {
  // Brute-force oracle: compare reversed tuples lexicographically.
  auto all = all_subsets(7, 3);
  auto sorted = all;
  std::sort(sorted.begin(), sorted.end(), [](Subset a, Subset b) {
    std::reverse(a.begin(), a.end());
    std::reverse(b.begin(), b.end());
    return a < b;
  });
  CHECK(all == sorted);
}

TEST_CASE("subset labels") {
  CHECK(subset_label({1, 3, 6}, 6) == "136");
  CHECK(subset_label({1, 3, 10}, 10) == "1,3,10");
  CHECK(parse_subset_label("631") == Subset{1, 3, 6});
  CHECK(parse_subset_label("1,3,10") == Subset{1, 3, 10});
}

namespace {

std::size_t brute_derangement_count(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
  std::size_t count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < n; ++i) ok = ok && p[static_cast<std::size_t>(i)] != i + 1;
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

}  // namespace

TEST_CASE("derangement counts") {
  const auto d2 = derangements(2);
  REQUIRE(d2.size() == 1);
  CHECK(d2[0].images == std::vector<int>{2, 1});
  CHECK(derangements(4).size() == brute_derangement_count(4));
  CHECK(derangements(4).size() == 9);
  CHECK(derangements(6).size() == brute_derangement_count(6));
  CHECK(derangements(6).size() == 265);
}

TEST_CASE("derangement recurrence and structure") {
  std::vector<std::size_t> d(10, 0);
  d[2] = 1;
  d[3] = 2;
  for (int n = 2; n <= 9; ++n) {
    std::size_t count = 0;
    std::vector<int> prev;
    for_each_derangement(n, [&](const Derangement& s) {
      ++count;
      for (int i = 1; i <= n; ++i) CHECK(s(i) != i);
      std::vector<int> seen;
      for (const auto& c : s.cycles) seen.insert(seen.end(), c.begin(), c.end());
      std::sort(seen.begin(), seen.end());
      CHECK(seen.size() == static_cast<std::size_t>(n));
      CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
      CHECK(prev < s.images);  // lexicographic, no repeats
      prev = s.images;
    });
    if (n >= 4) d[static_cast<std::size_t>(n)] = static_cast<std::size_t>(n - 1) * (d[static_cast<std::size_t>(n - 1)] + d[static_cast<std::size_t>(n - 2)]);
    CHECK(count == d[static_cast<std::size_t>(n)]);
  }
}

TEST_CASE("cycle statistics") {
  CHECK(cycle_stats(derangement_from_cycles(5, {{1, 2}, {3, 4, 5}})) == std::pair{2, 1});
  CHECK(cycle_stats(derangement_from_cycles(6, {{1, 2, 3, 4, 5, 6}})) == std::pair{1, 0});
  CHECK(cycle_stats(derangement_from_cycles(6, {{1, 2}, {3, 4}, {5, 6}})) == std::pair{3, 3});
  const auto d = derangement_from_cycles(5, {{3, 5, 4}, {2, 1}});
  CHECK(d.cycles == std::vector<std::vector<int>>{{1, 2}, {3, 5, 4}});
  CHECK_THROWS_AS(derangement_from_cycles(3, {{1, 2}}), BadParameters);
}

TEST_CASE("permutation signs") {
  CHECK(permutation_sign({2, 1}) == -1);
  CHECK(permutation_sign({2, 3, 1}) == 1);
  CHECK(permutation_sign({2, 1, 4, 3}) == 1);
}

TEST_CASE("standard two-row tableaux") {
  const auto t21 = standard_two_row_tableaux(2, 1);
  REQUIRE(t21.size() == 1);
  CHECK(t21[0].top_row == std::vector<int>{1});
  CHECK(t21[0].bottom_row == std::vector<int>{2});
  CHECK(standard_two_row_tableaux(4, 2).size() == 2);
  CHECK(standard_two_row_tableaux(3, 1).size() == 2);
  // Hook-length counts f^(n-s,s) = C(n,s) - C(n,s-1).
  for (int n = 2; n <= 9; ++n)
    for (int s = 0; 2 * s <= n; ++s) {
      const auto all = standard_two_row_tableaux(n, s);
      CHECK(all.size() == binomial(n, s) - (s ? binomial(n, s - 1) : 0));
      std::set<std::vector<int>> distinct;
      for (const auto& t : all) {
        CHECK(is_standard(t));
        distinct.insert(t.top_row);
      }
      CHECK(distinct.size() == all.size());
    }
  CHECK_THROWS_AS(standard_two_row_tableaux(3, 2), BadParameters);
}
