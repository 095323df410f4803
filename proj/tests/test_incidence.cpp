#include <catch_amalgamated.hpp>

#include <set>

#include "itoric/incidence.hpp"

using namespace itoric;

TEST_CASE("A(4,3,2) matches the displayed matrix") {
  const auto a = build_matrix(4, 3, 2);
  const IntMatrix expected{{1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1},
                           {0, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}};
  CHECK(a.matrix == expected);
  CHECK(a.row_label(0) == "12");
  CHECK(a.row_label(5) == "34");
  CHECK(a.col_label(3) == "234");
}

TEST_CASE("row and column sums") {
  for (int n = 2; n <= 7; ++n)
    for (int k = 2; k <= n; ++k)
      for (int t = 1; t < k; ++t) {
        const auto a = build_matrix(n, k, t);
        for (std::size_t j = 0; j < a.cols(); ++j) {
          Integer s = 0;
          for (std::size_t i = 0; i < a.rows(); ++i) s += a.matrix(i, j);
          CHECK(s == binomial(k, t));
        }
        for (std::size_t i = 0; i < a.rows(); ++i) {
          Integer s = 0;
          for (std::size_t j = 0; j < a.cols(); ++j) s += a.matrix(i, j);
          CHECK(s == binomial(n - t, k - t));
        }
      }
  const auto a = build_matrix(6, 3, 2);
  CHECK(a.rows() == 15);
  CHECK(a.cols() == 20);
}

TEST_CASE("n = k gives a single column of ones") {
  const auto a = build_matrix(4, 4, 2);
  CHECK(a.cols() == 1);
  for (std::size_t i = 0; i < a.rows(); ++i) CHECK(a.matrix(i, 0) == 1);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_matrix(5, 2, 2), BadParameters);
  CHECK_THROWS_AS(build_matrix(5, 6, 2), BadParameters);
  CHECK_THROWS_AS(build_matrix(5, 3, 0), BadParameters);
  CHECK(build_matrix(4, 2, 2, true).matrix == IntMatrix::identity(6));
}

TEST_CASE("incidence complex of the octahedron") {
  std::vector<Subset> facets;
  for (int a : {1, 2})
    for (int b : {3, 4})
      for (int c : {5, 6}) facets.push_back({a, b, c});
  const SimplicialComplex oct(6, facets);
  const auto h = incidence_complex(oct, 1, 2);
  CHECK(h.vertex_labels.size() == 12);
  CHECK(h.complex.facets().size() == 8);
  for (const auto& f : h.complex.facets()) CHECK(f.size() == 3);
  CHECK(h.complex.dimension() == static_cast<int>(binomial(3, 2)) - 1);

  const auto same = incidence_complex(oct, 0, 2);
  CHECK(same.complex == oct);  // vertices 1..6 map to themselves
  const auto graph = incidence_complex(oct, 0, 1);
  CHECK(graph.complex.facets() == oct.faces(1));
}

TEST_CASE("incidence complex preconditions") {
  const SimplicialComplex mixed(4, {{1, 2, 3}, {3, 4}});
  CHECK_THROWS_AS(incidence_complex(mixed, 0, 1), NotPure);
  CHECK_THROWS_AS(incidence_complex(simplex(3), 1, 3), DimensionTooSmall);
}

TEST_CASE("transpose equals the incidence matrix of the simplex's incidence complex") {
  for (int n = 3; n <= 6; ++n)
    for (int k = 2; k <= n; ++k)
      for (int t = 1; t < k; ++t) {
        const auto a = build_matrix(n, k, t);
        const auto h = incidence_complex(simplex(n), t - 1, k - 1);
        // Rebuild the containment matrix from the complex's own facets.
        IntMatrix m(h.complex.facets().size(), h.vertex_labels.size());
        for (const auto& facet : h.complex.facets()) {
          std::set<int> kappa;
          for (int v : facet) {
            const auto& lab = h.vertex_labels[static_cast<std::size_t>(v - 1)];
            kappa.insert(lab.begin(), lab.end());
          }
          const std::size_t row = a.column_of(Subset(kappa.begin(), kappa.end()));
          for (int v : facet)
            m(row, static_cast<std::size_t>(colex_rank(h.vertex_labels[static_cast<std::size_t>(v - 1)]))) = 1;
        }
        CHECK(m == a.matrix.transpose());
        CHECK(h.complex.dimension() == static_cast<int>(binomial(k, t)) - 1);
      }
}

TEST_CASE("rank theorems up to n = 6") {
  const auto report = check_rank_theorems(6);
  for (const auto& e : report) {
    INFO("n=" << e.n << " k=" << e.k << " t=" << e.t);
    CHECK(e.rank_law_holds());
    CHECK(e.mod_p_law_holds());
  }
  const auto a = build_matrix(6, 3, 2).matrix;
  CHECK(rank_q(a) == 15);
  CHECK(rank_mod_p(a, 2) < 15);
  CHECK(rank_mod_p(a, 7) == 15);
}

TEST_CASE("mod-p law needs the factorial scaling when k - t >= 2") {
  // A(4,3,1) is 4x4 with rank 4 mod 2, yet min(k, n-t) = 3 >= 2: the law is
  // about the multiplication map 2 * A, which vanishes mod 2.
  const auto a = build_matrix(4, 3, 1);
  CHECK(rank_mod_p(a.matrix, 2) == 4);
  CHECK(rank_mod_p(lefschetz_matrix(a), 2) == 0);
  // For k = t + 1 the two matrices coincide.
  CHECK(lefschetz_matrix(build_matrix(6, 3, 2)) == build_matrix(6, 3, 2).matrix);
}

TEST_CASE("kernel is nontrivial exactly when C(n,t) < C(n,k)") {
  for (int n = 2; n <= 7; ++n)
    for (int k = 2; k <= n; ++k)
      for (int t = 1; t < k; ++t) {
        const auto a = build_matrix(n, k, t);
        const auto ker = kernel_basis(a.matrix);
        CHECK((ker.rank() > 0) == (binomial(n, t) < binomial(n, k)));
        if (binomial(n, t) < binomial(n, k)) CHECK(ker.rank() == binomial(n, k) - binomial(n, t));
      }
}
