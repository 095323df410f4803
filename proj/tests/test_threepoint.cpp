#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>

#include "itoric/threepoint.hpp"

using namespace itoric;

namespace {

using E = EdgeVector;

// Unordered edge multiset {m, sigma(m)} of a permutation given as images.
std::multiset<std::pair<int, int>> edge_multiset(const std::vector<int>& img) {
  std::multiset<std::pair<int, int>> out;
  for (int m = 1; m <= static_cast<int>(img.size()); ++m) {
    const int s = img[static_cast<std::size_t>(m - 1)];
    out.insert({std::min(m, s), std::max(m, s)});
  }
  return out;
}

// Fixed-point-free permutations through std::next_permutation.
std::vector<std::vector<int>> derangements_by_filter(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int i = 1; i <= n; ++i) ok = ok && p[static_cast<std::size_t>(i - 1)] != i;
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Exponents p_mono(int n, std::initializer_list<std::pair<int, int>> edges) {
  Exponents e(binomial(n, 2), 0);
  for (auto [i, j] : edges) ++e[edge_index(i, j)];
  return e;
}

}  // namespace

TEST_CASE("edge vectors and phi") {
  CHECK(edge_index(1, 2) == 0);
  CHECK(edge_index(3, 1) == 1);
  CHECK(edge_index(2, 3) == 2);
  CHECK_THROWS_AS(edge_index(2, 2), BadParameters);
  CHECK_THROWS_AS(E::edge(3, 1, 4), IndexOutOfRange);

  const auto t = derangement_from_cycles(2, {{1, 2}});
  CHECK(phi(t) == 2 * E::edge(2, 1, 2));
  const auto c = derangement_from_cycles(3, {{1, 2, 3}});
  CHECK(phi(c) == E::triangle(3, 1, 2, 3));
  CHECK(phi(c).to_string() == "e12 + e13 + e23");

  for (int n = 2; n <= 6; ++n)
    for (const auto& d : derangements(n)) CHECK(phi(d).degree() == n);

  std::vector<int> cyc(7), inv(7);
  for (int i = 1; i <= 7; ++i) {
    cyc[static_cast<std::size_t>(i - 1)] = i % 7 + 1;
    inv[static_cast<std::size_t>(i % 7)] = i;
  }
  CHECK(phi(make_derangement(cyc)) == phi(make_derangement(inv)));
}

TEST_CASE("derangement counts") {
  CHECK(derangements(4).size() == 9);
  CHECK(derangements(5).size() == 44);
  CHECK(derangements(6).size() == 265);
  CHECK(derangements(7).size() == 1854);
}

TEST_CASE("fiber examples") {
  const auto a = derangement_from_cycles(5, {{1, 2}, {3, 4, 5}});
  CHECK(fiber(phi(a), 5).size() == 2);
  CHECK(fiber_size_formula(a) == 2);
  const auto b = derangement_from_cycles(4, {{1, 2}, {3, 4}});
  CHECK(fiber(phi(b), 4).size() == 1);
  CHECK(fiber_size_formula(b) == 1);
  const auto c = derangement_from_cycles(6, {{1, 2, 3, 4, 5, 6}});
  CHECK(fiber(phi(c), 6).size() == 2);
  CHECK(fiber_size_formula(c) == 2);
  CHECK_THROWS_AS(fiber(E(9), 9), BudgetExceeded);
  CHECK_THROWS_AS(fiber(E(5), 6), DimensionMismatch);
}

TEST_CASE("fiber sizes against an independent permutation scan") {
  for (int n = 2; n <= 6; ++n) {
    const auto all = derangements_by_filter(n);
    std::map<std::multiset<std::pair<int, int>>, std::size_t> count;
    for (const auto& p : all) ++count[edge_multiset(p)];
    std::size_t checked = 0;
    for (const auto& d : derangements(n)) {
      CHECK(count.at(edge_multiset(d.images)) == fiber_size_formula(d));
      ++checked;
    }
    CHECK(checked == all.size());
  }
}

TEST_CASE("triangle lattice membership") {
  const TriangleLattice c6(6);
  CHECK(c6.generator_count() == 20);
  CHECK(c6.reduced_basis().rank() == 15);

  const auto cert = c6.certificate(E::triangle(6, 1, 2, 3));
  REQUIRE(cert);
  CHECK(c6.verify(*cert, E::triangle(6, 1, 2, 3)));
  CHECK(coset_member(E::triangle(3, 1, 2, 3), 3));
  CHECK_FALSE(coset_member(E::edge(6, 1, 2), 6));

  // Every element of C_n has degree divisible by 3.
  for (int n : {5, 7}) {
    const TriangleLattice cn(n);
    for (const auto& d : derangements(n)) CHECK_FALSE(cn.contains(phi(d)));
  }
  CHECK_THROWS_AS(TriangleLattice(2), BadParameters);
}

TEST_CASE("transposition identities") {
  CHECK(transposition_identity_1(5, 1, 2, 3, 4, 5));
  CHECK(transposition_identity_2(7, 1, 2, 3, 4));
  const auto r = transposition_relations_check(7);
  CHECK(r.holds);
  CHECK(r.identity1_checked == 7 * 6 * 5 * 4 * 3);
  CHECK_THROWS_AS(transposition_identity_1(5, 1, 1, 3, 4, 5), PreconditionFailed);
  CHECK_THROWS_AS(transposition_identity_2(5, 1, 2, 2, 4), PreconditionFailed);
  CHECK_THROWS_AS(transposition_relations_check(4), PreconditionFailed);

  // Breaking one sign must break the identity.
  const E lhs = E::edge(5, 3, 1) + E::edge(5, 2, 4);
  const E wrong = E::edge(5, 3, 2) + E::edge(5, 1, 4) + E::triangle(5, 3, 1, 5) + E::triangle(5, 2, 4, 5) -
                  E::triangle(5, 3, 2, 5) + E::triangle(5, 1, 4, 5);
  CHECK_FALSE(lhs == wrong);
}

TEST_CASE("Leibniz expansion small cases") {
  const auto d2 = det_leibniz(2);
  CHECK(d2 == SymbolicPoly::monomial(2, 2, p_mono(2, {{1, 2}, {1, 2}}), -1));
  const auto d3 = det_leibniz(3);
  CHECK(d3 == SymbolicPoly::monomial(3, 2, p_mono(3, {{1, 2}, {1, 3}, {2, 3}}), 2));
  CHECK(d3.to_string() == "2*p12*p13*p23");

  const auto d4 = det_leibniz(4);
  CHECK(d4.size() == 6);
  std::map<std::string, int> coeffs;
  for (const auto& [e, c] : d4.terms) ++coeffs[c.get_str()];
  CHECK(coeffs["1"] == 3);
  CHECK(coeffs["-2"] == 3);
}

TEST_CASE("Leibniz expansion matches cofactor expansion") {
  for (int n = 2; n <= 6; ++n) CHECK(det_leibniz(n) == det_cofactor(n));
}

TEST_CASE("Leibniz coefficients are sign times fiber size") {
  for (int n = 3; n <= 7; ++n) {
    const auto det = det_leibniz(n);
    std::set<E> images;
    for (const auto& d : derangements(n)) {
      images.insert(phi(d));
      const Rational expect = permutation_sign(d.images) * static_cast<long>(fiber_size_formula(d));
      CHECK(det.terms.at(phi(d).as_exponents()) == expect);
    }
    CHECK(det.size() == images.size());
  }
  CHECK_THROWS_AS(det_leibniz(9), BudgetExceeded);
}

TEST_CASE("polynomial division") {
  const auto det = det_leibniz(4);
  const auto x = SymbolicPoly::monomial(4, 2, p_mono(4, {{1, 2}, {3, 4}}), 3);
  const auto q = divide_exact(det * x, det);
  REQUIRE(q);
  CHECK(*q == x);
  CHECK_FALSE(divide_exact(det + x, det));
  CHECK_FALSE(divide_exact(x, det));
}

TEST_CASE("det(P3) as a c-expression") {
  const auto e = det_as_c_expression(3);
  CHECK(e.verified);
  CHECK(e.f.arity == 3);
  CHECK(e.f == SymbolicPoly::monomial(3, 3, Exponents{1}, 2));
  CHECK(e.g == Exponents{0});
  CHECK(e.f.to_string() == "2*c123");
  CHECK_THROWS_AS(det_as_c_expression(4), PreconditionFailed);
  CHECK_THROWS_AS(det_as_c_expression(5), PreconditionFailed);
  CHECK_THROWS_AS(det_as_c_expression(9), BudgetExceeded);
}

TEST_CASE("det(P6) as f/g against the cofactor expansion") {
  const auto e = det_as_c_expression(6);
  CHECK(e.verified);
  CHECK(e.certificates.size() == det_leibniz(6).size());
  std::size_t weight = 0;
  for (const auto& t : e.certificates) weight += static_cast<std::size_t>(Rational(abs(t.coefficient)).get_num().get_ui());
  CHECK(weight == 265);

  const TriangleLattice c6(6);
  for (const auto& t : e.certificates) {
    E v(6);
    for (std::size_t i = 0; i < v.exponents.size(); ++i) v.exponents[i] = t.p_monomial[i];
    CHECK(c6.verify(t.c_exponents, v));
  }
  const auto g = SymbolicPoly::monomial(6, 2, c_to_p(c6.matrix(), e.g));
  CHECK(substitute_triangles(e.f) == det_cofactor(6) * g);

  // f and g share no variable.
  const auto content = e.f.monomial_content();
  for (std::size_t j = 0; j < e.g.size(); ++j) CHECK((content[j] == 0 || e.g[j] == 0));
  for (const auto& [y, c] : e.f.terms) CHECK(std::all_of(y.begin(), y.end(), [](int x) { return x >= 0; }));
}

TEST_CASE("tilde ideal for n = 3") {
  const auto t = tilde_ideal_generators(3);
  CHECK(t.toric.empty());
  CHECK(t.f.to_string() == "2*c123");
  // f is a monomial, so saturating by c123 gives the unit ideal, and 1 is
  // not a multiple of det(P3).
  CHECK(t.unit_ideal());
  CHECK_FALSE(t.saturated_in_det);
  CHECK_FALSE(t.containment());
  // c123 itself does map into (det P3).
  const auto c = SymbolicPoly::monomial(3, 3, Exponents{1});
  CHECK(divide_exact(substitute_triangles(c), det_leibniz(3)));
}

TEST_CASE("tilde ideal for n = 6") {
  const auto t = tilde_ideal_generators(6);
  CHECK(t.toric.size() == 30);
  CHECK(std::all_of(t.toric_in_det.begin(), t.toric_in_det.end(), [](bool b) { return b; }));
  CHECK_FALSE(t.unit_ideal());
  CHECK(t.saturated_in_det);
  CHECK(t.containment());
  const auto content = t.saturated.monomial_content();
  CHECK(std::all_of(content.begin(), content.end(), [](int x) { return x == 0; }));
}

TEST_CASE("membership report n = 6") {
  const auto r = check_three_point(6);
  CHECK(r.derangements == 265);
  CHECK(r.all_hold());
  const Claim* z = r.find("zero_mod_3");
  REQUIRE(z);
  CHECK(z->instances == 265);
  for (const auto& m : z->certificates) CHECK(m.recomputes);
  CHECK(r.find("det_in_KC"));
  CHECK(r.find("det_cubed_in_KC")->holds);
  CHECK_FALSE(r.find("two_mod_3"));
  CHECK_FALSE(r.find("triple_product"));
}

TEST_CASE("membership report n = 5") {
  const auto r = check_three_point(5);
  CHECK(r.all_hold());
  CHECK(r.find("two_mod_3")->instances == 44);
  CHECK(r.find("product_lemma")->holds);
  CHECK(r.find("triple_canonical")->holds);
  CHECK(r.find("triple_cosets")->instances == 3 * 44);
  CHECK(r.find("det_times_edges_in_KC")->holds);
  CHECK_FALSE(r.find("zero_mod_3"));
  for (const auto& c : r.claims)
    for (const auto& m : c.certificates) CHECK(m.recomputes);
}

TEST_CASE("membership report n = 7 and n = 8") {
  const auto r7 = check_three_point(7);
  CHECK(r7.all_hold());
  CHECK(r7.find("triple_product")->holds);
  CHECK(r7.find("merge_step")->holds);
  CHECK_FALSE(r7.find("two_mod_3"));
  const auto r8 = check_three_point(8);
  CHECK(r8.all_hold());
  CHECK(r8.find("triple_product"));
  CHECK_FALSE(r8.find("two_mod_3"));
  CHECK_THROWS_AS(check_three_point(9), BudgetExceeded);
}

TEST_CASE("membership report n = 3 and n = 4") {
  const auto r3 = check_three_point(3);
  CHECK(r3.all_hold());
  CHECK(r3.find("zero_mod_3")->instances == 2);
  const auto r4 = check_three_point(4);
  CHECK_FALSE(r4.find("det_cubed_in_KC"));
  CHECK_FALSE(r4.find("triple_product"));
}

TEST_CASE("pairwise single coset exhaustively for n = 5 and 6") {
  for (int n : {5, 6}) {
    const TriangleLattice cn(n);
    std::set<E> images;
    for (const auto& d : derangements(n)) images.insert(phi(d));
    for (const auto& a : images)
      for (const auto& b : images) CHECK(cn.contains(a - b));
  }
}

TEST_CASE("triple products exhaustively for n = 5") {
  const TriangleLattice c5(5);
  std::vector<E> images;
  {
    std::set<E> s;
    for (const auto& d : derangements(5)) s.insert(phi(d));
    images.assign(s.begin(), s.end());
  }
  for (std::size_t a = 0; a < images.size(); ++a)
    for (std::size_t b = a; b < images.size(); ++b)
      for (std::size_t c = b; c < images.size(); ++c) {
        const E sum = images[a] + images[b] + images[c];
        const auto cert = compose_triple_certificate(c5, {images[a], images[b], images[c]});
        CHECK(c5.verify(cert, sum));
      }
}

TEST_CASE("product lemma instance") {
  const E v = E::all_edges(5) - E::edge(5, 1, 3) - E::edge(5, 2, 3) - E::edge(5, 2, 4) - E::edge(5, 1, 4);
  const auto cert = coset_member(v, 5);
  REQUIRE(cert);
  CHECK(TriangleLattice(5).verify(*cert, v));
  // 2e12 + e13 + e23 + e24 + e14 = c123 + c124
  CHECK(2 * E::edge(5, 1, 2) + E::edge(5, 1, 3) + E::edge(5, 2, 3) + E::edge(5, 2, 4) + E::edge(5, 1, 4) ==
        E::triangle(5, 1, 2, 3) + E::triangle(5, 1, 2, 4));
}

TEST_CASE("report JSON") {
  const auto j = to_json(check_three_point(5));
  CHECK(j["n"] == 5);
  CHECK(j["all_hold"] == true);
  CHECK(j["claims"].is_array());
  const auto e = to_json(det_as_c_expression(3));
  CHECK(e["f"] == "2*c123");
  CHECK(e["g"] == "1");
  const auto t = to_json(tilde_ideal_generators(3));
  CHECK(t["unit_ideal"] == true);
}
