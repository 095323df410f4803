#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "itoric/complexes.hpp"
#include "itoric/config.hpp"
#include "itoric/designs.hpp"
#include "itoric/incidence.hpp"
#include "itoric/polytope.hpp"
#include "itoric/threepoint.hpp"
#include "itoric/toric.hpp"

namespace itoric {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace acceptance {

// Collects sub-checks; the criterion passes only if all of them do.
struct Checks {
  bool ok = true;
  std::vector<std::string> failed;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      failed.push_back(what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }

  std::string detail() const {
    std::string out;
    for (const auto& n : notes) out += (out.empty() ? "" : "; ") + n;
    for (const auto& f : failed) out += (out.empty() ? "FAILED: " : "; FAILED: ") + f;
    return out;
  }
};

inline std::string str(std::size_t x) { return std::to_string(x); }

inline bool matches_pod_support(const IncidenceMatrix& a, const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> sorted = cols;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& p : all_pods(a.n, a.k, a.t)) {
    const auto d = pod_expand(p, a.n);
    for (const auto& part : {d.support_plus(), d.support_minus()}) {
      std::vector<std::size_t> s;
      for (const auto& f : part) s.push_back(a.column_of(f));
      std::sort(s.begin(), s.end());
      if (s == sorted) return true;
    }
  }
  return false;
}

inline Checks rank_law(const RunConfig&) {
  Checks c;
  std::size_t cases = 0;
  for (const auto& e : check_rank_theorems(8)) {
    ++cases;
    c.expect(e.rank_law_holds(), "rank of A(" + std::to_string(e.n) + "," + std::to_string(e.k) + "," +
                                     std::to_string(e.t) + ") is " + str(e.rank_q));
  }
  c.note(str(cases) + " triples (n <= 8)");
  return c;
}

inline Checks mod_p_law(const RunConfig&) {
  Checks c;
  std::size_t cases = 0;
  for (const auto& e : check_rank_theorems(8, {2, 3, 5, 7, 11, 13}))
    for (const auto& m : e.mod_p) {
      ++cases;
      c.expect(m.full == m.predicted_full, "A(" + std::to_string(e.n) + "," + std::to_string(e.k) + "," +
                                               std::to_string(e.t) + ") mod " + std::to_string(m.p));
    }
  c.note(str(cases) + " (triple, prime) pairs");
  return c;
}

inline Checks markov_632(const RunConfig& cfg) {
  Checks c;
  const auto a = build_matrix(6, 3, 2);
  const auto m = minimal_markov(a, cfg.budgets);
  c.expect(m.elements.size() == 30, "minimal Markov basis has " + str(m.elements.size()) + " elements");
  c.expect(m.degree_multiset() == std::vector<std::pair<long, std::size_t>>{{4, 15}, {6, 15}},
           "degree profile differs from 4^15 6^15");
  BinomialGroebner gb(a.cols(), MonomialOrder::degrevlex(a.cols()), cfg.budgets);
  for (const auto& b : m.elements) gb.add(b);
  gb.complete();
  const auto quartic = binomial_from_labels(a, {"136", "246", "145", "235"}, {"146", "236", "245", "135"});
  const auto sextic = binomial_from_labels(a, {"146", "156", "236", "123", "345", "245"},
                                           {"136", "126", "456", "145", "234", "235"});
  c.expect(gb.contains(quartic), "quartic does not reduce to zero");
  c.expect(gb.contains(sextic), "sextic does not reduce to zero");
  const auto rank = kernel_basis(a.matrix).rank();
  c.expect(rank == 5 && rank == binomial(6, 3) - binomial(6, 2), "kernel rank " + str(rank));
  c.note("30 generators, degrees 4^15 6^15, kernel rank " + str(rank));
  return c;
}

struct P632Volumes {
  Integer column, euclidean;
  std::size_t simplices = 0;
};

inline const P632Volumes& p632_volumes(const RunConfig& cfg) {
  static std::optional<P632Volumes> cache;
  if (!cache) {
    const auto pc = point_config(build_matrix(6, 3, 2));
    const auto tri = placing_triangulation(pc, {}, cfg.budgets);
    cache = P632Volumes{normalized_volume(pc, tri, VolumeLattice::Column).volume,
                        normalized_volume(pc, tri, VolumeLattice::Euclidean).volume, tri.simplices.size()};
  }
  return *cache;
}

inline Checks degree_632(const RunConfig& cfg) {
  Checks c;
  const auto& v = p632_volumes(cfg);
  c.expect(v.column == 162, "column-lattice volume " + v.column.get_str());
  c.note("column-lattice volume " + v.column.get_str() + " from " + str(v.simplices) + " simplices");
  return c;
}

inline Checks volume_divisibility(const RunConfig& cfg) {
  Checks c;
  const auto& v = p632_volumes(cfg);
  for (long p : {2L, 3L}) c.expect(v.euclidean % p == 0, "P(6,3,2) euclidean volume not divisible by " + std::to_string(p));
  const auto pc = point_config(build_matrix(7, 4, 3));
  const auto e743 = normalized_volume(pc, VolumeLattice::Euclidean, cfg.budgets).volume;
  for (long p : {2L, 3L}) c.expect(e743 % p == 0, "P(7,4,3) euclidean volume not divisible by " + std::to_string(p));
  c.note("P(6,3,2) euclidean " + v.euclidean.get_str() + ", P(7,4,3) euclidean " + e743.get_str());
  return c;
}

inline Checks support_bound(const RunConfig&) {
  Checks c;
  for (int n : {6, 7}) {
    const auto a = build_matrix(n, 3, 2);
    const auto s = min_support_scan_pm1(a, 4);
    const std::string tag = "A(" + std::to_string(n) + ",3,2)";
    c.expect(s.min_plus_support && *s.min_plus_support == 4, tag + " minimum positive support is not 4");
    c.expect(s.witness_is_pod, tag + " witness is not a pod");
    if (s.min_plus_support) c.note(tag + ": min |supp+| = " + str(*s.min_plus_support) + " = 2^2, pod witness");
  }
  return c;
}

inline Checks neighborly(const RunConfig& cfg) {
  Checks c;
  for (int n : {6, 7}) {
    const auto a = build_matrix(n, 3, 2);
    const auto r = neighborliness(point_config(a), 4, cfg.budgets);
    const std::string tag = "P(" + std::to_string(n) + ",3,2)";
    c.expect(r.s == 3, tag + " neighborliness " + str(r.s));
    c.expect(r.witness && r.witness->size() == 4 && matches_pod_support(a, *r.witness),
             tag + " has no size-4 pod non-face");
    c.note(tag + " exactly 3-neighborly (" + std::to_string(r.lps) + " LPs)");
  }
  return c;
}

inline Checks pod_generation(const RunConfig&) {
  Checks c;
  std::size_t cases = 0;
  for (int n = 3; n <= 7; ++n)
    for (int k = 2; k <= n; ++k)
      for (int t = 1; t < k; ++t)
        if (binomial(n, k) > binomial(n, t)) {
          ++cases;
          c.expect(pods_span_kernel(n, k, t),
                   "pods do not span ker A(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(t) + ")");
        }
  c.note(str(cases) + " nontrivial triples (n <= 7)");
  return c;
}

inline Checks saturation_632(const RunConfig& cfg) {
  Checks c;
  const auto a = build_matrix(6, 3, 2);
  const auto oct = octahedral_generators(6, 3, 2);
  c.expect(saturation_equals(oct.elements, a, cfg.budgets), "saturation of the octahedral ideal differs from I(6,3,2)");
  c.note(str(oct.elements.size()) + " octahedral generators saturate to I(6,3,2)");
  return c;
}

inline Checks topology(const RunConfig&, const std::string& data_dir) {
  Checks c;
  auto all_true = [&](const SimplicialComplex& x, const std::string& name) {
    const auto r = verify(x);
    c.expect(r.pure && r.pseudomanifold && r.boundaryless && r.normal && r.balanced && r.orientable &&
                 r.facet_ridge_bipartite,
             name + " fails a predicate");
  };
  all_true(crosspolytope(3), "octahedron");
  all_true(crosspolytope(4), "crosspolytope(4)");

  std::vector<std::pair<std::string, SimplicialComplex>> examples;
  for (const auto& entry : std::filesystem::directory_iterator(data_dir + "/complexes"))
    if (entry.path().extension() == ".cplx") examples.emplace_back(entry.path().stem().string(), read_complex(entry.path().string()));
  std::sort(examples.begin(), examples.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  const std::size_t bundled = examples.size();
  for (std::size_t i = 0; i < bundled; ++i)
    examples.emplace_back("sd(" + examples[i].first + ")", barycentric_subdivision(examples[i].second));
  std::size_t tested = 0, non_orientable = 0;
  for (const auto& [name, x] : examples) {
    const auto r = verify(x);
    if (!(r.balanced && r.normal && r.boundaryless && r.dimension >= 2)) continue;
    ++tested;
    non_orientable += !r.orientable;
    c.expect(r.orientable == r.facet_ridge_bipartite, name + ": orientability and bipartiteness disagree");
  }
  c.expect(non_orientable > 0, "no non-orientable example among the balanced normal ones");
  const auto pt = verify(pinched_torus());
  c.expect(pt.orientable && pt.boundaryless && !pt.normal, "pinched torus predicates");
  c.note("lemma checked on " + str(tested) + " balanced normal closed complexes (" + str(non_orientable) +
         " non-orientable); pinched torus orientable, boundaryless, not normal");
  return c;
}

inline Checks orientation_binomials(const RunConfig& cfg) {
  Checks c;
  const auto oct = orientation_binomial(crosspolytope(3), cfg.budgets);
  const auto quartic = binomial_from_labels(oct.matrix, {"136", "246", "145", "235"}, {"146", "236", "245", "135"});
  c.expect(equal_up_to_sign(oct.binomial, quartic), "octahedron binomial differs from the quartic");
  c.expect(in_kernel(oct.binomial, oct.matrix.matrix) && is_primitive(oct.binomial, oct.matrix.matrix, cfg.budgets),
           "octahedron binomial not a primitive kernel element");
  const auto cf = orientation_binomial(crossflip_example(), cfg.budgets);
  const auto seven = binomial_from_labels(cf.matrix, {"146", "236", "135", "245", "678", "179", "389"},
                                          {"789", "167", "368", "139", "246", "145", "235"});
  c.expect(cf.matrix.n == 9 && cf.matrix.k == 3 && cf.matrix.t == 2, "cross-flip binomial not in I(9,3,2)");
  c.expect(equal_up_to_sign(cf.binomial, seven), "cross-flip binomial differs from the degree-7 one");
  c.expect(in_kernel(cf.binomial, cf.matrix.matrix) && is_primitive(cf.binomial, cf.matrix.matrix, cfg.budgets),
           "cross-flip binomial not a primitive kernel element");
  c.note("octahedron -> quartic, cross-flip -> degree " + std::to_string(cf.binomial.degree()) + " in I(9,3,2)");
  return c;
}

inline Checks fibers(const RunConfig& cfg) {
  Checks c;
  std::size_t total = 0;
  for (int n = 2; n <= 6; ++n)
    for (const auto& d : derangements(n)) {
      ++total;
      c.expect(fiber(phi(d), n, cfg.budgets).size() == fiber_size_formula(d), "fiber size mismatch for n=" + std::to_string(n));
    }
  c.note(str(total) + " derangements, n <= 6");
  return c;
}

inline Checks memberships(const RunConfig& cfg) {
  Checks c;
  auto claim_ok = [&](const ThreePointReport& r, const std::string& id, std::size_t instances) {
    const Claim* cl = r.find(id);
    const std::string tag = "n=" + std::to_string(r.n) + " " + id;
    if (!cl) {
      c.expect(false, tag + " missing");
      return;
    }
    c.expect(cl->holds, tag);
    if (instances) c.expect(cl->instances == instances, tag + " instance count " + str(cl->instances));
    for (const auto& m : cl->certificates) c.expect(m.recomputes, tag + " certificate does not recompute");
  };
  const auto r6 = check_three_point(6, cfg.budgets);
  claim_ok(r6, "zero_mod_3", 265);
  const auto r5 = check_three_point(5, cfg.budgets);
  claim_ok(r5, "two_mod_3", 44);
  claim_ok(r5, "product_lemma", 1);
  claim_ok(r5, "triple_cosets", 3 * 44);
  claim_ok(r5, "triple_canonical", 1);
  claim_ok(r5, "triple_product", 0);
  const auto r7 = check_three_point(7, cfg.budgets);
  claim_ok(r7, "triple_cosets", 3 * 1854);
  claim_ok(r7, "triple_canonical", 1);
  claim_ok(r7, "triple_product", 0);
  const auto tr = transposition_relations_check(7);
  c.expect(tr.holds, "transposition identities");
  c.note("265 + 44 memberships, triple cosets for n=5,7, " + str(tr.identity1_checked) + " index choices for each identity");
  return c;
}

inline Checks det_expressions(const RunConfig& cfg) {
  Checks c;
  Exponents e3(3, 1);
  c.expect(det_leibniz(3, cfg.budgets) == SymbolicPoly::monomial(3, 2, e3, 2), "det(P3) != 2 p12 p13 p23");
  const auto x3 = det_as_c_expression(3, cfg.budgets);
  c.expect(x3.f == SymbolicPoly::monomial(3, 3, Exponents{1}, 2) && x3.g == Exponents{0}, "det(P3) != 2 c123");

  const auto x6 = det_as_c_expression(6, cfg.budgets);
  std::size_t weight = 0;
  for (const auto& t : x6.certificates) weight += Rational(abs(t.coefficient)).get_num().get_ui();
  c.expect(x6.verified && weight == 265, "n=6 f/g certificate");
  const TriangleLattice c6(6);
  const auto g6 = SymbolicPoly::monomial(6, 2, c_to_p(c6.matrix(), x6.g));
  c.expect(substitute_triangles(x6.f) == det_leibniz(6, cfg.budgets) * g6, "n=6 symbolic identity");
  c.note("det(P3) = " + x3.f.to_string() + "; n=6 f has " + str(x6.f.size()) + " terms over 265 derangements");

  const auto t3 = tilde_ideal_generators(3, cfg.budgets);
  const auto c123 = SymbolicPoly::monomial(3, 3, Exponents{1});
  c.expect(t3.saturated == c123, "n=3 saturation (f : c123^inf) is " +
                                     (t3.unit_ideal() ? std::string("the unit ideal") : "(" + t3.saturated.to_string() + ")") +
                                     ", not (c123)");
  c.expect(t3.containment(), "n=3 forward containment fails: " + t3.saturated.to_string() + " is not in (det P3)");
  return c;
}

struct Criterion {
  int id;
  std::string name;
  std::function<Checks(const RunConfig&)> run;
};

inline std::vector<Criterion> criteria(const std::string& data_dir) {
  return {
      {1, "rank law", rank_law},
      {2, "mod-p rank law", mod_p_law},
      {3, "I(6,3,2) structure", markov_632},
      {4, "degree of P(6,3,2)", degree_632},
      {5, "euclidean volume divisibility", volume_divisibility},
      {6, "support bound", support_bound},
      {7, "neighborliness", neighborly},
      {8, "pod generation", pod_generation},
      {9, "saturation identity", saturation_632},
      {10, "topology", [data_dir](const RunConfig& cfg) { return topology(cfg, data_dir); }},
      {11, "orientation binomials", orientation_binomials},
      {12, "derangement fibers", fibers},
      {13, "triangle lattice memberships", memberships},
      {14, "det expressions", det_expressions},
  };
}

}  // namespace acceptance

// Runs the selected criteria (all when `which` is empty).  Errors inside a
// criterion count as failures with the message recorded.
inline std::vector<CriterionResult> run_acceptance(const RunConfig& cfg, const std::string& data_dir,
                                                   const std::set<int>& which = {},
                                                   const std::function<void(const CriterionResult&)>& on_result = {}) {
  std::vector<CriterionResult> out;
  for (const auto& cr : acceptance::criteria(data_dir)) {
    if (!which.empty() && !which.count(cr.id)) continue;
    CriterionResult r{cr.id, cr.name};
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto checks = cr.run(cfg);
      r.pass = checks.ok;
      r.detail = checks.detail();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << " (" << r.name << ")  ";
  os.setf(std::ios::fixed);
  os.precision(1);
  os << r.seconds << " s  " << r.detail;
  return os.str();
}

inline nlohmann::json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}};
}

}  // namespace itoric
