#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "itoric/acceptance.hpp"
#include "itoric/complexes.hpp"
#include "itoric/designs.hpp"
#include "itoric/incidence.hpp"
#include "itoric/polytope.hpp"
#include "itoric/threepoint.hpp"
#include "itoric/toric.hpp"

using namespace itoric;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

struct Options {
  std::string format = "json";
  bool no_meta = false;
  std::string out;
  Budgets budgets;
  int n = 0, k = 0, t = 0;
};

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw BadParameters("cannot write " + o.out);
  f << text;
}

// Text rendering: one "key: value" line per top-level field.
std::string render_text(const json& j) {
  std::ostringstream os;
  if (!j.is_object()) {
    os << j.dump() << '\n';
    return os.str();
  }
  for (const auto& [key, value] : j.items())
    os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  return os.str();
}

void emit(const Options& o, const std::string& command, json params, json result) {
  if (o.format == "text") {
    write_output(o, render_text(result));
    return;
  }
  json doc{{"command", command}, {"params", std::move(params)}, {"result", std::move(result)}};
  if (!o.no_meta) doc["meta"] = {{"timestamp", utc_now()}, {"version", kVersion}};
  write_output(o, doc.dump(2) + "\n");
}

json nkt(const Options& o) { return {{"n", o.n}, {"k", o.k}, {"t", o.t}}; }

void add_nkt(CLI::App* app, Options& o, bool with_t = true) {
  app->add_option("-n", o.n, "ground set size")->required();
  app->add_option("-k", o.k, "block size")->required();
  if (with_t) app->add_option("-t", o.t, "strength")->required();
}

std::string matrix_csv(const IncidenceMatrix& a) {
  std::ostringstream os;
  os << "t\\k";
  for (std::size_t j = 0; j < a.cols(); ++j) os << ',' << a.col_label(j);
  os << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << a.row_label(i);
    for (std::size_t j = 0; j < a.cols(); ++j) os << ',' << a.matrix(i, j).get_str();
    os << '\n';
  }
  return os.str();
}

std::vector<std::size_t> parse_columns(const IncidenceMatrix& a, const std::vector<std::string>& labels) {
  std::vector<std::size_t> out;
  for (const auto& l : labels) out.push_back(a.column_of(parse_subset_label(l)));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incidence toric ideals, polytopes, balanced complexes and three-point functions"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text", "csv"}));
  app.add_flag("--no-meta", o.no_meta, "omit the timestamp/version block");
  app.add_option("--out", o.out, "write the report to a file");
  app.add_option("--pair-budget", o.budgets.pair_queue, "S-pair / completion pair cap");
  app.add_option("--basis-budget", o.budgets.basis_size, "Groebner / Graver basis size cap");
  app.add_option("--fiber-budget", o.budgets.fiber_points, "fiber point cap");
  app.add_option("--box-budget", o.budgets.box_points, "primitivity box cap");
  app.add_option("--volume-budget", o.budgets.volume_simplices, "triangulation simplex cap");
  app.add_option("--face-budget", o.budgets.face_lps, "face LP cap");
  app.set_version_flag("--version", kVersion);

  int status = kOk;
  std::function<void()> action;

  // incidence
  auto* inc = app.add_subcommand("incidence", "incidence matrices and rank laws");
  inc->require_subcommand(1);
  auto* inc_matrix = inc->add_subcommand("matrix", "the containment matrix A(n,k,t)");
  add_nkt(inc_matrix, o);
  inc_matrix->callback([&] {
    action = [&] {
      const auto a = build_matrix(o.n, o.k, o.t);
      if (o.format == "csv") {
        write_output(o, matrix_csv(a));
        return;
      }
      json rows = json::array(), cols = json::array();
      for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row_label(i));
      for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(a.col_label(j));
      emit(o, "incidence matrix", nkt(o), {{"rows", rows}, {"columns", cols}, {"matrix", to_json(a.matrix)}});
    };
  });
  auto* inc_rank = inc->add_subcommand("rank", "rank over Q and modulo small primes");
  add_nkt(inc_rank, o);
  inc_rank->callback([&] {
    action = [&] {
      const auto a = build_matrix(o.n, o.k, o.t);
      const auto l = lefschetz_matrix(a);
      json mod = json::object();
      for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) mod[std::to_string(p)] = rank_mod_p(l, p);
      const std::size_t expected = std::min(binomial(o.n, o.t), binomial(o.n, o.k));
      const std::size_t r = rank_q(a.matrix);
      if (r != expected) status = kVerificationFailed;
      emit(o, "incidence rank", nkt(o), {{"rank_q", r}, {"expected", expected}, {"lefschetz_rank_mod_p", mod}});
    };
  });

  // toric
  auto* tor = app.add_subcommand("toric", "generators of incidence toric ideals");
  tor->require_subcommand(1);
  for (const char* kind : {"markov", "graver", "octahedral"}) {
    auto* sub = tor->add_subcommand(kind, std::string(kind) + " basis");
    add_nkt(sub, o);
    const std::string name = kind;
    sub->callback([&, name] {
      action = [&, name] {
        const auto a = build_matrix(o.n, o.k, o.t);
        BinomialBasis b = name == "markov"   ? minimal_markov(a, o.budgets)
                          : name == "graver" ? graver_basis(a, o.budgets)
                                             : octahedral_generators(o.n, o.k, o.t);
        emit(o, "toric " + name, nkt(o), to_json(b));
      };
    });
  }
  auto* sat = tor->add_subcommand("saturate", "saturate the octahedral ideal and compare with I(n,k,t)");
  add_nkt(sat, o);
  sat->callback([&] {
    action = [&] {
      const auto a = build_matrix(o.n, o.k, o.t);
      const auto oct = octahedral_generators(o.n, o.k, o.t);
      const bool eq = saturation_equals(oct.elements, a, o.budgets);
      if (!eq) status = kVerificationFailed;
      emit(o, "toric saturate", nkt(o), {{"generators", oct.elements.size()}, {"saturation_equals_toric_ideal", eq}});
    };
  });

  // polytope
  auto* pol = app.add_subcommand("polytope", "the incidence polytope P(n,k,t)");
  pol->require_subcommand(1);
  std::string lattice = "column";
  auto* vol = pol->add_subcommand("volume", "normalized volume by a placing triangulation");
  add_nkt(vol, o);
  vol->add_option("--lattice", lattice, "reference lattice")->check(CLI::IsMember({"euclidean", "column"}));
  vol->callback([&] {
    action = [&] {
      const auto pc = point_config(build_matrix(o.n, o.k, o.t));
      const auto which = lattice == "euclidean" ? VolumeLattice::Euclidean : VolumeLattice::Column;
      const auto r = normalized_volume(pc, which, o.budgets);
      json p = nkt(o);
      p["lattice"] = lattice;
      emit(o, "polytope volume", p, {{"volume", r.volume.get_str()}, {"simplices", r.simplices}, {"dimension", r.dim}});
    };
  });
  std::vector<std::string> subset;
  auto* faces = pol->add_subcommand("faces", "face test for a set of vertices");
  add_nkt(faces, o);
  faces->add_option("--subset", subset, "vertex labels, e.g. 136 246 145")->required();
  faces->callback([&] {
    action = [&] {
      const auto a = build_matrix(o.n, o.k, o.t);
      const auto r = is_face(point_config(a), parse_columns(a, subset));
      json res{{"face", r.face}};
      if (r.face) {
        json c = json::array();
        for (const auto& x : r.c) c.push_back(x.get_str());
        res["normal"] = c;
        res["rhs"] = r.beta.get_str();
      } else {
        json w = json::object();
        for (std::size_t j = 0; j < r.witness.size(); ++j)
          if (sgn(r.witness[j]) != 0) w[a.col_label(j)] = r.witness[j].get_si();
        res["dependence"] = w;
      }
      json p = nkt(o);
      p["subset"] = subset;
      emit(o, "polytope faces", p, res);
    };
  });
  std::size_t s_max = 4;
  auto* nb = pol->add_subcommand("neighborly", "largest s with every s-set a face");
  add_nkt(nb, o);
  nb->add_option("--max", s_max, "largest subset size tested");
  nb->callback([&] {
    action = [&] {
      const auto a = build_matrix(o.n, o.k, o.t);
      const auto r = neighborliness(point_config(a), s_max, o.budgets);
      json res{{"neighborly", r.s}, {"lps", r.lps}};
      if (r.witness) {
        json w = json::array();
        for (auto j : *r.witness) w.push_back(a.col_label(j));
        res["non_face"] = w;
      }
      json p = nkt(o);
      p["max"] = s_max;
      emit(o, "polytope neighborly", p, res);
    };
  });

  // complex
  auto* cx = app.add_subcommand("complex", "simplicial complexes read from a facet file");
  cx->require_subcommand(1);
  std::string file;
  auto* cverify = cx->add_subcommand("verify", "pseudomanifold, normality, balance and orientability");
  cverify->add_option("FILE", file, "one facet per line")->required()->check(CLI::ExistingFile);
  cverify->callback([&] {
    action = [&] { emit(o, "complex verify", {{"file", file}}, to_json(verify(read_complex(file)))); };
  });
  auto* cbin = cx->add_subcommand("binomial", "orientation binomial of a balanced sphere-like complex");
  cbin->add_option("FILE", file, "one facet per line")->required()->check(CLI::ExistingFile);
  cbin->callback([&] {
    action = [&] {
      const auto ob = orientation_binomial(read_complex(file), o.budgets);
      emit(o, "complex binomial", {{"file", file}},
           {{"n", ob.matrix.n},
            {"k", ob.matrix.k},
            {"t", ob.matrix.t},
            {"degree", ob.binomial.degree()},
            {"binomial", to_json(ob.matrix, ob.binomial)},
            {"text", to_string(ob.matrix, ob.binomial)},
            {"orientation", ob.epsilon}});
    };
  });

  // threepoint
  auto* tp = app.add_subcommand("threepoint", "derangement map, triangle lattice and det(P_n)");
  tp->require_subcommand(1);
  bool no_certs = false;
  auto* tcheck = tp->add_subcommand("check", "every membership claim that applies to n");
  tcheck->add_option("-n", o.n, "number of particles")->required();
  tcheck->add_flag("--no-certificates", no_certs, "omit certificates from the report");
  tcheck->callback([&] {
    action = [&] {
      const auto r = check_three_point(o.n, o.budgets);
      if (!r.all_hold()) status = kVerificationFailed;
      emit(o, "threepoint check", {{"n", o.n}}, to_json(r, !no_certs));
    };
  });
  std::string emit_what = "f,g";
  auto* tdet = tp->add_subcommand("det", "det(P_n) as f/g in the c variables");
  tdet->add_option("-n", o.n, "number of particles")->required();
  tdet->add_option("--emit", emit_what, "comma-separated subset of f,g,leibniz");
  tdet->callback([&] {
    action = [&] {
      const auto e = det_as_c_expression(o.n, o.budgets);
      json full = to_json(e);
      json res{{"n", o.n}, {"verified", e.verified}, {"leibniz_terms", e.certificates.size()}};
      std::stringstream ss(emit_what);
      for (std::string item; std::getline(ss, item, ',');) {
        if (item == "f") res["f"] = full["f"];
        else if (item == "g") res["g"] = full["g"];
        else if (item == "leibniz") res["leibniz"] = det_leibniz(o.n, o.budgets).to_string();
        else throw BadParameters("unknown --emit item " + item);
      }
      if (!e.verified) status = kVerificationFailed;
      emit(o, "threepoint det", {{"n", o.n}, {"emit", emit_what}}, res);
    };
  });
  auto* ttilde = tp->add_subcommand("tilde", "I~(n,n) generators plus the saturated f, forward containment");
  ttilde->add_option("-n", o.n, "number of particles")->required();
  ttilde->callback([&] {
    action = [&] {
      const auto t = tilde_ideal_generators(o.n, o.budgets);
      if (!t.containment()) status = kVerificationFailed;
      emit(o, "threepoint tilde", {{"n", o.n}}, to_json(t));
    };
  });
  auto* tfib = tp->add_subcommand("fibers", "fiber sizes of the derangement map");
  tfib->add_option("-n", o.n, "number of particles")->required();
  tfib->callback([&] {
    action = [&] {
      require_derangement_range(o.n, o.budgets);
      std::map<EdgeVector, std::vector<Derangement>> groups;
      for (const auto& d : derangements(o.n)) groups[phi(d)].push_back(d);
      json list = json::array();
      bool ok = true;
      for (const auto& [v, ds] : groups) {
        const auto formula = fiber_size_formula(ds.front());
        ok = ok && formula == ds.size();
        list.push_back({{"image", v.to_string()}, {"size", ds.size()}, {"formula", formula}});
      }
      if (!ok) status = kVerificationFailed;
      emit(o, "threepoint fibers", {{"n", o.n}}, {{"images", groups.size()}, {"agree", ok}, {"fibers", list}});
    };
  });

  // designs
  auto* des = app.add_subcommand("designs", "null designs and pods");
  des->require_subcommand(1);
  auto* pods = des->add_subcommand("pods", "all (t,k)-pods as null designs");
  add_nkt(pods, o);
  pods->callback([&] {
    action = [&] {
      json list = json::array();
      for (const auto& p : all_pods(o.n, o.k, o.t)) list.push_back(to_json(pod_expand(p, o.n)));
      const bool spans = pods_span_kernel(o.n, o.k, o.t);
      emit(o, "designs pods", nkt(o), {{"count", list.size()}, {"span_kernel", spans}, {"pods", list}});
    };
  });
  std::size_t max_plus = 4;
  auto* supp = des->add_subcommand("support", "minimum positive support of a +-1 null design");
  add_nkt(supp, o);
  supp->add_option("--max", max_plus, "largest positive support scanned");
  supp->callback([&] {
    action = [&] {
      const auto a = build_matrix(o.n, o.k, o.t);
      const auto s = min_support_scan_pm1(a, max_plus);
      json res{{"kernel_trivial", s.kernel_trivial}, {"supports_tried", s.positive_supports_tried}};
      if (s.min_plus_support) {
        res["min_plus_support"] = *s.min_plus_support;
        res["witness"] = to_json(vector_to_design(s.witness, o.n, o.k));
        res["witness_is_pod"] = s.witness_is_pod;
      }
      emit(o, "designs support", nkt(o), res);
    };
  });

  // acceptance
  auto* acc = app.add_subcommand("acceptance", "run the acceptance suite");
  bool all = false;
  std::vector<int> which;
  acc->add_flag("--all", all, "run every criterion");
  acc->add_option("--criterion", which, "criterion numbers to run");
  acc->callback([&] {
    action = [&] {
      if (!all && which.empty()) throw CLI::ValidationError("acceptance", "give --all or --criterion");
      RunConfig cfg;
      cfg.budgets = o.budgets;
      const std::set<int> sel = all ? std::set<int>{} : std::set<int>(which.begin(), which.end());
      const bool text = o.format == "text";
      const auto results = run_acceptance(cfg, ITORIC_DATA_DIR, sel, [&](const CriterionResult& r) {
        if (text) std::cout << format_result(r) << std::endl;
      });
      bool pass = true;
      json list = json::array();
      for (const auto& r : results) {
        pass = pass && r.pass;
        json j = to_json(r);
        if (o.no_meta) j.erase("seconds");
        list.push_back(j);
      }
      if (!pass) status = kVerificationFailed;
      if (!text) emit(o, "acceptance", {{"criteria", which}, {"all", all}}, {{"pass", pass}, {"criteria", list}});
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  if (o.format == "csv" && !(inc_matrix->parsed())) {
    std::cerr << "--format csv is only available for 'incidence matrix'\n";
    return kUsage;
  }
  try {
    action();
  } catch (const BudgetExceeded& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const BadParameters& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const DimensionMismatch& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const IndexOutOfRange& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    // Failed preconditions and internal certificate checks.
    std::cerr << e.what() << '\n';
    return kVerificationFailed;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  }
  return status;
}
