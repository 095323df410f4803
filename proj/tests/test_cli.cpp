#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ITORIC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), got);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json result(const Run& r) { return nlohmann::json::parse(r.out)["result"]; }

std::string data(const std::string& name) { return std::string(ITORIC_DATA_DIR) + "/complexes/" + name; }

}  // namespace

TEST_CASE("toric markov reports 30 generators") {
  const auto r = run("--no-meta toric markov -n 6 -k 3 -t 2");
  CHECK(r.code == 0);
  const auto j = result(r);
  CHECK(j["count"] == 30);
  CHECK(j["degrees"]["4"] == 15);
  CHECK(j["degrees"]["6"] == 15);
  CHECK(j["elements"].size() == 30);
}

TEST_CASE("identical invocations give identical bytes without meta") {
  const auto a = run("--no-meta toric graver -n 6 -k 3 -t 2");
  const auto b = run("--no-meta toric graver -n 6 -k 3 -t 2");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out).count("meta") == 0);
  const auto m = run("toric octahedral -n 6 -k 3 -t 2");
  CHECK(nlohmann::json::parse(m.out)["meta"].contains("timestamp"));
}

TEST_CASE("complex verify on the octahedron") {
  const auto r = run("--no-meta complex verify " + data("octahedron.cplx"));
  CHECK(r.code == 0);
  const auto j = result(r);
  for (const char* key : {"pure", "pseudomanifold", "boundaryless", "normal", "balanced", "orientable",
                          "facet_ridge_bipartite"})
    CHECK(j[key] == true);
}

TEST_CASE("complex binomial on the cross-flip sphere") {
  const auto r = run("--no-meta complex binomial " + data("crossflip.cplx"));
  CHECK(r.code == 0);
  const auto j = result(r);
  CHECK(j["degree"] == 7);
  CHECK(j["n"] == 9);
  CHECK(j["binomial"]["plus"]["678"] == 1);
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("toric markov -n 6 -k 3").code == 2);
  CHECK(run("toric markov -n 3 -k 3 -t 3").code == 2);
  CHECK(run("--pair-budget 3 toric markov -n 6 -k 3 -t 2").code == 2);
  CHECK(run("complex binomial " + data("torus_7.cplx")).code == 1);
  CHECK(run("threepoint tilde -n 3").code == 1);
  CHECK(run("threepoint tilde -n 6").code == 0);
  CHECK(run("complex verify /nonexistent.cplx").code == 2);
  CHECK(run("--format csv toric markov -n 6 -k 3 -t 2").code == 2);
}

TEST_CASE("incidence matrix csv") {
  const auto r = run("incidence matrix -n 4 -k 2 -t 1 --format csv");
  CHECK(r.code == 0);
  CHECK(r.out == "t\\k,12,13,23,14,24,34\n1,1,1,0,1,0,0\n2,1,0,1,0,1,0\n3,0,1,1,0,0,1\n4,0,0,0,1,1,1\n");
}

TEST_CASE("threepoint reports") {
  const auto det = result(run("--no-meta threepoint det -n 3 --emit f,g,leibniz"));
  CHECK(det["f"] == "2*c123");
  CHECK(det["g"] == "1");
  CHECK(det["leibniz"] == "2*p12*p13*p23");
  CHECK(det["verified"] == true);
  const auto chk = run("--no-meta threepoint check -n 6");
  CHECK(chk.code == 0);
  const auto j = result(chk);
  CHECK(j["all_hold"] == true);
  bool saw = false;
  for (const auto& c : j["claims"])
    if (c["id"] == "zero_mod_3") {
      saw = true;
      CHECK(c["certificates"].size() == 265);
    }
  CHECK(saw);
  CHECK(run("threepoint det -n 6 --emit h").code == 2);
}

TEST_CASE("polytope and designs subcommands") {
  const auto nb = result(run("--no-meta polytope neighborly -n 6 -k 3 -t 2"));
  CHECK(nb["neighborly"] == 3);
  CHECK(nb["non_face"].size() == 4);
  const auto vol = result(run("--no-meta polytope volume -n 6 -k 3 -t 2"));
  CHECK(vol["volume"] == "162");
  const auto face = result(run("--no-meta polytope faces -n 6 -k 3 -t 2 --subset 136 246 145 235"));
  CHECK(face["face"] == false);
  const auto sup = result(run("--no-meta designs support -n 6 -k 3 -t 2"));
  CHECK(sup["min_plus_support"] == 4);
  CHECK(sup["witness_is_pod"] == true);
}

TEST_CASE("acceptance subcommand prints one line per criterion") {
  const auto r = run("--format text acceptance --criterion 1 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS  criterion 1 ") != std::string::npos);
  CHECK(r.out.find("PASS  criterion 3 ") != std::string::npos);
  CHECK(run("acceptance").code == 2);
}
