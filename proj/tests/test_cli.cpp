#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "opuc/cli.hpp"

using opuc::cplx;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = opuc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("complex parsing") {
  CHECK(opuc::cli::parse_complex("1.0,0.5", "z") == cplx{1.0, 0.5});
  CHECK(opuc::cli::parse_complex("-0.25", "z") == cplx{-0.25});
  CHECK_THROWS(opuc::cli::parse_complex("1,x", "z"));
  CHECK_THROWS(opuc::cli::parse_complex("", "z"));
  CHECK_THROWS_WITH(opuc::cli::parse_coefficients("[[0.5, 0], [1]]"), doctest::Contains("alpha[1]"));
  CHECK_THROWS_WITH(opuc::cli::parse_coefficients("{\"a\": []}"), doctest::Contains("alpha"));
  CHECK_THROWS_WITH(opuc::cli::parse_coefficients("{\"alpha\": [], \"terminal_unimodular\": 3}"),
                    doctest::Contains("terminal_unimodular"));
  const auto t = opuc::cli::parse_coefficients("{\"alpha\": [[0.1, 0.2], [0, 1]], \"terminal_unimodular\": true}");
  CHECK(t.terminal_unimodular());
}

TEST_CASE("family") {
  const Run a = cli({"family", "--alpha", "0.5"});
  CHECK(a.code == 0);
  CHECK(a.out.find("Phi_1 = [-0.5,0; 1,0]") != std::string::npos);

  const Run e = cli({"family"});
  CHECK(e.code == 0);
  CHECK(e.out.find("n = 1") == std::string::npos);
  CHECK(e.out.find("Phi_0 = [1,0]") != std::string::npos);

  const std::string path = temp_file("opuc_family.json", "[[0.5,0],[0,0.3]]");
  const Run j = cli({"family", "--input", path, "--format", "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  const auto& phi2 = doc[2]["Phi"];
  CHECK(phi2[0][1].get<double>() == doctest::Approx(0.3));
  CHECK(phi2[1][0].get<double>() == doctest::Approx(-0.5));
  CHECK(phi2[1][1].get<double>() == doctest::Approx(-0.15));
  CHECK(phi2[2][0].get<double>() == 1.0);

  CHECK(cli({"family", "--input", temp_file("opuc_bad.json", "[[0.5]]")}).err.find("alpha[0]") != std::string::npos);
  CHECK(cli({"family", "--input", "/nonexistent/x.json"}).code == 2);
  CHECK(cli({"family", "--alpha", "1.5"}).code == 2);
  CHECK(cli({"family", "--alpha", "0.5", "--n-max", "3"}).code == 2);
}

TEST_CASE("bracket") {
  const Run p = cli({"bracket", "--alpha", "0.3,0.1", "--alpha", "0.2", "--alpha", "-0.1,0.4", "--id", "thm.PhiPhi",
                     "--n", "2", "--z", "0.5,1", "--w", "-1.2,0.1"});
  CHECK(p.code == 0);
  CHECK(p.out.find("PASS") != std::string::npos);

  const Run f = cli({"bracket", "--alpha", "0", "--alpha", "0", "--id", "prop26.AAstar", "--n", "0", "--z", "0.3,0.2",
                     "--w", "-1,0.5"});
  CHECK(f.code == 0);
  CHECK(f.out.find("rhs 0,-1\n") != std::string::npos);

  const Run g = cli({"bracket", "--alpha", "0.5,0.1", "--alpha", "0.2", "--alpha", "0.1", "--id", "prop27.gamma", "--q",
                     "2", "--n", "1", "--z", "1,0.3", "--w", "0.5"});
  CHECK(g.code == 0);

  const Run d = cli({"bracket", "--alpha", "0.5", "--alpha", "0.2", "--id", "thm.PhiPsi", "--z", "1", "--w", "1"});
  CHECK(d.code == 2);
  CHECK(d.err.find("diag.PhiPsi") != std::string::npos);

  const Run h = cli({"bracket", "--alpha", "0.5", "--alpha", "0.1,-0.2", "--pair", "Phi,PhiStar", "--n", "1", "--z", "2",
                     "--w", "1"});
  CHECK(h.code == 0);
  CHECK(h.out.find("lhs 0,0.75") != std::string::npos);

  CHECK(cli({"bracket", "--alpha", "0.5", "--pair", "alpha:3,Phi"}).code == 2);
  CHECK(cli({"bracket", "--alpha", "0.5", "--alpha", "0.2", "--pair", "alphabar:0,alpha:0"}).out.find("lhs 0,0.75") !=
        std::string::npos);
  CHECK(cli({"bracket", "--alpha", "0.5", "--id", "thm.nope"}).code == 2);
}

TEST_CASE("verify") {
  const Run ok = cli({"verify", "--trials", "5", "--n-max", "4", "--format", "csv"});
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("id,n,trial,", 0) == 0);

  const Run bad = cli({"verify", "--trials", "5", "--tol", "thm.PhiPsiStar=1e-30"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("failures:") != std::string::npos);

  CHECK(cli({"verify", "--tol", "thm.PhiPsiStar"}).code == 2);
  CHECK(cli({"verify", "--format", "xml"}).code == 2);
  CHECK(cli({"verify", "--trials", "2", "--output", "/nonexistent/dir/r.json"}).code == 2);
  CHECK(cli({"verify", "--bogus"}).code == 2);
  CHECK(cli({}).code == 2);

  const Run a = cli({"verify", "--trials", "3", "--seed", "17", "--format", "json"});
  const Run b = cli({"verify", "--trials", "3", "--seed", "17", "--format", "json"});
  CHECK(a.out == b.out);
  setenv("OPUC_SEED", "17", 1);
  CHECK(cli({"verify", "--trials", "3", "--format", "json"}).out == a.out);
  setenv("OPUC_SEED", "oops", 1);
  CHECK(cli({"verify", "--trials", "3"}).code == 2);
  unsetenv("OPUC_SEED");
}

TEST_CASE("flow") {
  const Run z = cli({"flow", "--alpha", "0.3,0.2", "--alpha", "0.1", "--steps", "0", "--format", "csv"});
  CHECK(z.code == 0);
  CHECK(z.out == "step,t,alpha0_re,alpha0_im,alpha1_re,alpha1_im,R_n,abs_alpha_last,D_re,D_im\n"
                 "0,0,0.29999999999999999,0.20000000000000001,0.10000000000000001,0,1.0721125348377949,"
                 "0.10000000000000001,2.0600000000000001,0\n");

  const Run j = cli({"flow", "--alpha", "0.3,0.2", "--alpha", "-0.4,0.1", "--alpha", "0.2,-0.5", "--n", "2",
                     "--hamiltonian", "disc_re", "--z", "0.8,0.6", "--dt", "0.01", "--steps", "40", "--format", "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  const auto& traj = doc["trajectory"];
  CHECK(traj.size() == 41);
  for (const auto& row : traj) CHECK(row["abs_alpha_last"] == traj[0]["abs_alpha_last"]);

  const Run x = cli({"flow", "--alpha", "0.99", "--alpha", "0.1", "--dt", "10", "--steps", "3"});
  CHECK(x.code == 1);
  CHECK(x.err.find("step 1") != std::string::npos);

  CHECK(cli({"flow", "--alpha", "0.3", "--hamiltonian", "energy"}).code == 2);
  CHECK(cli({"flow", "--alpha", "0.3", "--dt", "-1"}).code == 2);
}
