#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "hilb/cli.hpp"

using nlohmann::ordered_json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = hilb::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp_spec(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path);
  f << body;
  return path.string();
}

}  // namespace

TEST_CASE("cli: character state at one point") {
  auto r = run({"state", "--class", "ch", "--n", "1", "--abstract"});
  CHECK(r.code == 0);
  CHECK(r.out == "2 q1(1)\n-1 q1(K)\n");
  CHECK(r.err.empty());

  // the ch subcommand is a shorthand for the same thing
  auto r2 = run({"ch", "--n", "1", "--abstract"});
  CHECK(r2.code == 0);
  CHECK(r2.out == r.out);

  // abstract is the default surface
  auto r3 = run({"ch", "--n", "1"});
  CHECK(r3.out == r.out);

  CHECK(run({"ch", "--n", "0"}).out == "0\n");
}

TEST_CASE("cli: coefficient tables, text form") {
  auto chern = run({"coeffs", "--class", "chern", "--order", "5"});
  CHECK(chern.code == 0);
  CHECK(chern.out.find("a: 1 0 -1/3 0 2/5\n") != std::string::npos);

  auto ch = run({"coeffs", "--class", "ch", "--order", "4"});
  CHECK(ch.code == 0);
  CHECK(ch.out.find("a: 2 0 1/3 0\n") != std::string::npos);
  CHECK(ch.out.find("b: -1 -1 -1/6 -1/6\n") != std::string::npos);
  CHECK(ch.out.find("akl[1]: -3/2") != std::string::npos);

  auto trivial = run({"coeffs", "--class", "trivial", "--order", "3"});
  CHECK(trivial.out.find("a: 1 0 0\n") != std::string::npos);
  CHECK(trivial.out.find("b: 0 0 0\n") != std::string::npos);

  auto taut = run({"coeffs", "--class", "chern", "--order", "3", "--kind", "taut"});
  CHECK(taut.code == 0);
  CHECK(taut.out.find("c: 1 -1/2 1/3\n") != std::string::npos);
}

TEST_CASE("cli: states over concrete surfaces") {
  auto r = run({"state", "--class", "chern", "--n", "0"});
  CHECK(r.code == 0);
  CHECK(r.out == "1 |0>\n");

  CHECK(run({"state", "--class", "chern", "--n", "1", "--gamma", "2"}).out ==
        "1 q1(1)\n");
  CHECK(run({"state", "--class", "todd", "--n", "1", "--abstract"}).out ==
        "1 q1(1)\n-1/2 q1(K)\n");
  CHECK(run({"taut", "--class", "chern", "--n", "1", "--gamma", "2"}).out ==
        "1 q1(1)\n1 q1(h)\n");
  CHECK(run({"taut", "--class", "trivial", "--n", "1", "--abstract"}).out ==
        "1 q1(1)\n");
}

TEST_CASE("cli: json output round-trips through a parser") {
  auto r = run({"coeffs", "--class", "chern", "--order", "4", "--format", "json"});
  CHECK(r.code == 0);
  ordered_json j = ordered_json::parse(r.out);
  CHECK(j.dump(2) + "\n" == r.out);
  CHECK(j["class"] == "chern");
  CHECK(j["order"] == 4);
  CHECK(j["a"] == ordered_json::array({"1", "0", "-1/3", "0"}));
  CHECK(j["akl"][0][0] == "3/2");

  auto s = run({"state", "--class", "ch", "--n", "1", "--format", "json"});
  ordered_json terms = ordered_json::parse(s.out);
  REQUIRE(terms.is_array());
  REQUIRE(terms.size() == 2);
  CHECK(terms[0]["coeff"] == "2");
  CHECK(terms[0]["monomial"][0][0] == 1);
  CHECK(terms[0]["monomial"][0][1] == "1");
  CHECK(terms[1]["coeff"] == "-1");
  CHECK(terms[1]["monomial"][0][1] == "K");

  // diagonal generators carry an index pair
  auto d = run({"state", "--class", "chern", "--n", "2", "--format", "json"});
  ordered_json dt = ordered_json::parse(d.out);
  bool saw_diagonal = false;
  for (const auto& term : dt)
    for (const auto& gen : term["monomial"])
      if (gen[1] == "Q") {
        saw_diagonal = true;
        CHECK(gen[0] == ordered_json::array({1, 1}));
        CHECK(term["coeff"] == "3/2");
      }
  CHECK(saw_diagonal);
}

TEST_CASE("cli: byte-stable output") {
  std::vector<std::string> cmd{"coeffs", "--class", "todd", "--order", "6"};
  CHECK(run(cmd).out == run(cmd).out);
  std::vector<std::string> v{"verify", "--checks", "defw", "--gamma", "2",
                             "--class", "chern", "--order", "4"};
  auto r = run(v);
  CHECK(r.code == 0);
  CHECK(r.out == "check=defw gamma=2 class=chern order=4: PASS\n");
  CHECK(r.out == run(v).out);
}

TEST_CASE("cli: verify suite wiring") {
  auto r = run({"verify", "--checks", "cases", "--order", "10"});
  CHECK(r.code == 0);
  CHECK(r.out == "check=cases order=10: PASS\n");

  auto j = run({"verify", "--checks", "dual", "--order", "6", "--format", "json"});
  CHECK(j.code == 0);
  ordered_json arr = ordered_json::parse(j.out);
  REQUIRE(arr.size() == 1);
  CHECK(arr[0]["check"] == "dual");
  CHECK(arr[0]["pass"] == true);

  auto multi = run({"verify", "--checks", "z3,z2", "--class", "chern", "--order", "4"});
  CHECK(multi.code == 0);
  // canonical order regardless of how the list was written
  CHECK(multi.out == "check=z2 class=chern order=4: PASS\n"
                     "check=z3 class=chern order=4: PASS\n");
}

TEST_CASE("cli: spec files select their coefficient ring") {
  auto path = write_temp_spec("hilb_cli_spec_rat.json",
                              R"({"name":"half","f":["1/2","-1/3"]})");
  auto r = run({"coeffs", "--spec-file", path, "--order", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("class: half\n") != std::string::npos);
  CHECK(r.out.find("b: -1/2 11/12 1/4\n") != std::string::npos);

  auto too_small = run({"coeffs", "--spec-file", path, "--order", "1"});
  CHECK(too_small.code == 2);
  CHECK(too_small.err.find("beyond the requested order") != std::string::npos);

  auto dual_path = write_temp_spec(
      "hilb_cli_spec_dual.json",
      R"({"name":"eps_exp","ring":"dual","f":["eps","1/2*eps"]})");
  auto d = run({"coeffs", "--spec-file", dual_path, "--order", "3"});
  CHECK(d.code == 0);
  CHECK(d.out.find("b: -eps -eps 0\n") != std::string::npos);

  auto poly_path = write_temp_spec(
      "hilb_cli_spec_poly.json",
      R"({"name":"ytwist","ring":"poly_y:2","f":["y","y^2"]})");
  auto p = run({"coeffs", "--spec-file", poly_path, "--order", "3"});
  CHECK(p.code == 0);
  CHECK(p.out.find("b: -y -y^2 0\n") != std::string::npos);

  auto v = run({"verify", "--checks", "defw", "--gamma", "2", "--class", "chern",
                "--spec-file", path, "--order", "4"});
  CHECK(v.code == 0);
  CHECK(v.out == "check=defw gamma=2 class=chern order=4: PASS\n"
                 "check=defw gamma=2 class=half order=4: PASS\n");

  std::remove(path.c_str());
  std::remove(dual_path.c_str());
  std::remove(poly_path.c_str());
}

TEST_CASE("cli: usage and input errors exit with code 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"state", "--class", "nope", "--n", "1"}).code == 2);
  CHECK(run({"state", "--n", "1"}).code == 2);  // no class at all
  CHECK(run({"state", "--class", "chern"}).code == 2);  // --n is required
  CHECK(run({"state", "--class", "chern", "--n", "1", "--gamma", "1"}).code == 2);
  CHECK(run({"state", "--class", "chern", "--n", "1", "--gamma", "2", "--abstract"})
            .code == 2);
  CHECK(run({"verify", "--checks", "defw", "--gamma", "1"}).code == 2);
  CHECK(run({"verify", "--checks", "bogus"}).code == 2);
  CHECK(run({"verify", "--class", "ch"}).code == 2);  // ch is not a genus
  CHECK(run({"taut", "--class", "ch", "--n", "1"}).code == 2);
  CHECK(run({"coeffs", "--class", "ch", "--kind", "taut", "--order", "3"}).code == 2);
  CHECK(run({"coeffs", "--class", "chern", "--order", "0"}).code == 2);
  CHECK(run({"coeffs", "--class", "chern", "--spec-file", "x.json"}).code == 2);

  auto r = run({"state", "--class", "nope", "--n", "1"});
  CHECK(r.out.empty());
  CHECK(!r.err.empty());
}

TEST_CASE("cli: help goes to the output stream and exits cleanly") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("coeffs") != std::string::npos);
  CHECK(r.out.find("verify") != std::string::npos);

  auto rs = run({"state", "--help"});
  CHECK(rs.code == 0);
  CHECK(rs.out.find("--gamma") != std::string::npos);
}
