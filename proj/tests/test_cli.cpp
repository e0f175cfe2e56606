#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"
#include "ncdiff/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = ncdiff::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

// Scratch files that live for the whole test binary.
fs::path scratch(const std::string& name, const std::string& body) {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("ncdiff_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  const auto path = dir / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("bell") {
  auto r = run({"bell", "--side", "left", "--n", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "s^2 + D(s)\n");
  CHECK(r.err.empty());
  CHECK(run({"bell", "--side", "right", "--n", "2"}).out == "s^2 - D(s)\n");
  CHECK(run({"bell", "--side", "gen", "--n", "4", "--k", "2"}).out == "s^2 + 4*D(s)\n");
  CHECK(run({"--gens", "s,u", "bell", "--n", "2", "--s", "u*s"}).out == "u*s*u*s + D(u)*s + u*D(s)\n");
}

TEST_CASE("divide") {
  const auto d2 = scratch("d2.op", "a[2] = e\n").string();
  auto r = run({"divide", "--side", "right", d2, "--s", "s"});
  CHECK(r.code == 0);
  CHECK(r.out == "quotient: D + s\nremainder: s^2 + D(s)\n");
  CHECK(run({"divide", "--side", "left", d2}).out == "quotient: D + s\nremainder: s^2 - D(s)\n");
}

TEST_CASE("darboux and burgers") {
  const auto d2 = scratch("d2.op", "a[2] = e\n").string();
  auto r = run({"darboux", d2});
  CHECK(r.code == 0);
  CHECK(r.out == "a[2]=e, a[1]=0, a[0]=2*D(s)\nburgers: 2*D(s)*s + D^2(s)\n");
  CHECK(run({"burgers", d2}).out == "2*D(s)*s + D^2(s)\n");
  const auto op = scratch("d2u.op", "a[2] = e\na[1] = u\n").string();
  CHECK(run({"--gens", "s,u", "darboux", "--audit", op}).out.find("audit: consistent\n") != std::string::npos);
  const auto lit = run({"--gens", "s,u", "darboux", "--audit", "--reading", "from-k", op});
  CHECK(lit.code == 0);
  CHECK(lit.out.find("audit: a[1] differs\n") != std::string::npos);
  CHECK(lit.out.find("difference: u\n") != std::string::npos);
}

TEST_CASE("factor-check") {
  const auto exact = scratch("exact.op", "a[2] = e\na[0] = -(s^2 + D(s))\n").string();
  CHECK(run({"factor-check", exact}).out == "riccati: 0\nfactorizes: yes\n");
  const auto d2 = scratch("d2.op", "a[2] = e\n").string();
  CHECK(run({"factor-check", "--side", "left", d2}).out == "riccati: s^2 - D(s)\nfactorizes: no\n");
  const auto phi = scratch("phi.jet", "entry[0][0] = 1 + x\n").string();
  auto r = run({"--ring", "jet", "--x-order", "8", "factor-check", d2, "--phi", phi});
  CHECK(r.code == 0);
  CHECK(r.out.find("remainder:\njet dim=1") != std::string::npos);
  const auto bad = scratch("bad.jet", "entry[0][0] = 1 + x^2\n").string();
  r = run({"--ring", "jet", "factor-check", d2, "--phi", bad});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("kernel") != std::string::npos);
}

TEST_CASE("propagate and verify-matveev") {
  const auto d2 = scratch("d2.op", "a[2] = e\n").string();
  const auto phi = scratch("cosh.jet",
                           "entry[0][0] = 1 + 1/2*x^2 + 1/24*x^4 + 1/720*x^6 + 1/40320*x^8 + 1/3628800*x^10 + "
                           "1/479001600*x^12\n")
                       .string();
  const auto psi = scratch("lin.jet", "entry[0][0] = 1 + 3*x\n").string();
  auto r = run({"--ring", "jet", "--x-order", "6", "propagate", d2, "--phi0", phi, "--t-order", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("bijet dim=1 t-order=2 x-orders=6,4,2\n", 0) == 0);
  CHECK(r.out.find("t^2 x^0: 1/2\n") != std::string::npos);
  r = run({"--x-order", "16", "verify-matveev", d2, "--phi0", phi, "--psi0", psi, "--t-order", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("residual: zero\nburgers: zero\n") != std::string::npos);
  r = run({"--x-order", "4", "propagate", d2, "--phi0", phi, "--t-order", "3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") == 0);
}

TEST_CASE("json output") {
  auto r = run({"--json", "bell", "--n", "2"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.contains("terms"));
  CHECK(doc["terms"].size() == 2);
  CHECK(doc["terms"][0]["coeff"] == "1");
  CHECK(doc["terms"][0]["word"].size() == 2);
  const auto d2 = scratch("d2.op", "a[2] = e\n").string();
  const auto div = nlohmann::json::parse(run({"--json", "divide", d2}).out);
  CHECK(div["quotient"]["order"] == 1);
  CHECK(div["quotient"]["coeffs"].size() == 2);
  CHECK(div["exact"] == false);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"bell"}).code == 2);
  CHECK(run({"bell", "--n", "2", "--side", "up"}).code == 2);
  CHECK(run({"--ring", "quantum", "bell", "--n", "1"}).code == 2);
  CHECK(run({"divide", "/nonexistent.op"}).code == 2);
  CHECK(run({"--gens", "D", "bell", "--n", "1"}).code == 2);
  CHECK(run({"bell", "--n", "2", "--side", "gen"}).code == 2);
  CHECK(run({"bell", "--n", "2", "--side", "gen", "--k", "3"}).code == 1);
  CHECK(run({"bell", "--n", "-1"}).code == 1);
  auto r = run({"bell", "--n", "2", "--s", "D^2(q"});
  CHECK(r.code == 1);
  CHECK(r.err == "error: offset 4: undeclared generator 'q'\n");
  CHECK(r.out.empty());
  const auto dup = scratch("dup.op", "a[1] = e\na[1] = s\n").string();
  r = run({"divide", dup});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 2") != std::string::npos);
  const auto order0 = scratch("zero.op", "a[0] = s\n").string();
  CHECK(run({"divide", order0}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output is deterministic") {
  const auto op = scratch("d4.op", "a[4] = e\na[2] = u\na[1] = 3*s*u\n").string();
  const auto first = run({"--gens", "s,u", "darboux", op});
  for (int i = 0; i < 3; ++i) CHECK(run({"--gens", "s,u", "darboux", op}).out == first.out);
}
