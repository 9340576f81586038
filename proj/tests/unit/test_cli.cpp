#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fockcalc/cli.hpp"

using namespace fockcalc;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "fockcalc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_with_args(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("fockcalc_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("table") {
  const Outcome r = run_args({"table", "--n", "2"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  int pass = 0;
  for (std::string line; std::getline(lines, line);) {
    CHECK(line.rfind("PASS", 0) == 0);
    ++pass;
  }
  CHECK(pass == 11);
}

TEST_CASE("c1 from a symbolic jet file") {
  const std::string path = temp_file("sym.json", R"({"n": 1, "f": "sym", "g": "sym"})");
  const Outcome r = run_args({"c1", "--jets", path, "--n", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"c1\":\"-(1/π)·f_z·g_zbar\",\"match\":true}\n");
  CHECK(run_args({"c1", "--jets", path, "--n", "2"}).code == 2);

  const Outcome swapped = run_args({"c1", "--n", "1", "--swap"});
  CHECK(swapped.out.find("-(1/π)·g_z·f_zbar") != std::string::npos);
  const Outcome details = run_args({"c1", "--n", "2", "--details", "--literal-l2"});
  const json j = json::parse(details.out);
  CHECK(j["match"] == true);
  CHECK(j["I"].size() == 4);
  CHECK(j["l2_reading"] == "literal");
}

TEST_CASE("c1 with matrix jets") {
  const std::string path = temp_file(
      "mat.json", R"({"n": 1, "f": {"dz": [[[0, 1], [1, 0]]]}, "g": {"dzbar": [[[1, 2], [3, 4]]]}})");
  const Outcome r = run_args({"c1", "--jets", path});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["numeric_match"] == true);
  CHECK(j["numeric"][0][0][0].get<double>() == Catch::Approx(-3.0 / M_PI));
}

TEST_CASE("compose and project") {
  const std::string a = temp_file("a.json", R"({"n": 1, "terms": [{"zp": [1], "value": "ID"}]})");
  const std::string b = temp_file("b.json", R"({"n": 1, "terms": [{"zbar": [1], "value": "ID"}]})");
  const Outcome r = run_args({"compose", "--a", a, "--b", b});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["wick_agrees"] == true);
  CHECK(j["text"] == "(1/π)·ID + ID·z·zbar'");
  CHECK(kernel_from_json(j["result"]) == Scalar::pi_power(-1) * KernelPoly::id(1) + z(1, 1) * zbarp(1, 1) * KernelPoly::id(1));

  const Outcome p = run_args({"project", "--a", b});
  CHECK(json::parse(p.out)["text"] == "ID·zbar'");

  const std::string out = (std::filesystem::temp_directory_path() / "fockcalc_test_out.json").string();
  CHECK(run_args({"project", "--a", b, "-o", out}).code == 0);
  std::ifstream in(out);
  CHECK(json::parse(in)["text"] == "ID·zbar'");
}

TEST_CASE("poisson") {
  const Outcome r = run_args({"poisson", "--n", "2"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["match"] == true);
}

TEST_CASE("fock-verify") {
  const std::string csv = (std::filesystem::temp_directory_path() / "fockcalc_test.csv").string();
  const Outcome r = run_args({"fock-verify", "--p", "32,64,128", "--csv", csv});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["ladder"]["max_deviation"].get<double>() <= 1e-10);
  CHECK(j["T1_identity"] == true);
  CHECK(j["hermitian"] == true);
  CHECK(j["commutator"]["pass"] == true);
  CHECK(j["pairs"].size() == 9);
  CHECK(j["pairs"][0]["mode"] == "exact");
  CHECK(j["pairs"][8]["mode"] == "first-order");
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "f,g,p,max_abs_E,order_estimate,ratio");

  const Outcome strict = run_args({"fock-verify", "--pair", "z^2+zbar;zbar^2+z*zbar", "--ratio-min", "2.5"});
  CHECK(strict.code == 1);
  CHECK(json::parse(strict.err)["error"]["kind"] == "check_failed");
}

TEST_CASE("errors are JSON") {
  const std::string bad = temp_file("bad.json", "{not json");
  const Outcome r = run_args({"project", "--a", bad});
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["error"]["kind"] == "parse_error");
  const Outcome u = run_args({"frobnicate"});
  CHECK(u.code == 2);
  CHECK(json::parse(u.err)["error"]["kind"] == "usage");
  const Outcome pair = run_args({"fock-verify", "--pair", "z"});
  CHECK(pair.code == 2);
}

TEST_CASE("output is deterministic") {
  CHECK(run_args({"c1", "--n", "2", "--details"}).out == run_args({"c1", "--n", "2", "--details"}).out);
}
