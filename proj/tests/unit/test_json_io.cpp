#include <catch_amalgamated.hpp>

#include "fockcalc/json_io.hpp"
#include "fockcalc/random_gen.hpp"

using namespace fockcalc;

TEST_CASE("jet and tensor strings") {
  const JetSymbol s = jet(JetBase::GF, {1, 0}, {0, 2});
  CHECK(jet_to_string(s) == "gf:1,0,0,2");
  CHECK(jet_from_string("gf:1,0,0,2") == s);
  CHECK_THROWS_AS(jet_from_string("h:0,0"), ParseError);
  CHECK_THROWS_AS(jet_from_string("f:1,0,0"), ParseError);
  const TensorSymbol t{TensorKind::B, 2, 1, 3};
  CHECK(tensor_from_string(tensor_to_string(t)) == t);
}

TEST_CASE("round trips on random data") {
  Rng rng(seed_from_env());
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + k % 2;
    NCPoly p = random_ncpoly(rng, n, 3, 3, true) + Scalar::pi() * NCPoly::tensor({TensorKind::A, 1, 1, n});
    CHECK(ncpoly_from_json(ncpoly_to_json(p)) == p);
    const ExtEnd e = random_extend(rng, n, true);
    CHECK(extend_from_json(extend_to_json(e), n) == e);
    const KernelPoly K = random_kernel(rng, n, 3, true);
    CHECK(kernel_from_json(kernel_to_json(K)) == K);
    CHECK(kernel_from_json(json::parse(kernel_to_json(K).dump())) == K);
  }
}

TEST_CASE("kernel shorthand values") {
  const json j = json::parse(R"({"n": 2, "terms": [{"zbar": [1, 0], "value": "ID"}, {"value": "1"}]})");
  CHECK(kernel_from_json(j) == zbar(2, 1) * KernelPoly::id(2) + KernelPoly::one(2));
  CHECK_THROWS_AS(kernel_from_json(json::parse(R"({"n": 2, "terms": [{"z": [1], "value": "ID"}]})")), ParseError);
  CHECK_THROWS_AS(kernel_from_json(json::parse(R"({"n": 1, "terms": [{"value": "Q"}]})")), ParseError);
  CHECK_THROWS_AS(kernel_from_json(json::parse(R"({"terms": []})")), ParseError);
}

TEST_CASE("jet files") {
  const Jet2 sym = jet2_from_json(json::parse(R"({"n": 2})"));
  CHECK(sym == Jet2::symbolic(2));

  const Jet2 pinned = jet2_from_json(json::parse(R"({"n": 1, "f": {"dz": [0], "val": 2.5}, "g": "sym"})"));
  CHECK(pinned.is_zero(jet_dz(JetBase::F, 1, 1)));
  CHECK(pinned.has_numeric());
  CHECK(pinned.numeric().at(jet_value(JetBase::F, 1))(0, 0) == std::complex<double>(2.5, 0.0));

  const Jet2 mat = jet2_from_json(json::parse(R"({"n": 1, "f": {"dzbar": [[[1, [0, 1]], [0, 2]]]}})"));
  CHECK(mat.numeric().at(jet_dzbar(JetBase::F, 1, 1))(0, 1) == std::complex<double>(0.0, 1.0));

  CHECK_THROWS_AS(jet2_from_json(json::parse(R"({"f": "sym"})")), ParseError);
  CHECK_THROWS_AS(jet2_from_json(json::parse(R"({"n": 2, "f": {"d2": {"zz": [[1, 2], [3, 4]]}}})")), ParseError);
  CHECK_THROWS_AS(jet2_from_json(json::parse(R"({"n": 1, "f": {"val": [[1, 2], [3, 4]]}, "g": {"val": 3}})")),
                  ParseError);
  CHECK_THROWS_AS(jet2_from_json(json::parse(R"({"n": 1, "f": {"dz": [1, 2]}})")), ParseError);
}

TEST_CASE("convergence rows") {
  const ConvergencePoint q{64, 0.5, 1.0, 2.0};
  const json j = convergence_to_json("z", "zbar", q);
  CHECK(j["p"] == 64);
  CHECK(j["order_estimate"] == 1.0);
  const std::string csv = convergence_csv({j, convergence_to_json("z", "zbar", ConvergencePoint{32, 1.0, {}, {}})});
  CHECK(csv.rfind("f,g,p,max_abs_E,order_estimate,ratio\n", 0) == 0);
  CHECK(csv.find("\"z\",\"zbar\",32,1,,\n") != std::string::npos);
}
