#include <catch_amalgamated.hpp>

#include "fockcalc/random_gen.hpp"
#include "fockcalc/table.hpp"

using namespace fockcalc;

namespace {
const Scalar kPi = Scalar::pi();
Scalar inv_pi() { return Scalar::pi_power(-1); }
}  // namespace

TEST_CASE("creation operator on simple kernels") {
  const KernelPoly one = KernelPoly::one(1);
  CHECK(apply_b(1, one) == Scalar(2) * kPi * (zbar(1, 1) - zbarp(1, 1)) * one);
  CHECK(apply_b(1, z(1, 1) * one) ==
        Scalar(-2) * one + Scalar(2) * kPi * (zbar(1, 1) - zbarp(1, 1)) * z(1, 1) * one);
  const KernelPoly one2 = KernelPoly::one(2);
  CHECK(apply_b(1, z(2, 2) * one2) == Scalar(2) * kPi * (zbar(2, 1) - zbarp(2, 1)) * z(2, 2) * one2);
}

TEST_CASE("annihilation operator on simple kernels") {
  const KernelPoly one = KernelPoly::one(2);
  CHECK(apply_b_plus(1, one).is_zero());
  CHECK(apply_b_plus(1, zbar(2, 1) * one) == Scalar(2) * one);
  CHECK(apply_b_plus(1, z(2, 2) * one).is_zero());
  CHECK(apply_b_plus(1, z(2, 1) * one).is_zero());
}

TEST_CASE("commutator of b+ and b") {
  Rng rng(seed_from_env());
  for (int t = 0; t < 30; ++t) {
    const KernelPoly f = random_kernel(rng, 2, 3, false);
    for (int i = 1; i <= 2; ++i) {
      for (int j = 1; j <= 2; ++j) {
        const KernelPoly c = apply_b_plus(i, apply_b(j, f)) - apply_b(j, apply_b_plus(i, f));
        CHECK(c == (i == j ? Scalar(4) * kPi * f : KernelPoly(2)));
      }
    }
  }
}

TEST_CASE("normal form of zbar times the Gaussian") {
  const BNormalForm b = to_b_normal_form(zbar(1, 1) * KernelPoly::id(1));
  REQUIRE(b.terms.size() == 2);
  CHECK(b.terms.at({{1}, {0}}) == Scalar::rational(1, 2) * inv_pi() * KernelPoly::id(1));
  CHECK(b.terms.at({{0}, {0}}) == zbarp(1, 1) * KernelPoly::id(1));
  const BNormalForm zb = to_b_normal_form(z(2, 1) * z(2, 2) * KernelPoly::id(2));
  REQUIRE(zb.terms.size() == 1);
  CHECK(zb.terms.begin()->first.first == MultiIndex{0, 0});
}

TEST_CASE("one recursion step for zbar z") {
  const KernelPoly ID = KernelPoly::id(1);
  const KernelPoly expected = Scalar::rational(1, 2) * inv_pi() * apply_b(1, z(1, 1) * ID) + inv_pi() * ID +
                              zbarp(1, 1) * z(1, 1) * ID;
  CHECK(from_b_normal_form(to_b_normal_form(zbar(1, 1) * z(1, 1) * ID)) == zbar(1, 1) * z(1, 1) * ID);
  CHECK(expected == zbar(1, 1) * z(1, 1) * ID);
}

TEST_CASE("normal form round trip") {
  Rng rng(seed_from_env() + 2);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + t % 2;
    const KernelPoly f = random_kernel(rng, n, 4, true);
    CHECK(from_b_normal_form(to_b_normal_form(f)) == f);
  }
}

TEST_CASE("projection") {
  const KernelPoly ID = KernelPoly::id(2);
  CHECK(project(zbar(2, 1) * ID) == zbarp(2, 1) * ID);
  CHECK(project(z(2, 1) * z(2, 2) * ID) == z(2, 1) * z(2, 2) * ID);
  CHECK(project(zbar(2, 2) * z(2, 2) * ID) == inv_pi() * ID + zbarp(2, 2) * z(2, 2) * ID);
  CHECK(project(zbar(2, 2) * z(2, 1) * ID) == zbarp(2, 2) * z(2, 1) * ID);
}

TEST_CASE("composition examples") {
  for (int n = 1; n <= 2; ++n) {
    const KernelPoly ID = KernelPoly::id(n);
    CHECK(compose(ID, ID) == ID);
    CHECK(compose(KernelPoly::one(n), KernelPoly::one(n)) == KernelPoly::one(n));
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        CHECK(compose(zp(n, i) * ID, zbar(n, j) * ID) ==
              Scalar(i == j ? 1 : 0) * inv_pi() * ID + z(n, i) * zbarp(n, j) * ID);
        CHECK(compose(ID, zbar(n, i) * zbar(n, j) * ID) == zbarp(n, i) * zbarp(n, j) * ID);
      }
    }
  }
}

TEST_CASE("kernel-calculus table") {
  for (int n = 1; n <= 3; ++n) {
    const auto lines = kernel_table(n);
    CHECK(lines.size() == 11);
    for (const auto& l : lines) {
      INFO(l.identity << " " << l.failure);
      CHECK(l.pass);
    }
  }
}

TEST_CASE("composition rules on random kernels") {
  Rng rng(seed_from_env() + 3);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 2;
    const KernelPoly F = random_kernel(rng, n, 2, true, 2);
    const KernelPoly G = random_kernel(rng, n, 2, true, 2);
    const KernelPoly H = random_kernel(rng, n, 2, true, 2);
    CHECK(compose(compose(F, G), H) == compose(F, compose(G, H)));
    const auto [q, qp] = random_scalar_poly_pair(rng, n);
    CHECK(compose(F, q * G) == compose(qp * F, G));
    const NCPoly A = random_ncpoly(rng, n, 2, 2);
    const KernelPoly S = random_kernel(rng, n, 2, false, 2);
    CHECK(compose(S * A, F) == compose(S, A * F));
    CHECK(compose(F * A, S) == compose(F, S) * A);
  }
}

TEST_CASE("spectrum of the model operator") {
  const FockFunction gauss = FockFunction::monomial(1, {0}, {0});
  CHECK(apply_L(gauss).poly().is_zero());
  const FockFunction b1 = apply_b(1, gauss);
  CHECK(apply_L(b1).poly() == Scalar(4) * kPi * b1.poly());
  for (int n = 1; n <= 2; ++n) {
    for (int da = 0; da <= 3; ++da) {
      for (int db = 0; da + db <= 3; ++db) {
        for (const auto& alpha : indices_of_degree(n, da)) {
          for (const auto& beta : indices_of_degree(n, db)) {
            const FockFunction s(b_power_on_monomial(n, alpha, beta).at_primed_zero());
            CHECK(apply_L(s).poly() == Scalar(4 * da) * kPi * s.poly());
          }
        }
      }
    }
  }
  const KernelPoly top = KernelPoly::constant(2, wedge(2, 1) * wedge(2, 2) * id_projection(2));
  CHECK(apply_L02(top) == Scalar(8) * kPi * top);
}

TEST_CASE("inverse of L02 on the complement of its kernel") {
  const KernelPoly ID = KernelPoly::id(1);
  CHECK(invert_L02_perp(ID).is_zero());
  CHECK(invert_L02_perp(z(1, 1) * ID).is_zero());
  CHECK(invert_L02_perp(zbar(1, 1) * ID) == Scalar::rational(1, 4) * inv_pi() * (zbar(1, 1) - zbarp(1, 1)) * ID);
  CHECK(invert_L02_perp(zbar(1, 1) * ID, 2) ==
        Scalar::rational(1, 16) * Scalar::pi_power(-2) * (zbar(1, 1) - zbarp(1, 1)) * ID);

  Rng rng(seed_from_env() + 4);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 2;
    const KernelPoly f = random_kernel(rng, n, 3, true);
    CHECK(apply_L02(invert_L02_perp(f)) + L02_kernel_component(f) == f);
  }
}

TEST_CASE("real coordinates") {
  const KernelPoly zr = real_coordinate(2, 3) + Scalar::imag_unit() * real_coordinate(2, 4);
  CHECK(zr == z(2, 2));
  CHECK(real_coordinate_primed(1, 1) == Scalar::rational(1, 2) * (zp(1, 1) + zbarp(1, 1)));
  CHECK_THROWS_AS(real_coordinate(1, 3), std::out_of_range);
}

TEST_CASE("sections reject primed variables") {
  CHECK_THROWS_AS(FockFunction(zp(1, 1)), std::invalid_argument);
}
