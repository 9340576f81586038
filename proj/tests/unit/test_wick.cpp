#include <catch_amalgamated.hpp>

#include "fockcalc/random_gen.hpp"
#include "fockcalc/wick.hpp"

using namespace fockcalc;

TEST_CASE("reproducing property") {
  for (int n = 1; n <= 3; ++n) CHECK(wick_compose(KernelPoly::id(n), KernelPoly::id(n)) == KernelPoly::id(n));
}

TEST_CASE("Gaussian moments") {
  // int zbar'' z'' P(Z,Z'')P(Z'',Z') = (1/pi + z zbar') P(Z,Z')
  const auto m = detail::gaussian_moment(1, 1);
  REQUIRE(m.size() == 2);
  CHECK(m.at({0, 0}) == Scalar::pi_power(-1));
  CHECK(m.at({1, 1}) == Scalar(1));
  const auto m0 = detail::gaussian_moment(2, 0);
  REQUIRE(m0.size() == 1);
  CHECK(m0.at({2, 0}) == Scalar(1));
}

TEST_CASE("table line via moments") {
  const KernelPoly ID = KernelPoly::id(2);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      CHECK(wick_compose(zp(2, i) * ID, zbar(2, j) * ID) ==
            Scalar(i == j ? 1 : 0) * Scalar::pi_power(-1) * ID + z(2, i) * zbarp(2, j) * ID);
}

TEST_CASE("agrees with the normal-form composition") {
  Rng rng(seed_from_env());
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 2;
    const KernelPoly f = random_kernel(rng, n, 3, true);
    const KernelPoly g = random_kernel(rng, n, 3, true);
    CHECK(compose(f, g) == wick_compose(f, g));
  }
}
