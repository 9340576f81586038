#include <catch_amalgamated.hpp>

#include "fockcalc/ncpoly.hpp"
#include "fockcalc/random_gen.hpp"

using namespace fockcalc;

namespace {
NCPoly f0() { return sym(jet_value(JetBase::F, 1)); }
NCPoly g0() { return sym(jet_value(JetBase::G, 1)); }
NCPoly d(JetBase b, int z, int zb) { return sym(jet(b, {z}, {zb})); }
}  // namespace

TEST_CASE("jet words do not commute") {
  const NCPoly s = f0() * g0() + g0() * f0();
  CHECK(s.size() == 2);
  CHECK(f0() * g0() != g0() * f0());
  CHECK(to_string(f0() * g0()) == "f·g");
}

TEST_CASE("tensor symbols commute with jets") {
  const NCPoly a = NCPoly::tensor(TensorSymbol{TensorKind::A, 1, 1, 2});
  CHECK(a * f0() == f0() * a);
  CHECK((a * f0()).has_tensors());
  CHECK(to_string(a * f0()) == "A_112·f");
}

TEST_CASE("opposite terms cancel") {
  const NCPoly x = Scalar(2) * Scalar::pi() * f0();
  CHECK((x + (-x)).is_zero());
}

TEST_CASE("Leibniz expansion of product jets") {
  CHECK(leibniz_expand(d(JetBase::FG, 0, 0)) == f0() * g0());
  CHECK(leibniz_expand(d(JetBase::FG, 1, 0)) == d(JetBase::F, 1, 0) * g0() + f0() * d(JetBase::G, 1, 0));
  CHECK(leibniz_expand(d(JetBase::GF, 0, 1)) == d(JetBase::G, 0, 1) * f0() + g0() * d(JetBase::F, 0, 1));
  const NCPoly mixed = leibniz_expand(d(JetBase::FG, 1, 1));
  CHECK(mixed.size() == 4);
  CHECK(mixed == d(JetBase::F, 1, 1) * g0() + d(JetBase::F, 1, 0) * d(JetBase::G, 0, 1) +
                     d(JetBase::F, 0, 1) * d(JetBase::G, 1, 0) + f0() * d(JetBase::G, 1, 1));
  CHECK(leibniz_expand(d(JetBase::FG, 2, 0)) ==
        d(JetBase::F, 2, 0) * g0() + Scalar(2) * d(JetBase::F, 1, 0) * d(JetBase::G, 1, 0) + f0() * d(JetBase::G, 2, 0));
  CHECK(leibniz_expand(d(JetBase::FG, 1, 0), 0) == d(JetBase::FG, 1, 0));
}

TEST_CASE("role swap and commutative image") {
  CHECK(swap_roles(f0() * d(JetBase::FG, 1, 0)) == g0() * d(JetBase::GF, 1, 0));
  CHECK(commutative_image(g0() * f0() - f0() * g0()).is_zero());
}

TEST_CASE("jet names") {
  CHECK(jet_name(jet(JetBase::F, {1, 0}, {0, 2})) == "f_z1zbar2zbar2");
  CHECK(jet_name(jet(JetBase::FG, {0}, {1})) == "(fg)_zbar");
}

TEST_CASE("ring axioms on random polynomials") {
  Rng rng(seed_from_env());
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const NCPoly a = random_ncpoly(rng, n, 3, 2, true);
    const NCPoly b = random_ncpoly(rng, n, 3, 2, true);
    const NCPoly c = random_ncpoly(rng, n, 3, 2, true);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a + b == b + a);
    CHECK(leibniz_expand(a * b) == leibniz_expand(a) * leibniz_expand(b));
    CHECK(swap_roles(swap_roles(a)) == a);
  }
}
