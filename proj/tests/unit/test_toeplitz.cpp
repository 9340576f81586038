#include <catch_amalgamated.hpp>

#include "fockcalc/random_gen.hpp"
#include "fockcalc/toeplitz.hpp"

using namespace fockcalc;

namespace {
constexpr int kD = 20;

SymbolPoly random_symbol(Rng& rng, int n) {
  SymbolPoly s(n);
  for (int t = 0; t < 3; ++t) {
    MultiIndex a = zero_index(n), b = zero_index(n);
    a[static_cast<std::size_t>(uniform_int(rng, 0, n - 1))] = uniform_int(rng, 0, 2);
    b[static_cast<std::size_t>(uniform_int(rng, 0, n - 1))] = uniform_int(rng, 0, 2);
    s.add(a, b, random_scalar(rng));
  }
  return s;
}
}  // namespace

TEST_CASE("symbol parser") {
  const SymbolPoly s = parse_symbol("z^2 + 2*zbar - i*(z*zbar)/2");
  CHECK(s == SymbolPoly::monomial({2}, {0}) + SymbolPoly::monomial({0}, {1}, Scalar(2)) +
                 SymbolPoly::monomial({1}, {1}, Scalar(GaussianRational(0, Rational(-1, 2)))));
  CHECK(parse_symbol("pi") == SymbolPoly::constant(1, Scalar::pi()));
  CHECK(parse_symbol("010") == SymbolPoly::constant(1, Scalar(10)));
  CHECK(parse_symbol("0.25*z") == SymbolPoly::monomial({1}, {0}, Scalar::rational(1, 4)));
  CHECK(parse_symbol("z2*zbar1", 2) == SymbolPoly::monomial({0, 1}, {1, 0}));
  CHECK_THROWS(parse_symbol("z3", 2));
  CHECK_THROWS(parse_symbol("z/zbar"));
  CHECK_THROWS(parse_symbol("z +"));
  CHECK(to_string(parse_symbol("z*zbar")) == "z·zbar");
}

TEST_CASE("symbol calculus") {
  const SymbolPoly f = parse_symbol("z^2*zbar");
  CHECK(f.derivative(true, 1) == parse_symbol("2*z*zbar"));
  CHECK(f.derivative(false, 1) == parse_symbol("z^2"));
  CHECK(f.conj() == parse_symbol("zbar^2*z"));
  CHECK(parse_symbol("z+zbar").is_real());
  CHECK_FALSE(parse_symbol("i*z").is_real());
  CHECK(c1_symbol(parse_symbol("z^2"), parse_symbol("zbar^2")) ==
        SymbolPoly::monomial({1}, {1}, Scalar(-4) * Scalar::pi_power(-1)));
}

TEST_CASE("monomial norms") {
  const BargmannBasis b(2, 5, 1);
  const auto [r, k] = b.norm_squared({3});
  CHECK(r == Rational(3, 8));
  CHECK(k == -3);
  const BargmannBasis b2(1, 3, 2);
  CHECK(b2.size() == 16);
  CHECK(b2.flat(b2.index(11)) == 11);
}

TEST_CASE("elementary Toeplitz matrices") {
  for (int p : {1, 7, 64}) {
    const BargmannBasis basis(p, kD, 1);
    const double pp = p * M_PI;
    const auto one = toeplitz_matrix(SymbolPoly::constant(1, Scalar(1)), basis).matrix;
    CHECK((one - Eigen::MatrixXcd::Identity(kD + 1, kD + 1)).norm() == 0.0);
    const auto n = toeplitz_matrix(parse_symbol("z*zbar"), basis).matrix;
    const auto zm = toeplitz_matrix(parse_symbol("z"), basis).matrix;
    const auto zbm = toeplitz_matrix(parse_symbol("zbar"), basis).matrix;
    for (int k = 0; k + 1 <= kD; ++k) {
      CHECK(n(k, k).real() == Catch::Approx((k + 1) / pp).epsilon(1e-13));
      CHECK(zm(k + 1, k).real() == Catch::Approx(std::sqrt((k + 1) / pp)).epsilon(1e-13));
      CHECK(std::abs(zm(k, k)) == 0.0);
    }
    const Eigen::MatrixXcd prod = zm * zbm;
    for (int k = 0; k < kD; ++k) CHECK(prod(k, k).real() == Catch::Approx(k / pp).margin(1e-14));
  }
}

TEST_CASE("adjoint symbols give adjoint matrices") {
  Rng rng(seed_from_env());
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + t % 2;
    const BargmannBasis basis(8, n == 1 ? kD : 6, n);
    const SymbolPoly f = random_symbol(rng, n);
    const Eigen::MatrixXcd a = toeplitz_matrix(f, basis).matrix;
    const Eigen::MatrixXcd b = toeplitz_matrix(f.conj(), basis).matrix;
    CHECK((a.adjoint() - b).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()));
    CHECK(is_hermitian(toeplitz_matrix(f + f.conj(), basis).matrix));
  }
}

TEST_CASE("truncation guard") {
  const BargmannBasis basis(4, 2, 1);
  CHECK_THROWS_WITH(toeplitz_matrix(parse_symbol("z^3"), basis), "truncation too small for symbol degree");
  CHECK_THROWS(expansion_check(parse_symbol("z^2"), parse_symbol("zbar^2"), {4}, 3));
}

TEST_CASE("ladder identity is exact") {
  for (int p : {32, 64, 128, 256}) CHECK(ladder_deviation(p, 40) <= 1e-10);
  const auto rep = expansion_check(parse_symbol("z"), parse_symbol("zbar"), {32, 64}, 40);
  for (const auto& q : rep.points) CHECK(q.max_abs_E <= 1e-10);
  const auto trivial = expansion_check(parse_symbol("1"), parse_symbol("1"), {32, 64}, 40);
  for (const auto& q : trivial.points) CHECK(q.max_abs_E == 0.0);
}

TEST_CASE("first-order remainder for a generic pair") {
  const auto rep = expansion_check(parse_symbol("z^2+zbar"), parse_symbol("zbar^2+z*zbar"), {32, 64, 128, 256}, 40);
  for (std::size_t i = 1; i < rep.points.size(); ++i) {
    REQUIRE(rep.points[i].order_estimate.has_value());
    CHECK(*rep.points[i].order_estimate == Catch::Approx(1.0).margin(0.2));
    CHECK(*rep.points[i].ratio == Catch::Approx(2.0).margin(0.5));
  }
}

TEST_CASE("a pair whose star product terminates") {
  // f = z + zbar, g = z zbar: only first derivatives of f, so p(T_f T_g - T_fg) = T_{C1} exactly.
  const auto rep = expansion_check(parse_symbol("z+zbar"), parse_symbol("z*zbar"), {32, 64, 128, 256}, 40);
  CHECK(rep.c1 == parse_symbol("-z/pi"));
  for (const auto& q : rep.points) CHECK(q.max_abs_E <= 1e-10);
}

TEST_CASE("commutators") {
  const auto rep = commutator_check(parse_symbol("z+zbar"), parse_symbol("i*(zbar-z)"), {32, 64, 128}, 30);
  CHECK(rep.bracket == SymbolPoly::constant(1, Scalar(GaussianRational(0, Rational(-2))) * Scalar::pi_power(-1)));
  for (const auto& q : rep.points) CHECK(q.max_abs_E <= 1e-10);

  const auto same = commutator_check(parse_symbol("z*zbar"), parse_symbol("z*zbar"), {32}, 30);
  CHECK(same.bracket.is_zero());
  CHECK(same.points.front().max_abs_E == 0.0);

  const SymbolPoly f = parse_symbol("z^2+zbar^2+z*zbar");
  const SymbolPoly g = parse_symbol("i*(z^2-zbar^2)+z+zbar");
  const auto quad = commutator_check(f, g, {32, 64, 128}, 30);
  const SymbolPoly hand = Scalar(-1) * Scalar::pi_power(-1) *
                          (f.derivative(true, 1) * g.derivative(false, 1) - g.derivative(true, 1) * f.derivative(false, 1));
  CHECK(quad.bracket == hand);
  CHECK(quad.points.back().max_abs_E < quad.points.front().max_abs_E);
  CHECK_THROWS(commutator_check(parse_symbol("i*z"), f, {32}, 30));
}
