#include <catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "fockcalc/exterior.hpp"
#include "fockcalc/random_gen.hpp"

using namespace fockcalc;

namespace {

// dzbar_l ^ dzbar_S computed by sorting the generator list and counting transpositions.
std::pair<int, Subset> brute_wedge(int l, Subset s) {
  if (s & (Subset{1} << (l - 1))) return {0, s};
  std::vector<int> gens{l};
  for (int k = 0; k < kMaxExteriorDim; ++k)
    if (s & (Subset{1} << k)) gens.push_back(k + 1);
  int swaps = 0;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      if (gens[a] > gens[b]) ++swaps;
  return {swaps % 2 == 0 ? 1 : -1, s | (Subset{1} << (l - 1))};
}

}  // namespace

TEST_CASE("rank-one wedge and contraction") {
  const ExtEnd w = wedge(1, 1);
  CHECK(w.at(1, 0) == NCPoly(1));
  CHECK(w.at(0, 1).is_zero());
  CHECK(w.at(1, 1).is_zero());
  CHECK(contract(1, 1).at(0, 1) == NCPoly(1));
}

TEST_CASE("wedge signs agree with a permutation count") {
  for (int n = 1; n <= 4; ++n) {
    for (int l = 1; l <= n; ++l) {
      const ExtEnd w = wedge(n, l);
      for (Subset s = 0; s < w.size(); ++s) {
        const auto [sign, target] = brute_wedge(l, s);
        if (sign == 0) {
          for (Subset r = 0; r < w.size(); ++r) CHECK(w.at(r, s).is_zero());
        } else {
          CHECK(w.at(target, s) == NCPoly(sign));
        }
      }
    }
  }
}

TEST_CASE("anticommutation and Clifford relations") {
  for (int n = 1; n <= 3; ++n) {
    const ExtEnd one = ExtEnd::identity(n);
    for (int l = 1; l <= n; ++l) {
      for (int m = 1; m <= n; ++m) {
        CHECK(wedge(n, l) * wedge(n, m) == -(wedge(n, m) * wedge(n, l)));
        CHECK(contract(n, l) * contract(n, m) == -(contract(n, m) * contract(n, l)));
        const ExtEnd anti = wedge(n, l) * contract(n, m) + contract(n, m) * wedge(n, l);
        CHECK(anti == (l == m ? one : ExtEnd::zero(n)));
      }
    }
  }
}

TEST_CASE("degree-0 projection") {
  for (int n = 1; n <= 3; ++n) {
    const ExtEnd id = id_projection(n);
    CHECK(id * id == id);
    for (int l = 1; l <= n; ++l) {
      CHECK((id * wedge(n, l)).is_zero());
      CHECK((contract(n, l) * id).is_zero());
      for (int m = 1; m <= n; ++m) {
        CHECK((id * wedge(n, l) * wedge(n, m)).is_zero());
        CHECK((contract(n, m) * contract(n, l) * id).is_zero());
        CHECK((id * contract(n, m) * contract(n, l) * id).is_zero());
      }
    }
  }
}

TEST_CASE("number operator") {
  const ExtEnd N = number_operator(2);
  CHECK(N.at(0, 0).is_zero());
  CHECK(N.at(3, 3) == NCPoly(2));
  const ExtEnd N3 = number_operator(3);
  NCPoly trace;
  for (Subset s = 0; s < N3.size(); ++s) trace += N3.at(s, s);
  CHECK(trace == NCPoly(12));
  for (int n = 1; n <= 3; ++n) {
    ExtEnd sum(n);
    for (int q = 0; q <= n; ++q) sum += NCPoly(q) * degree_projection(n, q);
    CHECK(sum == number_operator(n));
    ExtEnd ww(n);
    for (int j = 1; j <= n; ++j) ww += wedge(n, j) * contract(n, j);
    CHECK(ww == number_operator(n));
  }
}

TEST_CASE("degree split") {
  const auto parts = degree_split(ExtEnd::identity(2));
  REQUIRE(parts.size() == 3);
  for (const auto& [q, piece] : parts) CHECK(piece == degree_projection(2, q));
  const auto top = degree_split(wedge(2, 1) * wedge(2, 2) * id_projection(2));
  REQUIRE(top.size() == 1);
  CHECK(top.front().first == 2);

  Rng rng(seed_from_env());
  for (int t = 0; t < 50; ++t) {
    const ExtEnd u = random_extend(rng, 2, true);
    ExtEnd sum(2);
    for (const auto& [q, piece] : degree_split(u)) sum += piece;
    CHECK(sum == u);
  }
}

TEST_CASE("matrix algebra axioms with noncommuting entries") {
  Rng rng(seed_from_env() + 1);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 2;
    const ExtEnd a = random_extend(rng, n, true);
    const ExtEnd b = random_extend(rng, n, true);
    const ExtEnd c = random_extend(rng, n, true);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(ExtEnd::identity(n) * a == a);
  }
}

TEST_CASE("generator index is checked") {
  CHECK_THROWS_AS(wedge(2, 3), std::out_of_range);
  CHECK_THROWS_AS(contract(2, 0), std::out_of_range);
}
