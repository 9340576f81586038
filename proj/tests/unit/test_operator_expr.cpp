#include <catch_amalgamated.hpp>

#include "fockcalc/operator_expr.hpp"
#include "fockcalc/random_gen.hpp"

using namespace fockcalc;

namespace {
Word w(std::initializer_list<Letter> ls) { return Word(ls); }
const Letter P = Letter::P();
const Letter O1 = Letter::O1();
const Letter O2 = Letter::O2();
Letter R(int k = 1) { return Letter::R(k); }
}  // namespace

TEST_CASE("single rules") {
  CHECK(rewrite_word(w({P, P})) == w({P}));
  CHECK_FALSE(rewrite_word(w({P, R()})).has_value());
  CHECK_FALSE(rewrite_word(w({R(), P})).has_value());
  CHECK(rewrite_word(w({R(), R(2)})) == w({R(3)}));
  CHECK_FALSE(rewrite_word(w({P, O1, P})).has_value());
  CHECK(rewrite_word(w({P, O2, P})) == w({P, O2, P}));
  CHECK(rewrite_word(w({P, O1, R(), R(), O1, P})) == w({P, O1, R(2), O1, P}));
  CHECK(rewrite_word(w({P, P, O1, R(), O1, P, P})) == w({P, O1, R(), O1, P}));
}

TEST_CASE("sums combine after rewriting") {
  const OperatorExpr e = OperatorExpr::word(w({P, P, O1, R()})) + OperatorExpr::word(w({P, O1, R()}));
  const OperatorExpr r = rewrite(e);
  CHECK(r == OperatorExpr::word(w({P, O1, R()}), NCPoly(2)));
  CHECK(rewrite(OperatorExpr::word(w({P, R()})) * OperatorExpr::word(w({P}))).is_zero());
}

TEST_CASE("coefficients keep their order") {
  const NCPoly f = sym(jet_value(JetBase::F, 1));
  const NCPoly g = sym(jet_value(JetBase::G, 1));
  const OperatorExpr a = f * OperatorExpr::letter(P);
  const OperatorExpr b = OperatorExpr::letter(P) * g;
  CHECK((a * b).coefficient(w({P, P})) == f * g);
  CHECK((b * a).coefficient(w({P, P})) == g * f);
}

TEST_CASE("second-order words") {
  const OperatorExpr e = OperatorExpr::word(w({P, O2, R()})) + OperatorExpr::word(w({R(2)})) +
                         OperatorExpr::word(w({P, O1, R(), O1, P}));
  CHECK(e.second_order_words().size() == 2);
}

TEST_CASE("printing") {
  CHECK(to_string(w({P, O1, R(2), Letter::Mul({1}, {0})})) == "P·O1·R2·[z]");
}

TEST_CASE("rewriting terminates and is order independent") {
  Rng rng(seed_from_env());
  for (int t = 0; t < 300; ++t) {
    const Word word = random_word(rng, 10);
    const auto base = rewrite_word(word);
    if (base) {
      CHECK(base->size() <= word.size());
      CHECK(rewrite_word(*base) == base);
    }
    for (int k = 0; k < 5; ++k) CHECK(rewrite_word_random(word, rng) == base);
  }
  for (int t = 0; t < 50; ++t) {
    OperatorExpr e;
    for (int k = 0; k < 6; ++k) e.add(random_word(rng, 6), random_ncpoly(rng, 1));
    CHECK(rewrite_random(e, rng) == rewrite(e));
  }
}
