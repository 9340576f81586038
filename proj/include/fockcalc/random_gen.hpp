#pragma once

// Random inputs for the property suites. Seeded from FOCK_CALC_SEED.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "fockcalc/kernel.hpp"
#include "fockcalc/operator_expr.hpp"

namespace fockcalc {

inline constexpr std::uint64_t kDefaultSeed = 20250611;

inline std::uint64_t seed_from_env() {
  const char* s = std::getenv("FOCK_CALC_SEED");
  if (s == nullptr || *s == '\0') return kDefaultSeed;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    return kDefaultSeed;
  }
}

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Small nonzero rational with a random i and pi power.
inline Scalar random_scalar(Rng& rng) {
  const int num = uniform_int(rng, 1, 5) * (uniform_int(rng, 0, 1) ? 1 : -1);
  const int den = uniform_int(rng, 1, 3);
  const GaussianRational g = uniform_int(rng, 0, 3) == 0 ? GaussianRational(0, Rational(num, den))
                                                           : GaussianRational(Rational(num, den));
  return Scalar(g, uniform_int(rng, -1, 1));
}

inline JetSymbol random_jet(Rng& rng, int n, bool with_products = false) {
  const int nb = with_products ? 3 : 1;
  const JetBase base = static_cast<JetBase>(uniform_int(rng, 0, nb));
  MultiIndex a = zero_index(n), b = zero_index(n);
  const int order = uniform_int(rng, 0, 2);
  for (int r = 0; r < order; ++r) {
    auto& t = uniform_int(rng, 0, 1) ? a : b;
    t[static_cast<std::size_t>(uniform_int(rng, 0, n - 1))] += 1;
  }
  return jet(base, a, b);
}

/// Sum of up to `terms` monomials, each a word of up to `max_len` jets.
inline NCPoly random_ncpoly(Rng& rng, int n, int terms = 2, int max_len = 2, bool with_products = false) {
  NCPoly p;
  const int t = uniform_int(rng, 1, terms);
  for (int k = 0; k < t; ++k) {
    NCPoly m(random_scalar(rng));
    const int len = uniform_int(rng, 0, max_len);
    for (int r = 0; r < len; ++r) m *= sym(random_jet(rng, n, with_products));
    p += m;
  }
  return p;
}

/// Random endomorphism of the exterior algebra; `noncommuting` puts jet words in the entries.
inline ExtEnd random_extend(Rng& rng, int n, bool noncommuting) {
  ExtEnd e(n);
  const int entries = uniform_int(rng, 1, 3);
  const int size = 1 << n;
  for (int k = 0; k < entries; ++k) {
    const auto row = static_cast<Subset>(uniform_int(rng, 0, size - 1));
    const auto col = static_cast<Subset>(uniform_int(rng, 0, size - 1));
    e.add(row, col, noncommuting ? random_ncpoly(rng, n, 2, 2) : NCPoly(random_scalar(rng)));
  }
  if (e.is_zero()) e = ExtEnd::identity(n);
  return e;
}

inline KernelMonomial random_kernel_monomial(Rng& rng, int n, int max_degree, bool primed = true) {
  KernelMonomial m = KernelMonomial::one(n);
  const int d = uniform_int(rng, 0, max_degree);
  for (int r = 0; r < d; ++r) {
    const int which = uniform_int(rng, 0, primed ? 3 : 1);
    MultiIndex& slot = which == 0 ? m.z : which == 1 ? m.zbar : which == 2 ? m.zp : m.zbarp;
    slot[static_cast<std::size_t>(uniform_int(rng, 0, n - 1))] += 1;
  }
  return m;
}

inline KernelPoly random_kernel(Rng& rng, int n, int max_degree = 3, bool noncommuting = true, int max_terms = 3) {
  KernelPoly k(n);
  const int t = uniform_int(rng, 1, max_terms);
  for (int r = 0; r < t; ++r) k.add(random_kernel_monomial(rng, n, max_degree), random_extend(rng, n, noncommuting));
  if (k.is_zero()) k = KernelPoly::id(n);
  return k;
}

/// Scalar polynomial in Z only (primed = false) or Z' only (primed = true), same coefficients.
inline std::pair<KernelPoly, KernelPoly> random_scalar_poly_pair(Rng& rng, int n, int max_degree = 2) {
  KernelPoly q(n), qp(n);
  const int t = uniform_int(rng, 1, 2);
  for (int r = 0; r < t; ++r) {
    const KernelMonomial m = random_kernel_monomial(rng, n, max_degree, false);
    const Scalar c = random_scalar(rng);
    q.add(m, ExtEnd::scalar(n, c));
    qp.add(KernelMonomial{zero_index(n), zero_index(n), m.z, m.zbar}, ExtEnd::scalar(n, c));
  }
  return {q, qp};
}

/// Random word over P, R1, R2, O1, O2, Mul(z1), Mul(zbar1).
inline Word random_word(Rng& rng, int max_len = 8) {
  const int len = uniform_int(rng, 1, max_len);
  Word w;
  for (int k = 0; k < len; ++k) {
    switch (uniform_int(rng, 0, 6)) {
      case 0: w.push_back(Letter::P()); break;
      case 1: w.push_back(Letter::R(1)); break;
      case 2: w.push_back(Letter::R(2)); break;
      case 3: w.push_back(Letter::O1()); break;
      case 4: w.push_back(Letter::O2()); break;
      case 5: w.push_back(Letter::Mul({1}, {0})); break;
      default: w.push_back(Letter::Mul({0}, {1})); break;
    }
  }
  return w;
}

}  // namespace fockcalc
