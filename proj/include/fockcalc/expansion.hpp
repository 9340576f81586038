#pragma once

// Second-order Toeplitz composition coefficient replayed on operator words.

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fockcalc/jets.hpp"
#include "fockcalc/kernel.hpp"
#include "fockcalc/l_kernels.hpp"
#include "fockcalc/operator_expr.hpp"

namespace fockcalc {

class UnavailableRestriction : public std::runtime_error {
 public:
  explicit UnavailableRestriction(const Word& w)
      : std::runtime_error("unavailable kernel restriction: " + to_string(w)), word_(w) {}
  const Word& word() const { return word_; }

 private:
  Word word_;
};

class CancellationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace ops {
inline OperatorExpr P() { return OperatorExpr::letter(Letter::P()); }
inline OperatorExpr R(int k = 1) { return OperatorExpr::letter(Letter::R(k)); }
inline OperatorExpr O1() { return OperatorExpr::letter(Letter::O1()); }
inline OperatorExpr O2() { return OperatorExpr::letter(Letter::O2()); }
inline OperatorExpr Mul(const MultiIndex& a, const MultiIndex& b) { return OperatorExpr::letter(Letter::Mul(a, b)); }
inline OperatorExpr Kernel(const KernelPoly& k) { return OperatorExpr::letter(Letter::Kernel(k)); }
}  // namespace ops

/// J_0, J_1, J_2 as operator expressions.
inline OperatorExpr j_operator(int r) {
  using namespace ops;
  switch (r) {
    case 0: return P();
    case 1: return -(R() * O1() * P()) - P() * O1() * R();
    case 2:
      return R() * O1() * R() * O1() * P() - R() * O2() * P() + P() * O1() * R() * O1() * R() - P() * O2() * R() +
             R() * O1() * P() * O1() * R() - P() * O1() * R(2) * O1() * P();
    default: break;
  }
  throw std::invalid_argument("J_r is only carried for r <= 2");
}

/// Which symbols play f, g and fg. Swapping gives the computation of c1(g, f).
struct Roles {
  JetBase first = JetBase::F;
  JetBase second = JetBase::G;
  JetBase product = JetBase::FG;

  static Roles swapped() { return {JetBase::G, JetBase::F, JetBase::GF}; }
};

/// Degree-d Taylor part of h at the origin: sum_{|a|+|b|=d} h_{a,b}/(a! b!) Mul(z^a zbar^b).
inline OperatorExpr taylor_part(JetBase base, int degree, const Jet2& jets) {
  const int n = jets.dim();
  OperatorExpr out;
  for (int da = 0; da <= degree; ++da) {
    for (const auto& a : indices_of_degree(n, da)) {
      for (const auto& b : indices_of_degree(n, degree - da)) {
        const JetSymbol s = jet(base, a, b);
        const NCPoly c = is_product_base(base) ? sym(s) : jets.value(s);
        if (c.is_zero()) continue;
        const Scalar w = Scalar(Rational(BigInt(1), index_factorial(a) * index_factorial(b)));
        out += (w * c) * ops::Mul(a, b);
      }
    }
  }
  return out;
}

/// h(0) as a coefficient.
inline NCPoly jet_value_of(JetBase base, const Jet2& jets) {
  const JetSymbol s = jet_value(base, jets.dim());
  return is_product_base(base) ? sym(s) : jets.value(s);
}

/// Q_r(h) = sum_{r1 + r2 + |alpha| = r} J_{r1} (h_alpha Z^alpha / alpha!) J_{r2}, r <= 2.
inline OperatorExpr q_operator(int r, JetBase base, const Jet2& jets) {
  if (r < 0 || r > 2) throw std::invalid_argument("Q_r is only carried for r <= 2");
  OperatorExpr out = jet_value_of(base, jets) * j_operator(r);
  for (int d = 1; d <= r; ++d) {
    const OperatorExpr t = taylor_part(base, d, jets);
    for (int r1 = 0; r1 <= r - d; ++r1) out += j_operator(r1) * t * j_operator(r - d - r1);
  }
  return out;
}

/// Q_0 and Q_1 of f (which = F) or g (which = G).
inline OperatorExpr q_coefficient(int r, const Jet2& jets, JetBase which) {
  if (r != 0 && r != 1) throw std::invalid_argument("q_coefficient takes r in {0, 1}");
  return q_operator(r, which, jets);
}

/// Q_2(f, g) = sum_{r1 + r2 = 2} Q_{r1}(f) Q_{r2}(g).
inline OperatorExpr q2_pair(const Jet2& jets, const Roles& roles = {}) {
  OperatorExpr out;
  for (int r1 = 0; r1 <= 2; ++r1) out += q_operator(r1, roles.first, jets) * q_operator(2 - r1, roles.second, jets);
  return out;
}

// ---------------------------------------------------------------------------
// Word evaluation at Z = Z' = 0.

namespace detail {

inline KernelPoly mul_kernel(int n, const Letter& l, bool primed) {
  KernelMonomial m = KernelMonomial::one(n);
  if (primed) {
    m.zp = l.a;
    m.zbarp = l.b;
  } else {
    m.z = l.a;
    m.zbar = l.b;
  }
  return KernelPoly::monomial(n, m, ExtEnd::identity(n));
}

inline bool is_kernel_letter(const Letter& l) { return l.kind == LetterKind::P || l.kind == LetterKind::Kernel; }

inline KernelPoly letter_kernel(int n, const Letter& l) {
  return l.kind == LetterKind::P ? KernelPoly::id(n) : *l.kernel;
}

/// Folds an O/R-free word into one kernel. `start` is a kernel already standing
/// to the left. Returns nullopt if the word has no kernel letter at all.
inline std::optional<KernelPoly> fold_word(int n, Word::const_iterator begin, Word::const_iterator end,
                                           std::optional<KernelPoly> start = std::nullopt) {
  std::optional<KernelPoly> k = std::move(start);
  KernelPoly left = KernelPoly::one(n);
  for (auto it = begin; it != end; ++it) {
    if (it->kind == LetterKind::Mul) {
      if (k) {
        *k = *k * mul_kernel(n, *it, true);
      } else {
        left = left * mul_kernel(n, *it, false);
      }
    } else if (is_kernel_letter(*it)) {
      const KernelPoly lit = letter_kernel(n, *it);
      k = k ? compose(*k, lit) : left * lit;
    } else {
      throw std::logic_error("fold_word needs an O/R-free word");
    }
  }
  return k;
}

inline bool is_plain(Word::const_iterator begin, Word::const_iterator end) {
  for (auto it = begin; it != end; ++it)
    if (it->kind != LetterKind::Mul && !is_kernel_letter(*it)) return false;
  return true;
}

}  // namespace detail

/// How a word value was obtained.
enum class Route { Direct, LeadingMul, TrailingMul, L1, L2, L3 };

struct WordValue {
  ExtEnd value;
  Route route = Route::Direct;
  Word evaluated;  // the word after any P Mul P moves
};

inline std::string to_string(Route r) {
  switch (r) {
    case Route::Direct: return "direct";
    case Route::LeadingMul: return "leading-mul";
    case Route::TrailingMul: return "trailing-mul";
    case Route::L1: return "L1";
    case Route::L2: return "L2";
    case Route::L3: return "L3";
  }
  return "?";
}

namespace detail {

inline std::optional<WordValue> evaluate_once(const Word& w, const LKernelData& L, int n) {
  if (w.empty()) return std::nullopt;
  // A Mul at either end vanishes at the origin.
  if (w.front().kind == LetterKind::Mul && !w.front().is_constant_mul())
    return WordValue{ExtEnd::zero(n), Route::LeadingMul, w};
  if (w.back().kind == LetterKind::Mul && !w.back().is_constant_mul())
    return WordValue{ExtEnd::zero(n), Route::TrailingMul, w};

  if (is_plain(w.begin(), w.end())) {
    auto k = fold_word(n, w.begin(), w.end());
    if (!k) return std::nullopt;
    return WordValue{k->at_origin(), Route::Direct, w};
  }

  // Exactly one O1 inside a P O1 R_1 or R_1 O1 P block.
  std::size_t o = w.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].kind == LetterKind::O1) {
      if (o != w.size()) return std::nullopt;
      o = i;
    }
  }
  if (o == w.size() || o == 0 || o + 1 >= w.size()) return std::nullopt;
  const Letter& before = w[o - 1];
  const Letter& after = w[o + 1];
  const bool por = before.kind == LetterKind::P && after.kind == LetterKind::R && after.power == 1;
  const bool rop = before.kind == LetterKind::R && before.power == 1 && after.kind == LetterKind::P;
  if (!por && !rop) return std::nullopt;
  const auto a_begin = w.begin();
  const auto a_end = w.begin() + static_cast<std::ptrdiff_t>(o - 1);
  const auto b_begin = w.begin() + static_cast<std::ptrdiff_t>(o + 2);
  const auto b_end = w.end();
  if (!is_plain(a_begin, a_end) || !is_plain(b_begin, b_end)) return std::nullopt;

  if (a_begin == a_end && por && L.L1.kernel) {
    auto k = fold_word(n, b_begin, b_end, *L.L1.kernel);
    return WordValue{k->at_origin(), Route::L1, w};
  }
  if (b_begin == b_end) {
    const RestrictedKernel& r = por ? L.L2 : L.L3;
    if (!r.kernel) return std::nullopt;
    if (a_begin == a_end) return WordValue{r.kernel->at_origin(), por ? Route::L2 : Route::L3, w};
    auto ka = fold_word(n, a_begin, a_end);
    if (!ka) return std::nullopt;
    return WordValue{compose(*ka, *r.kernel).at_origin(), por ? Route::L2 : Route::L3, w};
  }
  return std::nullopt;
}

inline std::optional<WordValue> evaluate_search(const Word& w, const LKernelData& L, int n, int depth) {
  if (auto v = evaluate_once(w, L, n)) return v;
  if (depth == 0) return std::nullopt;
  // P Mul(holomorphic) P = Mul P and P Mul(antiholomorphic) P = P Mul.
  for (std::size_t i = 0; i + 2 < w.size(); ++i) {
    if (w[i].kind != LetterKind::P || w[i + 1].kind != LetterKind::Mul || w[i + 2].kind != LetterKind::P) continue;
    Word moved = w;
    if (w[i + 1].is_holomorphic_mul()) {
      moved.erase(moved.begin() + static_cast<std::ptrdiff_t>(i));
    } else if (w[i + 1].is_antiholomorphic_mul()) {
      moved.erase(moved.begin() + static_cast<std::ptrdiff_t>(i + 2));
    } else {
      continue;
    }
    if (auto v = evaluate_search(moved, L, n, depth - 1)) return v;
  }
  return std::nullopt;
}

}  // namespace detail

/// Value of the operator kernel of w at Z = Z' = 0, or nullopt when no
/// available restriction reaches it.
inline std::optional<WordValue> evaluate_word(const Word& w, const LKernelData& L, int n) {
  return detail::evaluate_search(w, L, n, 3);
}

/// Replaces every O/R-free word by a single kernel literal.
inline OperatorExpr collapse_kernels(const OperatorExpr& e, int n) {
  OperatorExpr out;
  KernelPoly acc(n);
  for (const auto& [w, c] : e.terms()) {
    if (detail::is_plain(w.begin(), w.end())) {
      if (auto k = detail::fold_word(n, w.begin(), w.end())) {
        acc += c * *k;
        continue;
      }
    }
    out.add(w, c);
  }
  if (!acc.is_zero()) out.add(Word{Letter::Kernel(acc)}, NCPoly::one());
  return out;
}

// ---------------------------------------------------------------------------
// The residual Q_2(f,g) - Q_2(fg) = I1 + I2 + I3 + I4.

struct IEvaluation {
  std::string name;
  OperatorExpr words;
  ExtEnd raw;       // sum of coefficient * value, jets of fg unexpanded
  ExtEnd expanded;  // after the Leibniz rule and zero pins
  NCPoly value;     // ID coefficient of `expanded`
  bool id_multiple = true;
  std::vector<std::pair<Word, NCPoly>> leibniz_cancelled;  // unavailable words whose coefficient is 0 by Leibniz
  std::vector<std::pair<Word, Route>> routes;
  bool tensors_in_intermediates = false;
  bool tensors_in_value = false;
};

namespace detail {

inline ExtEnd map_entries(const ExtEnd& e, const std::function<NCPoly(const NCPoly&)>& fn) {
  ExtEnd out(e.dim());
  for (const auto& [k, v] : e.entries()) out.add(k.first, k.second, fn(v));
  return out;
}

inline bool off_id_zero(const ExtEnd& e) {
  for (const auto& [k, v] : e.entries())
    if (k.first != 0 || k.second != 0) return false;
  return true;
}

}  // namespace detail

inline IEvaluation evaluate_sum(std::string name, const OperatorExpr& words, const Jet2& jets, const LKernelData& L) {
  const int n = jets.dim();
  IEvaluation r;
  r.name = std::move(name);
  r.words = words;
  r.raw = ExtEnd::zero(n);
  for (const auto& [w, c] : words.terms()) {
    auto v = evaluate_word(w, L, n);
    if (!v) {
      const NCPoly cancelled = jets.apply_zeros(leibniz_expand(c));
      if (!cancelled.is_zero()) throw UnavailableRestriction(w);
      r.leibniz_cancelled.emplace_back(w, c);
      continue;
    }
    r.routes.emplace_back(w, v->route);
    if (v->route == Route::L1) r.tensors_in_intermediates |= L.L1.has_tensors();
    if (v->route == Route::L2) r.tensors_in_intermediates |= L.L2.has_tensors();
    if (v->route == Route::L3) r.tensors_in_intermediates |= L.L3.has_tensors();
    r.tensors_in_intermediates |= v->value.has_tensors();
    r.raw += c * v->value;
  }
  r.expanded = detail::map_entries(r.raw, [&jets](const NCPoly& p) { return jets.apply_zeros(leibniz_expand(p)); });
  r.id_multiple = detail::off_id_zero(r.expanded);
  r.value = r.expanded.at(0, 0);
  r.tensors_in_value = r.expanded.has_tensors();
  return r;
}

struct IDefinitions {
  OperatorExpr I1, I2, I3, I4;
};

/// I1..I4 assembled from their definitions with h = fg:
///   I1 = -P h'' P + f0 P g'' P + P f'' P g0 + P f' P g' P
///   I2 = -f0 P O1 R g' P - P f' R O1 P g0
///   I3 = P (h' - f0 g') R O1 P + P (h' - f0 g' - f' g0) P O1 R
///   I4 = R O1 P (h' - f' g0 - f0 g') P + P O1 R (h' - f' g0) P
inline IDefinitions i_definitions(const Jet2& jets, const Roles& roles = {}) {
  using namespace ops;
  const NCPoly f0 = jet_value_of(roles.first, jets);
  const NCPoly g0 = jet_value_of(roles.second, jets);
  const OperatorExpr f1 = taylor_part(roles.first, 1, jets);
  const OperatorExpr g1 = taylor_part(roles.second, 1, jets);
  const OperatorExpr h1 = taylor_part(roles.product, 1, jets);
  const OperatorExpr f2 = taylor_part(roles.first, 2, jets);
  const OperatorExpr g2 = taylor_part(roles.second, 2, jets);
  const OperatorExpr h2 = taylor_part(roles.product, 2, jets);
  IDefinitions d;
  d.I1 = -(P() * h2 * P()) + f0 * (P() * g2 * P()) + (P() * f2 * P()) * g0 + P() * f1 * P() * g1 * P();
  d.I2 = -(f0 * (P() * O1() * R() * g1 * P())) - (P() * f1 * R() * O1() * P()) * g0;
  d.I3 = P() * (h1 - f0 * g1) * R() * O1() * P() + P() * (h1 - f0 * g1 - f1 * g0) * P() * O1() * R();
  d.I4 = R() * O1() * P() * (h1 - f1 * g0 - f0 * g1) * P() + P() * O1() * R() * (h1 - f1 * g0) * P();
  return d;
}

inline OperatorExpr normalize_residual(const OperatorExpr& e, const Jet2& jets) {
  return rewrite(e.map_coefficients([&jets](const NCPoly& c) { return jets.apply_zeros(leibniz_expand(c, 0)); }));
}

inline IEvaluation eval_I1(const Jet2& jets, const LKernelData& L, const Roles& roles = {}) {
  return evaluate_sum("I1", normalize_residual(i_definitions(jets, roles).I1, jets), jets, L);
}

inline std::array<IEvaluation, 3> eval_I2_I3_I4(const Jet2& jets, const LKernelData& L, const Roles& roles = {}) {
  const IDefinitions d = i_definitions(jets, roles);
  return {evaluate_sum("I2", normalize_residual(d.I2, jets), jets, L),
          evaluate_sum("I3", normalize_residual(d.I3, jets), jets, L),
          evaluate_sum("I4", normalize_residual(d.I4, jets), jets, L)};
}

/// -(1/pi) sum_j d_{z_j} first * d_{zbar_j} second, with zero pins applied.
inline NCPoly c1_expected(const Jet2& jets, const Roles& roles = {}) {
  const int n = jets.dim();
  NCPoly out;
  for (int j = 1; j <= n; ++j)
    out += jets.value(jet_dz(roles.first, n, j)) * jets.value(jet_dzbar(roles.second, n, j));
  return Scalar::pi_power(-1) * -out;
}

struct C1Report {
  Roles roles;
  OperatorExpr residual;        // Q_2(f,g) - Q_2(fg) after rewriting
  bool residual_matches = false;  // residual == I1 + I2 + I3 + I4
  std::array<IEvaluation, 4> I;
  NCPoly value;
  NCPoly direct;  // residual words evaluated directly
  NCPoly expected;
  bool match = false;
  bool tensors_in_intermediates = false;
  bool tensors_in_value = false;
};

inline C1Report c1_report(const Jet2& jets, const LKernelData& L, const Roles& roles = {}) {
  if (L.n != jets.dim()) throw std::invalid_argument("L-kernel data and jets differ in dimension");
  C1Report r;
  r.roles = roles;
  const OperatorExpr diff = q2_pair(jets, roles) - q_operator(2, roles.product, jets);
  r.residual = normalize_residual(diff, jets);
  const auto survivors = r.residual.second_order_words();
  if (!survivors.empty()) {
    std::string msg = "cancellation failure: ";
    for (std::size_t i = 0; i < survivors.size(); ++i) msg += (i ? ", " : "") + to_string(survivors[i]);
    throw CancellationFailure(msg);
  }
  const IDefinitions d = i_definitions(jets, roles);
  r.residual_matches = r.residual == normalize_residual(d.I1 + d.I2 + d.I3 + d.I4, jets);
  if (!r.residual_matches) throw CancellationFailure("cancellation failure: residual differs from I1+I2+I3+I4");

  r.I[0] = evaluate_sum("I1", normalize_residual(d.I1, jets), jets, L);
  r.I[1] = evaluate_sum("I2", normalize_residual(d.I2, jets), jets, L);
  r.I[2] = evaluate_sum("I3", normalize_residual(d.I3, jets), jets, L);
  r.I[3] = evaluate_sum("I4", normalize_residual(d.I4, jets), jets, L);
  for (const auto& e : r.I) {
    r.value += e.value;
    r.tensors_in_intermediates |= e.tensors_in_intermediates;
    r.tensors_in_value |= e.tensors_in_value;
  }
  r.direct = evaluate_sum("Q2(f,g)-Q2(fg)", r.residual, jets, L).value;
  r.expected = c1_expected(jets, roles);
  r.match = r.value == r.expected && r.direct == r.value && !r.tensors_in_value;
  return r;
}

inline NCPoly c1(const Jet2& jets, const LKernelData& L, const Roles& roles = {}) {
  return c1_report(jets, L, roles).value;
}

// ---------------------------------------------------------------------------
// Antisymmetrization against the Poisson bracket, E trivial.

/// G[j][k] = <dz_{j+1}, dzbar_{k+1}> for the C-bilinear extension of the metric in
/// which dZ_1..dZ_2n are orthonormal, z_j = Z_{2j-1} + i Z_{2j}.
inline std::vector<std::vector<GaussianRational>> complex_metric(int n) {
  auto covector = [n](int j, bool bar) {
    std::vector<GaussianRational> v(static_cast<std::size_t>(2 * n), GaussianRational(0));
    v[static_cast<std::size_t>(2 * j - 2)] = GaussianRational(1);
    v[static_cast<std::size_t>(2 * j - 1)] = GaussianRational(0, bar ? -1 : 1);
    return v;
  };
  std::vector<std::vector<GaussianRational>> g(static_cast<std::size_t>(n),
                                               std::vector<GaussianRational>(static_cast<std::size_t>(n)));
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) {
      const auto u = covector(j, false);
      const auto v = covector(k, true);
      GaussianRational s(0);
      for (std::size_t m = 0; m < u.size(); ++m) s += u[m] * v[m];
      g[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)] = s;
    }
  }
  return g;
}

struct PoissonReport {
  NCPoly lhs;  // c1(f,g) - c1(g,f), commutative image
  NCPoly rhs;  // -(1/2pi)(<d'f, d''g> - <d'g, d''f>)
  bool match = false;
};

inline PoissonReport poisson_check(const Jet2& jets, const LKernelData& L) {
  const int n = jets.dim();
  PoissonReport r;
  const NCPoly fg = c1(jets, L, Roles{});
  const NCPoly gf = c1(jets, L, Roles::swapped());
  r.lhs = commutative_image(fg - gf);
  const auto g = complex_metric(n);
  NCPoly pairing;
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) {
      const Scalar gjk(g[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)]);
      if (gjk.is_zero()) continue;
      pairing += gjk * (jets.value(jet_dz(JetBase::F, n, j)) * jets.value(jet_dzbar(JetBase::G, n, k)) -
                        jets.value(jet_dz(JetBase::G, n, j)) * jets.value(jet_dzbar(JetBase::F, n, k)));
    }
  }
  r.rhs = commutative_image(Scalar(GaussianRational(Rational(-1, 2)), -1) * pairing);
  r.match = r.lhs == r.rhs;
  return r;
}

}  // namespace fockcalc
