#pragma once

// Polynomial kernels F(Z,Z') standing for the operator with kernel
// F(Z,Z') * P(Z,Z'), where P(Z,Z') = exp(-pi/2 sum(|z|^2 + |z'|^2 - 2 z zbar'))
// is the Bargmann reproducing kernel. P itself is never expanded.

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fockcalc/exterior.hpp"
#include "fockcalc/multi_index.hpp"
#include "fockcalc/ncpoly.hpp"

namespace fockcalc {

/// z^z zbar^zbar z'^zp zbar'^zbarp
struct KernelMonomial {
  MultiIndex z;
  MultiIndex zbar;
  MultiIndex zp;
  MultiIndex zbarp;

  static KernelMonomial one(int n) { return {zero_index(n), zero_index(n), zero_index(n), zero_index(n)}; }

  bool is_one() const { return is_zero_index(z) && is_zero_index(zbar) && is_zero_index(zp) && is_zero_index(zbarp); }
  bool has_primed() const { return !is_zero_index(zp) || !is_zero_index(zbarp); }
  bool has_unprimed() const { return !is_zero_index(z) || !is_zero_index(zbar); }
  int degree() const { return total_degree(z) + total_degree(zbar) + total_degree(zp) + total_degree(zbarp); }

  auto operator<=>(const KernelMonomial&) const = default;
  bool operator==(const KernelMonomial&) const = default;
};

inline KernelMonomial operator*(const KernelMonomial& a, const KernelMonomial& b) {
  return {a.z + b.z, a.zbar + b.zbar, a.zp + b.zp, a.zbarp + b.zbarp};
}

enum class Var { Z, ZBar, ZP, ZBarP };

class KernelPoly {
 public:
  using Terms = std::map<KernelMonomial, ExtEnd>;

  KernelPoly() = default;
  explicit KernelPoly(int n) : n_(n) {}

  static KernelPoly monomial(int n, const KernelMonomial& m, const ExtEnd& v) {
    KernelPoly k(n);
    k.add(m, v);
    return k;
  }
  static KernelPoly constant(int n, const ExtEnd& v) { return monomial(n, KernelMonomial::one(n), v); }
  /// The constant kernel ID (so that ID*P is the projection P).
  static KernelPoly id(int n) { return constant(n, id_projection(n)); }
  static KernelPoly one(int n) { return constant(n, ExtEnd::identity(n)); }
  static KernelPoly variable(int n, Var v, int i) {
    KernelMonomial m = KernelMonomial::one(n);
    const MultiIndex e = unit_index(n, i);
    switch (v) {
      case Var::Z: m.z = e; break;
      case Var::ZBar: m.zbar = e; break;
      case Var::ZP: m.zp = e; break;
      case Var::ZBarP: m.zbarp = e; break;
    }
    return monomial(n, m, ExtEnd::identity(n));
  }

  int dim() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const KernelMonomial& m, const ExtEnd& v) {
    if (v.is_zero()) return;
    if (v.dim() != n_) throw std::invalid_argument("kernel value dimension mismatch");
    auto [it, inserted] = terms_.try_emplace(m, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool has_primed() const {
    for (const auto& [m, v] : terms_)
      if (m.has_primed()) return true;
    return false;
  }
  bool has_unprimed() const {
    for (const auto& [m, v] : terms_)
      if (m.has_unprimed()) return true;
    return false;
  }
  bool has_tensors() const {
    for (const auto& [m, v] : terms_)
      if (v.has_tensors()) return true;
    return false;
  }

  /// Value at Z = Z' = 0.
  ExtEnd at_origin() const {
    auto it = terms_.find(KernelMonomial::one(n_));
    return it == terms_.end() ? ExtEnd::zero(n_) : it->second;
  }
  /// F(Z, 0).
  KernelPoly at_primed_zero() const {
    KernelPoly r(n_);
    for (const auto& [m, v] : terms_)
      if (!m.has_primed()) r.add(m, v);
    return r;
  }
  /// F(0, Z').
  KernelPoly at_unprimed_zero() const {
    KernelPoly r(n_);
    for (const auto& [m, v] : terms_)
      if (!m.has_unprimed()) r.add(m, v);
    return r;
  }

  KernelPoly derivative(Var v, int i) const {
    const std::size_t k = static_cast<std::size_t>(i - 1);
    if (i < 1 || i > n_) throw std::out_of_range("variable index out of range");
    KernelPoly r(n_);
    for (const auto& [m, val] : terms_) {
      KernelMonomial d = m;
      MultiIndex* slot = nullptr;
      switch (v) {
        case Var::Z: slot = &d.z; break;
        case Var::ZBar: slot = &d.zbar; break;
        case Var::ZP: slot = &d.zp; break;
        case Var::ZBarP: slot = &d.zbarp; break;
      }
      const int e = (*slot)[k];
      if (e == 0) continue;
      (*slot)[k] = e - 1;
      r.add(d, NCPoly(e) * val);
    }
    return r;
  }

  KernelPoly operator-() const {
    KernelPoly r(n_);
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, -v);
    return r;
  }
  KernelPoly& operator+=(const KernelPoly& o) {
    same_dim(o);
    for (const auto& [m, v] : o.terms_) add(m, v);
    return *this;
  }
  KernelPoly& operator-=(const KernelPoly& o) {
    same_dim(o);
    for (const auto& [m, v] : o.terms_) add(m, -v);
    return *this;
  }
  friend KernelPoly operator+(KernelPoly a, const KernelPoly& b) { return a += b; }
  friend KernelPoly operator-(KernelPoly a, const KernelPoly& b) { return a -= b; }

  /// Pointwise product; values multiply left-to-right.
  friend KernelPoly operator*(const KernelPoly& a, const KernelPoly& b) {
    a.same_dim(b);
    KernelPoly r(a.n_);
    for (const auto& [ma, va] : a.terms_)
      for (const auto& [mb, vb] : b.terms_) r.add(ma * mb, va * vb);
    return r;
  }
  KernelPoly& operator*=(const KernelPoly& o) { return *this = *this * o; }

  friend KernelPoly operator*(const NCPoly& c, const KernelPoly& k) {
    KernelPoly r(k.n_);
    for (const auto& [m, v] : k.terms_) r.add(m, c * v);
    return r;
  }
  friend KernelPoly operator*(const KernelPoly& k, const NCPoly& c) {
    KernelPoly r(k.n_);
    for (const auto& [m, v] : k.terms_) r.add(m, v * c);
    return r;
  }
  friend KernelPoly operator*(const Scalar& c, const KernelPoly& k) { return NCPoly(c) * k; }
  /// Left action of a constant endomorphism on every value.
  friend KernelPoly operator*(const ExtEnd& e, const KernelPoly& k) {
    KernelPoly r(k.n_);
    for (const auto& [m, v] : k.terms_) r.add(m, e * v);
    return r;
  }
  friend KernelPoly operator*(const KernelPoly& k, const ExtEnd& e) {
    KernelPoly r(k.n_);
    for (const auto& [m, v] : k.terms_) r.add(m, v * e);
    return r;
  }

  friend bool operator==(const KernelPoly& a, const KernelPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  void same_dim(const KernelPoly& o) const {
    if (o.n_ != n_) throw std::invalid_argument("kernel dimension mismatch");
  }

 private:
  int n_ = 0;
  Terms terms_;
};

inline KernelPoly z(int n, int i) { return KernelPoly::variable(n, Var::Z, i); }
inline KernelPoly zbar(int n, int i) { return KernelPoly::variable(n, Var::ZBar, i); }
inline KernelPoly zp(int n, int i) { return KernelPoly::variable(n, Var::ZP, i); }
inline KernelPoly zbarp(int n, int i) { return KernelPoly::variable(n, Var::ZBarP, i); }

/// Real coordinate Z_j, j in 1..2n, with z_i = Z_{2i-1} + i Z_{2i}:
/// Z_{2i-1} = (z_i + zbar_i)/2, Z_{2i} = (z_i - zbar_i)/(2i).
inline KernelPoly real_coordinate(int n, int j) {
  if (j < 1 || j > 2 * n) throw std::out_of_range("real coordinate index out of range");
  const int i = (j + 1) / 2;
  const Scalar half = Scalar::rational(1, 2);
  if (j % 2 == 1) return half * (z(n, i) + zbar(n, i));
  const Scalar minus_half_i = Scalar(GaussianRational(0, Rational(-1, 2)));
  return minus_half_i * (z(n, i) - zbar(n, i));
}

/// Same, as a function of Z'.
inline KernelPoly real_coordinate_primed(int n, int j) {
  if (j < 1 || j > 2 * n) throw std::out_of_range("real coordinate index out of range");
  const int i = (j + 1) / 2;
  const Scalar half = Scalar::rational(1, 2);
  if (j % 2 == 1) return half * (zp(n, i) + zbarp(n, i));
  const Scalar minus_half_i = Scalar(GaussianRational(0, Rational(-1, 2)));
  return minus_half_i * (zp(n, i) - zbarp(n, i));
}

// ---------------------------------------------------------------------------
// Creation and annihilation operators, acting on the Z variable of F*P.

namespace detail {
inline void check_index(int n, int i) {
  if (i < 1 || i > n) throw std::out_of_range("index " + std::to_string(i) + " outside 1.." + std::to_string(n));
}
}  // namespace detail

/// b_i (F P) = (-2 dF/dz_i + 2 pi (zbar_i - zbar'_i) F) P
inline KernelPoly apply_b(int i, const KernelPoly& f) {
  const int n = f.dim();
  detail::check_index(n, i);
  return Scalar(-2) * f.derivative(Var::Z, i) + (Scalar(2) * Scalar::pi()) * ((zbar(n, i) - zbarp(n, i)) * f);
}

/// b+_i (F P) = (2 dF/dzbar_i) P, since b+_i annihilates P.
inline KernelPoly apply_b_plus(int i, const KernelPoly& f) {
  detail::check_index(f.dim(), i);
  return Scalar(2) * f.derivative(Var::ZBar, i);
}

// ---------------------------------------------------------------------------
// b-normal form:  F P = sum_{alpha,beta} c_{alpha beta}(Z') b^alpha z^beta P.

namespace detail {

struct BKey {
  MultiIndex alpha;
  MultiIndex beta;
  MultiIndex dbarp;  // power of zbar' produced by the recursion
  auto operator<=>(const BKey&) const = default;
  bool operator==(const BKey&) const = default;
};

using ScalarNormalForm = std::map<BKey, Scalar>;

inline void accumulate(ScalarNormalForm& out, const BKey& k, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = out.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
  }
}

/// Normal form of z^a zbar^b P via
///   zbar_i T P = (1/2pi) b_i(T P) + (1/pi) (dT/dz_i) P + zbar'_i T P.
inline const ScalarNormalForm& scalar_b_normal_form(const MultiIndex& a, const MultiIndex& b) {
  thread_local std::map<std::pair<MultiIndex, MultiIndex>, ScalarNormalForm> memo;
  auto found = memo.find({a, b});
  if (found != memo.end()) return found->second;

  const int n = static_cast<int>(a.size());
  ScalarNormalForm out;
  std::size_t i = 0;
  while (i < b.size() && b[i] == 0) ++i;
  if (i == b.size()) {
    out.emplace(BKey{zero_index(n), a, zero_index(n)}, Scalar(1));
  } else {
    const MultiIndex e = unit_index(n, static_cast<int>(i) + 1);
    const MultiIndex b_rest = b - e;
    const ScalarNormalForm t = scalar_b_normal_form(a, b_rest);  // copy: memo may rehash
    const Scalar inv_2pi = Scalar(GaussianRational(Rational(1, 2)), -1);
    for (const auto& [k, c] : t) {
      accumulate(out, BKey{k.alpha + e, k.beta, k.dbarp}, inv_2pi * c);
      accumulate(out, BKey{k.alpha, k.beta, k.dbarp + e}, c);
    }
    if (a[i] > 0) {
      const ScalarNormalForm d = scalar_b_normal_form(a - e, b_rest);
      const Scalar w = Scalar(GaussianRational(Rational(a[i])), -1);
      for (const auto& [k, c] : d) accumulate(out, k, w * c);
    }
  }
  return memo.emplace(std::make_pair(a, b), std::move(out)).first->second;
}

/// alpha = 0 part of the scalar normal form: P(z^a zbar^b P) = sum c z^beta zbar'^d P.
inline std::vector<std::tuple<MultiIndex, MultiIndex, Scalar>> scalar_projection(const MultiIndex& a,
                                                                                const MultiIndex& b) {
  std::vector<std::tuple<MultiIndex, MultiIndex, Scalar>> out;
  for (const auto& [k, c] : scalar_b_normal_form(a, b))
    if (is_zero_index(k.alpha)) out.emplace_back(k.beta, k.dbarp, c);
  return out;
}

}  // namespace detail

/// sum_{alpha,beta} c_{alpha beta}(Z') b^alpha z^beta P; coefficients carry only primed variables.
struct BNormalForm {
  int n = 0;
  std::map<std::pair<MultiIndex, MultiIndex>, KernelPoly> terms;

  void add(const MultiIndex& alpha, const MultiIndex& beta, const KernelPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace({alpha, beta}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  friend bool operator==(const BNormalForm&, const BNormalForm&) = default;
};

inline BNormalForm to_b_normal_form(const KernelPoly& f) {
  const int n = f.dim();
  BNormalForm out{n, {}};
  for (const auto& [m, v] : f.terms()) {
    for (const auto& [k, c] : detail::scalar_b_normal_form(m.z, m.zbar)) {
      const KernelMonomial coeff_mono{zero_index(n), zero_index(n), m.zp, m.zbarp + k.dbarp};
      out.add(k.alpha, k.beta, KernelPoly::monomial(n, coeff_mono, NCPoly(c) * v));
    }
  }
  return out;
}

/// b^alpha (z^beta P), as a kernel polynomial.
inline KernelPoly b_power_on_monomial(int n, const MultiIndex& alpha, const MultiIndex& beta) {
  KernelMonomial m = KernelMonomial::one(n);
  m.z = beta;
  KernelPoly r = KernelPoly::monomial(n, m, ExtEnd::identity(n));
  for (int i = 1; i <= n; ++i)
    for (int r_ = 0; r_ < alpha[static_cast<std::size_t>(i - 1)]; ++r_) r = apply_b(i, r);
  return r;
}

inline KernelPoly from_b_normal_form(const BNormalForm& b) {
  KernelPoly out(b.n);
  for (const auto& [key, c] : b.terms) out += c * b_power_on_monomial(b.n, key.first, key.second);
  return out;
}

/// Kernel of P o (F P), P acting in Z; the degree-0 projection ID is not applied.
inline KernelPoly project(const KernelPoly& f) {
  const int n = f.dim();
  KernelPoly out(n);
  for (const auto& [m, v] : f.terms()) {
    for (const auto& [beta, dbar, c] : detail::scalar_projection(m.z, m.zbar)) {
      out.add(KernelMonomial{beta, zero_index(n), m.zp, m.zbarp + dbar}, NCPoly(c) * v);
    }
  }
  return out;
}

/// K(F,G): (F P)(G P) = K(F,G) P. The middle integral over Z'' is the projection
/// of f2(Z'') g1(Z'') with Z' as parameter.
inline KernelPoly compose(const KernelPoly& f, const KernelPoly& g) {
  f.same_dim(g);
  const int n = f.dim();
  KernelPoly out(n);
  for (const auto& [mf, uf] : f.terms()) {
    for (const auto& [mg, ug] : g.terms()) {
      const ExtEnd u = uf * ug;
      if (u.is_zero()) continue;
      for (const auto& [beta, dbar, c] : detail::scalar_projection(mf.zp + mg.z, mf.zbarp + mg.zbar)) {
        out.add(KernelMonomial{mf.z + beta, mf.zbar, mg.zp, mg.zbarp + dbar}, NCPoly(c) * u);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sections s(Z) exp(-pi/2 |z|^2) = s(Z) P(Z,0).

class FockFunction {
 public:
  explicit FockFunction(KernelPoly p) : poly_(std::move(p)) {
    if (poly_.has_primed()) throw std::invalid_argument("FockFunction cannot depend on primed variables");
  }
  static FockFunction monomial(int n, const MultiIndex& a, const MultiIndex& b) {
    return FockFunction(KernelPoly::monomial(n, KernelMonomial{a, b, zero_index(n), zero_index(n)},
                                             ExtEnd::identity(n)));
  }
  const KernelPoly& poly() const { return poly_; }
  int dim() const { return poly_.dim(); }
  friend bool operator==(const FockFunction&, const FockFunction&) = default;

 private:
  KernelPoly poly_;
};

inline FockFunction apply_b(int i, const FockFunction& s) { return FockFunction(apply_b(i, s.poly()).at_primed_zero()); }
inline FockFunction apply_b_plus(int i, const FockFunction& s) {
  return FockFunction(apply_b_plus(i, s.poly()).at_primed_zero());
}

/// L = sum_j b_j b+_j, acting in Z.
inline KernelPoly apply_L(const KernelPoly& f) {
  KernelPoly out(f.dim());
  for (int j = 1; j <= f.dim(); ++j) out += apply_b(j, apply_b_plus(j, f));
  return out;
}

inline FockFunction apply_L(const FockFunction& s) { return FockFunction(apply_L(s.poly()).at_primed_zero()); }

/// L^0_2 = L + 4 pi N, N the form-degree operator acting on values from the left.
inline KernelPoly apply_L02(const KernelPoly& f) {
  const Scalar four_pi = Scalar(4) * Scalar::pi();
  return apply_L(f) + four_pi * (number_operator(f.dim()) * f);
}

/// (L^0_2)^{-k} P^perp applied to F P: eigenvalue 4 pi (|alpha| + q) on
/// b^alpha z^beta P with a degree-q output value; the (0,0) block is dropped.
inline KernelPoly invert_L02_perp(const KernelPoly& f, int k = 1) {
  if (k < 1) throw std::invalid_argument("inverse power must be positive");
  BNormalForm b = to_b_normal_form(f);
  BNormalForm scaled{b.n, {}};
  for (const auto& [key, coeff] : b.terms) {
    const int a = total_degree(key.first);
    KernelPoly c(b.n);
    for (const auto& [m, v] : coeff.terms()) {
      for (const auto& [q, piece] : degree_split(v)) {
        if (a + q == 0) continue;
        Scalar inv = (Scalar(4 * (a + q)) * Scalar::pi()).inverse();
        Scalar w = inv;
        for (int r = 1; r < k; ++r) w *= inv;
        c.add(m, NCPoly(w) * piece);
      }
    }
    scaled.add(key.first, key.second, c);
  }
  return from_b_normal_form(scaled);
}

/// Component of F P in Ker(L^0_2): ID * P(F P).
inline KernelPoly L02_kernel_component(const KernelPoly& f) { return id_projection(f.dim()) * project(f); }

// ---------------------------------------------------------------------------

inline std::string monomial_to_string(const KernelMonomial& m) {
  std::string out;
  const int n = static_cast<int>(m.z.size());
  auto emit = [&](const MultiIndex& e, const char* name) {
    for (int k = 0; k < n; ++k) {
      const int p = e[static_cast<std::size_t>(k)];
      if (p == 0) continue;
      std::string v = name;
      const auto prime = v.find('\'');
      std::string idx = n == 1 ? "" : std::to_string(k + 1);
      if (prime != std::string::npos) {
        v = v.substr(0, prime) + idx + "'";
      } else {
        v += idx;
      }
      if (!out.empty()) out += "·";
      out += v;
      if (p > 1) out += "^" + std::to_string(p);
    }
  };
  emit(m.z, "z");
  emit(m.zbar, "zbar");
  emit(m.zp, "z'");
  emit(m.zbarp, "zbar'");
  return out.empty() ? "1" : out;
}

inline std::string to_string(const KernelPoly& k) {
  if (k.is_zero()) return "0";
  std::string out;
  for (const auto& [m, v] : k.terms()) {
    if (!out.empty()) out += " + ";
    const std::string value = to_string(v);
    out += value.find_first_of(";[") == std::string::npos && value.find(" + ") == std::string::npos ? value : "(" + value + ")";
    if (!m.is_one()) out += "·" + monomial_to_string(m);
  }
  return out;
}

}  // namespace fockcalc
