#pragma once

// Coefficient ring for all symbolic kernels: Scalar-weighted sums of ordered
// words in jet symbols, times commuting curvature-tensor symbols.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fockcalc/multi_index.hpp"
#include "fockcalc/scalar.hpp"

namespace fockcalc {

/// FG and GF are the products f*g and g*f kept as opaque atoms.
enum class JetBase : std::uint8_t { F, G, FG, GF };

inline std::string base_name(JetBase b) {
  switch (b) {
    case JetBase::F: return "f";
    case JetBase::G: return "g";
    case JetBase::FG: return "fg";
    case JetBase::GF: return "gf";
  }
  return "?";
}

inline bool is_product_base(JetBase b) { return b == JetBase::FG || b == JetBase::GF; }

/// d^{dz}/dz^{dz} d^{dzbar}/dzbar^{dzbar} of base, evaluated at the origin.
struct JetSymbol {
  JetBase base = JetBase::F;
  MultiIndex dz;
  MultiIndex dzbar;

  int dim() const { return static_cast<int>(dz.size()); }
  int order() const { return total_degree(dz) + total_degree(dzbar); }

  auto operator<=>(const JetSymbol&) const = default;
  bool operator==(const JetSymbol&) const = default;
};

inline JetSymbol jet(JetBase base, MultiIndex dz, MultiIndex dzbar) {
  if (dz.size() != dzbar.size()) throw std::invalid_argument("jet multi-indices differ in dimension");
  return {base, std::move(dz), std::move(dzbar)};
}

inline JetSymbol jet_value(JetBase base, int n) { return jet(base, zero_index(n), zero_index(n)); }
inline JetSymbol jet_dz(JetBase base, int n, int j) { return jet(base, unit_index(n, j), zero_index(n)); }
inline JetSymbol jet_dzbar(JetBase base, int n, int j) { return jet(base, zero_index(n), unit_index(n, j)); }

enum class TensorKind : std::uint8_t { A, B };

/// A_{ilm} = <(nabla_{d/dz_i} J) d/dz_l, d/dz_m>, B_{ilm} the same with d/dzbar_i.
struct TensorSymbol {
  TensorKind kind = TensorKind::A;
  int i = 1;
  int l = 1;
  int m = 1;

  auto operator<=>(const TensorSymbol&) const = default;
  bool operator==(const TensorSymbol&) const = default;
};

struct NCMonomial {
  std::vector<JetSymbol> word;
  std::vector<TensorSymbol> tensors;  // kept sorted

  auto operator<=>(const NCMonomial&) const = default;
  bool operator==(const NCMonomial&) const = default;
};

inline NCMonomial operator*(const NCMonomial& a, const NCMonomial& b) {
  NCMonomial r;
  r.word = a.word;
  r.word.insert(r.word.end(), b.word.begin(), b.word.end());
  r.tensors.resize(a.tensors.size() + b.tensors.size());
  std::merge(a.tensors.begin(), a.tensors.end(), b.tensors.begin(), b.tensors.end(), r.tensors.begin());
  return r;
}

class NCPoly {
 public:
  using Terms = std::map<NCMonomial, Scalar>;

  NCPoly() = default;
  NCPoly(const Scalar& c) { add(NCMonomial{}, c); }
  NCPoly(int c) : NCPoly(Scalar(c)) {}

  static NCPoly one() { return NCPoly(1); }
  static NCPoly symbol(const JetSymbol& s) {
    NCPoly p;
    p.add(NCMonomial{{s}, {}}, Scalar(1));
    return p;
  }
  static NCPoly tensor(const TensorSymbol& t) {
    NCPoly p;
    p.add(NCMonomial{{}, {t}}, Scalar(1));
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const NCMonomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// The constant term (empty word, no tensors).
  Scalar constant() const {
    auto it = terms_.find(NCMonomial{});
    return it == terms_.end() ? Scalar() : it->second;
  }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == NCMonomial{}); }

  bool has_tensors() const {
    for (const auto& [m, c] : terms_)
      if (!m.tensors.empty()) return true;
    return false;
  }
  bool has_product_jets() const {
    for (const auto& [m, c] : terms_)
      for (const auto& s : m.word)
        if (is_product_base(s.base)) return true;
    return false;
  }

  NCPoly operator-() const {
    NCPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  NCPoly& operator+=(const NCPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add(ma * mb, ca * cb);
    return r;
  }
  NCPoly& operator*=(const NCPoly& o) { return *this = *this * o; }
  friend NCPoly operator*(const Scalar& s, const NCPoly& p) {
    NCPoly r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : p.terms_) r.add(m, s * c);
    return r;
  }

  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

inline NCPoly sym(const JetSymbol& s) { return NCPoly::symbol(s); }

/// Replaces each jet symbol for which `fn` returns a value; others are kept.
inline NCPoly substitute(const NCPoly& p, const std::function<std::optional<NCPoly>(const JetSymbol&)>& fn) {
  NCPoly out;
  for (const auto& [m, c] : p.terms()) {
    NCPoly acc(c);
    for (const auto& t : m.tensors) acc *= NCPoly::tensor(t);
    for (const auto& s : m.word) {
      auto v = fn(s);
      acc *= v ? *v : NCPoly::symbol(s);
    }
    out += acc;
  }
  return out;
}

/// Noncommutative Leibniz rule for product jets of order <= max_order.
/// (fg)^{(a,b)} = sum C(a,a')C(b,b') f^{(a',b')} g^{(a-a',b-b')}, f-factor first.
inline NCPoly leibniz_expand(const NCPoly& p, int max_order = 2) {
  return substitute(p, [max_order](const JetSymbol& s) -> std::optional<NCPoly> {
    if (!is_product_base(s.base)) return std::nullopt;
    if (s.order() > 2) throw std::invalid_argument("Leibniz expansion supports derivative order <= 2");
    if (s.order() > max_order) return std::nullopt;
    const JetBase first = s.base == JetBase::FG ? JetBase::F : JetBase::G;
    const JetBase second = s.base == JetBase::FG ? JetBase::G : JetBase::F;
    NCPoly r;
    for (const auto& a1 : sub_indices(s.dz)) {
      for (const auto& b1 : sub_indices(s.dzbar)) {
        const BigInt w = index_binomial(s.dz, a1) * index_binomial(s.dzbar, b1);
        r += Scalar(Rational(w)) * (NCPoly::symbol(jet(first, a1, b1)) *
                                    NCPoly::symbol(jet(second, s.dz - a1, s.dzbar - b1)));
      }
    }
    return r;
  });
}

/// Exchanges the roles of f and g (fg <-> gf), keeping word order.
inline NCPoly swap_roles(const NCPoly& p) {
  return substitute(p, [](const JetSymbol& s) -> std::optional<NCPoly> {
    JetSymbol t = s;
    switch (s.base) {
      case JetBase::F: t.base = JetBase::G; break;
      case JetBase::G: t.base = JetBase::F; break;
      case JetBase::FG: t.base = JetBase::GF; break;
      case JetBase::GF: t.base = JetBase::FG; break;
    }
    return NCPoly::symbol(t);
  });
}

/// Image in the commutative quotient: letters of every word sorted.
inline NCPoly commutative_image(const NCPoly& p) {
  NCPoly out;
  for (const auto& [m, c] : p.terms()) {
    NCMonomial s = m;
    std::sort(s.word.begin(), s.word.end());
    out.add(s, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing

inline std::string jet_name(const JetSymbol& s) {
  std::string b = base_name(s.base);
  if (is_product_base(s.base)) b = "(" + b + ")";
  if (s.order() == 0) return b;
  std::string suffix;
  const int n = s.dim();
  auto dir = [n](const char* v, int k) { return n == 1 ? std::string(v) : std::string(v) + std::to_string(k + 1); };
  for (int k = 0; k < n; ++k)
    for (int r = 0; r < s.dz[static_cast<std::size_t>(k)]; ++r) suffix += dir("z", k);
  for (int k = 0; k < n; ++k)
    for (int r = 0; r < s.dzbar[static_cast<std::size_t>(k)]; ++r) suffix += dir("zbar", k);
  return b + "_" + suffix;
}

inline std::string tensor_name(const TensorSymbol& t) {
  return std::string(t.kind == TensorKind::A ? "A" : "B") + "_" + std::to_string(t.i) + std::to_string(t.l) +
         std::to_string(t.m);
}

inline std::string to_string(const NCPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string factors;
    for (const auto& t : m.tensors) factors += "·" + tensor_name(t);
    for (const auto& s : m.word) factors += "·" + jet_name(s);
    for (const auto& [k, g] : c.terms()) {
      auto [neg, body] = pretty_term(g, k);
      std::string term;
      if (body == "1" && !factors.empty()) {
        term = factors.substr(std::string("·").size());
      } else {
        term = body + factors;
      }
      if (first) {
        out += neg ? "-" + term : term;
      } else {
        out += neg ? " - " + term : " + " + term;
      }
      first = false;
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const NCPoly& p) { return os << to_string(p); }

}  // namespace fockcalc
