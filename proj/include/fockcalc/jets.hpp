#pragma once

// Second-order jets of f and g at the origin. Every jet is a free symbol
// unless it is pinned to zero or given a numeric matrix value.

#include <Eigen/Dense>

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "fockcalc/ncpoly.hpp"

namespace fockcalc {

/// All jets of `base` with derivative order <= max_order, ordered by JetSymbol.
inline std::vector<JetSymbol> jets_up_to(JetBase base, int n, int max_order = 2) {
  std::vector<JetSymbol> out;
  for (int d = 0; d <= max_order; ++d)
    for (int da = 0; da <= d; ++da)
      for (const auto& a : indices_of_degree(n, da))
        for (const auto& b : indices_of_degree(n, d - da)) out.push_back(jet(base, a, b));
  return out;
}

class Jet2 {
 public:
  Jet2() = default;
  explicit Jet2(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
  }
  static Jet2 symbolic(int n) { return Jet2(n); }

  int dim() const { return n_; }

  void set_zero(const JetSymbol& s) {
    check(s);
    zeros_.insert(s);
    numeric_.erase(s);
  }
  void set_numeric(const JetSymbol& s, const Eigen::MatrixXcd& m) {
    check(s);
    if (m.isZero(0.0)) {
      set_zero(s);
      return;
    }
    zeros_.erase(s);
    numeric_[s] = m;
  }

  bool is_zero(const JetSymbol& s) const { return zeros_.count(s) > 0; }
  const std::set<JetSymbol>& zeros() const { return zeros_; }
  const std::map<JetSymbol, Eigen::MatrixXcd>& numeric() const { return numeric_; }
  bool has_numeric() const { return !numeric_.empty(); }

  /// The jet as a coefficient: 0 when pinned to zero, otherwise its symbol.
  NCPoly value(const JetSymbol& s) const { return is_zero(s) ? NCPoly() : sym(s); }

  /// Substitutes the zero pins (product jets are never pinned).
  NCPoly apply_zeros(const NCPoly& p) const {
    if (zeros_.empty()) return p;
    return substitute(p, [this](const JetSymbol& s) -> std::optional<NCPoly> {
      if (is_zero(s)) return NCPoly();
      return std::nullopt;
    });
  }

  /// The jets of (g, f) in the roles of (f, g).
  Jet2 swapped() const {
    Jet2 r(n_);
    auto flip = [](JetSymbol s) {
      if (s.base == JetBase::F) {
        s.base = JetBase::G;
      } else if (s.base == JetBase::G) {
        s.base = JetBase::F;
      }
      return s;
    };
    for (const auto& s : zeros_) r.zeros_.insert(flip(s));
    for (const auto& [s, m] : numeric_) r.numeric_[flip(s)] = m;
    return r;
  }

  friend bool operator==(const Jet2& a, const Jet2& b) {
    if (a.n_ != b.n_ || a.zeros_ != b.zeros_ || a.numeric_.size() != b.numeric_.size()) return false;
    for (const auto& [s, m] : a.numeric_) {
      auto it = b.numeric_.find(s);
      if (it == b.numeric_.end() || it->second != m) return false;
    }
    return true;
  }

 private:
  void check(const JetSymbol& s) const {
    if (s.dim() != n_) throw std::invalid_argument("jet dimension mismatch");
    if (is_product_base(s.base)) throw std::invalid_argument("product jets are derived, not assigned");
    if (s.order() > 2) throw std::invalid_argument("only jets up to order 2 are carried");
  }

  int n_ = 1;
  std::set<JetSymbol> zeros_;
  std::map<JetSymbol, Eigen::MatrixXcd> numeric_;
};

}  // namespace fockcalc
