#pragma once

// End(Lambda(C^n)) on the generators dzbar_1..dzbar_n, as 2^n x 2^n matrices
// over NCPoly. Basis element dzbar_S is indexed by the bitmask of S
// (bit k <-> generator k+1); monomials are written in ascending index order.

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fockcalc/ncpoly.hpp"

namespace fockcalc {

using Subset = std::uint32_t;

inline constexpr int kMaxExteriorDim = 8;

inline int subset_degree(Subset s) { return std::popcount(s); }

class ExtEnd {
 public:
  using Entries = std::map<std::pair<Subset, Subset>, NCPoly>;  // (row, col) -> entry

  ExtEnd() = default;
  explicit ExtEnd(int n) : n_(n) {
    if (n < 0 || n > kMaxExteriorDim) throw std::invalid_argument("exterior dimension out of range");
  }

  static ExtEnd zero(int n) { return ExtEnd(n); }
  static ExtEnd identity(int n) { return scalar(n, NCPoly::one()); }
  /// c times the identity.
  static ExtEnd scalar(int n, const NCPoly& c) {
    ExtEnd e(n);
    for (Subset s = 0; s < e.size(); ++s) e.set(s, s, c);
    return e;
  }
  static ExtEnd unit(int n, Subset row, Subset col, const NCPoly& c = NCPoly::one()) {
    ExtEnd e(n);
    e.set(row, col, c);
    return e;
  }

  int dim() const { return n_; }
  Subset size() const { return Subset{1} << n_; }
  const Entries& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  NCPoly at(Subset row, Subset col) const {
    auto it = entries_.find({row, col});
    return it == entries_.end() ? NCPoly() : it->second;
  }
  void set(Subset row, Subset col, const NCPoly& v) {
    check(row, col);
    if (v.is_zero()) {
      entries_.erase({row, col});
    } else {
      entries_[{row, col}] = v;
    }
  }
  void add(Subset row, Subset col, const NCPoly& v) {
    check(row, col);
    if (v.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace({row, col}, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  bool has_tensors() const {
    for (const auto& [k, v] : entries_)
      if (v.has_tensors()) return true;
    return false;
  }

  ExtEnd operator-() const {
    ExtEnd r(n_);
    for (const auto& [k, v] : entries_) r.entries_.emplace(k, -v);
    return r;
  }
  ExtEnd& operator+=(const ExtEnd& o) {
    same_dim(o);
    for (const auto& [k, v] : o.entries_) add(k.first, k.second, v);
    return *this;
  }
  ExtEnd& operator-=(const ExtEnd& o) {
    same_dim(o);
    for (const auto& [k, v] : o.entries_) add(k.first, k.second, -v);
    return *this;
  }
  friend ExtEnd operator+(ExtEnd a, const ExtEnd& b) { return a += b; }
  friend ExtEnd operator-(ExtEnd a, const ExtEnd& b) { return a -= b; }

  /// Composition: (a*b)(x) = a(b(x)). Entry products keep NCPoly order.
  friend ExtEnd operator*(const ExtEnd& a, const ExtEnd& b) {
    a.same_dim(b);
    std::map<Subset, std::vector<std::pair<Subset, const NCPoly*>>> rows_of_b;
    for (const auto& [k, v] : b.entries_) rows_of_b[k.first].emplace_back(k.second, &v);
    ExtEnd r(a.n_);
    for (const auto& [k, v] : a.entries_) {
      auto it = rows_of_b.find(k.second);
      if (it == rows_of_b.end()) continue;
      for (const auto& [col, w] : it->second) r.add(k.first, col, v * *w);
    }
    return r;
  }
  ExtEnd& operator*=(const ExtEnd& o) { return *this = *this * o; }

  /// Entry-wise c * e (coefficient on the left of every entry).
  friend ExtEnd operator*(const NCPoly& c, const ExtEnd& e) {
    ExtEnd r(e.n_);
    for (const auto& [k, v] : e.entries_) r.add(k.first, k.second, c * v);
    return r;
  }
  /// Entry-wise e * c.
  friend ExtEnd operator*(const ExtEnd& e, const NCPoly& c) {
    ExtEnd r(e.n_);
    for (const auto& [k, v] : e.entries_) r.add(k.first, k.second, v * c);
    return r;
  }

  friend bool operator==(const ExtEnd& a, const ExtEnd& b) { return a.n_ == b.n_ && a.entries_ == b.entries_; }

 private:
  void check(Subset row, Subset col) const {
    if (row >= size() || col >= size()) throw std::out_of_range("exterior basis index out of range");
  }
  void same_dim(const ExtEnd& o) const {
    if (o.n_ != n_) throw std::invalid_argument("exterior dimension mismatch");
  }

  int n_ = 0;
  Entries entries_;
};

namespace detail {
inline void check_generator(int n, int l) {
  if (l < 1 || l > n)
    throw std::out_of_range("generator index " + std::to_string(l) + " outside 1.." + std::to_string(n));
}
}  // namespace detail

/// (-1)^{#{s in S : s < l}}
inline int wedge_sign(int l, Subset s) {
  const Subset below = (Subset{1} << (l - 1)) - 1;
  return (std::popcount(s & below) % 2 == 0) ? 1 : -1;
}

/// dzbar_l ^ (.)
inline ExtEnd wedge(int n, int l) {
  detail::check_generator(n, l);
  ExtEnd e(n);
  const Subset bit = Subset{1} << (l - 1);
  for (Subset s = 0; s < e.size(); ++s) {
    if (s & bit) continue;
    e.set(s | bit, s, NCPoly(wedge_sign(l, s)));
  }
  return e;
}

/// Interior product by d/dzbar_m: the transpose of wedge(m).
inline ExtEnd contract(int n, int m) {
  detail::check_generator(n, m);
  ExtEnd e(n);
  const Subset bit = Subset{1} << (m - 1);
  for (Subset s = 0; s < e.size(); ++s) {
    if (s & bit) continue;
    e.set(s, s | bit, NCPoly(wedge_sign(m, s)));
  }
  return e;
}

/// Projection onto the degree-0 line.
inline ExtEnd id_projection(int n) { return ExtEnd::unit(n, 0, 0); }

/// Sum_j wedge(j) contract(j): q on degree-q forms.
inline ExtEnd number_operator(int n) {
  ExtEnd e(n);
  for (Subset s = 0; s < e.size(); ++s) e.set(s, s, NCPoly(subset_degree(s)));
  return e;
}

/// Orthogonal projection onto degree-q forms.
inline ExtEnd degree_projection(int n, int q) {
  ExtEnd e(n);
  for (Subset s = 0; s < e.size(); ++s)
    if (subset_degree(s) == q) e.set(s, s, NCPoly::one());
  return e;
}

/// Splits u by the degree of the output (row) index; zero pieces are omitted.
inline std::vector<std::pair<int, ExtEnd>> degree_split(const ExtEnd& u) {
  std::map<int, ExtEnd> pieces;
  for (const auto& [k, v] : u.entries()) {
    auto [it, _] = pieces.try_emplace(subset_degree(k.first), ExtEnd(u.dim()));
    it->second.set(k.first, k.second, v);
  }
  return {pieces.begin(), pieces.end()};
}

inline std::string subset_name(Subset s) {
  if (s == 0) return "1";
  std::string out;
  for (int k = 0; k < kMaxExteriorDim; ++k)
    if (s & (Subset{1} << k)) out += (out.empty() ? "" : "^") + std::string("dzbar") + std::to_string(k + 1);
  return out;
}

inline std::string to_string(const ExtEnd& e) {
  if (e.is_zero()) return "0";
  if (e == ExtEnd::identity(e.dim())) return "Id";
  if (e == id_projection(e.dim())) return "ID";
  const NCPoly c00 = e.at(0, 0);
  auto factor = [&c00] {
    const std::string s = to_string(c00);
    return s.find(' ') == std::string::npos ? s : "(" + s + ")";
  };
  if (!c00.is_zero() && e == ExtEnd::scalar(e.dim(), c00)) return factor() + "·Id";
  if (!c00.is_zero() && e == ExtEnd::unit(e.dim(), 0, 0, c00)) return factor() + "·ID";
  std::string out;
  for (const auto& [k, v] : e.entries()) {
    if (!out.empty()) out += "; ";
    out += "[" + subset_name(k.first) + "<-" + subset_name(k.second) + "] " + to_string(v);
  }
  return out;
}

}  // namespace fockcalc
