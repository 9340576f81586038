#pragma once

// Formal sums of operator words over {P, R_k, O1, O2, Mul(z^a zbar^b), kernel literal}.
// R_k stands for (L^0_2)^{-k} P^perp; O1, O2 are opaque. Coefficients are
// constant and commute with every letter, so a term is (word, NCPoly).

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fockcalc/kernel.hpp"

namespace fockcalc {

enum class LetterKind : std::uint8_t { P, R, O1, O2, Mul, Kernel };

struct Letter {
  LetterKind kind = LetterKind::P;
  int power = 0;       // R_k
  MultiIndex a;        // Mul: z^a zbar^b
  MultiIndex b;
  std::string key;     // Kernel: canonical text of the literal
  std::shared_ptr<const KernelPoly> kernel;

  static Letter P() { return {LetterKind::P, 0, {}, {}, {}, nullptr}; }
  static Letter R(int k) {
    if (k < 1) throw std::invalid_argument("R_k needs k >= 1");
    return {LetterKind::R, k, {}, {}, {}, nullptr};
  }
  static Letter O1() { return {LetterKind::O1, 0, {}, {}, {}, nullptr}; }
  static Letter O2() { return {LetterKind::O2, 0, {}, {}, {}, nullptr}; }
  static Letter Mul(MultiIndex a, MultiIndex b) {
    if (a.size() != b.size()) throw std::invalid_argument("Mul exponents differ in dimension");
    return {LetterKind::Mul, 0, std::move(a), std::move(b), {}, nullptr};
  }
  static Letter Kernel(const KernelPoly& k) {
    return {LetterKind::Kernel, 0, {}, {}, to_string(k), std::make_shared<const KernelPoly>(k)};
  }

  bool is_holomorphic_mul() const { return kind == LetterKind::Mul && is_zero_index(b); }
  bool is_antiholomorphic_mul() const { return kind == LetterKind::Mul && is_zero_index(a); }
  bool is_constant_mul() const { return kind == LetterKind::Mul && is_zero_index(a) && is_zero_index(b); }

  std::strong_ordering operator<=>(const Letter& o) const {
    return std::tie(kind, power, a, b, key) <=> std::tie(o.kind, o.power, o.a, o.b, o.key);
  }
  bool operator==(const Letter& o) const { return (*this <=> o) == std::strong_ordering::equal; }
};

using Word = std::vector<Letter>;

class OperatorExpr {
 public:
  using Terms = std::map<Word, NCPoly>;

  OperatorExpr() = default;
  static OperatorExpr word(Word w, const NCPoly& c = NCPoly::one()) {
    OperatorExpr e;
    e.add(std::move(w), c);
    return e;
  }
  static OperatorExpr letter(Letter l) { return word(Word{std::move(l)}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Word& w, const NCPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  NCPoly coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? NCPoly() : it->second;
  }

  OperatorExpr operator-() const {
    OperatorExpr r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
  }
  OperatorExpr& operator+=(const OperatorExpr& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  OperatorExpr& operator-=(const OperatorExpr& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  friend OperatorExpr operator*(const OperatorExpr& x, const OperatorExpr& y) {
    OperatorExpr r;
    for (const auto& [wx, cx] : x.terms_) {
      for (const auto& [wy, cy] : y.terms_) {
        Word w = wx;
        w.insert(w.end(), wy.begin(), wy.end());
        r.add(w, cx * cy);
      }
    }
    return r;
  }
  friend OperatorExpr operator*(const NCPoly& c, const OperatorExpr& e) {
    OperatorExpr r;
    for (const auto& [w, d] : e.terms_) r.add(w, c * d);
    return r;
  }
  friend OperatorExpr operator*(const OperatorExpr& e, const NCPoly& c) {
    OperatorExpr r;
    for (const auto& [w, d] : e.terms_) r.add(w, d * c);
    return r;
  }
  friend bool operator==(const OperatorExpr&, const OperatorExpr&) = default;

  /// Words containing O2 or some R_k with k >= 2.
  std::vector<Word> second_order_words() const {
    std::vector<Word> out;
    for (const auto& [w, c] : terms_) {
      for (const auto& l : w) {
        if (l.kind == LetterKind::O2 || (l.kind == LetterKind::R && l.power >= 2)) {
          out.push_back(w);
          break;
        }
      }
    }
    return out;
  }

  /// Coefficients mapped by fn (zero results drop the word).
  template <typename Fn>
  OperatorExpr map_coefficients(Fn&& fn) const {
    OperatorExpr r;
    for (const auto& [w, c] : terms_) r.add(w, fn(c));
    return r;
  }

 private:
  Terms terms_;
};

// ---------------------------------------------------------------------------
// Rewriting: W1 PP->P, W2 P R_k -> 0 and R_k P -> 0, W3 R_j R_k -> R_{j+k},
// W4 P O1 P -> 0. W5 holds by construction of OperatorExpr.

namespace detail {

enum class Redex { None, W1, W2, W3, W4 };

inline Redex redex_at(const Word& w, std::size_t i) {
  if (i + 1 >= w.size()) return Redex::None;
  const LetterKind x = w[i].kind;
  const LetterKind y = w[i + 1].kind;
  if (x == LetterKind::P && y == LetterKind::P) return Redex::W1;
  if ((x == LetterKind::P && y == LetterKind::R) || (x == LetterKind::R && y == LetterKind::P)) return Redex::W2;
  if (x == LetterKind::R && y == LetterKind::R) return Redex::W3;
  if (x == LetterKind::P && y == LetterKind::O1 && i + 2 < w.size() && w[i + 2].kind == LetterKind::P)
    return Redex::W4;
  return Redex::None;
}

/// Applies the redex at i; returns false when the word becomes 0.
inline bool apply_redex(Word& w, std::size_t i, Redex r) {
  const auto pos = w.begin() + static_cast<std::ptrdiff_t>(i);
  switch (r) {
    case Redex::W1: w.erase(pos + 1); return true;
    case Redex::W2:
    case Redex::W4: return false;
    case Redex::W3: {
      w[i].power += w[i + 1].power;
      w.erase(pos + 1);
      return true;
    }
    case Redex::None: break;
  }
  throw std::logic_error("no redex to apply");
}

}  // namespace detail

/// Normal form of one word, or nullopt when it rewrites to 0. Leftmost redex first.
inline std::optional<Word> rewrite_word(Word w) {
  for (;;) {
    bool changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const detail::Redex r = detail::redex_at(w, i);
      if (r == detail::Redex::None) continue;
      if (!detail::apply_redex(w, i, r)) return std::nullopt;
      changed = true;
      break;
    }
    if (!changed) return w;
  }
}

/// Same rules, redexes chosen uniformly at random; used to test confluence.
template <typename Rng>
std::optional<Word> rewrite_word_random(Word w, Rng& rng) {
  for (;;) {
    std::vector<std::pair<std::size_t, detail::Redex>> found;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const detail::Redex r = detail::redex_at(w, i);
      if (r != detail::Redex::None) found.emplace_back(i, r);
    }
    if (found.empty()) return w;
    std::uniform_int_distribution<std::size_t> pick(0, found.size() - 1);
    const auto [i, r] = found[pick(rng)];
    if (!detail::apply_redex(w, i, r)) return std::nullopt;
  }
}

inline OperatorExpr rewrite(const OperatorExpr& e) {
  OperatorExpr out;
  for (const auto& [w, c] : e.terms())
    if (auto nf = rewrite_word(w)) out.add(*nf, c);
  return out;
}

template <typename Rng>
OperatorExpr rewrite_random(const OperatorExpr& e, Rng& rng) {
  std::vector<std::pair<Word, NCPoly>> terms(e.terms().begin(), e.terms().end());
  std::shuffle(terms.begin(), terms.end(), rng);
  OperatorExpr out;
  for (const auto& [w, c] : terms)
    if (auto nf = rewrite_word_random(w, rng)) out.add(*nf, c);
  return out;
}

// ---------------------------------------------------------------------------

inline std::string letter_name(const Letter& l) {
  switch (l.kind) {
    case LetterKind::P: return "P";
    case LetterKind::R: return "R" + std::to_string(l.power);
    case LetterKind::O1: return "O1";
    case LetterKind::O2: return "O2";
    case LetterKind::Mul: {
      const int n = static_cast<int>(l.a.size());
      KernelMonomial m{l.a, l.b, zero_index(n), zero_index(n)};
      return "[" + monomial_to_string(m) + "]";
    }
    case LetterKind::Kernel: return "K{" + l.key + "}";
  }
  return "?";
}

inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += "·";
    out += letter_name(l);
  }
  return out;
}

inline std::string to_string(const OperatorExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : e.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")·" + to_string(w);
  }
  return out;
}

}  // namespace fockcalc
