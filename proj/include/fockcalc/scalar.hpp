#pragma once

// Exact scalars: Gaussian rationals and finite Laurent sums in a formal pi.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace fockcalc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Canonical "num/den" form; denominators are always written, even when 1.
inline std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

/// Accepts "a/b" or a bare integer "a".
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(BigInt(std::string(text)));
    }
    BigInt num(std::string(text.substr(0, slash)));
    BigInt den(std::string(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
}

inline BigInt factorial(int k) {
  BigInt r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(int r) : re(r), im(0) {}

  static GaussianRational i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }

  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero Gaussian rational");
    const Rational norm = re * re + im * im;
    return {re / norm, -im / norm};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Finite sum  sum_k c_k * pi^k  with c_k Gaussian rational, k in Z.
/// pi is a formal central variable and is never evaluated here.
class Scalar {
 public:
  using Terms = std::map<int, GaussianRational>;

  Scalar() = default;
  Scalar(int v) { add_term(0, GaussianRational(v)); }
  Scalar(const Rational& v) { add_term(0, GaussianRational(v)); }
  Scalar(const GaussianRational& v, int pi_pow = 0) { add_term(pi_pow, v); }

  static Scalar pi_power(int k) { return Scalar(GaussianRational(1), k); }
  static Scalar pi() { return pi_power(1); }
  static Scalar imag_unit() { return Scalar(GaussianRational::i()); }
  static Scalar rational(long long num, long long den = 1) {
    return Scalar(Rational(BigInt(num), BigInt(den)));
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  void add_term(int pi_pow, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(pi_pow, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Scalar operator-() const {
    Scalar r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }
  Scalar& operator+=(const Scalar& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
    return r;
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Only single-term scalars are invertible in this ring.
  Scalar inverse() const {
    if (!is_monomial()) throw std::domain_error("only a single pi-power term can be inverted");
    const auto& [k, c] = *terms_.begin();
    return Scalar(c.inverse(), -k);
  }

  Scalar conj() const {
    Scalar r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c.conj());
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

namespace detail {

// "a/b" printed as "a" when b == 1.
inline std::string pretty_rational(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

inline std::string pi_factor(int k) {
  if (k == 1) return "π";
  return "π^" + std::to_string(k);
}

// Magnitude of one term, without sign: "(1/π)", "(2/3)", "π", "(3·π^2)".
inline std::string pretty_magnitude(const Rational& mag, int k) {
  const bool unit = (mag == 1);
  if (k == 0) return unit ? "1" : "(" + pretty_rational(mag) + ")";
  if (k > 0) return unit ? pi_factor(k) : "(" + pretty_rational(mag) + "·" + pi_factor(k) + ")";
  const auto num = boost::multiprecision::numerator(mag);
  const auto den = boost::multiprecision::denominator(mag);
  std::ostringstream os;
  os << '(' << num << '/';
  if (den != 1) os << den << "·";
  os << pi_factor(-k) << ')';
  return os.str();
}

}  // namespace detail

/// Human-readable form, e.g. "-(1/π)", "i·(2/(3·π))"-style pieces joined by " + ".
/// Returns {sign, body} pairs so callers can fold signs into sums.
inline std::pair<bool, std::string> pretty_term(const GaussianRational& c, int k) {
  if (c.im == 0) {
    const bool neg = c.re < 0;
    return {neg, detail::pretty_magnitude(neg ? Rational(-c.re) : c.re, k)};
  }
  if (c.re == 0) {
    const bool neg = c.im < 0;
    const Rational mag = neg ? Rational(-c.im) : c.im;
    const std::string m = detail::pretty_magnitude(mag, k);
    return {neg, m == "1" ? "i" : "i·" + m};
  }
  std::string body = "(" + detail::pretty_rational(c.re) + (c.im < 0 ? "-" : "+") +
                     detail::pretty_rational(c.im < 0 ? Rational(-c.im) : c.im) + "i)";
  if (k != 0) body += "·" + detail::pi_factor(k);
  return {false, body};
}

inline std::string to_string(const Scalar& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : s.terms()) {
    auto [neg, body] = pretty_term(c, k);
    if (first) {
      out += neg ? "-" + body : body;
    } else {
      out += neg ? " - " + body : " + " + body;
    }
    first = false;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

}  // namespace fockcalc
