#pragma once

// Truncated Bargmann space on C^n with weight exp(-p pi |z|^2), orthonormal
// monomial basis z^k / ||z^k||, k_j <= D. Matrix elements come from exact
// Gaussian moments and are floated at the end.

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fockcalc/expansion.hpp"
#include "fockcalc/numeric.hpp"

namespace fockcalc {

/// Polynomial sum c_{a,b} z^a zbar^b with exact coefficients.
class SymbolPoly {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;

  SymbolPoly() = default;
  explicit SymbolPoly(int n) : n_(n) {}
  static SymbolPoly constant(int n, const Scalar& c) {
    SymbolPoly s(n);
    s.add(zero_index(n), zero_index(n), c);
    return s;
  }
  static SymbolPoly monomial(const MultiIndex& a, const MultiIndex& b, const Scalar& c = Scalar(1)) {
    SymbolPoly s(static_cast<int>(a.size()));
    s.add(a, b, c);
    return s;
  }
  static SymbolPoly z(int n, int j) { return monomial(unit_index(n, j), zero_index(n)); }
  static SymbolPoly zbar(int n, int j) { return monomial(zero_index(n), unit_index(n, j)); }

  int dim() const { return n_; }
  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const MultiIndex& a, const MultiIndex& b, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace({a, b}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  int degree() const {
    int d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, total_degree(k.first) + total_degree(k.second));
    return d;
  }

  SymbolPoly conj() const {
    SymbolPoly r(n_);
    for (const auto& [k, c] : terms_) r.add(k.second, k.first, c.conj());
    return r;
  }
  bool is_real() const { return *this == conj(); }

  /// d/dz_j (holomorphic = true) or d/dzbar_j.
  SymbolPoly derivative(bool holomorphic, int j) const {
    const std::size_t i = static_cast<std::size_t>(j - 1);
    SymbolPoly r(n_);
    for (const auto& [k, c] : terms_) {
      Key d = k;
      int& e = holomorphic ? d.first[i] : d.second[i];
      if (e == 0) continue;
      const int m = e;
      --e;
      r.add(d.first, d.second, Scalar(m) * c);
    }
    return r;
  }
  /// d^a/dz^a d^b/dzbar^b
  SymbolPoly derivative(const MultiIndex& a, const MultiIndex& b) const {
    SymbolPoly r = *this;
    for (int j = 1; j <= n_; ++j) {
      for (int t = 0; t < a[static_cast<std::size_t>(j - 1)]; ++t) r = r.derivative(true, j);
      for (int t = 0; t < b[static_cast<std::size_t>(j - 1)]; ++t) r = r.derivative(false, j);
    }
    return r;
  }

  SymbolPoly operator-() const {
    SymbolPoly r(n_);
    for (const auto& [k, c] : terms_) r.add(k.first, k.second, -c);
    return r;
  }
  SymbolPoly& operator+=(const SymbolPoly& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }
  SymbolPoly& operator-=(const SymbolPoly& o) { return *this += -o; }
  friend SymbolPoly operator+(SymbolPoly a, const SymbolPoly& b) { return a += b; }
  friend SymbolPoly operator-(SymbolPoly a, const SymbolPoly& b) { return a -= b; }
  friend SymbolPoly operator*(const SymbolPoly& x, const SymbolPoly& y) {
    SymbolPoly r(std::max(x.n_, y.n_));
    for (const auto& [kx, cx] : x.terms_)
      for (const auto& [ky, cy] : y.terms_) r.add(kx.first + ky.first, kx.second + ky.second, cx * cy);
    return r;
  }
  friend SymbolPoly operator*(const Scalar& s, const SymbolPoly& p) {
    SymbolPoly r(p.n_);
    for (const auto& [k, c] : p.terms_) r.add(k.first, k.second, s * c);
    return r;
  }
  friend bool operator==(const SymbolPoly& a, const SymbolPoly& b) { return a.terms_ == b.terms_; }

 private:
  int n_ = 1;
  std::map<Key, Scalar> terms_;
};

inline std::string to_string(const SymbolPoly& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : s.terms()) {
    const int n = s.dim();
    const std::string mono = monomial_to_string(KernelMonomial{k.first, k.second, zero_index(n), zero_index(n)});
    for (const auto& [pk, g] : c.terms()) {
      auto [neg, body] = pretty_term(g, pk);
      std::string term = mono == "1" ? body : (body == "1" ? mono : body + "·" + mono);
      out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      out += term;
      first = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser for symbols such as "z+zbar", "z*zbar", "i*(zbar-z)", "z1^2*zbar2/3".

namespace detail {

class SymbolParser {
 public:
  SymbolParser(std::string text, int n) : s_(std::move(text)), n_(n) {}

  SymbolPoly parse() {
    SymbolPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse symbol '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SymbolPoly expr() {
    SymbolPoly r = eat('-') ? -term() : (eat('+'), term());
    for (;;) {
      if (eat('+')) {
        r += term();
      } else if (eat('-')) {
        r -= term();
      } else {
        return r;
      }
    }
  }

  SymbolPoly term() {
    SymbolPoly r = power();
    for (;;) {
      if (eat('*')) {
        r = r * power();
      } else if (eat('/')) {
        const SymbolPoly d = power();
        if (d.terms().size() != 1 || d.degree() != 0) fail("division only by a nonzero constant");
        const Scalar c = d.terms().begin()->second;
        if (!c.is_monomial()) fail("division only by a single-term constant");
        r = c.inverse() * r;
      } else {
        return r;
      }
    }
  }

  SymbolPoly power() {
    SymbolPoly base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be a non-negative integer");
    const int e = std::stoi(s_.substr(start, pos_ - start));
    SymbolPoly r = SymbolPoly::constant(n_, Scalar(1));
    for (int k = 0; k < e; ++k) r = r * base;
    return r;
  }

  SymbolPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      SymbolPoly r = expr();
      if (!eat(')')) fail("missing ')'");
      return r;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  SymbolPoly number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    const std::string t = s_.substr(start, pos_ - start);
    const auto dot = t.find('.');
    Rational v;
    if (dot == std::string::npos) {
      v = Rational(BigInt(t.substr(std::min(t.find_first_not_of('0'), t.size() - 1))));
    } else {
      const std::string whole = t.substr(0, dot);
      const std::string frac = t.substr(dot + 1);
      if (frac.find('.') != std::string::npos) fail("malformed number");
      BigInt den = 1;
      for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
      std::string digits = whole + frac;
      digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));  // no octal reading
      v = Rational(BigInt(digits), den);
    }
    return SymbolPoly::constant(n_, Scalar(v));
  }

  SymbolPoly identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    const std::size_t dstart = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string digits = s_.substr(dstart, pos_ - dstart);
    if (name == "i" && digits.empty()) return SymbolPoly::constant(n_, Scalar::imag_unit());
    if (name == "pi" && digits.empty()) return SymbolPoly::constant(n_, Scalar::pi());
    if (name == "z" || name == "zbar") {
      const int j = digits.empty() ? 1 : std::stoi(digits);
      if (j < 1 || j > n_) fail("variable index out of range for n = " + std::to_string(n_));
      return name == "z" ? SymbolPoly::z(n_, j) : SymbolPoly::zbar(n_, j);
    }
    fail("unknown identifier '" + name + digits + "'");
  }

  std::string s_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SymbolPoly parse_symbol(const std::string& text, int n = 1) { return detail::SymbolParser(text, n).parse(); }

/// Applies an NCPoly in jets of f and g (scalar case) as a bidifferential operator.
inline SymbolPoly apply_bidifferential(const NCPoly& op, const SymbolPoly& f, const SymbolPoly& g) {
  SymbolPoly out(f.dim());
  for (const auto& [m, c] : op.terms()) {
    if (!m.tensors.empty()) throw std::invalid_argument("bidifferential operator carries curvature tensors");
    SymbolPoly t = SymbolPoly::constant(f.dim(), c);
    for (const auto& s : m.word) {
      if (is_product_base(s.base)) throw std::invalid_argument("bidifferential operator carries product jets");
      t = t * (s.base == JetBase::F ? f : g).derivative(s.dz, s.dzbar);
    }
    out += t;
  }
  return out;
}

/// C1(f, g) as a polynomial symbol, from the symbolic second-order coefficient.
inline SymbolPoly c1_symbol(const SymbolPoly& f, const SymbolPoly& g) {
  const int n = f.dim();
  const NCPoly op = c1(Jet2::symbolic(n), l_kernels(n));
  return apply_bidifferential(op, f, g);
}

// ---------------------------------------------------------------------------

class BargmannBasis {
 public:
  BargmannBasis(int p, int D, int n) : p_(p), D_(D), n_(n) {
    if (p < 1) throw std::invalid_argument("p must be positive");
    if (D < 0) throw std::invalid_argument("truncation degree must be non-negative");
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    size_ = 1;
    for (int j = 0; j < n; ++j) size_ *= D + 1;
    for (int k = 0; k <= 2 * D + 8; ++k) {
      // ||z^k||^2 = k! / (p^{k+1} pi^k) in one variable
      norms_.push_back(Rational(factorial(k), boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k + 1))));
    }
  }

  int p() const { return p_; }
  int D() const { return D_; }
  int dim() const { return n_; }
  int size() const { return size_; }

  MultiIndex index(int flat) const {
    MultiIndex k = zero_index(n_);
    for (int j = n_ - 1; j >= 0; --j) {
      k[static_cast<std::size_t>(j)] = flat % (D_ + 1);
      flat /= D_ + 1;
    }
    return k;
  }
  std::optional<int> flat(const MultiIndex& k) const {
    int f = 0;
    for (int v : k) {
      if (v < 0 || v > D_) return std::nullopt;
      f = f * (D_ + 1) + v;
    }
    return f;
  }

  /// ||z^k||^2 = rational * pi^(-|k|).
  std::pair<Rational, int> norm_squared(const MultiIndex& k) const {
    Rational r = 1;
    for (int v : k) {
      if (v >= static_cast<int>(norms_.size())) throw std::out_of_range("moment table too small");
      r *= norms_[static_cast<std::size_t>(v)];
    }
    return {r, -total_degree(k)};
  }

 private:
  int p_, D_, n_;
  int size_ = 1;
  std::vector<Rational> norms_;
};

struct ToeplitzMatrix {
  Eigen::MatrixXcd matrix;
  SymbolPoly symbol;
  int p = 1;
  int D = 0;
};

/// <e_k, f e_l> = sum c_{a,b} [k + b = l + a] ||z^{l+a}||^2 / (||z^k|| ||z^l||)
inline ToeplitzMatrix toeplitz_matrix(const SymbolPoly& f, const BargmannBasis& basis) {
  if (f.dim() != basis.dim()) throw std::invalid_argument("symbol and basis differ in dimension");
  if (f.degree() > basis.D()) throw std::invalid_argument("truncation too small for symbol degree");
  const int N = basis.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N, N);
  for (const auto& [key, c] : f.terms()) {
    const std::complex<double> cv = to_complex(c);
    for (int l = 0; l < N; ++l) {
      const MultiIndex lk = basis.index(l);
      const MultiIndex top = lk + key.first;
      const MultiIndex kk = top - key.second;
      const auto k = basis.flat(kk);
      if (!k) continue;
      const auto [nt, et] = basis.norm_squared(top);
      const auto [nk, ek] = basis.norm_squared(kk);
      const auto [nl, el] = basis.norm_squared(lk);
      const Rational ratio = nt * nt / (nk * nl);  // exact square of the entry, up to pi
      const int pi_pow = 2 * et - ek - el;
      m(*k, l) += cv * std::sqrt(to_double(ratio)) * std::pow(M_PI, 0.5 * pi_pow);
    }
  }
  return {m, f, basis.p(), basis.D()};
}

inline bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

/// Indices whose every component is <= bound.
inline std::vector<int> clean_zone(const BargmannBasis& basis, int bound) {
  std::vector<int> out;
  for (int i = 0; i < basis.size(); ++i) {
    const MultiIndex k = basis.index(i);
    if (std::all_of(k.begin(), k.end(), [bound](int v) { return v <= bound; })) out.push_back(i);
  }
  return out;
}

inline double max_abs_on(const Eigen::MatrixXcd& m, const std::vector<int>& zone) {
  double r = 0.0;
  for (int k : zone)
    for (int l : zone) r = std::max(r, std::abs(m(k, l)));
  return r;
}

struct ConvergencePoint {
  int p = 0;
  double max_abs_E = 0.0;
  std::optional<double> order_estimate;  // log(E_prev / E) / log(p / p_prev)
  std::optional<double> ratio;           // E_prev / E
};

struct ExpansionReport {
  SymbolPoly f, g, c1;
  int D = 0;
  int clean_bound = 0;
  std::vector<ConvergencePoint> points;
};

namespace detail {
inline void fill_orders(std::vector<ConvergencePoint>& pts) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double a = pts[i - 1].max_abs_E;
    const double b = pts[i].max_abs_E;
    if (a > 0.0 && b > 0.0) {
      pts[i].ratio = a / b;
      pts[i].order_estimate = std::log(a / b) / std::log(static_cast<double>(pts[i].p) / pts[i - 1].p);
    }
  }
}
}  // namespace detail

/// E_p = p (T_f T_g - T_fg) - T_{C1(f,g)} on the clean zone k, l <= D - deg f - deg g - 2.
inline ExpansionReport expansion_check(const SymbolPoly& f, const SymbolPoly& g, const std::vector<int>& p_list,
                                       int D = 40) {
  const int n = f.dim();
  ExpansionReport r{f, g, c1_symbol(f, g), D, D - f.degree() - g.degree() - 2, {}};
  if (r.clean_bound < 0) throw std::invalid_argument("truncation too small for the clean zone");
  const SymbolPoly fg = f * g;
  for (int p : p_list) {
    const BargmannBasis basis(p, D, n);
    const auto zone = clean_zone(basis, r.clean_bound);
    const Eigen::MatrixXcd E =
        static_cast<double>(p) *
            (toeplitz_matrix(f, basis).matrix * toeplitz_matrix(g, basis).matrix - toeplitz_matrix(fg, basis).matrix) -
        toeplitz_matrix(r.c1, basis).matrix;
    r.points.push_back({p, max_abs_on(E, zone), std::nullopt, std::nullopt});
  }
  detail::fill_orders(r.points);
  return r;
}

struct CommutatorReport {
  SymbolPoly f, g, bracket;  // bracket = C1(f,g) - C1(g,f)
  int D = 0;
  int clean_bound = 0;
  std::vector<ConvergencePoint> points;  // max |p [T_f, T_g] - T_bracket|
};

inline CommutatorReport commutator_check(const SymbolPoly& f, const SymbolPoly& g, const std::vector<int>& p_list,
                                         int D = 40) {
  if (!f.is_real() || !g.is_real()) throw std::invalid_argument("commutator_check needs real symbols");
  const int n = f.dim();
  CommutatorReport r{f, g, c1_symbol(f, g) - c1_symbol(g, f), D, D - f.degree() - g.degree() - 2, {}};
  if (r.clean_bound < 0) throw std::invalid_argument("truncation too small for the clean zone");
  for (int p : p_list) {
    const BargmannBasis basis(p, D, n);
    const auto zone = clean_zone(basis, r.clean_bound);
    const Eigen::MatrixXcd tf = toeplitz_matrix(f, basis).matrix;
    const Eigen::MatrixXcd tg = toeplitz_matrix(g, basis).matrix;
    const Eigen::MatrixXcd dev = static_cast<double>(p) * (tf * tg - tg * tf) - toeplitz_matrix(r.bracket, basis).matrix;
    r.points.push_back({p, max_abs_on(dev, zone), std::nullopt, std::nullopt});
  }
  detail::fill_orders(r.points);
  return r;
}

/// max over the clean diagonal of |p (T_z T_zbar - T_{z zbar})_{kk} + 1/pi|, n = 1.
inline double ladder_deviation(int p, int D) {
  const BargmannBasis basis(p, D, 1);
  const SymbolPoly z = SymbolPoly::z(1, 1);
  const SymbolPoly zb = SymbolPoly::zbar(1, 1);
  const Eigen::MatrixXcd m = static_cast<double>(p) * (toeplitz_matrix(z, basis).matrix *
                                                           toeplitz_matrix(zb, basis).matrix -
                                                       toeplitz_matrix(z * zb, basis).matrix);
  double dev = 0.0;
  for (int k : clean_zone(basis, D - 4)) dev = std::max(dev, std::abs(m(k, k) + 1.0 / M_PI));
  return dev;
}

}  // namespace fockcalc
