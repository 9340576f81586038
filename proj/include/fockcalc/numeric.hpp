#pragma once

// Numeric substitution of matrix-valued jets into NCPoly expressions.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <utility>

#include "fockcalc/jets.hpp"
#include "fockcalc/ncpoly.hpp"

namespace fockcalc {

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::complex<double> to_complex(const Scalar& s) {
  std::complex<double> out = 0.0;
  for (const auto& [k, c] : s.terms())
    out += std::complex<double>(to_double(c.re), to_double(c.im)) * std::pow(M_PI, k);
  return out;
}

using JetAssignment = std::function<Eigen::MatrixXcd(const JetSymbol&)>;

/// Evaluates p with every jet symbol replaced by a rank x rank matrix. Tensor symbols are not allowed.
inline Eigen::MatrixXcd evaluate(const NCPoly& p, const JetAssignment& value, int rank) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rank, rank);
  for (const auto& [m, c] : p.terms()) {
    if (!m.tensors.empty()) throw std::invalid_argument("cannot evaluate curvature tensor symbols numerically");
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(rank, rank) * to_complex(c);
    for (const auto& s : m.word) t = t * value(s);
    out += t;
  }
  return out;
}

/// Matrix-valued polynomial sum c_{a,b} z^a zbar^b.
class MatrixTaylor {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;

  MatrixTaylor(int n, int rank) : n_(n), rank_(rank) {}

  /// Random Gaussian coefficients for all |a| + |b| <= order.
  template <typename Rng>
  static MatrixTaylor random(int n, int rank, int order, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    MatrixTaylor t(n, rank);
    for (int d = 0; d <= order; ++d)
      for (int da = 0; da <= d; ++da)
        for (const auto& a : indices_of_degree(n, da))
          for (const auto& b : indices_of_degree(n, d - da)) {
            Eigen::MatrixXcd m(rank, rank);
            for (int i = 0; i < rank; ++i)
              for (int j = 0; j < rank; ++j) m(i, j) = {g(rng), g(rng)};
            t.coeffs_[{a, b}] = m;
          }
    return t;
  }

  int dim() const { return n_; }
  int rank() const { return rank_; }
  const std::map<Key, Eigen::MatrixXcd>& coeffs() const { return coeffs_; }
  void set(const MultiIndex& a, const MultiIndex& b, const Eigen::MatrixXcd& m) { coeffs_[{a, b}] = m; }

  Eigen::MatrixXcd coefficient(const MultiIndex& a, const MultiIndex& b) const {
    auto it = coeffs_.find({a, b});
    return it == coeffs_.end() ? Eigen::MatrixXcd::Zero(rank_, rank_) : it->second;
  }

  /// d^a/dz^a d^b/dzbar^b at the origin = a! b! c_{a,b}.
  Eigen::MatrixXcd jet(const MultiIndex& a, const MultiIndex& b) const {
    return coefficient(a, b) * static_cast<double>(index_factorial(a) * index_factorial(b));
  }

  friend MatrixTaylor operator*(const MatrixTaylor& x, const MatrixTaylor& y) {
    MatrixTaylor r(x.n_, x.rank_);
    for (const auto& [kx, mx] : x.coeffs_) {
      for (const auto& [ky, my] : y.coeffs_) {
        const Key k{kx.first + ky.first, kx.second + ky.second};
        auto [it, inserted] = r.coeffs_.try_emplace(k, mx * my);
        if (!inserted) it->second += mx * my;
      }
    }
    return r;
  }

 private:
  int n_;
  int rank_;
  std::map<Key, Eigen::MatrixXcd> coeffs_;
};

/// Jets of f, g, and of the products fg, gf computed by polynomial multiplication.
inline JetAssignment assignment_from(const MatrixTaylor& f, const MatrixTaylor& g) {
  auto fg = std::make_shared<MatrixTaylor>(f * g);
  auto gf = std::make_shared<MatrixTaylor>(g * f);
  return [f, g, fg, gf](const JetSymbol& s) -> Eigen::MatrixXcd {
    switch (s.base) {
      case JetBase::F: return f.jet(s.dz, s.dzbar);
      case JetBase::G: return g.jet(s.dz, s.dzbar);
      case JetBase::FG: return fg->jet(s.dz, s.dzbar);
      case JetBase::GF: return gf->jet(s.dz, s.dzbar);
    }
    throw std::logic_error("unknown jet base");
  };
}

/// Taylor polynomials of f and g from the numeric entries of a Jet2.
/// Every jet of order <= 2 must be numeric or pinned to zero.
inline std::pair<MatrixTaylor, MatrixTaylor> taylor_from_jets(const Jet2& jets) {
  const int n = jets.dim();
  if (jets.numeric().empty()) throw std::invalid_argument("jets carry no numeric entries");
  const int rank = static_cast<int>(jets.numeric().begin()->second.rows());
  MatrixTaylor f(n, rank), g(n, rank);
  for (JetBase base : {JetBase::F, JetBase::G}) {
    for (const auto& s : jets_up_to(base, n)) {
      if (jets.is_zero(s)) continue;
      auto it = jets.numeric().find(s);
      if (it == jets.numeric().end()) throw std::invalid_argument("jet " + jet_name(s) + " is symbolic");
      if (it->second.rows() != rank || it->second.cols() != rank)
        throw std::invalid_argument("jet " + jet_name(s) + " has the wrong matrix size");
      const double w = static_cast<double>(index_factorial(s.dz) * index_factorial(s.dzbar));
      (base == JetBase::F ? f : g).set(s.dz, s.dzbar, it->second / w);
    }
  }
  return {f, g};
}

}  // namespace fockcalc
