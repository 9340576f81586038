#pragma once

// Independent composition of kernels by Gaussian integration.
// Per complex coordinate,
//   int w^p wbar^q exp(-pi|w|^2 + s w + t wbar) dw = d_s^p d_t^q exp(st/pi),
// with s = pi zbar', t = pi z. The derivatives are taken formally on P(s,t) e^{st/pi}.

#include <map>
#include <utility>

#include "fockcalc/kernel.hpp"

namespace fockcalc {

namespace detail {

/// Polynomial in (s, t): (i, j) -> coefficient of s^i t^j.
using STPoly = std::map<std::pair<int, int>, Scalar>;

inline void st_add(STPoly& p, int i, int j, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

// d_s (P e) = (d_s P + (t/pi) P) e
inline STPoly st_ds(const STPoly& p) {
  STPoly r;
  const Scalar inv_pi = Scalar::pi_power(-1);
  for (const auto& [k, c] : p) {
    if (k.first > 0) st_add(r, k.first - 1, k.second, Scalar(k.first) * c);
    st_add(r, k.first, k.second + 1, inv_pi * c);
  }
  return r;
}

// d_t (P e) = (d_t P + (s/pi) P) e
inline STPoly st_dt(const STPoly& p) {
  STPoly r;
  const Scalar inv_pi = Scalar::pi_power(-1);
  for (const auto& [k, c] : p) {
    if (k.second > 0) st_add(r, k.first, k.second - 1, Scalar(k.second) * c);
    st_add(r, k.first + 1, k.second, inv_pi * c);
  }
  return r;
}

/// e^{-st/pi} d_s^p d_t^q e^{st/pi}, then s -> pi zbar', t -> pi z:
/// returns (power of z, power of zbar') -> coefficient.
inline std::map<std::pair<int, int>, Scalar> gaussian_moment(int p, int q) {
  STPoly poly;
  poly[{0, 0}] = Scalar(1);
  for (int r = 0; r < q; ++r) poly = st_dt(poly);
  for (int r = 0; r < p; ++r) poly = st_ds(poly);
  std::map<std::pair<int, int>, Scalar> out;
  for (const auto& [k, c] : poly) out[{k.second, k.first}] = Scalar::pi_power(k.first + k.second) * c;
  return out;
}

}  // namespace detail

/// Same contract as compose(f, g), computed by Gaussian moments.
inline KernelPoly wick_compose(const KernelPoly& f, const KernelPoly& g) {
  f.same_dim(g);
  const int n = f.dim();
  KernelPoly out(n);
  for (const auto& [mf, uf] : f.terms()) {
    for (const auto& [mg, ug] : g.terms()) {
      const ExtEnd u = uf * ug;
      if (u.is_zero()) continue;
      const MultiIndex p = mf.zp + mg.z;
      const MultiIndex q = mf.zbarp + mg.zbar;
      // Expand the product over coordinates.
      std::vector<std::pair<KernelMonomial, Scalar>> acc{{KernelMonomial{mf.z, mf.zbar, mg.zp, mg.zbarp}, Scalar(1)}};
      for (int k = 0; k < n; ++k) {
        const auto moment = detail::gaussian_moment(p[static_cast<std::size_t>(k)], q[static_cast<std::size_t>(k)]);
        std::vector<std::pair<KernelMonomial, Scalar>> next;
        for (const auto& [m, c] : acc) {
          for (const auto& [e, w] : moment) {
            KernelMonomial m2 = m;
            m2.z[static_cast<std::size_t>(k)] += e.first;
            m2.zbarp[static_cast<std::size_t>(k)] += e.second;
            next.emplace_back(m2, c * w);
          }
        }
        acc = std::move(next);
      }
      for (const auto& [m, c] : acc) out.add(m, NCPoly(c) * u);
    }
  }
  return out;
}

}  // namespace fockcalc
