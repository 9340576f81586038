#pragma once

// Restricted kernels of P O1 R_1 and R_1 O1 P, the only information about O1
// the second-order computation uses:
//   L1: (P O1 R_1)(0, Z')  =  (2i/3) sum z'_i A_ilm ID c_m c_l
//   L2: (P O1 R_1)(Z, 0)   =  (i/3)  sum z_i  A_ilm ID c_l c_m
//   L3: (R_1 O1 P)(Z, 0)   = -(i/6)  sum zbar_i B_ilm w_l w_m ID
// with w = wedge, c = contract.

#include <optional>
#include <string>
#include <vector>

#include "fockcalc/kernel.hpp"

namespace fockcalc {

/// Standard reads the L2 prefactor as (i/3) times the sum; Literal keeps the sum
/// in the denominator, which is not a polynomial kernel.
enum class L2Reading { Standard, Literal };

struct LTerm {
  Scalar coeff;
  Var var = Var::Z;
  int i = 1;
  TensorSymbol tensor;
  ExtEnd factor;
};

struct RestrictedKernel {
  std::string name;
  std::vector<LTerm> terms;
  std::optional<KernelPoly> kernel;  // nullopt when not available as a polynomial
  std::string note;

  bool has_tensors() const { return !terms.empty(); }
};

struct LKernelData {
  int n = 1;
  L2Reading reading = L2Reading::Standard;
  RestrictedKernel L1;  // P O1 R_1 at (0, Z')
  RestrictedKernel L2;  // P O1 R_1 at (Z, 0)
  RestrictedKernel L3;  // R_1 O1 P at (Z, 0)
};

namespace detail {

inline RestrictedKernel build_restricted(int n, std::string name, const Scalar& coeff, Var var, TensorKind kind,
                                         const std::function<ExtEnd(int, int)>& factor) {
  RestrictedKernel r{std::move(name), {}, KernelPoly(n), {}};
  for (int i = 1; i <= n; ++i) {
    for (int l = 1; l <= n; ++l) {
      for (int m = 1; m <= n; ++m) {
        LTerm t{coeff, var, i, TensorSymbol{kind, i, l, m}, factor(l, m)};
        *r.kernel += (coeff * NCPoly::tensor(t.tensor)) * (KernelPoly::variable(n, var, i) * t.factor);
        r.terms.push_back(std::move(t));
      }
    }
  }
  return r;
}

}  // namespace detail

inline LKernelData l_kernels(int n, L2Reading reading = L2Reading::Standard) {
  const Scalar i_unit = Scalar::imag_unit();
  LKernelData d;
  d.n = n;
  d.reading = reading;
  d.L1 = detail::build_restricted(n, "L1", Scalar::rational(2, 3) * i_unit, Var::ZP, TensorKind::A,
                                  [n](int l, int m) { return id_projection(n) * contract(n, m) * contract(n, l); });
  d.L2 = detail::build_restricted(n, "L2", Scalar::rational(1, 3) * i_unit, Var::Z, TensorKind::A,
                                  [n](int l, int m) { return id_projection(n) * contract(n, l) * contract(n, m); });
  d.L3 = detail::build_restricted(n, "L3", Scalar::rational(-1, 6) * i_unit, Var::ZBar, TensorKind::B,
                                  [n](int l, int m) { return wedge(n, l) * wedge(n, m) * id_projection(n); });
  if (reading == L2Reading::Literal) {
    d.L2.kernel.reset();
    d.L2.note = "literal reading divides by the sum over i,l,m; not a polynomial kernel";
  }
  return d;
}

inline std::string to_string(L2Reading r) { return r == L2Reading::Standard ? "standard" : "literal"; }

}  // namespace fockcalc
