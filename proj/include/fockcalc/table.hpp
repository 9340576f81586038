#pragma once

// The basic compositions K(F, G) with ID-valued linear and quadratic kernels,
// each checked for all index pairs i, j in 1..n.

#include <functional>
#include <string>
#include <vector>

#include "fockcalc/kernel.hpp"

namespace fockcalc {

struct TableLine {
  std::string identity;
  bool pass = true;
  std::string failure;  // first failing (i, j), if any
};

inline std::vector<TableLine> kernel_table(int n) {
  const KernelPoly ID = KernelPoly::id(n);
  const Scalar inv_pi = Scalar::pi_power(-1);
  auto delta = [](int i, int j) { return i == j ? 1 : 0; };
  using Builder = std::function<std::pair<KernelPoly, KernelPoly>(int, int)>;
  const std::vector<std::pair<std::string, Builder>> rows = {
      {"K(ID, zbar_j ID) = zbar'_j ID",
       [&](int, int j) { return std::pair{compose(ID, zbar(n, j) * ID), zbarp(n, j) * ID}; }},
      {"K(ID, z_j ID) = z_j ID", [&](int, int j) { return std::pair{compose(ID, z(n, j) * ID), z(n, j) * ID}; }},
      {"K(z_i ID, zbar_j ID) = z_i zbar'_j ID",
       [&](int i, int j) { return std::pair{compose(z(n, i) * ID, zbar(n, j) * ID), z(n, i) * zbarp(n, j) * ID}; }},
      {"K(zbar_i ID, z_j ID) = zbar_i z_j ID",
       [&](int i, int j) { return std::pair{compose(zbar(n, i) * ID, z(n, j) * ID), zbar(n, i) * z(n, j) * ID}; }},
      {"K(z'_i ID, zbar_j ID) = (1/pi) delta_ij ID + z_i zbar'_j ID",
       [&](int i, int j) {
         return std::pair{compose(zp(n, i) * ID, zbar(n, j) * ID),
                          Scalar(delta(i, j)) * inv_pi * ID + z(n, i) * zbarp(n, j) * ID};
       }},
      {"K(zbar'_i ID, z_j ID) = (1/pi) delta_ij ID + zbar'_i z_j ID",
       [&](int i, int j) {
         return std::pair{compose(zbarp(n, i) * ID, z(n, j) * ID),
                          Scalar(delta(i, j)) * inv_pi * ID + zbarp(n, i) * z(n, j) * ID};
       }},
      {"K(ID, zbar_i z_j ID) = (1/pi) delta_ij ID + zbar'_i z_j ID",
       [&](int i, int j) {
         return std::pair{compose(ID, zbar(n, i) * z(n, j) * ID),
                          Scalar(delta(i, j)) * inv_pi * ID + zbarp(n, i) * z(n, j) * ID};
       }},
      {"K(ID, z'_i ID) = z'_i ID", [&](int i, int) { return std::pair{compose(ID, zp(n, i) * ID), zp(n, i) * ID}; }},
      {"K(ID, zbar'_i ID) = zbar'_i ID",
       [&](int i, int) { return std::pair{compose(ID, zbarp(n, i) * ID), zbarp(n, i) * ID}; }},
      {"K(ID, z_i z_j ID) = z_i z_j ID",
       [&](int i, int j) { return std::pair{compose(ID, z(n, i) * z(n, j) * ID), z(n, i) * z(n, j) * ID}; }},
      {"K(ID, zbar_i zbar_j ID) = zbar'_i zbar'_j ID",
       [&](int i, int j) {
         return std::pair{compose(ID, zbar(n, i) * zbar(n, j) * ID), zbarp(n, i) * zbarp(n, j) * ID};
       }},
  };
  std::vector<TableLine> out;
  for (const auto& [name, build] : rows) {
    TableLine line{name, true, {}};
    for (int i = 1; i <= n && line.pass; ++i) {
      for (int j = 1; j <= n && line.pass; ++j) {
        const auto [lhs, rhs] = build(i, j);
        if (!(lhs == rhs)) {
          line.pass = false;
          line.failure = "i=" + std::to_string(i) + ", j=" + std::to_string(j) + ": got " + to_string(lhs);
        }
      }
    }
    out.push_back(std::move(line));
  }
  return out;
}

}  // namespace fockcalc
