#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockcalc/scalar.hpp"

namespace fockcalc {

/// Exponent vector over n complex directions.
using MultiIndex = std::vector<int>;

inline MultiIndex zero_index(int n) { return MultiIndex(static_cast<std::size_t>(n), 0); }

inline MultiIndex unit_index(int n, int i) {
  if (i < 1 || i > n) throw std::out_of_range("index " + std::to_string(i) + " outside 1.." + std::to_string(n));
  MultiIndex e = zero_index(n);
  e[static_cast<std::size_t>(i - 1)] = 1;
  return e;
}

inline int total_degree(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

inline bool is_zero_index(const MultiIndex& a) {
  for (int v : a)
    if (v != 0) return false;
  return true;
}

inline MultiIndex operator+(MultiIndex a, const MultiIndex& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

inline MultiIndex operator-(MultiIndex a, const MultiIndex& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}

inline bool index_leq(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

/// a! = prod a_k!
inline BigInt index_factorial(const MultiIndex& a) {
  BigInt r = 1;
  for (int v : a) r *= factorial(v);
  return r;
}

/// prod_k C(a_k, b_k)
inline BigInt index_binomial(const MultiIndex& a, const MultiIndex& b) {
  BigInt r = 1;
  for (std::size_t k = 0; k < a.size(); ++k) r *= binomial(a[k], b[k]);
  return r;
}

/// All b with b <= a componentwise, in lexicographic order.
inline std::vector<MultiIndex> sub_indices(const MultiIndex& a) {
  std::vector<MultiIndex> out{zero_index(static_cast<int>(a.size()))};
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::vector<MultiIndex> next;
    for (const auto& b : out) {
      for (int v = 0; v <= a[k]; ++v) {
        MultiIndex c = b;
        c[k] = v;
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// All multi-indices of dimension n with total degree exactly d.
inline std::vector<MultiIndex> indices_of_degree(int n, int d) {
  std::vector<MultiIndex> out;
  MultiIndex cur = zero_index(n);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (n == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, d);
  return out;
}

inline std::string index_to_string(const MultiIndex& a) {
  std::string s;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(a[k]);
  }
  return s;
}

}  // namespace fockcalc
