#pragma once

#include <vector>

namespace coalbranch {

inline double ipow(double base, int e) {
  double acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

// Product of per-coordinate binomials.
inline double multi_binom(const std::vector<int>& n, const std::vector<int>& k) {
  double acc = 1.0;
  for (std::size_t i = 0; i < n.size(); ++i) acc *= binom(n[i], k[i]);
  return acc;
}

// r^n = prod r_i^{n_i}.
inline double monomial(const std::vector<double>& r, const std::vector<int>& n) {
  double acc = 1.0;
  for (std::size_t i = 0; i < n.size(); ++i) acc *= ipow(r[i], n[i]);
  return acc;
}

inline int total(const std::vector<int>& n) {
  int s = 0;
  for (int x : n) s += x;
  return s;
}

inline bool is_zero(const std::vector<int>& k) {
  for (int x : k)
    if (x != 0) return false;
  return true;
}

// k == e_i?
inline bool is_unit_at(const std::vector<int>& k, int i) {
  for (std::size_t j = 0; j < k.size(); ++j)
    if (k[j] != (static_cast<int>(j) == i ? 1 : 0)) return false;
  return true;
}

// Odometer over the box 0 <= k_i <= n_i; returns false after the last point.
inline bool next_in_box(std::vector<int>& k, const std::vector<int>& n) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < n[i]) {
      ++k[i];
      return true;
    }
    k[i] = 0;
  }
  return false;
}

}  // namespace coalbranch
