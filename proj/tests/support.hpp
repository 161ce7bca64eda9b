#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "tenclass/tensor.hpp"

namespace testing_support {

using tenclass::Index;
using tenclass::MultiIndex;
using tenclass::Tensor;
using tenclass::Vector;

// Build a tensor from (0-based index list, value) pairs.
inline Tensor coo(int m, Index n, std::vector<std::pair<MultiIndex, double>> entries) {
  return Tensor::from_coo(m, n, entries);
}

// Order 3, dim 2: a000=1, a001=-1, a101=-1.
inline Tensor almost_e0_basic() { return coo(3, 2, {{{0, 0, 0}, 1}, {{0, 0, 1}, -1}, {{1, 0, 1}, -1}}); }

// a000=1, a001=-1, a101=-3, a111=1.
inline Tensor almost_e_basic() {
  return coo(3, 2, {{{0, 0, 0}, 1}, {{0, 0, 1}, -1}, {{1, 0, 1}, -3}, {{1, 1, 1}, 1}});
}

// a000=1, a001=-2, a011=1, a100=-1, a111=1.
inline Tensor completely_s_not_e() {
  return coo(3, 2,
             {{{0, 0, 0}, 1}, {{0, 0, 1}, -2}, {{0, 1, 1}, 1}, {{1, 0, 0}, -1}, {{1, 1, 1}, 1}});
}

// a000=1, a011=-1, a100=-1, a111=1: almost E and E0 at once.
inline Tensor almost_e_and_e0_tensor() {
  return coo(3, 2, {{{0, 0, 0}, 1}, {{0, 1, 1}, -1}, {{1, 0, 0}, -1}, {{1, 1, 1}, 1}});
}

// a000=1, a111=1, a100=-1, a011=-1.
inline Tensor hadamard_factor_a() {
  return coo(3, 2, {{{0, 0, 0}, 1}, {{1, 1, 1}, 1}, {{1, 0, 0}, -1}, {{0, 1, 1}, -1}});
}

// b000=1, b011=2, b100=-2, b111=1.
inline Tensor hadamard_factor_b() {
  return coo(3, 2, {{{0, 0, 0}, 1}, {{0, 1, 1}, 2}, {{1, 0, 0}, -2}, {{1, 1, 1}, 1}});
}

// a000=1, a001=-2, a101=-3, a111=1.
inline Tensor almost_c_basic() {
  return coo(3, 2, {{{0, 0, 0}, 1}, {{0, 0, 1}, -2}, {{1, 0, 1}, -3}, {{1, 1, 1}, 1}});
}

// a000=1, a001=-2.
inline Tensor almost_c0_not_almost_e0() { return coo(3, 2, {{{0, 0, 0}, 1}, {{0, 0, 1}, -2}}); }

// Dimension 3: a000=1, a221=1, a222=1, a001=-2, a220=-2, a112=-1.
inline Tensor almost_e0_dim3() {
  return coo(3, 3,
             {{{0, 0, 0}, 1},
              {{2, 2, 1}, 1},
              {{2, 2, 2}, 1},
              {{0, 0, 1}, -2},
              {{2, 2, 0}, -2},
              {{1, 1, 2}, -1}});
}

// a011=-1/2, a100=-1/2, a111=1 and b000=1, b011=-1/2, b100=-1/2.
inline Tensor almost_sum_a() {
  return coo(3, 2, {{{0, 1, 1}, -0.5}, {{1, 0, 0}, -0.5}, {{1, 1, 1}, 1}});
}
inline Tensor almost_sum_b() {
  return coo(3, 2, {{{0, 0, 0}, 1}, {{0, 1, 1}, -0.5}, {{1, 0, 0}, -0.5}});
}

inline Tensor diag_minus_ones(int m, Index n, double d, double c) {
  return add(Tensor::diagonal(m, Vector(n, d)), scale(Tensor::ones(m, n), -c));
}

// Reference contraction by explicit index decoding, independent of
// outer_power and of the library's loop order.
inline Vector naive_apply(const Tensor& a, const Vector& x) {
  const Index n = a.dim();
  const int m = a.order();
  Vector out(n, 0.0);
  Index total = 1;
  for (int k = 0; k < m; ++k) total *= n;
  for (Index lin = 0; lin < total; ++lin) {
    Index rest = lin;
    std::vector<Index> idx(static_cast<std::size_t>(m));
    for (int p = m - 1; p >= 0; --p) {
      idx[static_cast<std::size_t>(p)] = rest % n;
      rest /= n;
    }
    double prod = a.entries()[lin];
    for (int p = 1; p < m; ++p) prod *= x[idx[static_cast<std::size_t>(p)]];
    out[idx[0]] += prod;
  }
  return out;
}

inline double naive_form(const Tensor& a, const Vector& x) {
  const Vector f = naive_apply(a, x);
  double s = 0.0;
  for (Index i = 0; i < x.size(); ++i) s += x[i] * f[i];
  return s;
}

inline Tensor random_tensor(std::mt19937_64& rng, int m, Index n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Index total = 1;
  for (int k = 0; k < m; ++k) total *= n;
  std::vector<double> e(total);
  for (double& v : e) v = u(rng);
  return Tensor(m, n, std::move(e));
}

inline Vector random_simplex_point(std::mt19937_64& rng, Index n) {
  std::exponential_distribution<double> ex(1.0);
  Vector x(n);
  double s = 0.0;
  for (double& v : x) {
    v = ex(rng);
    s += v;
  }
  for (double& v : x) v /= s;
  return x;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testing_support
