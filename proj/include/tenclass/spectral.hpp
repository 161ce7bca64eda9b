#pragma once

#include <cstdint>
#include <optional>

#include "tenclass/tensor.hpp"

namespace tenclass {

struct RadiusEnclosure {
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
  /// False when max_iter was reached before the requested width.
  bool converged = true;
};

/// Enclosure of the spectral radius of a nonnegative tensor by shifted power
/// iteration. Throws std::invalid_argument on a negative entry.
RadiusEnclosure spectral_radius_nonneg(const Tensor& b, double tol = 1e-12, int max_iter = 20000);

/// Final power-iteration vector (sum 1); the Perron vector when B is
/// irreducible.
Vector perron_vector(const Tensor& b, double tol = 1e-12, int max_iter = 20000);

/// Bounds valid for any x > 0: min_i / max_i of (B x^{m-1})_i / x_i^{m-1}.
std::pair<double, double> collatz_wielandt_bounds(const Tensor& b, std::span<const double> x);

struct EigenPair {
  double lambda = 0.0;
  Vector x;
  double residual = 0.0;
};

/// max_i |(A x^{m-1})_i - lambda x_i^{m-1}|.
double residual(const Tensor& a, const EigenPair& pair);

enum class EigenMode { Negative, Nonpositive };

struct EigenSearchConfig {
  double tol = 1e-8;
  int restarts = 8;
  std::uint64_t seed = 0;
  double interior_margin = 1e-6;
  int max_iter = 2000;
};

/// Searches for an H++ eigenpair of a symmetric tensor with lambda < -tol
/// (Negative) or lambda <= tol (Nonpositive) by minimizing A x^m over
/// {x >= 0, sum x_i^m = 1}. An empty result is not a proof of absence.
/// Throws std::invalid_argument for a non-symmetric tensor.
std::optional<EigenPair> find_negative_hpp_eigenpair(const Tensor& a, EigenMode mode,
                                                     const EigenSearchConfig& cfg = {});

}  // namespace tenclass
