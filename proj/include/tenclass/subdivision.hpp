#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tenclass/tensor.hpp"
#include "tenclass/verdict.hpp"

namespace tenclass {

struct EngineConfig {
  /// Relative tolerance; the absolute margin is epsilon * scale where scale
  /// defaults to the largest absolute entry of the tensor.
  double epsilon = 1e-9;
  int max_depth = 40;
  /// Hard cap on expanded nodes; reaching it yields Inconclusive.
  std::size_t node_budget = 60000;
  /// Minimum coordinate of witnesses that must be strictly positive.
  double interior_margin = 1e-6;
  int polish_steps = 50;
  /// When set, receives the smallest open-leaf bound at every expansion.
  std::vector<double>* bound_trace = nullptr;
};

/// r affinely independent points of the standard simplex in R^r.
class Simplex {
 public:
  explicit Simplex(std::vector<Vector> vertices, int depth = 0);

  /// The standard simplex itself: vertices e_0, ..., e_{r-1}.
  static Simplex standard(Index r);

  [[nodiscard]] Index dim() const noexcept { return vertices_.size(); }
  [[nodiscard]] const Vector& vertex(Index j) const { return vertices_[j]; }
  [[nodiscard]] const std::vector<Vector>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] int depth() const noexcept { return depth_; }

  [[nodiscard]] double diameter() const;
  [[nodiscard]] Vector centroid() const;
  /// Coordinates lambda with x = sum_j lambda_j v_j.
  [[nodiscard]] Vector barycentric(std::span<const double> x) const;
  [[nodiscard]] Vector point(std::span<const double> lambda) const;

 private:
  std::vector<Vector> vertices_;
  int depth_;
};

/// Volume of the simplex divided by the product of the edge lengths from the
/// first vertex; scale-free, zero for degenerate vertex sets.
double normalized_volume(const std::vector<Vector>& vertices);

/// Longest-edge bisection. Ties pick the lexicographically smallest edge
/// (a, b); the first child replaces v_b by the midpoint, the second v_a.
std::pair<Simplex, Simplex> refine(const Simplex& s);

/// c[k][j2..jm] = sum a_{k i2..im} v^{(j2)}_{i2} ... v^{(jm)}_{im}, each
/// c[k] flattened row-major over (j2..jm).
std::vector<Vector> component_coeffs(const Tensor& a, const Simplex& s);
/// c[j1..jm] = A(v^{(j1)}, ..., v^{(jm)}), flattened row-major.
Vector form_coeffs(const Tensor& a, const Simplex& s);

struct ComponentBounds {
  Vector lower;
  Vector upper;
};
/// Bounds on (A x^{m-1})_k over the simplex from the coefficients averaged
/// over permutations of (j2..jm); never looser than the raw min/max.
ComponentBounds component_bounds(const Tensor& a, const Simplex& s);
/// Lower and upper bound of A x^m over the simplex.
std::pair<double, double> form_bounds(const Tensor& a, const Simplex& s);

/// Largest absolute entry, or 1 for the zero tensor.
double tolerance_scale(const Tensor& a);

/// Holds: no y in the open standard simplex has (A y^{m-1})_k < -eps for
/// every k (strict) or <= eps (non-strict). Fails: witness y with
/// min_i y_i >= interior_margin. `scale` <= 0 means tolerance_scale(a).
Verdict decide_all_components_negative(const Tensor& a, bool strict, const EngineConfig& cfg,
                                       double scale = 0.0);

/// Holds: A x^m > -eps on the standard simplex (strict: > eps). Fails:
/// witness x on the simplex with A x^m < -eps (strict: <= eps).
Verdict decide_form_nonneg(const Tensor& a, bool strict, const EngineConfig& cfg,
                           double scale = 0.0);

/// Holds with a solution x > 0 when some x has min_k (A x^{m-1})_k > eps
/// (strict) or >= -eps (non-strict). Fails only when nonexistence is
/// certified over the closed simplex and `certify_absence` is set.
Verdict decide_positive_image(const Tensor& a, bool strict, const EngineConfig& cfg,
                              double scale = 0.0, bool certify_absence = true);

}  // namespace tenclass
