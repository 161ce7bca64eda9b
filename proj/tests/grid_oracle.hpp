#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "tenclass/tensor.hpp"
#include "tenclass/verdict.hpp"

namespace grid_oracle {

using tenclass::Index;
using tenclass::Status;
using tenclass::Tensor;
using tenclass::Vector;

// Brute-force evaluation of the two-dimensional classes on the points
// (t/N, 1 - t/N), t = 0..N, using only tensor_core contractions.
class Grid2 {
 public:
  Grid2(const Tensor& a, double tol, Index points = 100000) : a_(a), tol_(tol), n_(points) {}

  // Some point with every support component < -tol (strict) or <= tol.
  [[nodiscard]] bool components_negative_somewhere(bool strict, bool interior_only) const {
    return any_point(interior_only, [&](const Vector& x) {
      const Vector f = tenclass::apply(a_, x);
      for (Index k = 0; k < 2; ++k) {
        if (x[k] == 0.0) continue;
        if (strict ? !(f[k] < -tol_) : !(f[k] <= tol_)) return false;
      }
      return true;
    });
  }

  [[nodiscard]] bool form_negative_somewhere(bool strict) const {
    return any_point(false, [&](const Vector& x) {
      const double v = tenclass::form_value(a_, x);
      return strict ? v < -tol_ : v <= tol_;
    });
  }

  // E0 / E for the full tensor (vertices cover the one-element subsets).
  [[nodiscard]] Status semi_positive(bool strict) const {
    return components_negative_somewhere(!strict, false) ? Status::Fails : Status::Holds;
  }

  [[nodiscard]] Status copositive(bool strict) const {
    return form_negative_somewhere(!strict) ? Status::Fails : Status::Holds;
  }

  [[nodiscard]] Status almost_semi_positive(bool strict) const {
    for (Index i = 0; i < 2; ++i) {
      const double d = a_.diag_entry(i);
      if (strict ? !(d > tol_) : !(d >= -tol_)) return Status::Fails;
    }
    return components_negative_somewhere(!strict, true) ? Status::Holds : Status::Fails;
  }

  [[nodiscard]] Status almost_copositive(bool strict) const {
    for (Index i = 0; i < 2; ++i) {
      const double d = a_.diag_entry(i);
      if (strict ? !(d > tol_) : !(d >= -tol_)) return Status::Fails;
    }
    return copositive(strict) == Status::Fails ? Status::Holds : Status::Fails;
  }

  // Grid verdict for a class label, or nullopt when the grid cannot decide it.
  [[nodiscard]] std::optional<Status> evaluate(const std::string& label) const {
    if (label == "E0") return semi_positive(false);
    if (label == "E") return semi_positive(true);
    if (label == "C0") return copositive(false);
    if (label == "C") return copositive(true);
    if (label == "almostE0") return almost_semi_positive(false);
    if (label == "almostE") return almost_semi_positive(true);
    if (label == "almostC0") return almost_copositive(false);
    if (label == "almostC") return almost_copositive(true);
    return std::nullopt;
  }

 private:
  template <class Pred>
  bool any_point(bool interior_only, Pred pred) const {
    const Index lo = interior_only ? 1 : 0;
    const Index hi = interior_only ? n_ - 1 : n_;
    for (Index t = lo; t <= hi; ++t) {
      const double s = static_cast<double>(t) / static_cast<double>(n_);
      if (pred(Vector{s, 1.0 - s})) return true;
    }
    return false;
  }

  const Tensor& a_;
  double tol_;
  Index n_;
};

}  // namespace grid_oracle
