#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace tenclass {

using Index = std::size_t;
using Vector = std::vector<double>;
using MultiIndex = std::vector<Index>;

/// Sorted, duplicate-free, nonempty subset of {0, ..., n-1}.
class IndexSet {
 public:
  explicit IndexSet(std::vector<Index> indices);

  static IndexSet full(Index n);
  /// Subset encoded by the set bits of `mask` (bit i <=> index i).
  static IndexSet from_mask(std::uint64_t mask);

  [[nodiscard]] Index size() const noexcept { return indices_.size(); }
  [[nodiscard]] Index operator[](Index k) const { return indices_[k]; }
  [[nodiscard]] auto begin() const noexcept { return indices_.begin(); }
  [[nodiscard]] auto end() const noexcept { return indices_.end(); }
  [[nodiscard]] bool contains(Index i) const;
  [[nodiscard]] std::uint64_t mask() const;
  [[nodiscard]] const std::vector<Index>& indices() const noexcept { return indices_; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<Index> indices_;
};

/// Nonempty subsets of {0..n-1} ordered by size, then lexicographically.
std::vector<IndexSet> enumerate_subsets(Index n, bool proper_only);

/// Dense real tensor of order m and dimension n, stored row-major with the
/// first index most significant: entry (i1,...,im) sits at
/// ((i1*n + i2)*n + ...)*n + im.
class Tensor {
 public:
  Tensor(int order, Index dim);
  Tensor(int order, Index dim, std::vector<double> entries);

  static Tensor zeros(int order, Index dim) { return {order, dim}; }
  static Tensor ones(int order, Index dim);
  static Tensor identity(int order, Index dim);
  static Tensor diagonal(int order, const Vector& d);
  /// Entries given as (multi-index, value) pairs; absent entries are zero.
  /// Duplicate multi-indices are rejected.
  static Tensor from_coo(int order, Index dim,
                         const std::vector<std::pair<MultiIndex, double>>& coo);

  [[nodiscard]] int order() const noexcept { return order_; }
  [[nodiscard]] Index dim() const noexcept { return dim_; }
  [[nodiscard]] Index size() const noexcept { return entries_.size(); }
  /// n^(m-1): length of one row-subtensor block.
  [[nodiscard]] Index row_size() const noexcept { return row_size_; }
  [[nodiscard]] std::span<const double> entries() const noexcept { return entries_; }
  [[nodiscard]] std::span<const double> row(Index i) const;

  [[nodiscard]] double operator()(std::span<const Index> idx) const;
  [[nodiscard]] double at(std::initializer_list<Index> idx) const;
  [[nodiscard]] double diag_entry(Index i) const;

  [[nodiscard]] Index linear_index(std::span<const Index> idx) const;
  [[nodiscard]] MultiIndex multi_index(Index linear) const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  int order_;
  Index dim_;
  Index row_size_;
  std::vector<double> entries_;
};

// Multilinear algebra.

/// (A x^{m-1})_i = sum over (i2..im) of a_{i i2..im} x_{i2}...x_{im}; the
/// inner sum runs lexicographically over (i2..im). Call it qualified: with a
/// std::vector argument, argument-dependent lookup also finds std::apply.
Vector apply(const Tensor& a, std::span<const double> x);
/// A x^m = <x, A x^{m-1}>.
double form_value(const Tensor& a, std::span<const double> x);
/// Jacobian of x -> A x^{m-1}, row-major n x n.
std::vector<double> apply_jacobian(const Tensor& a, std::span<const double> x);
/// The n*...*n products x_{i2}...x_{im} in lexicographic order of (i2..im).
Vector outer_power(std::span<const double> x, int degree);

Tensor principal_subtensor(const Tensor& a, const IndexSet& j);
/// Order m-1 slice with entries a_{i i2..im}.
Tensor row_subtensor(const Tensor& a, Index i);
Tensor hadamard(const Tensor& a, const Tensor& b);
Tensor add(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double t);
Tensor negate(const Tensor& a);
/// b_{i1..im} = a_{sigma(i1)..sigma(im)}.
Tensor permute(const Tensor& a, std::span<const Index> sigma);
/// D A: entry (i1, ...) multiplied by d_{i1}.
Tensor scale_rows(const Tensor& a, std::span<const double> d);
/// A D: entry (i1, i2, ..., im) multiplied by d_{i2}...d_{im}; d > 0.
Tensor scale_modes(const Tensor& a, std::span<const double> d);
/// Average of the entries over every permutation of the index positions.
Tensor symmetrize(const Tensor& a);

bool is_symmetric(const Tensor& a, double tol = 0.0);
Vector diag(const Tensor& a);
bool is_nonneg(const Tensor& a);
bool is_positive(const Tensor& a);
double max_abs(const Tensor& a);

/// Inverse of a permutation given as sigma[i] = image of i.
std::vector<Index> inverse_permutation(std::span<const Index> sigma);
bool is_permutation(std::span<const Index> sigma, Index n);

/// Embed y (indexed by J) into R^n with zeros off J.
Vector embed(const Vector& y, const IndexSet& j, Index n);
Vector restrict_to(std::span<const double> x, const IndexSet& j);

double dot(std::span<const double> x, std::span<const double> y);
double max_norm(std::span<const double> x);

}  // namespace tenclass
