#include "tenclass/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace tenclass {

namespace {

constexpr Index kMaxEntries = Index{1} << 26;

Index checked_power(Index n, int m) {
  Index p = 1;
  for (int k = 0; k < m; ++k) {
    if (n != 0 && p > kMaxEntries / n) {
      throw std::invalid_argument("tensor too large: n^m exceeds 2^26 entries");
    }
    p *= n;
  }
  return p;
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.order() != b.order() || a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
  }
}

void require_dim(const Tensor& a, std::size_t len, const char* op) {
  if (len != a.dim()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (tensor dim " +
                                std::to_string(a.dim()) + ", vector length " +
                                std::to_string(len) + ")");
  }
}

// Advance a base-n odometer; returns false after the last multi-index.
bool next_multi_index(MultiIndex& idx, Index n) {
  for (std::size_t p = idx.size(); p-- > 0;) {
    if (++idx[p] < n) return true;
    idx[p] = 0;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------- IndexSet

IndexSet::IndexSet(std::vector<Index> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw std::invalid_argument("IndexSet: empty index set");
  for (std::size_t k = 1; k < indices_.size(); ++k) {
    if (indices_[k] <= indices_[k - 1]) {
      throw std::invalid_argument("IndexSet: indices must be strictly increasing");
    }
  }
}

IndexSet IndexSet::full(Index n) {
  std::vector<Index> idx(n);
  std::iota(idx.begin(), idx.end(), Index{0});
  return IndexSet(std::move(idx));
}

IndexSet IndexSet::from_mask(std::uint64_t mask) {
  std::vector<Index> idx;
  for (Index i = 0; i < 64; ++i) {
    if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
  }
  return IndexSet(std::move(idx));
}

bool IndexSet::contains(Index i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::uint64_t IndexSet::mask() const {
  std::uint64_t m = 0;
  for (Index i : indices_) m |= std::uint64_t{1} << i;
  return m;
}

std::vector<IndexSet> enumerate_subsets(Index n, bool proper_only) {
  if (n == 0 || n > 62) throw std::invalid_argument("enumerate_subsets: n out of range");
  std::vector<std::uint64_t> masks;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t m = 1; m <= full; ++m) {
    if (proper_only && m == full) continue;
    masks.push_back(m);
  }
  std::vector<IndexSet> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(IndexSet::from_mask(m));
  std::stable_sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.indices() < b.indices();
  });
  return out;
}

// ------------------------------------------------------------------ Tensor

Tensor::Tensor(int order, Index dim) : order_(order), dim_(dim) {
  if (order < 1) throw std::invalid_argument("Tensor: order must be >= 1");
  if (dim < 1) throw std::invalid_argument("Tensor: dim must be >= 1");
  row_size_ = checked_power(dim, order - 1);
  entries_.assign(checked_power(dim, order), 0.0);
}

Tensor::Tensor(int order, Index dim, std::vector<double> entries) : Tensor(order, dim) {
  if (entries.size() != entries_.size()) {
    throw std::invalid_argument("Tensor: expected " + std::to_string(entries_.size()) +
                                " entries, got " + std::to_string(entries.size()));
  }
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (!std::isfinite(entries[k])) {
      throw std::invalid_argument("Tensor: non-finite entry at linear index " +
                                  std::to_string(k));
    }
  }
  entries_ = std::move(entries);
}

Tensor Tensor::ones(int order, Index dim) {
  Tensor t(order, dim);
  std::fill(t.entries_.begin(), t.entries_.end(), 1.0);
  return t;
}

Tensor Tensor::identity(int order, Index dim) {
  return diagonal(order, Vector(dim, 1.0));
}

Tensor Tensor::diagonal(int order, const Vector& d) {
  Tensor t(order, d.size());
  for (Index i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d[i])) throw std::invalid_argument("Tensor::diagonal: non-finite value");
    MultiIndex idx(static_cast<std::size_t>(order), i);
    t.entries_[t.linear_index(idx)] = d[i];
  }
  return t;
}

Tensor Tensor::from_coo(int order, Index dim,
                        const std::vector<std::pair<MultiIndex, double>>& coo) {
  Tensor t(order, dim);
  std::set<Index> seen;
  for (const auto& [idx, value] : coo) {
    const Index lin = t.linear_index(idx);
    if (!seen.insert(lin).second) {
      throw std::invalid_argument("Tensor::from_coo: duplicate entry index");
    }
    if (!std::isfinite(value)) {
      throw std::invalid_argument("Tensor::from_coo: non-finite value");
    }
    t.entries_[lin] = value;
  }
  return t;
}

std::span<const double> Tensor::row(Index i) const {
  if (i >= dim_) throw std::out_of_range("Tensor::row: index out of range");
  return std::span<const double>(entries_).subspan(i * row_size_, row_size_);
}

double Tensor::operator()(std::span<const Index> idx) const { return entries_[linear_index(idx)]; }

double Tensor::at(std::initializer_list<Index> idx) const {
  return (*this)(std::span<const Index>(idx.begin(), idx.size()));
}

double Tensor::diag_entry(Index i) const {
  if (i >= dim_) throw std::out_of_range("Tensor::diag_entry: index out of range");
  Index lin = 0;
  for (int p = 0; p < order_; ++p) lin = lin * dim_ + i;
  return entries_[lin];
}

Index Tensor::linear_index(std::span<const Index> idx) const {
  if (idx.size() != static_cast<std::size_t>(order_)) {
    throw std::invalid_argument("Tensor: multi-index has wrong length");
  }
  Index lin = 0;
  for (Index i : idx) {
    if (i >= dim_) throw std::out_of_range("Tensor: index out of range");
    lin = lin * dim_ + i;
  }
  return lin;
}

MultiIndex Tensor::multi_index(Index linear) const {
  MultiIndex idx(static_cast<std::size_t>(order_));
  for (std::size_t p = idx.size(); p-- > 0;) {
    idx[p] = linear % dim_;
    linear /= dim_;
  }
  return idx;
}

// ------------------------------------------------------------ contraction

Vector outer_power(std::span<const double> x, int degree) {
  Vector out{1.0};
  for (int step = 0; step < degree; ++step) {
    Vector next(out.size() * x.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
      for (std::size_t i = 0; i < x.size(); ++i) next[j * x.size() + i] = out[j] * x[i];
    }
    out = std::move(next);
  }
  return out;
}

Vector apply(const Tensor& a, std::span<const double> x) {
  require_dim(a, x.size(), "apply");
  const Vector xp = outer_power(x, a.order() - 1);
  Vector y(a.dim(), 0.0);
  const auto e = a.entries();
  for (Index i = 0; i < a.dim(); ++i) {
    const double* row = e.data() + i * a.row_size();
    double s = 0.0;
    for (Index j = 0; j < a.row_size(); ++j) s += row[j] * xp[j];
    y[i] = s;
  }
  return y;
}

double form_value(const Tensor& a, std::span<const double> x) {
  return dot(x, tenclass::apply(a, x));
}

std::vector<double> apply_jacobian(const Tensor& a, std::span<const double> x) {
  require_dim(a, x.size(), "apply_jacobian");
  const Index n = a.dim();
  const int d = a.order() - 1;
  std::vector<double> jac(n * n, 0.0);
  if (d == 0) return jac;
  MultiIndex idx(static_cast<std::size_t>(d), 0);
  std::vector<double> prefix(static_cast<std::size_t>(d) + 1);
  std::vector<double> suffix(static_cast<std::size_t>(d) + 1);
  const auto e = a.entries();
  Index j = 0;
  do {
    prefix[0] = 1.0;
    for (int p = 0; p < d; ++p) prefix[p + 1] = prefix[p] * x[idx[p]];
    suffix[d] = 1.0;
    for (int p = d; p-- > 0;) suffix[p] = suffix[p + 1] * x[idx[p]];
    for (Index k = 0; k < n; ++k) {
      const double coef = e[k * a.row_size() + j];
      if (coef == 0.0) continue;
      for (int p = 0; p < d; ++p) jac[k * n + idx[p]] += coef * prefix[p] * suffix[p + 1];
    }
    ++j;
  } while (next_multi_index(idx, n));
  return jac;
}

// ------------------------------------------------------------- structure

Tensor principal_subtensor(const Tensor& a, const IndexSet& j) {
  for (Index i : j) {
    if (i >= a.dim()) throw std::out_of_range("principal_subtensor: index out of range");
  }
  const Index r = j.size();
  std::vector<double> entries;
  entries.reserve(Tensor(a.order(), r).size());
  MultiIndex local(static_cast<std::size_t>(a.order()), 0);
  MultiIndex global(local.size());
  do {
    for (std::size_t p = 0; p < local.size(); ++p) global[p] = j[local[p]];
    entries.push_back(a(global));
  } while (next_multi_index(local, r));
  return Tensor(a.order(), r, std::move(entries));
}

Tensor row_subtensor(const Tensor& a, Index i) {
  if (a.order() < 2) throw std::invalid_argument("row_subtensor: order must be >= 2");
  const auto r = a.row(i);
  return Tensor(a.order() - 1, a.dim(), std::vector<double>(r.begin(), r.end()));
}

Tensor hadamard(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "hadamard");
  std::vector<double> e(a.size());
  for (Index k = 0; k < e.size(); ++k) e[k] = a.entries()[k] * b.entries()[k];
  return Tensor(a.order(), a.dim(), std::move(e));
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  std::vector<double> e(a.size());
  for (Index k = 0; k < e.size(); ++k) e[k] = a.entries()[k] + b.entries()[k];
  return Tensor(a.order(), a.dim(), std::move(e));
}

Tensor scale(const Tensor& a, double t) {
  std::vector<double> e(a.entries().begin(), a.entries().end());
  for (double& v : e) v *= t;
  return Tensor(a.order(), a.dim(), std::move(e));
}

Tensor negate(const Tensor& a) { return scale(a, -1.0); }

bool is_permutation(std::span<const Index> sigma, Index n) {
  if (sigma.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Index s : sigma) {
    if (s >= n || hit[s]) return false;
    hit[s] = true;
  }
  return true;
}

std::vector<Index> inverse_permutation(std::span<const Index> sigma) {
  if (!is_permutation(sigma, sigma.size())) {
    throw std::invalid_argument("inverse_permutation: not a bijection");
  }
  std::vector<Index> inv(sigma.size());
  for (Index i = 0; i < sigma.size(); ++i) inv[sigma[i]] = i;
  return inv;
}

Tensor permute(const Tensor& a, std::span<const Index> sigma) {
  if (!is_permutation(sigma, a.dim())) throw std::invalid_argument("permute: sigma is not a bijection");
  std::vector<double> e(a.size());
  MultiIndex idx(static_cast<std::size_t>(a.order()), 0);
  MultiIndex src(idx.size());
  Index lin = 0;
  do {
    for (std::size_t p = 0; p < idx.size(); ++p) src[p] = sigma[idx[p]];
    e[lin++] = a(src);
  } while (next_multi_index(idx, a.dim()));
  return Tensor(a.order(), a.dim(), std::move(e));
}

Tensor scale_rows(const Tensor& a, std::span<const double> d) {
  require_dim(a, d.size(), "scale_rows");
  std::vector<double> e(a.entries().begin(), a.entries().end());
  for (Index i = 0; i < a.dim(); ++i) {
    for (Index j = 0; j < a.row_size(); ++j) e[i * a.row_size() + j] *= d[i];
  }
  return Tensor(a.order(), a.dim(), std::move(e));
}

Tensor scale_modes(const Tensor& a, std::span<const double> d) {
  require_dim(a, d.size(), "scale_modes");
  for (double v : d) {
    if (!(v > 0.0)) throw std::invalid_argument("scale_modes: scaling must be strictly positive");
  }
  const Vector dp = outer_power(d, a.order() - 1);
  std::vector<double> e(a.entries().begin(), a.entries().end());
  for (Index i = 0; i < a.dim(); ++i) {
    for (Index j = 0; j < a.row_size(); ++j) e[i * a.row_size() + j] *= dp[j];
  }
  return Tensor(a.order(), a.dim(), std::move(e));
}

Tensor symmetrize(const Tensor& a) {
  std::map<MultiIndex, std::pair<double, int>> orbit;
  MultiIndex idx(static_cast<std::size_t>(a.order()), 0);
  Index lin = 0;
  do {
    MultiIndex key = idx;
    std::sort(key.begin(), key.end());
    auto& [sum, count] = orbit[key];
    sum += a.entries()[lin++];
    ++count;
  } while (next_multi_index(idx, a.dim()));
  std::vector<double> e(a.size());
  std::fill(idx.begin(), idx.end(), 0);
  lin = 0;
  do {
    MultiIndex key = idx;
    std::sort(key.begin(), key.end());
    const auto& [sum, count] = orbit.at(key);
    e[lin++] = sum / count;
  } while (next_multi_index(idx, a.dim()));
  return Tensor(a.order(), a.dim(), std::move(e));
}

bool is_symmetric(const Tensor& a, double tol) {
  MultiIndex idx(static_cast<std::size_t>(a.order()), 0);
  Index lin = 0;
  do {
    MultiIndex key = idx;
    std::sort(key.begin(), key.end());
    if (std::abs(a.entries()[lin] - a(key)) > tol) return false;
    ++lin;
  } while (next_multi_index(idx, a.dim()));
  return true;
}

Vector diag(const Tensor& a) {
  Vector d(a.dim());
  for (Index i = 0; i < a.dim(); ++i) d[i] = a.diag_entry(i);
  return d;
}

bool is_nonneg(const Tensor& a) {
  return std::all_of(a.entries().begin(), a.entries().end(), [](double v) { return v >= 0.0; });
}

bool is_positive(const Tensor& a) {
  return std::all_of(a.entries().begin(), a.entries().end(), [](double v) { return v > 0.0; });
}

double max_abs(const Tensor& a) {
  double m = 0.0;
  for (double v : a.entries()) m = std::max(m, std::abs(v));
  return m;
}

Vector embed(const Vector& y, const IndexSet& j, Index n) {
  if (y.size() != j.size()) throw std::invalid_argument("embed: length mismatch");
  Vector x(n, 0.0);
  for (Index k = 0; k < j.size(); ++k) {
    if (j[k] >= n) throw std::out_of_range("embed: index out of range");
    x[j[k]] = y[k];
  }
  return x;
}

Vector restrict_to(std::span<const double> x, const IndexSet& j) {
  Vector y(j.size());
  for (Index k = 0; k < j.size(); ++k) y[k] = x[j[k]];
  return y;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double max_norm(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace tenclass
