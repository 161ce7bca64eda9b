#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tenclass/subdivision.hpp"
#include "tenclass/tensor.hpp"
#include "tenclass/verdict.hpp"

namespace tenclass {

struct ClassifierConfig {
  double epsilon = 1e-9;
  int max_depth = 40;
  /// Largest dimension for which principal subtensors are enumerated.
  std::size_t subset_cap = 12;
  std::size_t node_budget = 60000;
  double interior_margin = 1e-6;
  std::uint64_t seed = 0;

  [[nodiscard]] EngineConfig engine() const;
};

Verdict is_diag_dominant(const Tensor& a, bool strict);

bool is_z_tensor(const Tensor& a);

struct ZDecomposition {
  double t;
  Tensor b;
};
/// A = t I - B with t the largest diagonal entry. Throws
/// std::invalid_argument if some off-diagonal entry is positive.
ZDecomposition z_decompose(const Tensor& a);

/// Compares t with a certified enclosure of rho(B).
Verdict is_m_tensor(const Tensor& a, bool strong, const ClassifierConfig& cfg = {});

/// E0 (strict = false) or E (strict = true), decided subset by subset.
Verdict is_semi_positive(const Tensor& a, bool strict, const ClassifierConfig& cfg = {});
/// Almost E0 / almost E. Holds carries the positive vector as solution().
/// Throws std::invalid_argument for dimension 1.
Verdict is_almost_semi_positive(const Tensor& a, bool strict, const ClassifierConfig& cfg = {});

/// C0 (strict = false) or C (strict = true).
Verdict is_copositive(const Tensor& a, bool strict, const ClassifierConfig& cfg = {});
/// Throws std::invalid_argument for dimension 1.
Verdict is_almost_copositive(const Tensor& a, bool strict, const ClassifierConfig& cfg = {});

Verdict is_s_tensor(const Tensor& a, const ClassifierConfig& cfg = {});
Verdict is_s0_tensor(const Tensor& a, const ClassifierConfig& cfg = {});
Verdict is_completely_s(const Tensor& a, const ClassifierConfig& cfg = {});
Verdict is_completely_s0(const Tensor& a, const ClassifierConfig& cfg = {});

/// First row whose entries a_{i i2..im} are all nonnegative.
std::optional<Index> has_nonneg_row_subtensor(const Tensor& a);
/// First row whose entries are all positive.
std::optional<Index> has_positive_row_subtensor(const Tensor& a);
/// True when every row contains a negative entry.
bool every_row_has_negative_entry(const Tensor& a);

/// Sign conditions on the entries that every almost (strictly)
/// semi-positive tensor satisfies.
struct EntryConditions {
  /// (a) every diagonal entry >= 0.
  bool diag_nonneg = false;
  /// (b) every diagonal entry > 0.
  bool diag_positive = false;
  /// (c) first row k with a_{k..k} + (sum of negative off-diagonal entries of row k) < 0.
  std::optional<Index> negative_row;
  /// (d) the same sum <= 0.
  std::optional<Index> nonpositive_row;

  /// (a) and (c) for the non-strict class, (b) and (d) for the strict one.
  [[nodiscard]] bool passes(bool strict) const;
};
EntryConditions entry_conditions(const Tensor& a);

/// Diagonal tensor D with d_{i..i} = -(A x^{m-1})_i / x_i^{m-1}, so that
/// (A + D) x^{m-1} = 0. Requires x > 0 and A x^{m-1} < 0.
Tensor stabilizing_diagonal(const Tensor& a, const Vector& x);

/// Whether x^T D (A x^{m-1}) < 0 for the n coordinate diagonals and `trials`
/// random nonzero nonnegative diagonals drawn from `seed`.
bool check_weighted_characterization(const Tensor& a, const Vector& x, int trials,
                                     std::uint64_t seed = 0);

inline constexpr std::string_view kClassNames[] = {
    "E0",     "E",      "almostE0",     "almostE",            "C0",
    "C",      "almostC0", "almostC",    "Z",                  "M",
    "strongM", "diagDominant", "strictDiagDominant", "S",     "S0",
    "completelyS", "completelyS0", "nonneg", "positive"};

struct ClassificationReport {
  std::string digest;
  ClassifierConfig config;
  int order = 0;
  Index dim = 0;
  bool symmetric = false;
  /// One verdict per entry of kClassNames, in that order.
  std::vector<std::pair<std::string, Verdict>> verdicts;
  /// Implications between classes that the decisive verdicts contradict.
  std::vector<std::string> consistency_violations;

  [[nodiscard]] const Verdict& get(std::string_view name) const;
  [[nodiscard]] bool all_decisive() const;
};

/// FNV-1a digest of order, dimension and the raw entries.
std::string tensor_digest(const Tensor& a);

ClassificationReport classify(const Tensor& a, const ClassifierConfig& cfg = {});

/// Implications violated by the verdicts of `report` for tensor `a`; only
/// decisive verdicts take part.
std::vector<std::string> consistency_check(const ClassificationReport& report, const Tensor& a);

}  // namespace tenclass
