#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "tenclass/tensor.hpp"

namespace tenclass {

enum class Status { Holds, Fails, Inconclusive };

std::string_view to_string(Status s);

struct SearchStats {
  std::size_t nodes = 0;
  int depth = 0;
  /// Smallest lower bound among leaves still open when the search stopped
  /// (for a certified search: the smallest leaf bound).
  double worst_bound = 0.0;
};

/// Predicate a witness vector must satisfy when a verdict reports Fails by
/// example. Evaluated through tensor_core, never through search internals.
struct Claim {
  enum class Kind {
    /// (A x^{m-1})_k below threshold for every k in the support of x.
    SupportComponentsBelow,
    /// A x^m below threshold.
    FormBelow,
    /// (A x^{m-1})_k above threshold for every k.
    ComponentsAbove,
  };
  Kind kind = Kind::SupportComponentsBelow;
  double threshold = 0.0;
  bool strict = true;
  /// Smallest admissible coordinate on the support of x.
  double min_coord = 0.0;
};

/// Returns true when `x` satisfies `claim` for tensor `a`.
bool claim_satisfied(const Tensor& a, const Vector& x, const Claim& claim);

class Verdict {
 public:
  /// Holds. `solution` carries a feasible point for existence-type classes.
  static Verdict holds(double epsilon, SearchStats stats = {},
                       std::optional<Vector> solution = std::nullopt);
  /// Fails with an explicit witness; throws std::logic_error if the witness
  /// does not satisfy `claim` on `a`.
  static Verdict fails(const Tensor& a, Vector witness, const Claim& claim, double epsilon,
                       SearchStats stats = {});
  /// Fails by certified nonexistence or a structural reason (no witness vector).
  static Verdict refuted(std::string reason, double epsilon, SearchStats stats = {});
  static Verdict inconclusive(std::string reason, double epsilon, SearchStats stats = {});

  [[nodiscard]] Status status() const noexcept { return status_; }
  [[nodiscard]] bool is_holds() const noexcept { return status_ == Status::Holds; }
  [[nodiscard]] bool is_fails() const noexcept { return status_ == Status::Fails; }
  [[nodiscard]] bool is_inconclusive() const noexcept { return status_ == Status::Inconclusive; }
  [[nodiscard]] bool decisive() const noexcept { return status_ != Status::Inconclusive; }

  [[nodiscard]] const std::optional<Vector>& witness() const noexcept { return witness_; }
  [[nodiscard]] const std::optional<Vector>& solution() const noexcept { return solution_; }
  [[nodiscard]] const std::optional<IndexSet>& subset() const noexcept { return subset_; }
  [[nodiscard]] const std::optional<Index>& index() const noexcept { return index_; }
  [[nodiscard]] const std::string& reason() const noexcept { return reason_; }
  [[nodiscard]] const SearchStats& stats() const noexcept { return stats_; }
  [[nodiscard]] double epsilon() const noexcept { return epsilon_; }

  Verdict& with_subset(IndexSet j) &;
  Verdict&& with_subset(IndexSet j) &&;
  Verdict& with_index(Index i) &;
  Verdict&& with_index(Index i) &&;
  Verdict& with_reason(std::string r) &;
  Verdict&& with_reason(std::string r) &&;

 private:
  Verdict(Status s, double epsilon, SearchStats stats)
      : status_(s), stats_(stats), epsilon_(epsilon) {}

  Status status_;
  std::optional<Vector> witness_;
  std::optional<Vector> solution_;
  std::optional<IndexSet> subset_;
  std::optional<Index> index_;
  std::string reason_;
  SearchStats stats_;
  double epsilon_;
};

}  // namespace tenclass
