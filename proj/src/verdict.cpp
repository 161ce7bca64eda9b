#include "tenclass/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tenclass {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::Fails: return "Fails";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

bool claim_satisfied(const Tensor& a, const Vector& x, const Claim& claim) {
  if (x.size() != a.dim()) return false;
  bool any_positive = false;
  for (double v : x) {
    if (!std::isfinite(v) || v < 0.0) return false;
    if (v > 0.0) {
      any_positive = true;
      if (v < claim.min_coord) return false;
    }
  }
  if (!any_positive) return false;
  auto below = [&](double v) { return claim.strict ? v < claim.threshold : v <= claim.threshold; };
  auto above = [&](double v) { return claim.strict ? v > claim.threshold : v >= claim.threshold; };
  switch (claim.kind) {
    case Claim::Kind::SupportComponentsBelow: {
      const Vector y = tenclass::apply(a, x);
      for (Index k = 0; k < y.size(); ++k) {
        if (x[k] > 0.0 && !below(y[k])) return false;
      }
      return true;
    }
    case Claim::Kind::FormBelow:
      return below(form_value(a, x));
    case Claim::Kind::ComponentsAbove: {
      const Vector y = tenclass::apply(a, x);
      return std::all_of(y.begin(), y.end(), above);
    }
  }
  return false;
}

Verdict Verdict::holds(double epsilon, SearchStats stats, std::optional<Vector> solution) {
  Verdict v(Status::Holds, epsilon, stats);
  v.solution_ = std::move(solution);
  return v;
}

Verdict Verdict::fails(const Tensor& a, Vector witness, const Claim& claim, double epsilon,
                       SearchStats stats) {
  if (!claim_satisfied(a, witness, claim)) {
    std::ostringstream msg;
    msg << "witness does not satisfy the claimed predicate (threshold " << claim.threshold << ")";
    throw std::logic_error(msg.str());
  }
  Verdict v(Status::Fails, epsilon, stats);
  v.witness_ = std::move(witness);
  return v;
}

Verdict Verdict::refuted(std::string reason, double epsilon, SearchStats stats) {
  Verdict v(Status::Fails, epsilon, stats);
  v.reason_ = std::move(reason);
  return v;
}

Verdict Verdict::inconclusive(std::string reason, double epsilon, SearchStats stats) {
  Verdict v(Status::Inconclusive, epsilon, stats);
  v.reason_ = std::move(reason);
  return v;
}

Verdict& Verdict::with_subset(IndexSet j) & {
  subset_ = std::move(j);
  return *this;
}
Verdict&& Verdict::with_subset(IndexSet j) && {
  subset_ = std::move(j);
  return std::move(*this);
}
Verdict& Verdict::with_index(Index i) & {
  index_ = i;
  return *this;
}
Verdict&& Verdict::with_index(Index i) && {
  index_ = i;
  return std::move(*this);
}
Verdict& Verdict::with_reason(std::string r) & {
  reason_ = std::move(r);
  return *this;
}
Verdict&& Verdict::with_reason(std::string r) && {
  reason_ = std::move(r);
  return std::move(*this);
}

}  // namespace tenclass
