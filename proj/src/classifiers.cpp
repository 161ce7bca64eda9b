#include "tenclass/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <random>
#include <stdexcept>

#include "tenclass/spectral.hpp"

namespace tenclass {

namespace {

bool is_diagonal_position(const Tensor& a, Index row, Index j) {
  // Position j inside row `row` is the diagonal when every remaining index equals row.
  Index lin = 0;
  for (int p = 1; p < a.order(); ++p) lin = lin * a.dim() + row;
  return j == lin;
}

void merge_stats(SearchStats& acc, const SearchStats& s, bool first) {
  acc.nodes += s.nodes;
  acc.depth = std::max(acc.depth, s.depth);
  acc.worst_bound = first ? s.worst_bound : std::min(acc.worst_bound, s.worst_bound);
}

void require_subset_cap(const Tensor& a, const ClassifierConfig& cfg) {
  if (a.dim() > cfg.subset_cap) {
    throw std::invalid_argument("dimension " + std::to_string(a.dim()) +
                                " exceeds the subset enumeration cap " +
                                std::to_string(cfg.subset_cap));
  }
}

std::string subset_text(const IndexSet& j) {
  std::string s = "{";
  for (Index k = 0; k < j.size(); ++k) {
    if (k > 0) s += ",";
    s += std::to_string(j[k]);
  }
  return s + "}";
}

// Semi-positivity of the principal subtensors over `subsets`, lifting any
// witness to the full dimension.
Verdict semi_positive_over(const Tensor& a, bool strict, const ClassifierConfig& cfg,
                           const std::vector<IndexSet>& subsets) {
  const EngineConfig ecfg = cfg.engine();
  const double scale = tolerance_scale(a);
  const double eps_abs = cfg.epsilon * scale;
  SearchStats stats;
  std::optional<Verdict> pending;
  bool first = true;
  for (const auto& j : subsets) {
    const Tensor sub = principal_subtensor(a, j);
    Verdict v = decide_all_components_negative(sub, !strict, ecfg, scale);
    merge_stats(stats, v.stats(), first);
    first = false;
    if (v.is_fails()) {
      const Claim claim{Claim::Kind::SupportComponentsBelow, strict ? eps_abs : -eps_abs, !strict,
                        cfg.interior_margin * (1.0 - 1e-9)};
      return Verdict::fails(a, embed(*v.witness(), j, a.dim()), claim, cfg.epsilon, stats)
          .with_subset(j)
          .with_reason("principal subtensor " + subset_text(j) + " has a violating vector");
    }
    if (v.is_inconclusive() && !pending) {
      pending = Verdict::inconclusive("subset " + subset_text(j) + ": " + v.reason(), cfg.epsilon);
    }
  }
  if (pending) return Verdict::inconclusive(pending->reason(), cfg.epsilon, stats);
  return Verdict::holds(cfg.epsilon, stats);
}

Verdict positive_image_over(const Tensor& a, bool strict, const ClassifierConfig& cfg,
                            const std::vector<IndexSet>& subsets) {
  const EngineConfig ecfg = cfg.engine();
  const double scale = tolerance_scale(a);
  SearchStats stats;
  std::optional<Verdict> pending;
  std::optional<Vector> solution;
  bool first = true;
  for (const auto& j : subsets) {
    const Tensor sub = principal_subtensor(a, j);
    const bool certify = strict || j.size() <= 4;
    Verdict v = decide_positive_image(sub, strict, ecfg, scale, certify);
    merge_stats(stats, v.stats(), first);
    first = false;
    if (v.is_fails()) {
      return Verdict::refuted("principal subtensor " + subset_text(j) + ": " + v.reason(),
                              cfg.epsilon, stats)
          .with_subset(j);
    }
    if (v.is_inconclusive() && !pending) {
      pending = Verdict::inconclusive("subset " + subset_text(j) + ": " + v.reason(), cfg.epsilon);
    }
    if (v.is_holds() && j.size() == a.dim()) solution = embed(*v.solution(), j, a.dim());
  }
  if (pending) return Verdict::inconclusive(pending->reason(), cfg.epsilon, stats);
  return Verdict::holds(cfg.epsilon, stats, solution);
}

std::vector<IndexSet> maximal_proper_subsets(Index n) {
  std::vector<IndexSet> out;
  for (Index skip = n; skip-- > 0;) {
    std::vector<Index> idx;
    for (Index i = 0; i < n; ++i) {
      if (i != skip) idx.push_back(i);
    }
    out.emplace_back(std::move(idx));
  }
  std::sort(out.begin(), out.end(),
            [](const IndexSet& x, const IndexSet& y) { return x.indices() < y.indices(); });
  return out;
}

}  // namespace

EngineConfig ClassifierConfig::engine() const {
  EngineConfig e;
  e.epsilon = epsilon;
  e.max_depth = max_depth;
  e.node_budget = node_budget;
  e.interior_margin = interior_margin;
  return e;
}

// ---------------------------------------------------------- entry structure

Verdict is_diag_dominant(const Tensor& a, bool strict) {
  for (Index i = 0; i < a.dim(); ++i) {
    const auto row = a.row(i);
    double off = 0.0;
    for (Index j = 0; j < row.size(); ++j) {
      if (!is_diagonal_position(a, i, j)) off += std::abs(row[j]);
    }
    const double d = std::abs(a.diag_entry(i));
    if (strict ? !(d > off) : !(d >= off)) {
      return Verdict::refuted("row " + std::to_string(i) + " is not dominated by its diagonal", 0.0)
          .with_index(i);
    }
  }
  return Verdict::holds(0.0);
}

bool is_z_tensor(const Tensor& a) {
  for (Index i = 0; i < a.dim(); ++i) {
    const auto row = a.row(i);
    for (Index j = 0; j < row.size(); ++j) {
      if (row[j] > 0.0 && !is_diagonal_position(a, i, j)) return false;
    }
  }
  return true;
}

ZDecomposition z_decompose(const Tensor& a) {
  if (!is_z_tensor(a)) throw std::invalid_argument("z_decompose: positive off-diagonal entry");
  const Vector d = diag(a);
  const double t = *std::max_element(d.begin(), d.end());
  return {t, add(Tensor::diagonal(a.order(), Vector(a.dim(), t)), negate(a))};
}

Verdict is_m_tensor(const Tensor& a, bool strong, const ClassifierConfig& cfg) {
  if (!is_z_tensor(a)) return Verdict::refuted("NotZ", cfg.epsilon);
  const ZDecomposition z = z_decompose(a);
  const RadiusEnclosure enc = spectral_radius_nonneg(z.b);
  const double eps = cfg.epsilon * tolerance_scale(a);
  char buf[160];
  std::snprintf(buf, sizeof buf, "t=%.17g rho in [%.17g, %.17g]", z.t, enc.lower, enc.upper);
  if (strong) {
    if (z.t > enc.upper + eps) return Verdict::holds(cfg.epsilon).with_reason(buf);
    if (z.t <= enc.lower + eps) return Verdict::refuted(buf, cfg.epsilon);
  } else {
    if (z.t >= enc.upper - eps) return Verdict::holds(cfg.epsilon).with_reason(buf);
    if (z.t < enc.lower - eps) return Verdict::refuted(buf, cfg.epsilon);
  }
  return Verdict::inconclusive(buf, cfg.epsilon);
}

// ------------------------------------------------------- semi-positivity

Verdict is_semi_positive(const Tensor& a, bool strict, const ClassifierConfig& cfg) {
  require_subset_cap(a, cfg);
  return semi_positive_over(a, strict, cfg, enumerate_subsets(a.dim(), false));
}

Verdict is_almost_semi_positive(const Tensor& a, bool strict, const ClassifierConfig& cfg) {
  if (a.dim() < 2) {
    throw std::invalid_argument("almost classes need dimension >= 2");
  }
  require_subset_cap(a, cfg);
  const double scale = tolerance_scale(a);
  Verdict full = decide_all_components_negative(a, !strict, cfg.engine(), scale);
  if (full.is_holds()) {
    return Verdict::refuted(strict ? "no positive x with A x^{m-1} <= 0"
                                   : "no positive x with A x^{m-1} < 0",
                            cfg.epsilon, full.stats());
  }
  Verdict proper = semi_positive_over(a, strict, cfg, enumerate_subsets(a.dim(), true));
  if (proper.is_fails()) return proper;
  if (full.is_inconclusive()) return Verdict::inconclusive(full.reason(), cfg.epsilon, full.stats());
  if (proper.is_inconclusive()) return proper;
  SearchStats stats = full.stats();
  merge_stats(stats, proper.stats(), false);
  return Verdict::holds(cfg.epsilon, stats, full.witness());
}

// ---------------------------------------------------------- copositivity

Verdict is_copositive(const Tensor& a, bool strict, const ClassifierConfig& cfg) {
  return decide_form_nonneg(a, strict, cfg.engine());
}

Verdict is_almost_copositive(const Tensor& a, bool strict, const ClassifierConfig& cfg) {
  if (a.dim() < 2) {
    throw std::invalid_argument("almost classes need dimension >= 2");
  }
  const EngineConfig ecfg = cfg.engine();
  const double scale = tolerance_scale(a);
  Verdict full = decide_form_nonneg(a, strict, ecfg, scale);
  if (full.is_holds()) {
    return Verdict::refuted(strict ? "tensor is strictly copositive" : "tensor is copositive",
                            cfg.epsilon, full.stats());
  }
  // Copositivity of A_J is inherited by every principal subtensor of A_J, so
  // the subsets of size n-1 decide all proper ones.
  SearchStats stats = full.stats();
  std::optional<Verdict> pending;
  for (const auto& j : maximal_proper_subsets(a.dim())) {
    Verdict v = decide_form_nonneg(principal_subtensor(a, j), strict, ecfg, scale);
    merge_stats(stats, v.stats(), false);
    if (v.is_fails()) {
      const double eps_abs = cfg.epsilon * scale;
      const Claim claim{Claim::Kind::FormBelow, strict ? eps_abs : -eps_abs, !strict, 0.0};
      return Verdict::fails(a, embed(*v.witness(), j, a.dim()), claim, cfg.epsilon, stats)
          .with_subset(j)
          .with_reason("principal subtensor " + subset_text(j) + " is not copositive");
    }
    if (v.is_inconclusive() && !pending) {
      pending = Verdict::inconclusive("subset " + subset_text(j) + ": " + v.reason(), cfg.epsilon);
    }
  }
  if (full.is_inconclusive()) return Verdict::inconclusive(full.reason(), cfg.epsilon, stats);
  if (pending) return Verdict::inconclusive(pending->reason(), cfg.epsilon, stats);
  return Verdict::holds(cfg.epsilon, stats, full.witness());
}

// ------------------------------------------------------------- S classes

Verdict is_s_tensor(const Tensor& a, const ClassifierConfig& cfg) {
  return decide_positive_image(a, true, cfg.engine());
}

Verdict is_s0_tensor(const Tensor& a, const ClassifierConfig& cfg) {
  return decide_positive_image(a, false, cfg.engine(), 0.0, a.dim() <= 4);
}

Verdict is_completely_s(const Tensor& a, const ClassifierConfig& cfg) {
  require_subset_cap(a, cfg);
  return positive_image_over(a, true, cfg, enumerate_subsets(a.dim(), false));
}

Verdict is_completely_s0(const Tensor& a, const ClassifierConfig& cfg) {
  require_subset_cap(a, cfg);
  return positive_image_over(a, false, cfg, enumerate_subsets(a.dim(), false));
}

// ------------------------------------------------------------------ rows

std::optional<Index> has_nonneg_row_subtensor(const Tensor& a) {
  for (Index i = 0; i < a.dim(); ++i) {
    const auto row = a.row(i);
    if (std::all_of(row.begin(), row.end(), [](double v) { return v >= 0.0; })) return i;
  }
  return std::nullopt;
}

std::optional<Index> has_positive_row_subtensor(const Tensor& a) {
  for (Index i = 0; i < a.dim(); ++i) {
    const auto row = a.row(i);
    if (std::all_of(row.begin(), row.end(), [](double v) { return v > 0.0; })) return i;
  }
  return std::nullopt;
}

bool every_row_has_negative_entry(const Tensor& a) {
  for (Index i = 0; i < a.dim(); ++i) {
    const auto row = a.row(i);
    if (std::none_of(row.begin(), row.end(), [](double v) { return v < 0.0; })) return false;
  }
  return true;
}

bool EntryConditions::passes(bool strict) const {
  return strict ? diag_positive && nonpositive_row.has_value()
                : diag_nonneg && negative_row.has_value();
}

EntryConditions entry_conditions(const Tensor& a) {
  EntryConditions ec;
  const Vector d = diag(a);
  ec.diag_nonneg = std::all_of(d.begin(), d.end(), [](double v) { return v >= 0.0; });
  ec.diag_positive = std::all_of(d.begin(), d.end(), [](double v) { return v > 0.0; });
  for (Index k = 0; k < a.dim(); ++k) {
    const auto row = a.row(k);
    double s = d[k];
    for (Index j = 0; j < row.size(); ++j) {
      if (row[j] < 0.0 && !is_diagonal_position(a, k, j)) s += row[j];
    }
    if (s < 0.0 && !ec.negative_row) ec.negative_row = k;
    if (s <= 0.0 && !ec.nonpositive_row) ec.nonpositive_row = k;
  }
  return ec;
}

Tensor stabilizing_diagonal(const Tensor& a, const Vector& x) {
  if (x.size() != a.dim()) throw std::invalid_argument("stabilizing_diagonal: dimension mismatch");
  if (!std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; })) {
    throw std::invalid_argument("stabilizing_diagonal: x must be strictly positive");
  }
  const Vector f = tenclass::apply(a, x);
  Vector d(a.dim());
  for (Index i = 0; i < a.dim(); ++i) {
    if (!(f[i] < 0.0)) {
      throw std::invalid_argument("stabilizing_diagonal: A x^{m-1} must be strictly negative");
    }
    double xp = 1.0;
    for (int p = 1; p < a.order(); ++p) xp *= x[i];
    d[i] = -f[i] / xp;
  }
  return Tensor::diagonal(a.order(), d);
}

bool check_weighted_characterization(const Tensor& a, const Vector& x, int trials,
                                     std::uint64_t seed) {
  const Vector f = tenclass::apply(a, x);
  for (Index i = 0; i < a.dim(); ++i) {
    if (!(x[i] * f[i] < 0.0)) return false;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    Vector d(a.dim());
    for (double& v : d) v = unif(rng);
    d[static_cast<Index>(t) % a.dim()] += 0.5;
    double s = 0.0;
    for (Index i = 0; i < a.dim(); ++i) s += x[i] * d[i] * f[i];
    if (!(s < 0.0)) return false;
  }
  return true;
}

// --------------------------------------------------------------- classify

const Verdict& ClassificationReport::get(std::string_view name) const {
  for (const auto& [n, v] : verdicts) {
    if (n == name) return v;
  }
  throw std::out_of_range("unknown class name: " + std::string(name));
}

bool ClassificationReport::all_decisive() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const auto& p) { return p.second.decisive(); });
}

std::string tensor_digest(const Tensor& a) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < len; ++k) {
      h ^= p[k];
      h *= 1099511628211ULL;
    }
  };
  const std::uint64_t m = static_cast<std::uint64_t>(a.order());
  const std::uint64_t n = a.dim();
  mix(&m, sizeof m);
  mix(&n, sizeof n);
  for (double v : a.entries()) {
    const double w = v == 0.0 ? 0.0 : v;  // fold -0 into +0
    std::uint64_t bits;
    std::memcpy(&bits, &w, sizeof bits);
    mix(&bits, sizeof bits);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ClassificationReport classify(const Tensor& a, const ClassifierConfig& cfg) {
  require_subset_cap(a, cfg);
  ClassificationReport rep;
  rep.digest = tensor_digest(a);
  rep.config = cfg;
  rep.order = a.order();
  rep.dim = a.dim();
  rep.symmetric = is_symmetric(a);
  const EntryConditions ec = entry_conditions(a);

  auto almost_semi = [&](bool strict) {
    if (a.dim() < 2) return Verdict::refuted("requires dimension >= 2", cfg.epsilon);
    if (!ec.passes(strict)) {
      return Verdict::refuted("necessary entry sign conditions fail", cfg.epsilon);
    }
    return is_almost_semi_positive(a, strict, cfg);
  };
  auto almost_cop = [&](bool strict) {
    if (a.dim() < 2) return Verdict::refuted("requires dimension >= 2", cfg.epsilon);
    return is_almost_copositive(a, strict, cfg);
  };
  auto exact = [&](bool holds, const char* why) {
    return holds ? Verdict::holds(cfg.epsilon) : Verdict::refuted(why, cfg.epsilon);
  };

  rep.verdicts.emplace_back("E0", is_semi_positive(a, false, cfg));
  rep.verdicts.emplace_back("E", is_semi_positive(a, true, cfg));
  rep.verdicts.emplace_back("almostE0", almost_semi(false));
  rep.verdicts.emplace_back("almostE", almost_semi(true));
  rep.verdicts.emplace_back("C0", is_copositive(a, false, cfg));
  rep.verdicts.emplace_back("C", is_copositive(a, true, cfg));
  rep.verdicts.emplace_back("almostC0", almost_cop(false));
  rep.verdicts.emplace_back("almostC", almost_cop(true));
  rep.verdicts.emplace_back("Z", exact(is_z_tensor(a), "positive off-diagonal entry"));
  rep.verdicts.emplace_back("M", is_m_tensor(a, false, cfg));
  rep.verdicts.emplace_back("strongM", is_m_tensor(a, true, cfg));
  rep.verdicts.emplace_back("diagDominant", is_diag_dominant(a, false));
  rep.verdicts.emplace_back("strictDiagDominant", is_diag_dominant(a, true));
  rep.verdicts.emplace_back("S", is_s_tensor(a, cfg));
  rep.verdicts.emplace_back("S0", is_s0_tensor(a, cfg));
  rep.verdicts.emplace_back("completelyS", is_completely_s(a, cfg));
  rep.verdicts.emplace_back("completelyS0", is_completely_s0(a, cfg));
  rep.verdicts.emplace_back("nonneg", exact(is_nonneg(a), "negative entry"));
  rep.verdicts.emplace_back("positive", exact(is_positive(a), "nonpositive entry"));
  rep.consistency_violations = consistency_check(rep, a);
  return rep;
}

std::vector<std::string> consistency_check(const ClassificationReport& report, const Tensor& a) {
  std::vector<std::string> out;
  auto state = [&](std::string_view name) -> std::optional<bool> {
    const Verdict& v = report.get(name);
    if (!v.decisive()) return std::nullopt;
    return v.is_holds();
  };
  auto implies = [&](std::string_view p, std::string_view q) {
    const auto sp = state(p);
    const auto sq = state(q);
    if (sp && sq && *sp && !*sq) out.push_back(std::string(p) + " => " + std::string(q));
  };
  auto excludes = [&](std::string_view p, std::string_view q) {
    const auto sp = state(p);
    const auto sq = state(q);
    if (sp && sq && *sp && *sq) out.push_back(std::string(p) + " => not " + std::string(q));
  };
  auto iff = [&](std::string_view p, std::string_view q) {
    const auto sp = state(p);
    const auto sq = state(q);
    if (sp && sq && *sp != *sq) out.push_back(std::string(p) + " <=> " + std::string(q));
  };

  implies("C0", "E0");
  implies("C", "E");
  implies("E", "E0");
  implies("C", "C0");
  implies("positive", "nonneg");
  implies("nonneg", "E0");
  implies("nonneg", "C0");
  implies("positive", "E");
  implies("positive", "C");
  implies("strongM", "M");
  implies("M", "Z");
  implies("strictDiagDominant", "diagDominant");
  implies("S", "S0");
  implies("completelyS", "S");
  implies("completelyS0", "S0");
  implies("completelyS", "completelyS0");
  excludes("almostE0", "E0");
  excludes("almostE", "E");
  excludes("almostC0", "C0");
  excludes("almostC", "C");
  {
    const auto ae = state("almostE");
    const auto ae0 = state("almostE0");
    const auto e0 = state("E0");
    if (ae && ae0 && e0 && *ae && !*ae0 && !*e0) {
      out.push_back("almostE => almostE0 or E0");
    }
  }
  if (state("Z").value_or(false)) {
    iff("E0", "M");
    iff("E", "strongM");
  }
  if (report.symmetric) {
    iff("E0", "C0");
    iff("E", "C");
    iff("almostE0", "almostC0");
    iff("almostE", "almostC");
  }
  const Vector d = diag(a);
  const bool diag_nonneg = std::all_of(d.begin(), d.end(), [](double v) { return v >= 0.0; });
  const bool diag_pos = std::all_of(d.begin(), d.end(), [](double v) { return v > 0.0; });
  if (diag_nonneg) implies("diagDominant", "E0");
  if (diag_pos) implies("strictDiagDominant", "E");
  return out;
}

}  // namespace tenclass
