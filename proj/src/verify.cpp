#include "tenclass/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tenclass/report_json.hpp"
#include "tenclass/spectral.hpp"
#include "tenclass/tensor_io.hpp"

namespace tenclass {

namespace {

using nlohmann::json;
using Rng = std::mt19937_64;

constexpr double kFactorCycle[] = {0.5, 1.0, 1.5};
constexpr double kSymmetricSweep[] = {-0.3, 0.5, 1.3};

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool diagonal_linear(const Tensor& a, Index lin) {
  const MultiIndex idx = a.multi_index(lin);
  return std::all_of(idx.begin(), idx.end(), [&](Index i) { return i == idx[0]; });
}

Tensor random_tensor(Rng& rng, int m, Index n, double lo, double hi) {
  Tensor shape(m, n);
  std::vector<double> e(shape.size());
  for (double& v : e) v = uniform(rng, lo, hi);
  return Tensor(m, n, std::move(e));
}

double radius_mid(const Tensor& b) {
  const RadiusEnclosure enc = spectral_radius_nonneg(b);
  return 0.5 * (enc.lower + enc.upper);
}

// Largest spectral radius among the principal subtensors of size n-1.
double proper_radius(const Tensor& b) {
  const Index n = b.dim();
  if (n < 2) return 0.0;
  double best = 0.0;
  for (Index skip = 0; skip < n; ++skip) {
    std::vector<Index> idx;
    for (Index i = 0; i < n; ++i) {
      if (i != skip) idx.push_back(i);
    }
    best = std::max(best, radius_mid(principal_subtensor(b, IndexSet(idx))));
  }
  return best;
}

Tensor gen_diag_dominant(Rng& rng, int m, Index n, bool strict) {
  Tensor shape(m, n);
  std::vector<double> e(shape.size());
  for (Index lin = 0; lin < e.size(); ++lin) {
    if (!diagonal_linear(shape, lin)) e[lin] = uniform(rng, -1.0, 1.0);
  }
  const Index rs = shape.row_size();
  for (Index i = 0; i < n; ++i) {
    double off = 0.0;
    Index d = 0;
    for (Index j = 0; j < rs; ++j) {
      if (diagonal_linear(shape, i * rs + j)) {
        d = i * rs + j;
      } else {
        off += std::abs(e[i * rs + j]);
      }
    }
    e[d] = off + (strict ? uniform(rng, 0.1, 0.6) : uniform(rng, 0.0, 0.5));
  }
  return Tensor(m, n, std::move(e));
}

Tensor gen_nonneg(Rng& rng, int m, Index n, bool dense) {
  Tensor shape(m, n);
  std::vector<double> e(shape.size());
  for (double& v : e) {
    const double z = uniform(rng, 0.0, 1.0);
    const double x = uniform(rng, 0.0, 1.0);
    v = (!dense && z < 0.3) ? 0.0 : (dense ? 0.05 + x : x);
  }
  return Tensor(m, n, std::move(e));
}

Tensor gen_z(Rng& rng, int m, Index n, double factor) {
  const Tensor b = random_tensor(rng, m, n, 0.0, 1.0);
  const double t = factor * radius_mid(b);
  return add(Tensor::diagonal(m, Vector(n, t)), negate(b));
}

Tensor gen_symmetric(Rng& rng, int m, Index n, std::size_t index) {
  const Tensor b = symmetrize(random_tensor(rng, m, n, 0.0, 1.0));
  const double rho = radius_mid(b);
  const double rho_p = proper_radius(b);
  const double theta = kSymmetricSweep[index % 3];
  const double t = rho_p + theta * (rho - rho_p);
  const double amp = 0.1 * std::abs(rho - rho_p) / static_cast<double>(b.row_size());
  const Tensor noise = symmetrize(random_tensor(rng, m, n, -amp, amp));
  return add(add(Tensor::diagonal(m, Vector(n, t)), negate(b)), noise);
}

Tensor gen_mixed(Rng& rng, int m, Index n) {
  Tensor a = random_tensor(rng, m, n, -1.0, 1.0);
  Vector d(n);
  for (double& v : d) v = uniform(rng, 0.0, 2.0);
  return add(a, Tensor::diagonal(m, d));
}

Tensor gen_almost_e0(Rng& rng, int m, Index n, const ClassifierConfig& cfg) {
  for (int attempt = 0; attempt < 40; ++attempt) {
    const Tensor b = random_tensor(rng, m, n, 0.0, 1.0);
    const double rho = radius_mid(b);
    const double rho_p = proper_radius(b);
    const double t = rho_p + uniform(rng, 0.3, 0.7) * (rho - rho_p);
    const double amp = 0.05 * (rho - rho_p) / static_cast<double>(b.row_size());
    Tensor noise = random_tensor(rng, m, n, -amp, amp);
    std::vector<double> ne(noise.entries().begin(), noise.entries().end());
    for (Index lin = 0; lin < ne.size(); ++lin) {
      if (diagonal_linear(noise, lin)) ne[lin] = 0.0;
    }
    const Tensor a0 = add(add(Tensor::diagonal(m, Vector(n, t)), negate(b)),
                          Tensor(m, n, std::move(ne)));
    const Vector x = perron_vector(b);
    const Vector f = tenclass::apply(a0, x);
    if (!std::all_of(f.begin(), f.end(), [](double v) { return v < 0.0; })) continue;
    Vector d(n);
    for (Index i = 0; i < n; ++i) d[i] = -uniform(rng, 0.5, 1.5) / f[i];
    const Tensor a = scale_rows(a0, d);
    if (is_almost_semi_positive(a, false, cfg).is_holds()) return a;
  }
  throw std::runtime_error("almostE0Seeded: rejection budget exhausted");
}

struct Shape {
  int order;
  Index dim;
};

constexpr Shape kShapes[] = {{3, 2}, {3, 3}, {3, 4}, {4, 2}, {4, 3}, {4, 4}};

Shape shape_for(std::size_t index) { return kShapes[index % 6]; }

// ----------------------------------------------------------- suite logic

struct Outcome {
  bool decisive = true;
  std::string violation;
  std::optional<Tensor> tensor;
};

class Check {
 public:
  explicit Check(const Tensor& a) : a_(a) {}

  // Records p => q for two lazily evaluated verdicts.
  void implies(const char* what, const std::function<Verdict()>& p,
               const std::function<Verdict()>& q) {
    if (!out_.violation.empty()) return;
    const Verdict vp = p();
    if (vp.is_inconclusive()) {
      out_.decisive = false;
      return;
    }
    if (vp.is_fails()) return;
    const Verdict vq = q();
    if (vq.is_inconclusive()) {
      out_.decisive = false;
      return;
    }
    if (vq.is_fails()) fail(what);
  }

  void iff(const char* what, const Verdict& p, const Verdict& q) {
    if (!out_.violation.empty()) return;
    if (!p.decisive() || !q.decisive()) {
      out_.decisive = false;
      return;
    }
    if (p.status() != q.status()) fail(what);
  }

  void require(const char* what, bool ok) {
    if (out_.violation.empty() && !ok) fail(what);
  }

  void inconclusive() { out_.decisive = false; }

  void fail(const std::string& what) {
    if (!out_.violation.empty()) return;
    out_.violation = what;
    out_.tensor = a_;
  }

  Outcome result() {
    if (!out_.violation.empty()) out_.decisive = true;
    return out_;
  }

 private:
  Tensor a_;
  Outcome out_;
};

Vector random_positive(Rng& rng, Index n) {
  Vector d(n);
  for (double& v : d) v = uniform(rng, 0.5, 2.0);
  return d;
}

std::vector<Index> random_permutation(Rng& rng, Index n) {
  std::vector<Index> s(n);
  for (Index i = 0; i < n; ++i) s[i] = i;
  for (Index i = n; i > 1; --i) {
    const Index j = std::uniform_int_distribution<Index>(0, i - 1)(rng);
    std::swap(s[i - 1], s[j]);
  }
  return s;
}

Verdict proper_semi_positive(const Tensor& a, bool strict, const ClassifierConfig& cfg) {
  bool pending = false;
  for (Index skip = 0; skip < a.dim(); ++skip) {
    std::vector<Index> idx;
    for (Index i = 0; i < a.dim(); ++i) {
      if (i != skip) idx.push_back(i);
    }
    Verdict v = is_semi_positive(principal_subtensor(a, IndexSet(idx)), strict, cfg);
    if (v.is_fails()) return v;
    pending = pending || v.is_inconclusive();
  }
  return pending ? Verdict::inconclusive("proper subtensor undecided", cfg.epsilon)
                 : Verdict::holds(cfg.epsilon);
}

Tensor seeded_or_symmetric(Rng& rng, std::size_t index, const ClassifierConfig& cfg) {
  const Shape s = shape_for(index / 2);
  return index % 2 == 0 ? gen_almost_e0(rng, s.order, s.dim, cfg)
                        : gen_symmetric(rng, s.order, s.dim, index / 2);
}

using SuiteFn = std::function<Outcome(std::size_t, Rng&, const ClassifierConfig&)>;

Outcome suite_dd(std::size_t i, Rng& rng, const ClassifierConfig& cfg, bool strict) {
  const Shape s = shape_for(i);
  const Tensor a = gen_diag_dominant(rng, s.order, s.dim, strict);
  Check c(a);
  c.require("generator: not diagonally dominant", is_diag_dominant(a, strict).is_holds());
  c.implies(strict ? "strictly dominant with positive diagonal but not E"
                   : "dominant with nonnegative diagonal but not E0",
            [&] { return Verdict::holds(cfg.epsilon); },
            [&] { return is_semi_positive(a, strict, cfg); });
  return c.result();
}

Outcome suite_nonneg(std::size_t i, Rng& rng, const ClassifierConfig& cfg) {
  const Shape s = shape_for(i);
  const bool dense = i % 4 == 3;
  const Tensor a = gen_nonneg(rng, s.order, s.dim, dense);
  Check c(a);
  c.require("generator: negative entry", is_nonneg(a));
  c.implies("nonnegative but not E0", [&] { return Verdict::holds(cfg.epsilon); },
            [&] { return is_semi_positive(a, false, cfg); });
  if (is_positive(a)) {
    c.implies("positive but not E", [&] { return Verdict::holds(cfg.epsilon); },
              [&] { return is_semi_positive(a, true, cfg); });
  }
  return c.result();
}

Outcome suite_z(std::size_t i, Rng& rng, const ClassifierConfig& cfg, bool strong) {
  const Shape s = shape_for(i / 3);
  const Tensor a = gen_z(rng, s.order, s.dim, kFactorCycle[i % 3]);
  Check c(a);
  c.require("generator: not a Z-tensor", is_z_tensor(a));
  c.iff(strong ? "E differs from strong M" : "E0 differs from M", is_semi_positive(a, strong, cfg),
        is_m_tensor(a, strong, cfg));
  return c.result();
}

Outcome suite_copositive_e0(std::size_t i, Rng& rng, const ClassifierConfig& cfg) {
  const Shape s = shape_for(i / 2);
  const Tensor a = i % 2 == 0 ? gen_symmetric(rng, s.order, s.dim, i / 2)
                              : gen_nonneg(rng, s.order, s.dim, false);
  const Tensor b = i % 2 == 0 ? a : add(a, scale(gen_mixed(rng, s.order, s.dim), 0.2));
  Check c(b);
  c.implies("C0 but not E0", [&] { return is_copositive(b, false, cfg); },
            [&] { return is_semi_positive(b, false, cfg); });
  c.implies("C but not E", [&] { return is_copositive(b, true, cfg); },
            [&] { return is_semi_positive(b, true, cfg); });
  return c.result();
}

Outcome suite_sym_e0_c0(std::size_t i, Rng& rng, const ClassifierConfig& cfg) {
  const Shape s = shape_for(i / 3);
  const Tensor a = gen_symmetric(rng, s.order, s.dim, i);
  Check c(a);
  c.require("generator: not symmetric", is_symmetric(a));
  c.iff("symmetric: E0 differs from C0", is_semi_positive(a, false, cfg),
        is_copositive(a, false, cfg));
  c.iff("symmetric: E differs from C", is_semi_positive(a, true, cfg), is_copositive(a, true, cfg));
  return c.result();
}

Outcome suite_sym_almost(std::size_t i, Rng& rng, const ClassifierConfig& cfg, bool strict) {
  const Shape s = shape_for(i / 3);
  const Tensor a = gen_symmetric(rng, s.order, s.dim, i);
  Check c(a);
  c.require("generator: not symmetric", is_symmetric(a));
  c.iff(strict ? "symmetric: almostE differs from almostC"
               : "symmetric: almostE0 differs from almostC0",
        is_almost_semi_positive(a, strict, cfg), is_almost_copositive(a, strict, cfg));
  return c.result();
}

Outcome suite_invariance(std::size_t i, Rng& rng, const ClassifierConfig& cfg) {
  const Tensor a = seeded_or_symmetric(rng, i, cfg);
  const Vector d = random_positive(rng, a.dim());
  const Vector e = random_positive(rng, a.dim());
  const auto sigma = random_permutation(rng, a.dim());
  Check c(a);
  for (bool strict : {false, true}) {
    const Verdict base = is_almost_semi_positive(a, strict, cfg);
    c.iff(strict ? "almostE changes under row scaling" : "almostE0 changes under row scaling", base,
          is_almost_semi_positive(scale_rows(a, d), strict, cfg));
    c.iff(strict ? "almostE changes under mode scaling" : "almostE0 changes under mode scaling",
          base, is_almost_semi_positive(scale_modes(a, e), strict, cfg));
    c.iff(strict ? "almostE changes under permutation" : "almostE0 changes under permutation", base,
          is_almost_semi_positive(permute(a, sigma), strict, cfg));
  }
  return c.result();
}

Outcome suite_row_negative(std::size_t i, Rng& rng, const ClassifierConfig& cfg) {
  const Tensor a = seeded_or_symmetric(rng, i, cfg);
  Check c(a);
  for (bool strict : {false, true}) {
    const Verdict v = is_almost_semi_positive(a, strict, cfg);
    if (v.is_inconclusive()) c.inconclusive();
    if (v.is_holds()) {
      c.require(strict ? "almostE with a row lacking negative entries"
                       : "almostE0 with a row lacking negative entries",
                every_row_has_negative_entry(a));
    }
  }
  return c.result();
}

Outcome suite_entry_conditions(std::size_t i, Rng& rng, const ClassifierConfig& cfg) {
  const Tensor a = seeded_or_symmetric(rng, i, cfg);
  const EntryConditions ec = entry_conditions(a);
  Check c(a);
  for (bool strict : {false, true}) {
    const Verdict v = is_almost_semi_positive(a, strict, cfg);
    if (v.is_inconclusive()) c.inconclusive();
    if (v.is_holds()) {
      c.require(strict ? "almostE with a zero diagonal entry or a row without enough negative mass"
                       : "almostE0 with a negative diagonal entry or a row without enough negative mass",
                ec.passes(strict));
    }
  }
  return c.result();
}

Outcome suite_trichotomy(std::size_t i, Rng& rng, const ClassifierConfig& cfg) {
  Tensor a = seeded_or_symmetric(rng, i, cfg);
  if (i % 2 == 0) {
    const Verdict v = is_almost_semi_positive(a, false, cfg);
    if (v.is_holds() && v.solution()) a = add(a, stabilizing_diagonal(a, *v.solution()));
  }
  Check c(a);
  const Verdict ae = is_almost_semi_positive(a, true, cfg);
  if (ae.is_inconclusive()) c.inconclusive();
  if (ae.is_holds()) {
    const Verdict ae0 = is_almost_semi_positive(a, false, cfg);
    if (ae0.is_holds()) return c.result();
    const Verdict e0 = is_semi_positive(a, false, cfg);
    if (e0.is_holds()) return c.result();
    if (ae0.is_inconclusive() || e0.is_inconclusive()) {
      c.inconclusive();
    } else {
      c.fail("almostE but neither almostE0 nor E0");
    }
  }
  return c.result();
}

Outcome suite_stabilizer(std::size_t i, Rng& rng, const ClassifierConfig& cfg) {
  const Shape s = shape_for(i);
  const Tensor a = gen_almost_e0(rng, s.order, s.dim, cfg);
  Check c(a);
  const Verdict v = is_almost_semi_positive(a, false, cfg);
  if (!v.is_holds() || !v.solution()) {
    c.fail("generator: seeded tensor is not almostE0");
    return c.result();
  }
  const Vector& x = *v.solution();
  const Tensor ad = add(a, stabilizing_diagonal(a, x));
  c.require("(A+D)x^{m-1} exceeds 1e-10 in max-norm", max_norm(tenclass::apply(ad, x)) <= 1e-10);
  c.implies("A+D is not almostE", [&] { return Verdict::holds(cfg.epsilon); },
            [&] { return is_almost_semi_positive(ad, true, cfg); });
  c.implies("A+D is not completely S0", [&] { return Verdict::holds(cfg.epsilon); },
            [&] { return is_completely_s0(ad, cfg); });
  return c.result();
}

Outcome suite_hpp(std::size_t i, Rng& rng, const ClassifierConfig& cfg) {
  const Shape s = shape_for(i / 3);
  const Tensor a = gen_symmetric(rng, s.order, s.dim, i);
  Check c(a);
  EigenSearchConfig ecfg;
  ecfg.seed = derive_seed(cfg.seed, "hpp", i);
  for (bool strict : {false, true}) {
    const Verdict v = is_almost_semi_positive(a, strict, cfg);
    if (v.is_inconclusive()) c.inconclusive();
    if (!v.is_holds()) continue;
    const auto pair =
        find_negative_hpp_eigenpair(a, strict ? EigenMode::Nonpositive : EigenMode::Negative, ecfg);
    if (!pair) {
      c.inconclusive();
      continue;
    }
    double s_m = 0.0;
    for (double x : pair->x) s_m += std::pow(x, a.order());
    c.require("eigenpair residual above tolerance", residual(a, *pair) <= ecfg.tol);
    c.require("eigenvector not interior",
              *std::min_element(pair->x.begin(), pair->x.end()) >= ecfg.interior_margin);
    c.require("eigenvalue differs from the form quotient",
              std::abs(pair->lambda - form_value(a, pair->x) / s_m) <= ecfg.tol);
    c.require(strict ? "eigenvalue positive" : "eigenvalue not negative",
              strict ? pair->lambda <= ecfg.tol : pair->lambda < -ecfg.tol);
  }
  return c.result();
}

Outcome suite_weighted(std::size_t i, Rng& rng, const ClassifierConfig& cfg) {
  const Shape s = shape_for(i);
  const Tensor a = gen_almost_e0(rng, s.order, s.dim, cfg);
  Check c(a);
  const Verdict v = is_almost_semi_positive(a, false, cfg);
  if (!v.is_holds() || !v.solution()) {
    c.fail("generator: seeded tensor is not almostE0");
    return c.result();
  }
  c.require("weighted sign condition fails for an almostE0 witness",
            check_weighted_characterization(a, *v.solution(), 20, derive_seed(cfg.seed, "w", i)));
  return c.result();
}

Outcome suite_nonneg_row(std::size_t i, Rng& rng, const ClassifierConfig& cfg) {
  const Shape s = shape_for(i);
  const bool strict = i % 2 == 1;
  Tensor a = gen_mixed(rng, s.order, s.dim);
  const Index r = (i / 2) % s.dim;
  std::vector<double> e(a.entries().begin(), a.entries().end());
  for (Index j = 0; j < a.row_size(); ++j) {
    double& v = e[r * a.row_size() + j];
    v = std::abs(v) + (strict ? 0.05 : 0.0);
  }
  a = Tensor(s.order, s.dim, std::move(e));
  Check c(a);
  c.implies(strict ? "positive row and E proper subtensors but not E"
                   : "nonnegative row and E0 proper subtensors but not E0",
            [&] { return proper_semi_positive(a, strict, cfg); },
            [&] { return is_semi_positive(a, strict, cfg); });
  return c.result();
}

Outcome suite_hadamard(std::size_t i, Rng& rng, const ClassifierConfig& cfg) {
  const Shape s = shape_for(i);
  const bool strict = i % 2 == 1;
  const Tensor a = gen_diag_dominant(rng, s.order, s.dim, strict);
  Vector d(s.dim);
  for (double& v : d) v = strict ? uniform(rng, 0.1, 2.0) : std::max(0.0, uniform(rng, -0.5, 2.0));
  const Tensor h = hadamard(a, Tensor::diagonal(s.order, d));
  Check c(h);
  c.implies(strict ? "E Hadamard positive diagonal is not E"
                   : "E0 Hadamard nonnegative diagonal is not E0",
            [&] { return is_semi_positive(a, strict, cfg); },
            [&] { return is_semi_positive(h, strict, cfg); });
  return c.result();
}

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"dd_implies_E0", [](auto i, auto& r, const auto& c) { return suite_dd(i, r, c, false); }},
      {"sdd_implies_E", [](auto i, auto& r, const auto& c) { return suite_dd(i, r, c, true); }},
      {"nonneg_implies_E0", suite_nonneg},
      {"z_E0_iff_M", [](auto i, auto& r, const auto& c) { return suite_z(i, r, c, false); }},
      {"z_E_iff_strongM", [](auto i, auto& r, const auto& c) { return suite_z(i, r, c, true); }},
      {"copositive_implies_E0", suite_copositive_e0},
      {"sym_E0_iff_C0", suite_sym_e0_c0},
      {"sym_almostE0_iff_almostC0",
       [](auto i, auto& r, const auto& c) { return suite_sym_almost(i, r, c, false); }},
      {"sym_almostE_iff_almostC",
       [](auto i, auto& r, const auto& c) { return suite_sym_almost(i, r, c, true); }},
      {"almost_invariance", suite_invariance},
      {"almost_row_negative", suite_row_negative},
      {"almost_entry_conditions", suite_entry_conditions},
      {"almostE_trichotomy", suite_trichotomy},
      {"stabilizer", suite_stabilizer},
      {"hpp_eigen", suite_hpp},
      {"weighted_characterization", suite_weighted},
      {"nonneg_row_implies_E0", suite_nonneg_row},
      {"hadamard_diag_preserves_E0", suite_hadamard},
  };
  return suites;
}

Status parse_status(const std::string& s) {
  if (s == "Holds") return Status::Holds;
  if (s == "Fails") return Status::Fails;
  if (s == "Inconclusive") return Status::Inconclusive;
  throw std::invalid_argument("unknown status \"" + s + "\"");
}

bool known_class(std::string_view name) {
  return std::find(std::begin(kClassNames), std::end(kClassNames), name) != std::end(kClassNames);
}

}  // namespace

// ------------------------------------------------------------ generators

std::string_view to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::DiagDominant: return "diagDominant";
    case GeneratorKind::StrictDiagDominant: return "strictDiagDominant";
    case GeneratorKind::ZTensor: return "zTensor";
    case GeneratorKind::Symmetric: return "symmetric";
    case GeneratorKind::Nonneg: return "nonneg";
    case GeneratorKind::AlmostE0Seeded: return "almostE0Seeded";
    case GeneratorKind::Mixed: return "mixed";
  }
  return "mixed";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view name) {
  for (auto k : {GeneratorKind::DiagDominant, GeneratorKind::StrictDiagDominant,
                 GeneratorKind::ZTensor, GeneratorKind::Symmetric, GeneratorKind::Nonneg,
                 GeneratorKind::AlmostE0Seeded, GeneratorKind::Mixed}) {
    if (to_string(k) == name) return k;
  }
  if (name == "almostE0-seeded") return GeneratorKind::AlmostE0Seeded;
  return std::nullopt;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t h = splitmix(seed);
  for (char c : label) h = splitmix(h ^ static_cast<unsigned char>(c));
  return splitmix(h ^ splitmix(index));
}

Tensor generate_one(GeneratorKind kind, int order, Index dim, double factor, std::size_t index,
                    std::uint64_t stream, const ClassifierConfig& cfg) {
  if (order < 2 || dim < 1) throw std::invalid_argument("generate: order >= 2 and dim >= 1 required");
  Rng rng(stream);
  switch (kind) {
    case GeneratorKind::DiagDominant: return gen_diag_dominant(rng, order, dim, false);
    case GeneratorKind::StrictDiagDominant: return gen_diag_dominant(rng, order, dim, true);
    case GeneratorKind::ZTensor:
      return gen_z(rng, order, dim, factor > 0.0 ? factor : kFactorCycle[index % 3]);
    case GeneratorKind::Symmetric: return gen_symmetric(rng, order, dim, index);
    case GeneratorKind::Nonneg: return gen_nonneg(rng, order, dim, false);
    case GeneratorKind::AlmostE0Seeded:
      if (dim < 2) throw std::invalid_argument("almostE0Seeded needs dim >= 2");
      return gen_almost_e0(rng, order, dim, cfg);
    case GeneratorKind::Mixed: return gen_mixed(rng, order, dim);
  }
  throw std::invalid_argument("unknown generator kind");
}

std::vector<Tensor> generate(const GeneratorSpec& spec, const ClassifierConfig& cfg) {
  std::vector<Tensor> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    out.push_back(generate_one(spec.kind, spec.order, spec.dim, spec.factor, i,
                               derive_seed(spec.seed, to_string(spec.kind), i), cfg));
  }
  return out;
}

Verdict satisfies_kind(const Tensor& a, GeneratorKind kind, double factor,
                       const ClassifierConfig& cfg) {
  auto exact = [&](bool ok, const char* why) {
    return ok ? Verdict::holds(cfg.epsilon) : Verdict::refuted(why, cfg.epsilon);
  };
  switch (kind) {
    case GeneratorKind::DiagDominant: return is_diag_dominant(a, false);
    case GeneratorKind::StrictDiagDominant: return is_diag_dominant(a, true);
    case GeneratorKind::ZTensor: {
      if (!is_z_tensor(a)) return Verdict::refuted("not a Z-tensor", cfg.epsilon);
      if (factor > 1.0) return is_m_tensor(a, true, cfg);
      return Verdict::holds(cfg.epsilon);
    }
    case GeneratorKind::Symmetric: return exact(is_symmetric(a), "not symmetric");
    case GeneratorKind::Nonneg: return exact(is_nonneg(a), "negative entry");
    case GeneratorKind::AlmostE0Seeded: return is_almost_semi_positive(a, false, cfg);
    case GeneratorKind::Mixed: return Verdict::holds(cfg.epsilon);
  }
  return Verdict::refuted("unknown kind", cfg.epsilon);
}

// ---------------------------------------------------------------- suites

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

unsigned default_threads() {
  if (const char* env = std::getenv("TENCLASS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed, std::size_t count,
                      const ClassifierConfig& cfg, unsigned threads) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& p) { return p.first == name; });
  if (it == reg.end()) throw std::invalid_argument("unknown suite \"" + std::string(name) + "\"");
  const SuiteFn& fn = it->second;
  ClassifierConfig run_cfg = cfg;
  run_cfg.seed = seed;

  std::vector<Outcome> outcomes(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      Rng rng(derive_seed(seed, name, i));
      try {
        outcomes[i] = fn(i, rng, run_cfg);
      } catch (const std::exception& e) {
        outcomes[i].decisive = true;
        outcomes[i].violation = std::string("exception: ") + e.what();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(threads == 0 ? default_threads() : threads,
                                                             static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  SuiteReport rep;
  rep.suite = std::string(name);
  rep.instances = count;
  rep.seed = seed;
  rep.config = cfg;
  for (std::size_t i = 0; i < count; ++i) {
    const Outcome& o = outcomes[i];
    if (!o.violation.empty()) {
      rep.violations.push_back({i, o.violation, o.tensor.value_or(Tensor(2, 1))});
    }
    if (o.decisive) ++rep.decisive;
    else ++rep.inconclusive;
  }
  return rep;
}

json to_json(const SuiteReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back(
        json{{"instance", v.instance}, {"message", v.message}, {"tensor", tensor_to_json(v.tensor)}});
  }
  return json{{"suite", r.suite},     {"instances", r.instances},
              {"decisive", r.decisive}, {"inconclusive", r.inconclusive},
              {"violations", violations}, {"seed", r.seed},
              {"config", to_json(r.config)}};
}

void dump_violations(const SuiteReport& r, const std::filesystem::path& dir) {
  if (r.violations.empty()) return;
  std::filesystem::create_directories(dir);
  for (const auto& v : r.violations) {
    json doc = tensor_to_json(v.tensor);
    doc["name"] = r.suite + "_" + std::to_string(v.instance);
    doc["anchor"] = v.message;
    std::ofstream out(dir / (r.suite + "_" + std::to_string(v.instance) + ".json"));
    out << doc.dump(2) << '\n';
  }
}

// -------------------------------------------------------------- fixtures

Fixture fixture_from_json(const json& doc) {
  Fixture f;
  f.name = doc.value("name", std::string());
  if (f.name.empty()) throw std::invalid_argument("fixture without a name");
  f.anchor = doc.value("anchor", std::string());
  f.tensor = tensor_from_json(doc);
  if (doc.contains("expected")) {
    for (const auto& [label, status] : doc["expected"].items()) {
      const std::string cls = label.substr(0, label.find('@'));
      if (!known_class(cls)) throw std::invalid_argument("fixture " + f.name + ": unknown class " + cls);
      f.expected[label] = parse_status(status.get<std::string>());
    }
  }
  if (doc.contains("checks")) {
    for (const auto& c : doc["checks"]) {
      FixtureCheck chk;
      chk.x = c.at("x").get<Vector>();
      if (c.contains("subset")) chk.subset = IndexSet(c["subset"].get<std::vector<Index>>());
      if (c.contains("apply")) chk.apply = c["apply"].get<Vector>();
      if (c.contains("form")) chk.form = c["form"].get<double>();
      f.checks.push_back(std::move(chk));
    }
  }
  return f;
}

Fixture load_fixture(const std::filesystem::path& path) {
  return fixture_from_json(parse_json_lenient(read_file(path)));
}

std::vector<Fixture> load_fixtures(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Fixture> out;
  for (const auto& p : files) out.push_back(load_fixture(p));
  return out;
}

Verdict evaluate_class(const Tensor& a, std::string_view name, const ClassifierConfig& cfg) {
  auto exact = [&](bool ok, const char* why) {
    return ok ? Verdict::holds(cfg.epsilon) : Verdict::refuted(why, cfg.epsilon);
  };
  if (name == "E0") return is_semi_positive(a, false, cfg);
  if (name == "E") return is_semi_positive(a, true, cfg);
  if (name == "almostE0") return is_almost_semi_positive(a, false, cfg);
  if (name == "almostE") return is_almost_semi_positive(a, true, cfg);
  if (name == "C0") return is_copositive(a, false, cfg);
  if (name == "C") return is_copositive(a, true, cfg);
  if (name == "almostC0") return is_almost_copositive(a, false, cfg);
  if (name == "almostC") return is_almost_copositive(a, true, cfg);
  if (name == "Z") return exact(is_z_tensor(a), "positive off-diagonal entry");
  if (name == "M") return is_m_tensor(a, false, cfg);
  if (name == "strongM") return is_m_tensor(a, true, cfg);
  if (name == "diagDominant") return is_diag_dominant(a, false);
  if (name == "strictDiagDominant") return is_diag_dominant(a, true);
  if (name == "S") return is_s_tensor(a, cfg);
  if (name == "S0") return is_s0_tensor(a, cfg);
  if (name == "completelyS") return is_completely_s(a, cfg);
  if (name == "completelyS0") return is_completely_s0(a, cfg);
  if (name == "nonneg") return exact(is_nonneg(a), "negative entry");
  if (name == "positive") return exact(is_positive(a), "nonpositive entry");
  throw std::invalid_argument("unknown class \"" + std::string(name) + "\"");
}

FixtureResult run_fixture(const Fixture& f, const ClassifierConfig& cfg) {
  FixtureResult res;
  res.name = f.name;
  for (const auto& [label, want] : f.expected) {
    const auto at = label.find('@');
    Tensor target = f.tensor;
    if (at != std::string::npos) {
      std::vector<Index> idx;
      std::stringstream ss(label.substr(at + 1));
      std::string tok;
      while (std::getline(ss, tok, ',')) idx.push_back(static_cast<Index>(std::stoul(tok)));
      target = principal_subtensor(f.tensor, IndexSet(idx));
    }
    try {
      const Verdict v = evaluate_class(target, label.substr(0, at), cfg);
      res.observed[label] = v.status();
      if (v.status() != want) {
        res.mismatches.push_back(label + ": expected " + std::string(to_string(want)) + ", got " +
                                 std::string(to_string(v.status())));
      }
    } catch (const std::exception& e) {
      res.mismatches.push_back(label + ": " + e.what());
    }
  }
  for (std::size_t k = 0; k < f.checks.size(); ++k) {
    const FixtureCheck& c = f.checks[k];
    const Tensor target = c.subset ? principal_subtensor(f.tensor, *c.subset) : f.tensor;
    if (c.apply && tenclass::apply(target, c.x) != *c.apply) {
      res.mismatches.push_back("check " + std::to_string(k) + ": apply value differs");
    }
    if (c.form && form_value(target, c.x) != *c.form) {
      res.mismatches.push_back("check " + std::to_string(k) + ": form value differs");
    }
  }
  res.passed = res.mismatches.empty();
  return res;
}

bool FixtureReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

FixtureReport run_fixtures(const std::vector<Fixture>& fixtures, const ClassifierConfig& cfg) {
  FixtureReport rep;
  for (const auto& f : fixtures) rep.results.push_back(run_fixture(f, cfg));
  return rep;
}

json to_json(const FixtureReport& r) {
  json results = json::array();
  for (const auto& f : r.results) {
    json observed = json::object();
    for (const auto& [label, st] : f.observed) observed[label] = std::string(to_string(st));
    results.push_back(json{{"name", f.name},
                           {"passed", f.passed},
                           {"observed", observed},
                           {"mismatches", f.mismatches}});
  }
  return json{{"fixtures", results}, {"all_passed", r.all_passed()}};
}

}  // namespace tenclass
