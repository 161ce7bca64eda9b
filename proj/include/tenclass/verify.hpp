#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tenclass/classifiers.hpp"
#include "tenclass/tensor.hpp"
#include "tenclass/verdict.hpp"

namespace tenclass {

// ------------------------------------------------------------ generators

enum class GeneratorKind {
  DiagDominant,
  StrictDiagDominant,
  ZTensor,
  Symmetric,
  Nonneg,
  AlmostE0Seeded,
  Mixed,
};

std::string_view to_string(GeneratorKind k);
std::optional<GeneratorKind> parse_generator_kind(std::string_view name);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Nonneg;
  int order = 3;
  Index dim = 2;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  /// zTensor: t = factor * midpoint of the rho(B) enclosure. 0 cycles
  /// through {0.5, 1.0, 1.5} by instance index.
  double factor = 0.0;
};

/// Deterministic 64-bit stream derived from a seed and a sequence of keys.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index);

/// One instance of `kind`; `index` selects the factor cycle position.
/// Throws std::runtime_error when a rejection budget is exhausted.
Tensor generate_one(GeneratorKind kind, int order, Index dim, double factor, std::size_t index,
                    std::uint64_t stream, const ClassifierConfig& cfg = {});
std::vector<Tensor> generate(const GeneratorSpec& spec, const ClassifierConfig& cfg = {});

/// The defining predicate of each kind (Holds for every generated tensor).
Verdict satisfies_kind(const Tensor& a, GeneratorKind kind, double factor,
                       const ClassifierConfig& cfg = {});

// ---------------------------------------------------------------- suites

struct Violation {
  std::size_t instance = 0;
  std::string message;
  Tensor tensor{2, 1};
};

struct SuiteReport {
  std::string suite;
  std::size_t instances = 0;
  std::size_t decisive = 0;
  std::size_t inconclusive = 0;
  std::vector<Violation> violations;
  std::uint64_t seed = 0;
  ClassifierConfig config;
};

std::vector<std::string> suite_names();
/// Worker count from TENCLASS_THREADS, else the hardware concurrency.
unsigned default_threads();
/// Runs `count` instances of the named suite. Throws std::invalid_argument
/// for an unknown name. The report does not depend on `threads`.
SuiteReport run_suite(std::string_view name, std::uint64_t seed, std::size_t count,
                      const ClassifierConfig& cfg = {}, unsigned threads = 0);
nlohmann::json to_json(const SuiteReport& r);
/// Writes each violating tensor to `dir` as <suite>_<instance>.json.
void dump_violations(const SuiteReport& r, const std::filesystem::path& dir);

// -------------------------------------------------------------- fixtures

/// A vector evaluation recorded with a fixture: apply and/or form value of
/// the (optionally principal-sub-) tensor at x, compared exactly.
struct FixtureCheck {
  Vector x;
  std::optional<IndexSet> subset;
  std::optional<Vector> apply;
  std::optional<double> form;
};

struct Fixture {
  std::string name;
  std::string anchor;
  Tensor tensor{2, 1};
  /// Class label (optionally "label@i,j,..." for a principal subtensor) to expected status.
  std::map<std::string, Status> expected;
  std::vector<FixtureCheck> checks;
};

Fixture fixture_from_json(const nlohmann::json& doc);
Fixture load_fixture(const std::filesystem::path& path);
/// Every *.json in `dir`, sorted by file name.
std::vector<Fixture> load_fixtures(const std::filesystem::path& dir);

/// Verdict of a single class by name ("E0", "almostC", ...).
Verdict evaluate_class(const Tensor& a, std::string_view name, const ClassifierConfig& cfg = {});

struct FixtureResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> mismatches;
  std::map<std::string, Status> observed;
};

struct FixtureReport {
  std::vector<FixtureResult> results;
  [[nodiscard]] bool all_passed() const;
};

FixtureResult run_fixture(const Fixture& f, const ClassifierConfig& cfg = {});
FixtureReport run_fixtures(const std::vector<Fixture>& fixtures, const ClassifierConfig& cfg = {});
nlohmann::json to_json(const FixtureReport& r);

}  // namespace tenclass
