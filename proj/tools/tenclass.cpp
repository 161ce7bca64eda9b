#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "tenclass/classifiers.hpp"
#include "tenclass/report_json.hpp"
#include "tenclass/spectral.hpp"
#include "tenclass/tensor_io.hpp"
#include "tenclass/verify.hpp"

namespace {

using nlohmann::json;
using namespace tenclass;

constexpr int kDecisive = 0;
constexpr int kInputError = 1;
constexpr int kInconclusive = 2;
constexpr int kMismatch = 3;

struct Options {
  double epsilon = 1e-9;
  int max_depth = 40;
  std::size_t subset_cap = 12;
  std::uint64_t seed = 0;
  std::string out;

  [[nodiscard]] ClassifierConfig config() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("--epsilon must be positive");
    if (max_depth < 1) throw std::invalid_argument("--max-depth must be at least 1");
    ClassifierConfig cfg;
    cfg.epsilon = epsilon;
    cfg.max_depth = max_depth;
    cfg.subset_cap = subset_cap;
    cfg.seed = seed;
    return cfg;
  }
};

void add_common(CLI::App* cmd, Options& opt,
                const char* out_help = "Write the report here instead of stdout") {
  cmd->add_option("--epsilon", opt.epsilon, "Relative tolerance");
  cmd->add_option("--max-depth", opt.max_depth, "Subdivision depth limit");
  cmd->add_option("--subset-cap", opt.subset_cap, "Largest dimension for subset enumeration");
  cmd->add_option("--seed", opt.seed, "Seed for every random choice");
  cmd->add_option("--out", opt.out, out_help);
}

void emit(const json& doc, const std::string& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

std::string default_fixture_dir() {
  if (const char* env = std::getenv("TENCLASS_FIXTURE_DIR")) return env;
#ifdef TENCLASS_FIXTURE_DIR
  return TENCLASS_FIXTURE_DIR;
#else
  return "fixtures";
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured tensor class detection"};
  app.require_subcommand(1);
  Options opt;

  std::string file;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a tensor file");
  classify_cmd->add_option("file", file, "Tensor JSON")->required();
  add_common(classify_cmd, opt);

  bool want_radius = false;
  bool want_eigen = false;
  auto* spectral_cmd = app.add_subcommand("spectral", "Spectral radius or negative H++ eigenpair");
  spectral_cmd->add_option("file", file, "Tensor JSON")->required();
  spectral_cmd->add_flag("--radius", want_radius, "Spectral radius enclosure (nonnegative input)");
  spectral_cmd->add_flag("--eigenpair", want_eigen, "Negative H++ eigenpair (symmetric input)");
  add_common(spectral_cmd, opt);

  std::string suite;
  std::size_t count = 200;
  std::string dump_dir;
  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite or all of them");
  verify_cmd->add_option("suite", suite, "Suite name or 'all'")->required();
  verify_cmd->add_option("--count", count, "Instances per suite");
  verify_cmd->add_option("--dump", dump_dir, "Directory for violating tensors");
  add_common(verify_cmd, opt);

  std::string fixture_dir = default_fixture_dir();
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Check the fixture corpus");
  fixtures_cmd->add_option("--dir", fixture_dir, "Fixture directory");
  add_common(fixtures_cmd, opt);

  std::string kind_name;
  double factor = 0.0;
  std::size_t gen_count = 1;
  int order = 3;
  Index dim = 2;
  auto* gen_cmd = app.add_subcommand("gen", "Write generated tensors to a directory");
  gen_cmd->add_option("--kind", kind_name, "Generator kind")->required();
  gen_cmd->add_option("--factor", factor, "zTensor diagonal factor");
  gen_cmd->add_option("--count", gen_count, "Number of tensors");
  gen_cmd->add_option("--order", order, "Tensor order");
  gen_cmd->add_option("--dim", dim, "Tensor dimension");
  add_common(gen_cmd, opt, "Directory for the tensor files (default: current directory)");

  CLI11_PARSE(app, argc, argv);

  try {
    const ClassifierConfig cfg = opt.config();

    if (*classify_cmd) {
      const Tensor a = load_tensor(file);
      const ClassificationReport rep = classify(a, cfg);
      emit(to_json(rep), opt.out);
      return rep.all_decisive() ? kDecisive : kInconclusive;
    }

    if (*spectral_cmd) {
      if (want_radius && want_eigen) {
        throw std::invalid_argument("choose one of --radius and --eigenpair");
      }
      const Tensor a = load_tensor(file);
      if (want_eigen) {
        EigenSearchConfig ecfg;
        ecfg.seed = opt.seed;
        const auto pair = find_negative_hpp_eigenpair(a, EigenMode::Negative, ecfg);
        emit(json{{"eigenpair", pair ? to_json(*pair) : json(nullptr)}}, opt.out);
        return pair ? kDecisive : kInconclusive;
      }
      const RadiusEnclosure enc = spectral_radius_nonneg(a);
      emit(json{{"radius", to_json(enc)}}, opt.out);
      return enc.converged ? kDecisive : kInconclusive;
    }

    if (*verify_cmd) {
      std::vector<std::string> names;
      if (suite == "all") {
        names = suite_names();
      } else {
        names.push_back(suite);
      }
      json reports = json::array();
      bool inconclusive = false;
      bool violated = false;
      for (const auto& name : names) {
        const SuiteReport r = run_suite(name, opt.seed, count, cfg);
        if (!dump_dir.empty()) dump_violations(r, dump_dir);
        inconclusive = inconclusive || r.inconclusive > 0;
        violated = violated || !r.violations.empty();
        reports.push_back(to_json(r));
      }
      emit(json{{"seed", opt.seed}, {"suites", reports}}, opt.out);
      if (violated) return kMismatch;
      return inconclusive ? kInconclusive : kDecisive;
    }

    if (*fixtures_cmd) {
      const FixtureReport rep = run_fixtures(load_fixtures(fixture_dir), cfg);
      emit(to_json(rep), opt.out);
      return rep.all_passed() ? kDecisive : kMismatch;
    }

    if (*gen_cmd) {
      const auto kind = parse_generator_kind(kind_name);
      if (!kind) throw std::invalid_argument("unknown generator kind \"" + kind_name + "\"");
      GeneratorSpec spec{*kind, order, dim, opt.seed, gen_count, factor};
      const std::vector<Tensor> tensors = generate(spec, cfg);
      const std::filesystem::path dir = opt.out.empty() ? "." : opt.out;
      std::filesystem::create_directories(dir);
      json files = json::array();
      for (std::size_t i = 0; i < tensors.size(); ++i) {
        const auto path = dir / (kind_name + "_" + std::to_string(i) + ".json");
        save_tensor(path, tensors[i]);
        files.push_back(path.string());
      }
      std::cout << json{{"files", files}}.dump(2) << "\n";
      return kDecisive;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
