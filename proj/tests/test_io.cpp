#include <doctest.h>

#include <filesystem>
#include <random>
#include <string>

#include "support.hpp"
#include "tenclass/report_json.hpp"
#include "tenclass/tensor_io.hpp"

using namespace tenclass;
using namespace testing_support;

namespace {

std::string error_of(std::string_view text) {
  try {
    (void)parse_tensor(text);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, std::string_view part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("parse coo and dense") {
  const Tensor a = parse_tensor(
      R"({"order": 3, "dim": 2, "format": "coo", "entries": [[[0,0,0], 1], [[0,0,1], -1], [[1,0,1], "-1"]], "note": 1})");
  CHECK(a == almost_e0_basic());
  const Tensor d = parse_tensor(R"({"order": 2, "dim": 2, "format": "dense", "entries": [[1, 2], [3, 4]]})");
  CHECK(d.at({1, 0}) == 3.0);
  CHECK(d.at({0, 1}) == 2.0);
  // Format defaults to coo.
  CHECK(parse_tensor(R"({"order": 2, "dim": 1, "entries": [[[0,0], 5]]})").at({0, 0}) == 5.0);
}

TEST_CASE("parse errors name the offending entry") {
  const std::string nan = error_of(R"({"order": 3, "dim": 2, "entries": [[[0,0,0], 1], [[1,0,1], NaN]]})");
  CHECK(contains(nan, "[1,0,1]"));
  CHECK(contains(nan, "non-finite"));
  CHECK(contains(error_of(R"({"order": 3, "dim": 2, "entries": [[[0,1,1], Infinity]]})"), "[0,1,1]"));
  CHECK(contains(error_of(R"({"order": 3, "dim": 2, "entries": [[[0,0,0], 1], [[0,0,0], 2]]})"), "duplicate"));
  CHECK(contains(error_of(R"({"order": 3, "dim": 2, "entries": [[[0,0,2], 1]]})"), "out of range"));
  CHECK(contains(error_of(R"({"order": 3, "dim": 2, "entries": [[[0,0], 1]]})"), "expected 3 indices"));
  CHECK(contains(error_of(R"({"order": 3, "dim": 2, "entries": [[[0,0,0], "abc"]]})"), "not a number"));
  CHECK(contains(error_of(R"({"dim": 2, "entries": []})"), "order"));
  CHECK(contains(error_of(R"({"order": 3, "dim": 2, "format": "csr", "entries": []})"), "unknown format"));
  CHECK(contains(error_of(R"({"order": 2, "dim": 2, "format": "dense", "entries": [[1, 2]]})"), "length"));
  CHECK(contains(error_of("{not json"), "malformed"));
  // A NaN inside a string value is left untouched by the lenient reader.
  CHECK(contains(error_of(R"({"order": 2, "dim": 1, "entries": [[[0,0], "NaN"]]})"), "non-finite"));
}

TEST_CASE("property: json round trip is exact") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> keep(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 3;
    const Index n = 1 + static_cast<Index>(trial % 4);
    Tensor a = random_tensor(rng, m, n, -1e3, 1e3);
    std::vector<double> e(a.entries().begin(), a.entries().end());
    for (double& v : e) {
      if (keep(rng) == 0) v = 0.0;
    }
    a = Tensor(m, n, e);
    CHECK(parse_tensor(tensor_to_string(a)) == a);
  }
}

TEST_CASE("save and load") {
  const auto dir = std::filesystem::temp_directory_path() / "tenclass_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "t.json";
  save_tensor(path, almost_e_basic());
  CHECK(load_tensor(path) == almost_e_basic());
  CHECK_THROWS_AS(load_tensor(dir / "missing.json"), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("verdict json") {
  const Verdict h = Verdict::holds(1e-9);
  const auto j = to_json(h);
  CHECK(j["status"] == "Holds");
  CHECK(j["witness"].is_null());
  CHECK(j["epsilon"] == 1e-9);
  const Claim claim{Claim::Kind::SupportComponentsBelow, 0.0, true, 0.0};
  const auto f = to_json(Verdict::fails(almost_e0_basic(), Vector{1.0 / 3, 2.0 / 3}, claim, 1e-9));
  CHECK(f["status"] == "Fails");
  CHECK(f["witness"].size() == 2);
  for (const char* key : {"nodes", "depth", "worst_bound"}) CHECK(f.contains(key));
  const auto e = to_json(RadiusEnclosure{1.0, 2.0, 3, true});
  CHECK(e["lower"] == 1.0);
  CHECK(e["iterations"] == 3);
  const auto p = to_json(EigenPair{-1.0, {0.5, 0.5}, 0.0});
  CHECK(p["lambda"] == -1.0);
}
