#pragma once

#include <json.hpp>

#include "tenclass/classifiers.hpp"
#include "tenclass/spectral.hpp"
#include "tenclass/verdict.hpp"

namespace tenclass {

/// {status, witness, epsilon, nodes, depth, worst_bound} plus solution,
/// subset, index and reason when present.
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const ClassifierConfig& cfg);
nlohmann::json to_json(const ClassificationReport& r);
nlohmann::json to_json(const RadiusEnclosure& e);
nlohmann::json to_json(const EigenPair& p);

}  // namespace tenclass
