#include "tenclass/report_json.hpp"

namespace tenclass {

using nlohmann::json;

json to_json(const Verdict& v) {
  json j;
  j["status"] = std::string(to_string(v.status()));
  j["witness"] = v.witness() ? json(*v.witness()) : json(nullptr);
  j["epsilon"] = v.epsilon();
  j["nodes"] = v.stats().nodes;
  j["depth"] = v.stats().depth;
  j["worst_bound"] = v.stats().worst_bound;
  if (v.solution()) j["solution"] = *v.solution();
  if (v.subset()) j["subset"] = v.subset()->indices();
  if (v.index()) j["index"] = *v.index();
  if (!v.reason().empty()) j["reason"] = v.reason();
  return j;
}

json to_json(const ClassifierConfig& cfg) {
  return json{{"epsilon", cfg.epsilon},
              {"max_depth", cfg.max_depth},
              {"subset_cap", cfg.subset_cap},
              {"node_budget", cfg.node_budget},
              {"interior_margin", cfg.interior_margin},
              {"seed", cfg.seed}};
}

json to_json(const ClassificationReport& r) {
  json classes = json::object();
  for (const auto& [name, v] : r.verdicts) classes[name] = to_json(v);
  return json{{"digest", r.digest},
              {"order", r.order},
              {"dim", r.dim},
              {"symmetric", r.symmetric},
              {"config", to_json(r.config)},
              {"classes", classes},
              {"consistency_violations", r.consistency_violations}};
}

json to_json(const RadiusEnclosure& e) {
  return json{{"lower", e.lower},
              {"upper", e.upper},
              {"iterations", e.iterations},
              {"converged", e.converged}};
}

json to_json(const EigenPair& p) {
  return json{{"lambda", p.lambda}, {"x", p.x}, {"residual", p.residual}};
}

}  // namespace tenclass
