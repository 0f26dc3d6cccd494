#include "gtzw/errors.hpp"
#include "gtzw/experiments.hpp"

namespace gtzw {

nlohmann::json path_to_json(const Path& path) {
  nlohmann::json sigs = nlohmann::json::array();
  for (const auto& s : path.signatures()) sigs.push_back(s.vec());
  return {{"start_level", path.start_level()}, {"signatures", std::move(sigs)}};
}

Path path_from_json(const nlohmann::json& j) {
  try {
    std::vector<Signature> sigs;
    for (const auto& s : j.at("signatures")) sigs.emplace_back(s.get<std::vector<Row>>());
    return Path(j.at("start_level").get<int>(), std::move(sigs));
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("path_from_json: ") + e.what());
  }
}

nlohmann::json transition_to_json(const LevelTransition& tr) {
  nlohmann::json support = nlohmann::json::array();
  for (const auto& s : tr.support) support.push_back(s.vec());
  return {{"source", tr.source.vec()},       {"support", std::move(support)},
          {"log_probs", tr.log_probs},       {"tail_mass_bound", tr.tail_mass_bound},
          {"top_cap", tr.top_cap},           {"bottom_cap", tr.bottom_cap}};
}

nlohmann::json coupling_to_json(const CouplingTable<double>& eta) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [ab, p] : eta.mass)
    out.push_back({{"a", cell_to_string(ab.first, eta.n)}, {"b", cell_to_string(ab.second, eta.n)}, {"p", p}});
  return out;
}

}  // namespace gtzw
