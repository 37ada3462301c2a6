#include "reachlab/agent_io.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "reachlab/json_codecs.hpp"

namespace reachlab {

void save_agent(const std::string& path, const TrainedAgent& agent) {
  nlohmann::json j{{"schema_version", kAgentSchemaVersion},
                   {"env", agent.env},
                   {"optimizer", agent.optimizer},
                   {"curve", agent.curve},
                   {"seed", agent.seed},
                   {"best_score", agent.best_score},
                   {"non_reaching", agent.non_reaching},
                   {"params", agent.params}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

TrainedAgent load_agent(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  const auto j = nlohmann::json::parse(in);
  const int version = j.at("schema_version").get<int>();
  if (version != kAgentSchemaVersion)
    throw std::runtime_error(path + ": agent schema version " +
                             std::to_string(version) + ", expected " +
                             std::to_string(kAgentSchemaVersion));
  TrainedAgent agent;
  j.at("env").get_to(agent.env);
  j.at("optimizer").get_to(agent.optimizer);
  j.at("curve").get_to(agent.curve);
  j.at("seed").get_to(agent.seed);
  j.at("best_score").get_to(agent.best_score);
  j.at("non_reaching").get_to(agent.non_reaching);
  j.at("params").get_to(agent.params);
  return agent;
}

}  // namespace reachlab
