#pragma once

#include "json.hpp"

// nlohmann::json ADL serializers for the configuration and report types, so
// every artifact (agents, trajectory sidecars, metrics, manifests) embeds the
// exact configuration that produced it.

#include "reachlab/agent_evaluation.hpp"
#include "reachlab/cem.hpp"
#include "reachlab/config.hpp"
#include "reachlab/reach_env.hpp"

namespace reachlab {

void to_json(nlohmann::json& j, const Vec2& v);
void from_json(const nlohmann::json& j, Vec2& v);

void to_json(nlohmann::json& j, const ArmParams& p);
void from_json(const nlohmann::json& j, ArmParams& p);

void to_json(nlohmann::json& j, const EnvConfig& c);
void from_json(const nlohmann::json& j, EnvConfig& c);

void to_json(nlohmann::json& j, const OptimizerConfig& c);
void from_json(const nlohmann::json& j, OptimizerConfig& c);

void to_json(nlohmann::json& j, const IterationStats& s);
void from_json(const nlohmann::json& j, IterationStats& s);

void to_json(nlohmann::json& j, const MetricsReport& r);
void from_json(const nlohmann::json& j, MetricsReport& r);

void to_json(nlohmann::json& j, const GridSpec& g);
void from_json(const nlohmann::json& j, GridSpec& g);

}  // namespace reachlab
