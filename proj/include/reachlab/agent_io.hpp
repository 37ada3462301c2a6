#pragma once

#include <string>

#include "reachlab/cem.hpp"

namespace reachlab {

inline constexpr int kAgentSchemaVersion = 1;

// Agents are stored as one JSON document: a header (configs, seed lineage,
// training curve, flags) plus the flat parameter array. Doubles are printed
// with round-trip precision, so save/load is lossless.
void save_agent(const std::string& path, const TrainedAgent& agent);

// Throws std::runtime_error on a schema-version mismatch.
TrainedAgent load_agent(const std::string& path);

}  // namespace reachlab
