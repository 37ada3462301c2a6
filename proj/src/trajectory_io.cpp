#include "reachlab/trajectory_io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "reachlab/json_codecs.hpp"

namespace reachlab {

namespace {

const std::array<const char*, 29> kColumns = {
    "t",       "q1",      "q2",      "qd1",     "qd2",     "hand_x",
    "hand_y",  "hand_vx", "hand_vy", "hand_ax", "hand_ay", "speed",
    "u1",      "u2",      "u3",      "u4",      "u5",      "u6",
    "a1",      "a2",      "a3",      "a4",      "a5",      "a6",
    "r_sparse", "r_effort", "r_jerk", "r_work", "r_total"};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void row_to_values(const TrajectorySample& row, std::array<double, 29>& out) {
  out = {row.t,          row.q.x,        row.q.y,        row.qd.x,
         row.qd.y,       row.hand.p.x,   row.hand.p.y,   row.hand.v.x,
         row.hand.v.y,   row.hand.a.x,   row.hand.a.y,   row.speed,
         row.u[0],       row.u[1],       row.u[2],       row.u[3],
         row.u[4],       row.u[5],       row.act[0],     row.act[1],
         row.act[2],     row.act[3],     row.act[4],     row.act[5],
         row.reward.sparse, row.reward.effort, row.reward.jerk,
         row.reward.work, row.reward.total};
}

TrajectorySample values_to_row(const std::array<double, 29>& v) {
  TrajectorySample row;
  row.t = v[0];
  row.q = {v[1], v[2]};
  row.qd = {v[3], v[4]};
  row.hand.p = {v[5], v[6]};
  row.hand.v = {v[7], v[8]};
  row.hand.a = {v[9], v[10]};
  row.speed = v[11];
  for (int i = 0; i < 6; ++i) row.u[i] = v[12 + i];
  for (int i = 0; i < 6; ++i) row.act[i] = v[18 + i];
  row.reward.sparse = v[24];
  row.reward.effort = v[25];
  row.reward.jerk = v[26];
  row.reward.work = v[27];
  row.reward.total = v[28];
  return row;
}

void write_rows(std::ostream& out, const std::vector<TrajectorySample>& rows) {
  for (std::size_t c = 0; c < kColumns.size(); ++c)
    out << (c ? "," : "") << kColumns[c];
  out << "\n";
  std::array<double, 29> values;
  for (const auto& row : rows) {
    row_to_values(row, values);
    for (std::size_t c = 0; c < values.size(); ++c)
      out << (c ? "," : "") << format_double(values[c]);
    out << "\n";
  }
}

// Maps header names to column positions; throws on a missing column.
std::vector<TrajectorySample> read_rows(std::istream& in, const std::string& what) {
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error(what + ": empty trajectory file");
  std::vector<std::string> names;
  {
    std::istringstream hs(header);
    std::string name;
    while (std::getline(hs, name, ',')) names.push_back(name);
  }
  std::array<int, 29> position;
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    int found = -1;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == kColumns[c]) found = static_cast<int>(i);
    if (found < 0)
      throw std::runtime_error(what + ": missing column '" +
                               std::string(kColumns[c]) + "'");
    position[c] = found;
  }

  std::vector<TrajectorySample> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> fields;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) fields.push_back(std::stod(cell));
    if (fields.size() != names.size())
      throw std::runtime_error(what + ": row with wrong field count");
    std::array<double, 29> values;
    for (std::size_t c = 0; c < kColumns.size(); ++c) values[c] = fields[position[c]];
    rows.push_back(values_to_row(values));
  }
  return rows;
}

}  // namespace

std::string sidecar_path(const std::string& csv_path) { return csv_path + ".json"; }

void write_trajectory_csv(const std::string& csv_path, const Trajectory& traj,
                          const EnvConfig& config, std::uint64_t seed) {
  std::ofstream out(csv_path);
  if (!out) throw std::runtime_error("cannot write '" + csv_path + "'");
  write_rows(out, traj.rows);

  nlohmann::json side{{"schema_version", kTrajectorySchemaVersion},
                      {"env", config},
                      {"seed", seed},
                      {"movement_time", traj.movement_time},
                      {"success", traj.success},
                      {"faulted", traj.faulted},
                      {"goal", traj.goal},
                      {"start", traj.start}};
  std::ofstream sout(sidecar_path(csv_path));
  if (!sout) throw std::runtime_error("cannot write '" + sidecar_path(csv_path) + "'");
  sout << side.dump(2) << "\n";
}

LoadedTrajectory read_trajectory_csv(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open '" + csv_path + "'");
  LoadedTrajectory loaded;
  loaded.trajectory.rows = read_rows(in, csv_path);

  std::ifstream sin(sidecar_path(csv_path));
  if (!sin) throw std::runtime_error("cannot open '" + sidecar_path(csv_path) + "'");
  const auto side = nlohmann::json::parse(sin);
  const int version = side.at("schema_version").get<int>();
  if (version != kTrajectorySchemaVersion)
    throw std::runtime_error(csv_path + ": trajectory schema version " +
                             std::to_string(version) + ", expected " +
                             std::to_string(kTrajectorySchemaVersion));
  side.at("env").get_to(loaded.config);
  side.at("seed").get_to(loaded.seed);
  side.at("movement_time").get_to(loaded.trajectory.movement_time);
  side.at("success").get_to(loaded.trajectory.success);
  side.at("faulted").get_to(loaded.trajectory.faulted);
  side.at("goal").get_to(loaded.trajectory.goal);
  side.at("start").get_to(loaded.trajectory.start);
  return loaded;
}

void write_normalized_csv(const std::string& csv_path,
                          const NormalizedTrajectory& traj) {
  std::ofstream out(csv_path);
  if (!out) throw std::runtime_error("cannot write '" + csv_path + "'");
  write_rows(out, traj.rows);
  nlohmann::json side{{"schema_version", kTrajectorySchemaVersion},
                      {"movement_time", traj.movement_time},
                      {"goal", traj.goal},
                      {"start", traj.start}};
  std::ofstream sout(sidecar_path(csv_path));
  if (!sout) throw std::runtime_error("cannot write '" + sidecar_path(csv_path) + "'");
  sout << side.dump(2) << "\n";
}

NormalizedTrajectory read_normalized_csv(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open '" + csv_path + "'");
  NormalizedTrajectory traj;
  traj.rows = read_rows(in, csv_path);
  std::ifstream sin(sidecar_path(csv_path));
  if (!sin) throw std::runtime_error("cannot open '" + sidecar_path(csv_path) + "'");
  const auto side = nlohmann::json::parse(sin);
  const int version = side.at("schema_version").get<int>();
  if (version != kTrajectorySchemaVersion)
    throw std::runtime_error(csv_path + ": trajectory schema version mismatch");
  side.at("movement_time").get_to(traj.movement_time);
  side.at("goal").get_to(traj.goal);
  side.at("start").get_to(traj.start);
  return traj;
}

}  // namespace reachlab
