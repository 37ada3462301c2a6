#include "reachlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>

#include "json.hpp"
#include "reachlab/json_codecs.hpp"
#include "reachlab/svg_plot.hpp"
#include "reachlab/trajectory_io.hpp"

namespace reachlab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CellResult {
  std::string cell;
  std::string variant;
  std::string requirement;
  double p_tol = 0.0;
  double id = 0.0;
  MetricsReport report;
  std::string mean_csv;  // relative; empty when no mean was written
};

std::string variant_color(const std::string& variant) {
  if (variant == "baseline") return "#1f77b4";
  if (variant == "execution-noise") return "#ff7f0e";
  if (variant == "optimality-principles") return "#2ca02c";
  return "#d62728";  // hybrid
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string opt_str(const std::optional<double>& v) {
  return v ? fmt17(*v) : "";
}

const std::vector<std::string> kVariantOrder = {
    "baseline", "execution-noise", "optimality-principles", "hybrid"};
const std::vector<std::string> kRequirementOrder = {"pos", "pos-vel",
                                                    "pos-vel-acc"};

}  // namespace

RunSummary run_report(const std::string& run_dir) {
  const auto events = Manifest::read(run_dir);

  std::vector<CellResult> cells;
  for (const auto& event : events) {
    if (event.value("type", "") != "evaluation") continue;
    const std::string metrics_rel = event.at("paths").at(0).get<std::string>();
    std::ifstream in((fs::path(run_dir) / metrics_rel).string());
    if (!in) continue;
    const auto mj = json::parse(in);
    CellResult cell;
    cell.cell = mj.at("cell").get<std::string>();
    cell.variant = mj.at("variant").get<std::string>();
    cell.requirement = mj.at("requirement").get<std::string>();
    cell.p_tol = mj.at("p_tol").get<double>();
    cell.id = mj.at("index_of_difficulty").get<double>();
    mj.at("report").get_to(cell.report);
    cell.mean_csv = mj.value("mean_csv", "");
    // Re-read duplicated evaluations only once (latest wins).
    const auto existing =
        std::find_if(cells.begin(), cells.end(),
                     [&](const CellResult& c) { return c.cell == cell.cell; });
    if (existing != cells.end())
      *existing = cell;
    else
      cells.push_back(std::move(cell));
  }
  if (cells.empty())
    throw std::runtime_error("run_report: no evaluation results in '" + run_dir +
                             "' (run `evaluate` first)");

  // Fitts regressions written by the evaluation stage.
  json fitts = json::array();
  {
    std::ifstream in((fs::path(run_dir) / "metrics/fitts.json").string());
    if (in) fitts = json::parse(in);
  }

  fs::create_directories(fs::path(run_dir) / "report");
  std::vector<std::string> written;

  // ---- results table (long format) ----------------------------------------
  {
    std::ofstream out((fs::path(run_dir) / "report/table.csv").string());
    out << "metric,requirement,model,id,value\n";
    auto sorted = cells;
    std::sort(sorted.begin(), sorted.end(), [](const CellResult& a, const CellResult& b) {
      return std::tie(a.requirement, a.variant, a.id) <
             std::tie(b.requirement, b.variant, b.id);
    });
    for (const auto& c : sorted) {
      const std::string id = fmt17(c.id);
      out << "p_line," << c.requirement << "," << c.variant << "," << id << ","
          << opt_str(c.report.p_line) << "\n";
      out << "v_bell," << c.requirement << "," << c.variant << "," << id << ","
          << opt_str(c.report.v_bell) << "\n";
      out << "u_triphasic," << c.requirement << "," << c.variant << "," << id << ","
          << c.report.u_triphasic << "\n";
      out << "mean_mt," << c.requirement << "," << c.variant << "," << id << ","
          << fmt17(c.report.mean_movement_time) << "\n";
      out << "success_rate," << c.requirement << "," << c.variant << "," << id << ","
          << fmt17(static_cast<double>(c.report.successes) /
                   std::max(1, c.report.n_rollouts))
          << "\n";
    }
    for (const auto& entry : fitts) {
      out << "R_F," << entry.at("requirement").get<std::string>() << ","
          << entry.at("variant").get<std::string>() << ",2-5,";
      if (entry.contains("r_f") && !entry.at("r_f").is_null())
        out << fmt17(entry.at("r_f").get<double>());
      out << "\n";
    }
    written.push_back("report/table.csv");
  }

  // Helper for loading mean trajectories lazily.
  auto load_mean = [&](const CellResult& c) -> std::optional<NormalizedTrajectory> {
    if (c.mean_csv.empty()) return std::nullopt;
    const auto path = (fs::path(run_dir) / c.mean_csv).string();
    if (!fs::exists(path)) return std::nullopt;
    return read_normalized_csv(path);
  };

  // Highest-ID cell per (variant, requirement).
  auto pick_cell = [&](const std::string& variant,
                       const std::string& requirement) -> const CellResult* {
    const CellResult* best = nullptr;
    for (const auto& c : cells)
      if (c.variant == variant && c.requirement == requirement &&
          (!best || c.id > best->id))
        best = &c;
    return best;
  };

  // ---- hand trajectories ---------------------------------------------------
  {
    std::vector<SvgPlot> panels;
    std::ostringstream csv;
    csv << "requirement,model,id,sample,hand_x,hand_y\n";
    for (const auto& req : kRequirementOrder) {
      SvgPlot panel("hand paths, " + req, "x (m)", "y (m)");
      bool any = false;
      for (const auto& variant : kVariantOrder) {
        const CellResult* cell = pick_cell(variant, req);
        if (!cell) continue;
        const auto mean = load_mean(*cell);
        if (!mean) continue;
        std::vector<Vec2> path;
        path.reserve(mean->rows.size());
        for (std::size_t i = 0; i < mean->rows.size(); ++i) {
          path.push_back(mean->rows[i].hand.p);
          csv << req << "," << variant << "," << fmt17(cell->id) << "," << i << ","
              << fmt17(path.back().x) << "," << fmt17(path.back().y) << "\n";
        }
        panel.add_line(path, variant_color(variant));
        panel.add_legend(variant, variant_color(variant));
        panel.add_circle_outline(mean->goal, cell->p_tol, "#777777");
        panel.add_marker(mean->start, "#000000");
        any = true;
      }
      if (any) panels.push_back(std::move(panel));
    }
    if (!panels.empty()) {
      std::ofstream out((fs::path(run_dir) / "report/hand_trajectories.svg").string());
      out << svg_panel_row(panels);
      std::ofstream cout_((fs::path(run_dir) / "report/hand_trajectories.csv").string());
      cout_ << csv.str();
      written.push_back("report/hand_trajectories.svg");
      written.push_back("report/hand_trajectories.csv");
    }
  }

  // ---- speed profiles with fitted Gaussian ---------------------------------
  {
    std::vector<SvgPlot> panels;
    std::ostringstream csv;
    csv << "model,requirement,id,sample,t_norm,speed,gaussian\n";
    for (const auto& variant : kVariantOrder) {
      const CellResult* cell = nullptr;
      for (const auto& req : {std::string("pos-vel-acc"), std::string("pos-vel"),
                              std::string("pos")}) {
        cell = pick_cell(variant, req);
        if (cell) break;
      }
      if (!cell) continue;
      const auto mean = load_mean(*cell);
      if (!mean) continue;
      const std::size_t n = mean->rows.size();
      std::vector<double> speed(n);
      for (std::size_t i = 0; i < n; ++i) speed[i] = mean->rows[i].speed;
      const auto bell = analyze_bell(speed);

      SvgPlot panel(variant + ", " + cell->requirement + ", " + id_tag(cell->p_tol),
                    "normalized time", "hand speed (m/s)");
      std::vector<Vec2> curve(n);
      for (std::size_t i = 0; i < n; ++i)
        curve[i] = {static_cast<double>(i) / static_cast<double>(n - 1), speed[i]};
      panel.add_line(curve, variant_color(variant), 1.8);
      std::vector<Vec2> gauss;
      if (bell) {
        for (std::size_t i = bell->onset; i <= bell->offset; ++i) {
          const double t = static_cast<double>(i) / static_cast<double>(n - 1);
          const double g =
              bell->v_max * std::exp(-(t - bell->fit.mu) * (t - bell->fit.mu) /
                                     (2.0 * bell->fit.sigma * bell->fit.sigma));
          gauss.push_back({t, g});
        }
        panel.add_line(gauss, "#333333", 1.4, /*dashed=*/true);
        panel.add_legend("fit", "#333333");
      }
      panel.add_legend("mean speed", variant_color(variant));
      for (std::size_t i = 0; i < n; ++i) {
        csv << variant << "," << cell->requirement << "," << fmt17(cell->id) << ","
            << i << "," << fmt17(curve[i].x) << "," << fmt17(speed[i]) << ",";
        if (bell && i >= bell->onset && i <= bell->offset)
          csv << fmt17(gauss[i - bell->onset].y);
        csv << "\n";
      }
      panels.push_back(std::move(panel));
    }
    if (!panels.empty()) {
      std::ofstream out((fs::path(run_dir) / "report/speed_profiles.svg").string());
      out << svg_panel_row(panels);
      std::ofstream cout_((fs::path(run_dir) / "report/speed_profiles.csv").string());
      cout_ << csv.str();
      written.push_back("report/speed_profiles.svg");
      written.push_back("report/speed_profiles.csv");
    }
  }

  // ---- muscle activation patterns ------------------------------------------
  {
    // Fig. 4 analog: one file per requirement (preferring the hybrid model),
    // three panels: S, B, E pairs.
    for (const auto& req : kRequirementOrder) {
      const CellResult* cell = nullptr;
      for (const auto& variant : {std::string("hybrid"), std::string("baseline"),
                                  std::string("execution-noise"),
                                  std::string("optimality-principles")}) {
        cell = pick_cell(variant, req);
        if (cell) break;
      }
      if (!cell) continue;
      const auto mean = load_mean(*cell);
      if (!mean) continue;
      const auto pairs = muscle_pair_signals(*mean);
      const std::string base = "report/muscle_patterns_" + req;
      std::ostringstream csv;
      csv << "model,requirement,pair,role,sample,t_norm,activation\n";
      std::vector<SvgPlot> panels;
      for (const auto& pair : pairs) {
        SvgPlot panel(cell->variant + ", " + req + ", pair " + to_string(pair.pair),
                      "normalized time", "activation");
        const std::size_t n = pair.agonist.size();
        std::vector<Vec2> ag(n), ant(n);
        for (std::size_t i = 0; i < n; ++i) {
          const double t = static_cast<double>(i) / static_cast<double>(n - 1);
          ag[i] = {t, pair.agonist[i]};
          ant[i] = {t, pair.antagonist[i]};
          csv << cell->variant << "," << req << "," << to_string(pair.pair)
              << ",agonist," << i << "," << fmt17(t) << ","
              << fmt17(pair.agonist[i]) << "\n";
          csv << cell->variant << "," << req << "," << to_string(pair.pair)
              << ",antagonist," << i << "," << fmt17(t) << ","
              << fmt17(pair.antagonist[i]) << "\n";
        }
        panel.add_line(ag, "#1f77b4", 1.6);
        panel.add_line(ant, "#d62728", 1.6);
        panel.add_legend("agonist", "#1f77b4");
        panel.add_legend("antagonist", "#d62728");
        panels.push_back(std::move(panel));
      }
      std::ofstream out((fs::path(run_dir) / (base + ".svg")).string());
      out << svg_panel_row(panels);
      std::ofstream cout_((fs::path(run_dir) / (base + ".csv")).string());
      cout_ << csv.str();
      written.push_back(base + ".svg");
      written.push_back(base + ".csv");
    }
  }

  // ---- Fitts regression -----------------------------------------------------
  if (!fitts.empty()) {
    std::vector<SvgPlot> panels;
    std::ostringstream csv;
    csv << "model,requirement,id,mean_mt,intercept,slope,r_f\n";
    for (const auto& variant : kVariantOrder) {
      SvgPlot panel("Fitts, " + variant, "index of difficulty", "mean MT (s)");
      bool any = false;
      for (const auto& entry : fitts) {
        if (entry.at("variant").get<std::string>() != variant) continue;
        const std::string req = entry.at("requirement").get<std::string>();
        const std::string color =
            req == "pos" ? "#1f77b4" : (req == "pos-vel" ? "#2ca02c" : "#d62728");
        std::vector<Vec2> pts;
        for (const auto& p : entry.at("points")) {
          const Vec2 point{p.at(0).get<double>(), p.at(1).get<double>()};
          pts.push_back(point);
          panel.add_marker(point, color);
          csv << variant << "," << req << "," << fmt17(point.x) << ","
              << fmt17(point.y) << ",";
          if (entry.contains("intercept")) {
            csv << fmt17(entry.at("intercept").get<double>()) << ","
                << fmt17(entry.at("slope").get<double>()) << ",";
            if (!entry.at("r_f").is_null()) csv << fmt17(entry.at("r_f").get<double>());
          } else {
            csv << ",,";
          }
          csv << "\n";
        }
        if (entry.contains("intercept") && pts.size() >= 2) {
          const double a = entry.at("intercept").get<double>();
          const double b = entry.at("slope").get<double>();
          const double x0 = pts.front().x, x1 = pts.back().x;
          panel.add_line({{x0, a + b * x0}, {x1, a + b * x1}}, color, 1.2);
          panel.add_legend(req, color);
          any = true;
        }
      }
      if (any) panels.push_back(std::move(panel));
    }
    if (!panels.empty()) {
      std::ofstream out((fs::path(run_dir) / "report/fitts_law.svg").string());
      out << svg_panel_row(panels);
      std::ofstream cout_((fs::path(run_dir) / "report/fitts_law.csv").string());
      cout_ << csv.str();
      written.push_back("report/fitts_law.svg");
      written.push_back("report/fitts_law.csv");
    }
  }

  // ---- gaps ------------------------------------------------------------------
  RunSummary summary;
  summary.completed = static_cast<int>(cells.size());
  {
    // The configured grid comes from the last run_config event.
    std::optional<GridSpec> grid;
    for (const auto& event : events)
      if (event.value("type", "") == "run_config") grid = event.at("grid").get<GridSpec>();
    std::vector<std::string> gaps;
    if (grid) {
      std::set<std::string> have;
      for (const auto& c : cells) have.insert(c.cell);
      for (auto v : grid->variants)
        for (auto r : grid->requirements)
          for (double p : grid->p_tols)
            if (!have.count(cell_name(v, r, p))) gaps.push_back(cell_name(v, r, p));
    }
    if (!gaps.empty()) {
      std::ofstream out((fs::path(run_dir) / "report/gaps.txt").string());
      for (const auto& g : gaps) out << g << "\n";
      written.push_back("report/gaps.txt");
      summary.failed = static_cast<int>(gaps.size());
    }
  }

  Manifest manifest(run_dir);
  manifest.append(json{{"type", "report"}, {"paths", written}});
  return summary;
}

}  // namespace reachlab
