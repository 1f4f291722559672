#include "terracut/map_model.hpp"
#include "terracut/region.hpp"
#include "terracut/solver.hpp"
#include "terracut/svg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

namespace fs = std::filesystem;
using namespace terracut;

namespace {

struct CommonOptions {
  std::string objective = "min-sep";
  std::uint64_t seed = 0;
  int timeout_ms_per_cluster = 100;
  int max_retries = 2;
  double epsilon = 1.0;
  double cluster_threshold = 12.0;
  double max_edge = 10.0;
  bool deterministic = false;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--objective", opt.objective, "min-sep | areas")
      ->check(CLI::IsMember({"min-sep", "areas"}));
  cmd->add_option("--seed", opt.seed, "solver seed");
  cmd->add_option("--timeout-ms-per-cluster", opt.timeout_ms_per_cluster,
                  "per-cluster solve budget in ms");
  cmd->add_option("--max-retries", opt.max_retries, "timeout doublings before giving up");
  cmd->add_option("--epsilon", opt.epsilon, "contour simplification tolerance (tiles)");
  cmd->add_option("--cluster-threshold", opt.cluster_threshold,
                  "resource clustering distance (tiles)");
  cmd->add_option("--max-edge", opt.max_edge, "contour enrichment edge cap (tiles)");
  cmd->add_flag("--deterministic", opt.deterministic,
                "iteration-budget mode: machine-independent runs");
}

sep::Objective objective_of(const CommonOptions& opt) {
  return opt.objective == "areas" ? sep::Objective::least_squares_areas
                                  : sep::Objective::min_separation_length;
}

solver::SolverConfig config_of(const CommonOptions& opt) {
  solver::SolverConfig cfg;
  cfg.base_timeout_ms_per_cluster = opt.timeout_ms_per_cluster;
  cfg.max_retries_with_doubling = opt.max_retries;
  cfg.seed = opt.seed;
  cfg.deterministic = opt.deterministic;
  return cfg;
}

region::AnalysisParams params_of(const CommonOptions& opt) {
  region::AnalysisParams p;
  p.epsilon = opt.epsilon;
  p.cluster_threshold = opt.cluster_threshold;
  p.max_edge = opt.max_edge;
  return p;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void print_report(const region::AnalysisResult& r) {
  const region::StageTimes& s = r.stages;
  int needs_split = 0;
  double var_sum = 0;
  int solved_zones = 0;
  for (const region::ZoneSolveStats& st : r.zone_stats) {
    ++needs_split;
    var_sum += st.variables;
    ++solved_zones;
  }
  std::printf("map: %s  (objective %s, seed %llu%s)\n", r.map_name.c_str(),
              region::to_string(r.objective), static_cast<unsigned long long>(r.config.seed),
              r.config.deterministic ? ", deterministic" : "");
  std::printf(
      "stage ms: labeling %.2f | zoning %.2f | simplify %.2f | clustering %.2f | solving %.2f | "
      "region build %.2f | total %.2f\n",
      s.labeling_ms, s.zoning_ms, s.simplify_ms, s.clustering_ms, s.solving_ms, s.region_ms,
      s.total_ms);
  std::printf("zones: %zu (needs-split %d)  regions: %zu  chokes: %zu  mean variables: %.1f\n",
              r.zones.size(), needs_split, r.regions.size(), r.chokes.size(),
              solved_zones ? var_sum / solved_zones : 0.0);
  for (const region::ZoneSolveStats& st : r.zone_stats) {
    std::printf("  zone %d: %d vars, %d separations, %lld iterations, %.1f ms, %d retries, %s%s%s\n",
                st.zone_id, st.variables, st.required, st.iterations, st.solve_ms, st.retries,
                st.feasible ? "feasible" : "INFEASIBLE", st.note.empty() ? "" : " - ",
                st.note.c_str());
  }
  std::printf("feasible: %s\n", r.all_feasible ? "yes" : "NO");
}

int run_analyze(const std::string& map_path, const CommonOptions& opt, const std::string& json_out,
                const std::string& svg_out) {
  map::MapData m = map::load_map_file(map_path);
  region::AnalysisResult result = region::analyze(m, objective_of(opt), config_of(opt),
                                                  params_of(opt));
  print_report(result);
  if (!json_out.empty()) write_file(json_out, region::result_to_json(result));
  if (!svg_out.empty()) write_file(svg_out, svg::render_svg(result, m));
  return result.all_feasible ? 0 : 2;
}

std::vector<fs::path> corpus_paths(const std::string& dir) {
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    fs::path p = entry.path();
    if (p.extension() == ".txt" || p.extension() == ".json") paths.push_back(p);
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

int run_bench(const std::string& dir, const CommonOptions& opt, int repetitions,
              const std::string& raw_csv) {
  std::vector<fs::path> paths = corpus_paths(dir);
  if (paths.empty()) {
    std::fprintf(stderr, "no .txt or .json maps in %s\n", dir.c_str());
    return 1;
  }
  std::string csv = "map,rep,stage,ms\n";
  std::printf("%-24s %10s %10s %10s\n", "map", "median", "mean", "stddev");
  for (const fs::path& p : paths) {
    map::MapData m = map::load_map_file(p.string());
    std::vector<double> totals;
    for (int rep = 0; rep < repetitions; ++rep) {
      CommonOptions o = opt;
      o.seed = opt.seed + static_cast<std::uint64_t>(rep);
      region::AnalysisResult r =
          region::analyze(m, objective_of(o), config_of(o), params_of(o));
      const region::StageTimes& s = r.stages;
      totals.push_back(s.total_ms);
      auto row = [&](const char* stage, double ms) {
        csv += m.name + "," + std::to_string(rep) + "," + stage + "," + std::to_string(ms) + "\n";
      };
      row("labeling", s.labeling_ms);
      row("zoning", s.zoning_ms);
      row("simplify", s.simplify_ms);
      row("clustering", s.clustering_ms);
      row("solving", s.solving_ms);
      row("region_build", s.region_ms);
      row("total", s.total_ms);
    }
    std::vector<double> sorted = totals;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted.size() % 2 ? sorted[sorted.size() / 2]
                                      : (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]) / 2;
    double mean = 0;
    for (double v : totals) mean += v;
    mean /= static_cast<double>(totals.size());
    double var = 0;
    for (double v : totals) var += (v - mean) * (v - mean);
    double stddev = std::sqrt(var / static_cast<double>(totals.size()));  // population
    std::printf("%-24s %10.2f %10.2f %10.2f\n", m.name.c_str(), median, mean, stddev);
  }
  if (!raw_csv.empty()) write_file(raw_csv, csv);
  return 0;
}

int run_oracle_check(const std::string& map_path, const CommonOptions& opt, int seed_count) {
  map::MapData m = map::load_map_file(map_path);
  // Rebuild the per-zone models through a throwaway analysis, then compare
  // the solver against exhaustive enumeration for each tractable model.
  region::AnalysisParams params = params_of(opt);
  solver::SolverConfig base_cfg = config_of(opt);
  base_cfg.deterministic = true;

  region::AnalysisResult r = region::analyze(m, objective_of(opt), base_cfg, params);
  int checked = 0, skipped = 0;
  bool all_ok = true;
  for (const region::ZoneOutput& zo : r.zones) {
    if (zo.kind != zone::ZoneKind::needs_split) continue;
    geom::Polygon enriched = sep::enrich_contour(zo.zone.contour, params.max_edge);
    for (sep::Objective obj :
         {sep::Objective::min_separation_length, sep::Objective::least_squares_areas}) {
      sep::EfopModel model;
      try {
        model = sep::build_model(zo.zone, enriched, m, obj);
      } catch (const sep::model_too_small_error& e) {
        std::printf("zone %d: %s\n", zo.zone.id, e.what());
        continue;
      }
      long long combos = solver::combination_count(static_cast<int>(model.candidates.size()),
                                                   model.required_selected,
                                                   solver::kBruteForceGuard);
      if (combos > solver::kBruteForceGuard) {
        std::printf("zone %d (%s): skipped, C(%zu,%d) exceeds the brute-force guard\n",
                    zo.zone.id, region::to_string(obj), model.candidates.size(),
                    model.required_selected);
        ++skipped;
        continue;
      }
      solver::Solution oracle = solver::brute_force_solve(model, zo.zone);
      int matches = 0, feasible = 0, within10 = 0;
      for (int s = 0; s < seed_count; ++s) {
        solver::SolverConfig cfg = base_cfg;
        cfg.seed = opt.seed + static_cast<std::uint64_t>(s);
        solver::Solution sol = solver::solve(model, zo.zone, cfg);
        if (!oracle.feasible) {
          if (!sol.feasible) ++matches, ++feasible, ++within10;
          continue;
        }
        if (!sol.feasible) continue;
        ++feasible;
        double tol = 1e-9 * std::max(1.0, std::abs(oracle.objective_value));
        if (std::abs(sol.objective_value - oracle.objective_value) <= tol) ++matches;
        if (sol.objective_value <= oracle.objective_value * 1.10 + tol) ++within10;
      }
      ++checked;
      bool ok = matches >= (seed_count * 95 + 99) / 100 && within10 == seed_count;
      all_ok = all_ok && ok;
      std::printf(
          "zone %d (%s): %d vars, C=%lld, oracle %s obj %.4f | solver: feasible %d/%d, optimum "
          "%d/%d, within 10%% %d/%d %s\n",
          zo.zone.id, region::to_string(obj), static_cast<int>(model.candidates.size()), combos,
          oracle.feasible ? "feasible" : "infeasible", oracle.objective_value, feasible,
          seed_count, matches, seed_count, within10, seed_count, ok ? "[ok]" : "[FAIL]");
    }
  }
  std::printf("oracle check: %d model(s) checked, %d skipped, %s\n", checked, skipped,
              all_ok ? "all ok" : "MISMATCH");
  return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"terracut - region and choke-point analysis for grid RTS maps"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string map_path, dir_path, json_out, svg_out, raw_csv;
  int repetitions = 5;
  int seed_count = 100;

  CLI::App* analyze = app.add_subcommand("analyze", "analyze one map");
  analyze->add_option("map", map_path, "map file (.txt ascii or .json)")->required();
  add_common_flags(analyze, opt);
  analyze->add_option("--json", json_out, "write result JSON here");
  analyze->add_option("--svg", svg_out, "write figure SVG here");

  CLI::App* bench = app.add_subcommand("bench", "time a corpus directory");
  bench->add_option("dir", dir_path, "directory of maps")->required();
  add_common_flags(bench, opt);
  bench->add_option("--repetitions", repetitions, "runs per map");
  bench->add_option("--raw-csv", raw_csv, "write raw samples (map,rep,stage,ms)");

  CLI::App* oracle = app.add_subcommand("oracle-check", "solver vs exhaustive optimum");
  oracle->add_option("map", map_path, "map file")->required();
  add_common_flags(oracle, opt);
  oracle->add_option("--seeds", seed_count, "number of seeded runs per model");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) return run_analyze(map_path, opt, json_out, svg_out);
    if (app.got_subcommand(bench)) return run_bench(dir_path, opt, repetitions, raw_csv);
    if (app.got_subcommand(oracle)) return run_oracle_check(map_path, opt, seed_count);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
