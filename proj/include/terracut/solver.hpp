#pragma once

#include "terracut/separation.hpp"
#include "terracut/zoning.hpp"

#include <cstdint>
#include <vector>

namespace terracut::solver {

using sep::EfopModel;
using sep::Objective;

// Always holds exactly required_selected candidate ids (1-based, sorted):
// the search swaps members in and out, it never changes the count.
struct Assignment {
  std::vector<int> selected;
};

struct SolverConfig {
  int base_timeout_ms_per_cluster = 100;
  int max_retries_with_doubling = 2;
  std::uint64_t seed = 0;
  double plateau_walk_probability = 0.1;
  int stall_restart_iterations = 500;
  // Deterministic mode replaces the wall clock with an iteration budget so
  // runs are reproducible across machines.
  bool deterministic = false;
  int iterations_per_100ms = 20000;
};

struct Solution {
  Assignment assignment;
  int constraint_error = 0;  // f_cross + f_clust of the returned assignment
  double objective_value = 0;
  bool feasible = false;
  double wall_time_ms = 0;
  int retries_used = 0;
  long long iterations = 0;
  std::vector<double> attempt_ms;  // wall time of each attempt
  std::string diagnostic;
};

struct instance_too_large_error : std::runtime_error {
  explicit instance_too_large_error(const std::string& what) : std::runtime_error(what) {}
};

// Number of selected pairs whose segments properly cross.
int eval_f_cross(const Assignment& a, const EfopModel& model);

// Splits the zone polygon by the selected chords (restricted to the maximal
// non-crossing prefix by candidate id when crossings are present), locates
// each cluster centroid, and returns
//   max(0, max clusters in one region - 1) + number of empty regions.
int eval_f_clust(const Assignment& a, const EfopModel& model, const zone::Zone& zone);

// min_separation_length: sum of selected lengths. least_squares_areas: sum
// of squared deviations of the region areas from their mean.
double eval_objective(const Assignment& a, const EfopModel& model, const zone::Zone& zone);

// Local search in permutation mode within the n x base timeout budget,
// doubling and relaunching up to max_retries_with_doubling times if no
// zero-error assignment shows up.
Solution solve(const EfopModel& model, const zone::Zone& zone, const SolverConfig& config);

// The solver's incremental evaluation, driven by the model's precomputed
// side tables. Must agree with the eval_* functions above; exposed so tests
// can assert exactly that.
struct FastEval {
  int f_cross = 0;
  int f_clust = 0;
  double objective = 0;
};
FastEval eval_fast(const Assignment& a, const EfopModel& model);

// Exhaustive oracle over all size-(n-1) subsets; guarded to 200,000
// combinations. Builds its side tables from polygon splits rather than the
// model's precomputed ones.
Solution brute_force_solve(const EfopModel& model, const zone::Zone& zone);

// C(k, r) with saturation; used for the oracle guard.
long long combination_count(int k, int r, long long cap);

// Face index holding the cluster: centroid point-in-polygon first, then
// majority of member tiles for boundary degeneracies, ties to the lower
// face index.
int locate_cluster_region(const zone::ResourceCluster& cluster,
                          const std::vector<geom::Polygon>& faces);

constexpr long long kBruteForceGuard = 200000;

}  // namespace terracut::solver
