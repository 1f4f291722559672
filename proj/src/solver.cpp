#include "terracut/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <climits>
#include <cmath>
#include <random>

namespace terracut::solver {

using geom::Point;
using geom::Rat;
using geom::Segment;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// mt19937_64's raw output sequence is pinned by the standard; the bounded
// draws below avoid std::uniform_int_distribution, whose mapping is not.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  std::size_t below(std::size_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = gen();
    } while (v >= limit);
    return static_cast<std::size_t>(v % n);
  }

  double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
};

Segment candidate_segment(const EfopModel& model, int idx0) {
  return Segment(model.candidates[idx0].a, model.candidates[idx0].b);
}

// Maximal prefix by ascending candidate order that stays pairwise
// non-crossing; `crosses` answers for 0-based candidate indices.
template <typename CrossFn>
std::vector<int> noncrossing_prefix(const std::vector<int>& sorted0, CrossFn crosses) {
  std::vector<int> prefix;
  for (int id : sorted0) {
    bool ok = true;
    for (int p : prefix)
      if (crosses(id, p)) {
        ok = false;
        break;
      }
    if (ok) prefix.push_back(id);
  }
  return prefix;
}

std::vector<int> to_indices(const Assignment& a) {
  std::vector<int> sel;
  sel.reserve(a.selected.size());
  for (int id : a.selected) sel.push_back(id - 1);
  std::sort(sel.begin(), sel.end());
  return sel;
}

// ---------------------------------------------------------------------------
// Reference evaluation: splits the polygon for real and point-locates every
// centroid. The solver's incremental path and the brute-force oracle are
// checked against this.

struct FaceCounts {
  std::vector<int> per_face;
  int max_count = 0;
  int empty_faces = 0;
};

}  // namespace

int locate_cluster_region(const zone::ResourceCluster& cluster,
                          const std::vector<geom::Polygon>& faces) {
  for (std::size_t f = 0; f < faces.size(); ++f)
    if (geom::point_in_polygon(cluster.centroid, faces[f]) == geom::PointLocation::inside)
      return static_cast<int>(f);
  // Centroid on a chord or inside a hole: majority of member tiles, ties to
  // the lower face index.
  int best = -1, best_count = 0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    int count = 0;
    for (const map::Resource& r : cluster.members) {
      Point center(Rat(2 * r.x + 1, 2), Rat(2 * r.y + 1, 2));
      if (geom::point_in_polygon(center, faces[f]) == geom::PointLocation::inside) ++count;
    }
    if (count > best_count) {
      best_count = count;
      best = static_cast<int>(f);
    }
  }
  if (best >= 0) return best;
  for (std::size_t f = 0; f < faces.size(); ++f)
    if (geom::point_in_ring(cluster.centroid, faces[f].outer) != geom::PointLocation::outside)
      return static_cast<int>(f);
  return 0;
}

namespace {

std::vector<geom::Polygon> reference_faces(const Assignment& a, const EfopModel& model) {
  std::vector<int> sel = to_indices(a);
  auto crosses = [&](int i, int j) {
    return geom::segments_properly_cross(candidate_segment(model, i),
                                         candidate_segment(model, j));
  };
  std::vector<int> prefix = noncrossing_prefix(sel, crosses);
  if (prefix.empty()) return {model.zone_polygon};
  std::vector<Segment> chords;
  chords.reserve(prefix.size());
  for (int i : prefix) chords.push_back(candidate_segment(model, i));
  return geom::split_by_chords(model.zone_polygon, chords).faces;
}

FaceCounts count_clusters(const std::vector<geom::Polygon>& faces, const zone::Zone& zone) {
  FaceCounts fc;
  fc.per_face.assign(faces.size(), 0);
  for (const zone::ResourceCluster& c : zone.clusters) fc.per_face[locate_cluster_region(c, faces)]++;
  for (int n : fc.per_face) {
    fc.max_count = std::max(fc.max_count, n);
    if (n == 0) fc.empty_faces++;
  }
  return fc;
}

// ---------------------------------------------------------------------------
// Incremental evaluation used inside the search loop. Faces of a set of
// pairwise non-crossing chords anchored on the outer ring form a tree, so a
// face is identified by its side pattern over the chords; sides reduce to
// ring-index interval tests and areas to precomputed one-chord areas.

struct EvalOut {
  int cross = 0;
  int clust = 0;
  double objective = 0;
};

template <typename Tables>
EvalOut eval_with_tables(const std::vector<int>& sel0, const EfopModel& model, const Tables& t) {
  EvalOut out;
  const int m_sel = static_cast<int>(sel0.size());
  int prefix[32];
  int m = 0;
  for (int a = 0; a < m_sel; ++a) {
    for (int b = 0; b < a; ++b)
      if (t.crosses(sel0[a], sel0[b])) out.cross++;
    bool ok = true;
    for (int p = 0; p < m; ++p)
      if (t.crosses(sel0[a], prefix[p])) ok = false;
    if (ok) prefix[m++] = sel0[a];
  }

  // Two candidate signatures per chord: its low-side and high-side faces.
  std::uint32_t sig_low[32];
  std::uint32_t face_sigs[64];
  int nf = 0;
  if (m == 0) {
    face_sigs[nf++] = 0;
  } else {
    for (int i = 0; i < m; ++i) {
      // Bit j: is chord i (hence both faces flanking it) on the low side of
      // chord j's own split?
      std::uint32_t base = 0;
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        if (t.side_low(prefix[i], prefix[j])) base |= 1u << j;
      }
      sig_low[i] = base | (1u << i);
      face_sigs[nf++] = base | (1u << i);
      face_sigs[nf++] = base & ~(1u << i);
    }
    std::sort(face_sigs, face_sigs + nf);
    nf = static_cast<int>(std::unique(face_sigs, face_sigs + nf) - face_sigs);
  }
  assert(nf == m + 1);

  int counts[33] = {0};
  for (int c = 0; c < model.n_clusters; ++c) {
    std::uint32_t sig = 0;
    for (int j = 0; j < m; ++j)
      if (t.cluster_low(prefix[j], c)) sig |= 1u << j;
    const std::uint32_t* it = std::lower_bound(face_sigs, face_sigs + nf, sig);
    assert(it != face_sigs + nf && *it == sig);
    if (it == face_sigs + nf || *it != sig) it = face_sigs;
    counts[it - face_sigs]++;
  }
  int max_count = 0, empty = 0;
  for (int f = 0; f < nf; ++f) {
    max_count = std::max(max_count, counts[f]);
    if (counts[f] == 0) empty++;
  }
  out.clust = std::max(0, max_count - 1) + empty;

  if (model.objective == Objective::min_separation_length) {
    double sum = 0;
    for (int i : sel0) sum += model.candidates[i].length;
    out.objective = sum;
  } else {
    const double total = model.total_area;
    const double mean = total / static_cast<double>(m + 1);
    double obj = 0;
    for (int f = 0; f < nf; ++f) {
      const std::uint32_t sig = face_sigs[f];
      double area = total;
      for (int i = 0; i < m; ++i) {
        if (((sig ^ sig_low[i]) & ~(1u << i)) != 0) continue;  // not adjacent
        area -= (sig >> i & 1u) ? t.area_high(prefix[i]) : t.area_low(prefix[i]);
      }
      double d = mean - area;
      obj += d * d;
    }
    out.objective = obj;
  }
  return out;
}

struct ModelTables {
  const EfopModel* model;
  explicit ModelTables(const EfopModel& m) : model(&m) {}

  bool side_low(int j, int i) const {
    const sep::Separation& a = model->candidates[j];
    const sep::Separation& b = model->candidates[i];
    int e = (a.ring_u == b.ring_u || a.ring_u == b.ring_v) ? a.ring_v : a.ring_u;
    return b.ring_u < e && e < b.ring_v;
  }
  bool crosses(int i, int j) const { return model->crossings[i][j]; }
  bool cluster_low(int i, int cluster) const {
    return (model->cluster_side_low[i] >> cluster) & 1u;
  }
  double area_low(int i) const { return model->area_low[i]; }
  double area_high(int i) const { return model->area_high[i]; }
};

}  // namespace

FastEval eval_fast(const Assignment& a, const EfopModel& model) {
  ModelTables tables(model);
  EvalOut out = eval_with_tables(to_indices(a), model, tables);
  return FastEval{out.cross, out.clust, out.objective};
}

int eval_f_cross(const Assignment& a, const EfopModel& model) {
  std::vector<int> sel = to_indices(a);
  int count = 0;
  for (std::size_t i = 0; i < sel.size(); ++i)
    for (std::size_t j = i + 1; j < sel.size(); ++j)
      if (geom::segments_properly_cross(candidate_segment(model, sel[i]),
                                        candidate_segment(model, sel[j])))
        count++;
  return count;
}

int eval_f_clust(const Assignment& a, const EfopModel& model, const zone::Zone& zone) {
  std::vector<geom::Polygon> faces = reference_faces(a, model);
  FaceCounts fc = count_clusters(faces, zone);
  return std::max(0, fc.max_count - 1) + fc.empty_faces;
}

double eval_objective(const Assignment& a, const EfopModel& model, const zone::Zone& zone) {
  (void)zone;  // clusters do not enter either objective
  if (model.objective == Objective::min_separation_length) {
    std::vector<int> sel = to_indices(a);
    double sum = 0;
    for (int i : sel) sum += model.candidates[i].length;
    return sum;
  }
  std::vector<geom::Polygon> faces = reference_faces(a, model);
  double mean = 0;
  std::vector<double> areas;
  areas.reserve(faces.size());
  for (const geom::Polygon& f : faces) areas.push_back(geom::to_double(geom::polygon_area(f)));
  for (double x : areas) mean += x;
  mean /= static_cast<double>(areas.size());
  double obj = 0;
  for (double x : areas) {
    double d = mean - x;
    obj += d * d;
  }
  return obj;
}

namespace {

Assignment to_assignment(const std::vector<int>& sel0) {
  Assignment a;
  a.selected.reserve(sel0.size());
  for (int i : sel0) a.selected.push_back(i + 1);
  std::sort(a.selected.begin(), a.selected.end());
  return a;
}

struct LexValue {
  int error = INT_MAX;
  double objective = 0;
  bool better_than(const LexValue& o) const {
    if (error != o.error) return error < o.error;
    return objective < o.objective;
  }
};

}  // namespace

Solution solve(const EfopModel& model, const zone::Zone& zone, const SolverConfig& config) {
  Solution sol;
  const int k = static_cast<int>(model.candidates.size());
  const int need = model.required_selected;
  const auto t_start = Clock::now();

  if (k < need || need <= 0) {
    sol.feasible = false;
    sol.diagnostic = "model too small: " + std::to_string(k) + " candidates for " +
                     std::to_string(need) + " separations";
    return sol;
  }

  Rng rng(config.seed);
  ModelTables tables(model);
  auto eval = [&](const std::vector<int>& sel0) { return eval_with_tables(sel0, model, tables); };

  std::vector<char> selected_flag(k, 0);
  auto random_assignment = [&]() {
    std::fill(selected_flag.begin(), selected_flag.end(), 0);
    std::vector<int> sel;
    while (static_cast<int>(sel.size()) < need) {
      int c = static_cast<int>(rng.below(k));
      if (!selected_flag[c]) {
        selected_flag[c] = 1;
        sel.push_back(c);
      }
    }
    std::sort(sel.begin(), sel.end());
    return sel;
  };

  std::vector<int> best_sel;
  LexValue best_val;
  std::vector<int> verified_sel;
  double verified_obj = 0;
  bool have_verified = false;

  auto consider_verified = [&](const std::vector<int>& sel0, const EvalOut& value) {
    // Cross-check with the reference evaluator before we trust a zero.
    Assignment a = to_assignment(sel0);
    if (eval_f_cross(a, model) != 0 || eval_f_clust(a, model, zone) != 0) return;
    double obj = eval_objective(a, model, zone);
    (void)value;
    if (!have_verified || obj < verified_obj) {
      have_verified = true;
      verified_obj = obj;
      verified_sel = sel0;
    }
  };

  long long total_iterations = 0;
  int attempts_run = 0;
  const int sample_target = std::min(k, 64);

  for (int attempt = 0; attempt <= config.max_retries_with_doubling; ++attempt) {
    attempts_run = attempt + 1;
    const double t_ms = static_cast<double>(model.n_clusters) *
                        config.base_timeout_ms_per_cluster * static_cast<double>(1 << attempt);
    const long long iter_budget =
        config.deterministic
            ? static_cast<long long>(t_ms / 100.0 * config.iterations_per_100ms)
            : LLONG_MAX;
    const auto attempt_start = Clock::now();
    const auto deadline = attempt_start + std::chrono::duration_cast<Clock::duration>(
                                              std::chrono::duration<double, std::milli>(t_ms));

    std::vector<int> current = random_assignment();
    EvalOut cur = eval(current);
    LexValue cur_val{cur.cross + cur.clust, cur.objective};
    if (cur_val.better_than(best_val)) {
      best_val = cur_val;
      best_sel = current;
      if (cur_val.error == 0) consider_verified(current, cur);
    }

    long long attempt_iters = 0;
    int stall = 0;
    std::vector<int> sample;
    std::vector<int> swapped(current.size());
    std::vector<int> without;
    without.reserve(current.size());

    while (true) {
      if (config.deterministic) {
        if (attempt_iters >= iter_budget) break;
      } else if (Clock::now() >= deadline) {
        break;
      }
      ++attempt_iters;
      ++total_iterations;

      if (k == need) break;  // nothing to swap

      // Selected candidate with the largest error contribution: crossings it
      // joins plus the f_clust drop its removal would buy.
      int worst_pos = 0;
      {
        int best_score = -1;
        int ties[32];
        int tie_count = 0;
        for (std::size_t p = 0; p < current.size(); ++p) {
          int crossings_here = 0;
          for (std::size_t q = 0; q < current.size(); ++q)
            if (q != p && model.crossings[current[p]][current[q]]) crossings_here++;
          without.clear();
          for (std::size_t q = 0; q < current.size(); ++q)
            if (q != p) without.push_back(current[q]);
          EvalOut ev = eval(without);
          int score = crossings_here + std::max(0, cur.clust - ev.clust);
          if (score > best_score) {
            best_score = score;
            tie_count = 0;
          }
          if (score == best_score && tie_count < 32) ties[tie_count++] = static_cast<int>(p);
        }
        worst_pos = ties[tie_count == 1 ? 0 : rng.below(tie_count)];
      }

      // Seeded sample of unselected candidates.
      sample.clear();
      const int pool = k - need;
      if (pool <= sample_target) {
        for (int c = 0; c < k; ++c)
          if (!selected_flag[c]) sample.push_back(c);
      } else {
        while (static_cast<int>(sample.size()) < sample_target) {
          int c = static_cast<int>(rng.below(k));
          if (selected_flag[c]) continue;
          if (std::find(sample.begin(), sample.end(), c) != sample.end()) continue;
          sample.push_back(c);
        }
      }

      int chosen = -1;
      LexValue chosen_val;
      EvalOut chosen_out;
      int equal_err[64];
      int equal_count = 0;
      for (int cand : sample) {
        swapped.assign(current.begin(), current.end());
        swapped[worst_pos] = cand;
        std::sort(swapped.begin(), swapped.end());
        EvalOut ev = eval(swapped);
        LexValue val{ev.cross + ev.clust, ev.objective};
        if (chosen < 0 || val.better_than(chosen_val)) {
          chosen = cand;
          chosen_val = val;
          chosen_out = ev;
        }
        if (val.error == cur_val.error && equal_count < 64) equal_err[equal_count++] = cand;
      }

      bool moved = false;
      if (chosen >= 0 && chosen_val.better_than(cur_val)) {
        selected_flag[current[worst_pos]] = 0;
        selected_flag[chosen] = 1;
        current[worst_pos] = chosen;
        std::sort(current.begin(), current.end());
        cur = chosen_out;
        cur_val = chosen_val;
        moved = true;
      } else if (equal_count > 0 && rng.unit() < config.plateau_walk_probability) {
        int cand = equal_err[equal_count == 1 ? 0 : rng.below(equal_count)];
        selected_flag[current[worst_pos]] = 0;
        selected_flag[cand] = 1;
        current[worst_pos] = cand;
        std::sort(current.begin(), current.end());
        cur = eval(current);
        cur_val = LexValue{cur.cross + cur.clust, cur.objective};
        moved = true;
      }
      (void)moved;

      if (cur_val.better_than(best_val)) {
        best_val = cur_val;
        best_sel = current;
        stall = 0;
        if (cur_val.error == 0) consider_verified(current, cur);
      } else {
        ++stall;
      }

      if (stall >= config.stall_restart_iterations) {
        current = random_assignment();
        cur = eval(current);
        cur_val = LexValue{cur.cross + cur.clust, cur.objective};
        stall = 0;
        if (cur_val.better_than(best_val)) {
          best_val = cur_val;
          best_sel = current;
          if (cur_val.error == 0) consider_verified(current, cur);
        }
      }
    }

    sol.attempt_ms.push_back(ms_since(attempt_start));
    if (have_verified) break;
  }

  const std::vector<int>& final_sel = have_verified ? verified_sel : best_sel;
  sol.assignment = to_assignment(final_sel);
  int ref_cross = eval_f_cross(sol.assignment, model);
  int ref_clust = eval_f_clust(sol.assignment, model, zone);
  sol.constraint_error = ref_cross + ref_clust;
  sol.objective_value = eval_objective(sol.assignment, model, zone);
  sol.feasible = sol.constraint_error == 0;
  sol.retries_used = attempts_run - 1;
  sol.iterations = total_iterations;
  sol.wall_time_ms = config.deterministic
                         ? static_cast<double>(total_iterations) * 100.0 /
                               static_cast<double>(config.iterations_per_100ms)
                         : ms_since(t_start);
  if (!sol.feasible)
    sol.diagnostic = "no zero-error assignment within " + std::to_string(attempts_run) +
                     " attempt(s)";
  return sol;
}

long long combination_count(int k, int r, long long cap) {
  if (r < 0 || r > k) return 0;
  r = std::min(r, k - r);
  long long result = 1;
  for (int i = 1; i <= r; ++i) {
    result = result * (k - r + i) / i;  // exact at every step
    if (result > cap) return cap + 1;
  }
  return result;
}

namespace {

// Side and area tables derived from actual polygon splits; independent of
// the model's ring-index shortcuts.
struct GeometricTables {
  const EfopModel* model;
  std::vector<char> cross_table;         // k*k, built only when needed
  std::vector<char> side_table;          // chord j inside face0 of chord i
  std::vector<std::uint32_t> cluster0;   // per chord, bit per cluster in face0
  std::vector<double> a0, a1;
  bool pairwise = false;
  int k = 0;

  GeometricTables(const EfopModel& m, const zone::Zone& zone, bool need_pairwise)
      : model(&m), pairwise(need_pairwise), k(static_cast<int>(m.candidates.size())) {
    std::vector<geom::Polygon> face0(k);
    cluster0.assign(k, 0);
    a0.resize(k);
    a1.resize(k);
    for (int i = 0; i < k; ++i) {
      geom::ChordSplit split =
          geom::split_by_chords(m.zone_polygon, {candidate_segment(m, i)});
      a0[i] = geom::to_double(geom::polygon_area(split.faces[0]));
      a1[i] = geom::to_double(geom::polygon_area(split.faces[1]));
      for (int c = 0; c < m.n_clusters; ++c) {
        const Point& centroid = zone.clusters[c].centroid;
        geom::PointLocation loc = geom::point_in_polygon(centroid, split.faces[0]);
        bool in0;
        if (loc == geom::PointLocation::outside &&
            geom::point_in_polygon(centroid, split.faces[1]) == geom::PointLocation::outside)
          in0 = geom::point_in_ring(centroid, split.faces[0].outer) != geom::PointLocation::outside;
        else
          in0 = loc != geom::PointLocation::outside;
        if (in0) cluster0[i] |= 1u << c;
      }
      face0[i] = std::move(split.faces[0]);
    }
    if (pairwise) {
      cross_table.assign(static_cast<std::size_t>(k) * k, 0);
      side_table.assign(static_cast<std::size_t>(k) * k, 0);
      for (int i = 0; i < k; ++i) {
        Segment si = candidate_segment(m, i);
        for (int j = 0; j < k; ++j) {
          if (i == j) continue;
          Segment sj = candidate_segment(m, j);
          if (geom::segments_properly_cross(si, sj)) {
            cross_table[static_cast<std::size_t>(i) * k + j] = 1;
            continue;
          }
          if (geom::point_in_polygon(sj.midpoint(), face0[i]) != geom::PointLocation::outside)
            side_table[static_cast<std::size_t>(j) * k + i] = 1;
        }
      }
    }
  }

  bool side_low(int j, int i) const {
    return side_table[static_cast<std::size_t>(j) * k + i] != 0;
  }
  bool crosses(int i, int j) const {
    if (!pairwise) return false;
    return cross_table[static_cast<std::size_t>(i) * k + j] != 0;
  }
  bool cluster_low(int i, int cluster) const { return (cluster0[i] >> cluster) & 1u; }
  double area_low(int i) const { return a0[i]; }
  double area_high(int i) const { return a1[i]; }
};

}  // namespace

Solution brute_force_solve(const EfopModel& model, const zone::Zone& zone) {
  const int k = static_cast<int>(model.candidates.size());
  const int need = model.required_selected;
  long long combos = combination_count(k, need, kBruteForceGuard);
  if (combos > kBruteForceGuard)
    throw instance_too_large_error("brute force guard exceeded: C(" + std::to_string(k) + "," +
                                   std::to_string(need) + ") > " +
                                   std::to_string(kBruteForceGuard));

  const auto t0 = Clock::now();
  GeometricTables tables(model, zone, need >= 2);

  std::vector<int> combo(need);
  for (int i = 0; i < need; ++i) combo[i] = i;

  std::vector<int> best_sel;
  LexValue best_val;
  long long evaluated = 0;
  bool done = k < need;
  while (!done) {
    EvalOut ev = eval_with_tables(combo, model, tables);
    ++evaluated;
    LexValue val{ev.cross + ev.clust, ev.objective};
    if (val.better_than(best_val)) {
      best_val = val;
      best_sel = combo;
    }
    // next combination in lexicographic order
    int pos = need - 1;
    while (pos >= 0 && combo[pos] == k - need + pos) --pos;
    if (pos < 0) break;
    ++combo[pos];
    for (int q = pos + 1; q < need; ++q) combo[q] = combo[q - 1] + 1;
  }

  Solution sol;
  sol.assignment = to_assignment(best_sel);
  sol.constraint_error = best_val.error;
  sol.objective_value = best_val.objective;
  sol.feasible = best_val.error == 0;
  sol.iterations = evaluated;
  sol.wall_time_ms = ms_since(t0);
  if (!sol.feasible) sol.diagnostic = "exhaustive search found no zero-error assignment";
  return sol;
}

}  // namespace terracut::solver
