#pragma once

// Experiment orchestration: seeded replicates with snapshot and metrics
// export, and the matched-budget SSA versus BFOA comparison.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swarmsearch/bfoa.hpp"
#include "swarmsearch/config.hpp"
#include "swarmsearch/io.hpp"
#include "swarmsearch/metrics.hpp"
#include "swarmsearch/ssa.hpp"

namespace swarmsearch {

struct ReplicateResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  RunTrace trace;
  RunSummary summary;
  std::vector<CellIndex> targets;  // grid extremum per phase
  std::filesystem::path dir;       // empty when nothing was written
};

struct ExperimentResult {
  std::vector<ReplicateResult> replicates;
};

inline nlohmann::json summary_to_json(const RunSummary& s) {
  nlohmann::json phases = nlohmann::json::array();
  for (const PhaseSummary& p : s.phases) {
    nlohmann::json pj{{"phase", p.phase},
                      {"t_start", p.t_start},
                      {"t_end", p.t_end},
                      {"final_capture_ratio", p.final_capture_ratio},
                      {"best_so_far", p.best_so_far}};
    if (p.adaptation) {
      const AdaptationReport& a = *p.adaptation;
      pj["adaptation"] = {{"switch_step", a.switch_step},
                          {"threshold", a.threshold},
                          {"steps_to_threshold", a.steps_to_threshold ? nlohmann::json(*a.steps_to_threshold)
                                                                      : nlohmann::json("inf")}};
    }
    phases.push_back(pj);
  }
  return {{"phases", phases}, {"wall_seconds", s.wall_seconds}};
}

namespace detail {

inline std::filesystem::path replicate_dir(const std::filesystem::path& root, const ExperimentConfig& c,
                                           std::size_t r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "rep_%02zu", r);
  return root / c.name / buf;
}

}  // namespace detail

// Runs one replicate with seed = config.seed + index. When out_root is
// non-empty, snapshots, metrics.csv and summary.json go to
// out_root/<name>/rep_<index>/; a failed replicate leaves no directory.
inline ReplicateResult run_replicate(const ExperimentConfig& cfg, std::size_t index,
                                     const std::filesystem::path& out_root = {}) {
  validate(cfg);
  ReplicateResult rep;
  rep.index = index;
  rep.seed = cfg.seed + index;
  const std::set<long> snaps(cfg.snapshot_steps.begin(), cfg.snapshot_steps.end());
  const bool writing = !out_root.empty();
  std::vector<std::string> files;
  if (writing) {
    rep.dir = detail::replicate_dir(out_root, cfg, index);
    std::error_code ec;
    std::filesystem::remove_all(rep.dir, ec);
    std::filesystem::create_directories(rep.dir, ec);
    if (ec) throw IoError(rep.dir, "cannot create directory: " + ec.message());
  }
  auto emit = [&](const std::string& name, const GrayImage& img) {
    write_file(rep.dir / name, encode_pgm(img));
    files.push_back(name);
  };

  try {
    const auto start = std::chrono::steady_clock::now();
    if (cfg.algorithm == Algorithm::SSA) {
      SsaMetricsRecorder recorder(cfg.radius());
      std::optional<std::size_t> last_phase;
      run_ssa(cfg.ssa_config(rep.seed), [&](const SsaSnapshot& s) {
        recorder(s);
        if (!last_phase || *last_phase != s.phase) {
          last_phase = s.phase;
          rep.targets.push_back(recorder.target());
        }
        if (writing && snaps.count(s.t)) {
          emit(snapshot_name("pheromone", s.t), render_pheromone(s.field));
          const std::vector<CellIndex> cells = s.colony.cells();
          emit(snapshot_name("agents", s.t), render_agents(s.colony.lattice, cells));
        }
      });
      rep.trace = std::move(recorder.trace());
    } else {
      const Phase& ph = cfg.schedule.phases.front();
      const Habitat habitat = discretize(ph.function, cfg.grid.width, cfg.grid.height);
      rep.targets.push_back(grid_extremum(habitat, ph.objective));
      BfoaMetricsRecorder recorder(cfg.radius());
      run_bfoa(habitat, ph.objective, cfg.bfoa, rep.seed, [&](const BfoaSnapshot& s) {
        recorder(s);
        if (writing && snaps.count(s.t)) {
          const std::vector<CellIndex> cells = bacteria_cells(s.habitat, s.population);
          emit(snapshot_name("agents", s.t), render_agents(s.habitat.lattice(), cells));
        }
      });
      rep.trace = std::move(recorder.trace());
    }
    rep.trace.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.summary = summarize_run(rep.trace, cfg.adaptation_threshold);

    if (writing) {
      write_file(rep.dir / "metrics.csv", metrics_csv(rep.trace.steps));
      files.push_back("metrics.csv");
      nlohmann::json summary{{"config", to_json(cfg)},
                             {"replicate", index},
                             {"seed", rep.seed},
                             {"target_cells", rep.targets},
                             {"summary", summary_to_json(rep.summary)},
                             {"files", files},
                             {"complete", true}};
      write_file(rep.dir / "summary.json", summary.dump(2) + "\n");
    }
  } catch (...) {
    if (writing) {
      std::error_code ec;
      std::filesystem::remove_all(rep.dir, ec);
    }
    throw;
  }
  return rep;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_root = {}) {
  validate(cfg);
  ExperimentResult result;
  for (std::size_t r = 0; r < cfg.replicates; ++r) result.replicates.push_back(run_replicate(cfg, r, out_root));
  return result;
}

// ---------------------------------------------------------------- comparison

struct CompareOptions {
  // Tolerance in gray levels of the habitat's altitude range (range / 255
  // per level). Ignored when delta is given explicitly.
  double delta_levels = 2.0;
  std::optional<double> delta;
};

struct PhaseTiming {
  std::size_t phase = 0;
  long t_start = 0;
  double optimum = 0.0;
  double delta = 0.0;
  std::optional<long> time_to_delta;  // nullopt: never within delta
};

struct ComparisonRow {
  Algorithm algorithm = Algorithm::SSA;
  std::uint64_t seed = 0;
  std::optional<long> time_to_delta;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;                        // first-phase timing, one per algorithm per seed
  std::vector<std::vector<PhaseTiming>> ssa_adaptation;   // per seed, one per SSA phase
  std::vector<std::vector<PhaseTiming>> bfoa_adaptation;  // per seed, one per BFOA phase after the first
  double delta = 0.0;
  std::optional<double> ssa_median;  // nullopt: median is infinite
  std::optional<double> bfoa_median;
  std::size_t ssa_wins = 0;
  std::size_t bfoa_wins = 0;
  std::size_t ties = 0;
};

inline std::optional<double> median_time(std::vector<std::optional<long>> values) {
  if (values.empty()) return std::nullopt;
  auto key = [](const std::optional<long>& v) {
    return v ? static_cast<double>(*v) : std::numeric_limits<double>::infinity();
  };
  std::sort(values.begin(), values.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  const std::size_t n = values.size();
  const double m = n % 2 ? key(values[n / 2]) : 0.5 * (key(values[n / 2 - 1]) + key(values[n / 2]));
  if (!std::isfinite(m)) return std::nullopt;
  return m;
}

inline double resolve_delta(const Habitat& h, const CompareOptions& opt) {
  return opt.delta ? *opt.delta : opt.delta_levels * (h.z_hi() - h.z_lo()) / 255.0;
}

inline std::vector<PhaseTiming> phase_timings(const ExperimentConfig& cfg, const RunTrace& trace,
                                              const CompareOptions& opt) {
  std::vector<PhaseTiming> out;
  for (std::size_t i = 0; i < cfg.schedule.phases.size(); ++i) {
    const Phase& ph = cfg.schedule.phases[i];
    const Habitat h = discretize(ph.function, cfg.grid.width, cfg.grid.height);
    PhaseTiming pt;
    pt.phase = i;
    pt.t_start = ph.t_start;
    pt.optimum = h.altitude(grid_extremum(h, ph.objective));
    pt.delta = resolve_delta(h, opt);
    std::vector<StepMetrics> slice;
    const long next = i + 1 < cfg.schedule.phases.size() ? cfg.schedule.phases[i + 1].t_start
                                                         : std::numeric_limits<long>::max();
    for (const StepMetrics& m : trace.steps) {
      if (m.t >= ph.t_start && m.t < next) slice.push_back(m);
    }
    pt.time_to_delta = std::isinf(pt.delta) ? std::optional<long>(0)
                                            : time_to_delta(slice, ph.t_start, pt.optimum, pt.delta);
    out.push_back(pt);
  }
  return out;
}

// Runs both algorithms over seeds ssa.seed + r, r < ssa.replicates, on the
// same first-phase habitat with the same step budget.
inline ComparisonReport compare_ssa_bfoa(const ExperimentConfig& ssa, const ExperimentConfig& bfoa,
                                         const CompareOptions& opt = {}) {
  validate(ssa);
  validate(bfoa);
  if (ssa.algorithm != Algorithm::SSA || bfoa.algorithm != Algorithm::BFOA) {
    throw ConfigError("compare needs an SSA config and a BFOA config");
  }
  const Phase& a = ssa.schedule.phases.front();
  const Phase& b = bfoa.schedule.phases.front();
  if (!(ssa.grid == bfoa.grid) || !(a.function == b.function) || a.objective != b.objective) {
    throw ConfigError("compare: SSA and BFOA habitats differ");
  }
  if (ssa.schedule.t_max != bfoa.schedule.t_max) throw ConfigError("compare: step budgets differ");

  ComparisonReport report;
  report.delta = resolve_delta(discretize(a.function, ssa.grid.width, ssa.grid.height), opt);
  std::vector<std::optional<long>> ssa_times;
  std::vector<std::optional<long>> bfoa_times;
  for (std::size_t r = 0; r < ssa.replicates; ++r) {
    ExperimentConfig f = bfoa;
    f.seed = ssa.seed;
    const ReplicateResult rs = run_replicate(ssa, r);
    const ReplicateResult rf = run_replicate(f, r);
    const std::vector<PhaseTiming> ts = phase_timings(ssa, rs.trace, opt);
    const std::vector<PhaseTiming> tf = phase_timings(f, rf.trace, opt);
    report.rows.push_back({Algorithm::SSA, rs.seed, ts.front().time_to_delta});
    report.rows.push_back({Algorithm::BFOA, rf.seed, tf.front().time_to_delta});
    report.ssa_adaptation.push_back(ts);
    report.bfoa_adaptation.emplace_back(tf.begin() + 1, tf.end());
    ssa_times.push_back(ts.front().time_to_delta);
    bfoa_times.push_back(tf.front().time_to_delta);
    constexpr double never = std::numeric_limits<double>::infinity();
    const double ks = ts.front().time_to_delta ? static_cast<double>(*ts.front().time_to_delta) : never;
    const double kf = tf.front().time_to_delta ? static_cast<double>(*tf.front().time_to_delta) : never;
    if (ks < kf) ++report.ssa_wins;
    else if (kf < ks) ++report.bfoa_wins;
    else ++report.ties;
  }
  report.ssa_median = median_time(ssa_times);
  report.bfoa_median = median_time(bfoa_times);
  return report;
}

inline nlohmann::json report_to_json(const ComparisonReport& r) {
  using nlohmann::json;
  auto opt = [](const auto& v) { return v ? json(*v) : json("inf"); };
  auto timings = [&](const std::vector<std::vector<PhaseTiming>>& all) {
    json out = json::array();
    for (const auto& per_seed : all) {
      json seed_rows = json::array();
      for (const PhaseTiming& t : per_seed) {
        seed_rows.push_back({{"phase", t.phase},
                             {"t_start", t.t_start},
                             {"optimum", t.optimum},
                             {"delta", t.delta},
                             {"time_to_delta", opt(t.time_to_delta)}});
      }
      out.push_back(seed_rows);
    }
    return out;
  };
  json rows = json::array();
  for (const ComparisonRow& row : r.rows) {
    rows.push_back({{"algorithm", std::string(to_string(row.algorithm))},
                    {"seed", row.seed},
                    {"time_to_delta", opt(row.time_to_delta)}});
  }
  return {{"delta", r.delta},
          {"rows", rows},
          {"ssa_adaptation", timings(r.ssa_adaptation)},
          {"bfoa_adaptation", timings(r.bfoa_adaptation)},
          {"ssa_median_time_to_delta", opt(r.ssa_median)},
          {"bfoa_median_time_to_delta", opt(r.bfoa_median)},
          {"tally", {{"ssa_wins", r.ssa_wins}, {"bfoa_wins", r.bfoa_wins}, {"ties", r.ties}}}};
}

}  // namespace swarmsearch
