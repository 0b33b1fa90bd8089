#pragma once

// Per-step colony statistics, adaptation speed after schedule switches, and
// per-phase run summaries.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "swarmsearch/bfoa.hpp"
#include "swarmsearch/field.hpp"
#include "swarmsearch/landscape.hpp"
#include "swarmsearch/lattice.hpp"
#include "swarmsearch/ssa.hpp"

namespace swarmsearch {

struct StepMetrics {
  long t = 0;
  std::size_t phase = 0;
  double capture_ratio = 0.0;
  double mean_altitude = 0.0;
  double best_altitude = 0.0;
  double best_so_far = 0.0;
  double pheromone_at_target = 0.0;  // SSA only; 0 for BFOA
  bool operator==(const StepMetrics&) const = default;
};

inline std::size_t toroidal_chebyshev(CellIndex a, CellIndex b, const Lattice& lat) {
  auto axis = [](std::size_t u, std::size_t v, std::size_t n) {
    const std::size_t d = u > v ? u - v : v - u;
    return std::min(d, n - d);
  };
  return std::max(axis(lat.col(a), lat.col(b), lat.width), axis(lat.row(a), lat.row(b), lat.height));
}

// About a tenth of the shorter grid side: 10 on 100 x 100, 3 on 30 x 30.
inline std::size_t default_capture_radius(const Lattice& lat) {
  const auto r = static_cast<std::size_t>(std::lround(0.1 * static_cast<double>(std::min(lat.width, lat.height))));
  return std::max<std::size_t>(r, 1);
}

inline double capture_ratio(std::span<const CellIndex> positions, CellIndex target, std::size_t radius,
                            const Lattice& lat) {
  if (positions.empty()) return 0.0;
  std::size_t inside = 0;
  for (CellIndex c : positions) {
    if (toroidal_chebyshev(c, target, lat) <= radius) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(positions.size());
}

// Share of the total pheromone mass lying within radius of the target.
inline double pheromone_mass_fraction(const PheromoneField& field, CellIndex target, std::size_t radius) {
  const Lattice& lat = field.lattice();
  double near = 0.0;
  double total = 0.0;
  for (CellIndex c = 0; c < field.size(); ++c) {
    total += field[c];
    if (toroidal_chebyshev(c, target, lat) <= radius) near += field[c];
  }
  return total > 0.0 ? near / total : 0.0;
}

struct AdaptationReport {
  long switch_step = 0;
  std::optional<long> steps_to_threshold;  // nullopt: never reached
  double threshold = 0.5;
  bool operator==(const AdaptationReport&) const = default;
};

inline constexpr double kDefaultAdaptationThreshold = 0.5;

inline AdaptationReport adaptation_time(std::span<const StepMetrics> series, long switch_step, double threshold) {
  AdaptationReport rep{switch_step, std::nullopt, threshold};
  for (const StepMetrics& m : series) {
    if (m.t >= switch_step && m.capture_ratio >= threshold) {
      rep.steps_to_threshold = m.t - switch_step;
      break;
    }
  }
  return rep;
}

// Steps after phase_start until best_so_far lies within delta of optimum.
inline std::optional<long> time_to_delta(std::span<const StepMetrics> series, long phase_start, double optimum,
                                         double delta) {
  for (const StepMetrics& m : series) {
    if (m.t >= phase_start && std::fabs(m.best_so_far - optimum) <= delta) return m.t - phase_start;
  }
  return std::nullopt;
}

struct RunTrace {
  std::vector<StepMetrics> steps;
  std::vector<long> phase_starts{0};
  double wall_seconds = 0.0;
};

struct PhaseSummary {
  std::size_t phase = 0;
  long t_start = 0;
  long t_end = 0;
  double final_capture_ratio = 0.0;
  double best_so_far = 0.0;
  std::optional<AdaptationReport> adaptation;  // set for every phase after the first
};

struct RunSummary {
  std::vector<PhaseSummary> phases;
  double wall_seconds = 0.0;
};

inline RunSummary summarize_run(const RunTrace& trace, double threshold = kDefaultAdaptationThreshold) {
  if (trace.steps.empty()) throw std::invalid_argument("cannot summarize an empty trace");
  RunSummary out;
  out.wall_seconds = trace.wall_seconds;
  for (std::size_t i = 0; i < trace.phase_starts.size(); ++i) {
    PhaseSummary ps;
    ps.phase = i;
    ps.t_start = trace.phase_starts[i];
    const long next = i + 1 < trace.phase_starts.size() ? trace.phase_starts[i + 1]
                                                        : std::numeric_limits<long>::max();
    std::vector<StepMetrics> slice;
    for (const StepMetrics& m : trace.steps) {
      if (m.t >= ps.t_start && m.t < next) slice.push_back(m);
    }
    if (slice.empty()) continue;
    ps.t_end = slice.back().t;
    ps.final_capture_ratio = slice.back().capture_ratio;
    ps.best_so_far = slice.back().best_so_far;
    if (i > 0) ps.adaptation = adaptation_time(slice, ps.t_start, threshold);
    out.phases.push_back(ps);
  }
  return out;
}

// Builds StepMetrics rows from SSA snapshots. The target of each phase is
// the grid extremum of its habitat under its objective.
class SsaMetricsRecorder {
public:
  explicit SsaMetricsRecorder(std::optional<std::size_t> radius = std::nullopt) : radius_(radius) {}

  void operator()(const SsaSnapshot& s) {
    if (!current_phase_ || *current_phase_ != s.phase) {
      current_phase_ = s.phase;
      target_ = grid_extremum(s.habitat, s.objective);
      best_so_far_.reset();
      if (s.t > 0) trace_.phase_starts.push_back(s.t);
    }
    const Lattice& lat = s.colony.lattice;
    const std::size_t r = radius_.value_or(default_capture_radius(lat));
    const std::vector<CellIndex> cells = s.colony.cells();
    StepMetrics m;
    m.t = s.t;
    m.phase = s.phase;
    m.capture_ratio = capture_ratio(cells, target_, r, lat);
    double sum = 0.0;
    double best = s.habitat.altitude(cells.front());
    for (CellIndex c : cells) {
      const double z = s.habitat.altitude(c);
      sum += z;
      if (better(z, best, s.objective)) best = z;
    }
    m.mean_altitude = sum / static_cast<double>(cells.size());
    m.best_altitude = best;
    if (!best_so_far_ || better(best, *best_so_far_, s.objective)) best_so_far_ = best;
    m.best_so_far = *best_so_far_;
    m.pheromone_at_target = pheromone_mass_fraction(s.field, target_, r);
    trace_.steps.push_back(m);
  }

  CellIndex target() const { return target_; }
  const RunTrace& trace() const { return trace_; }
  RunTrace& trace() { return trace_; }

private:
  std::optional<std::size_t> radius_;
  std::optional<std::size_t> current_phase_;
  CellIndex target_ = 0;
  std::optional<double> best_so_far_;
  RunTrace trace_;
};

inline std::vector<CellIndex> bacteria_cells(const Habitat& h, std::span<const Bacterium> population) {
  std::vector<CellIndex> out;
  out.reserve(population.size());
  for (const Bacterium& b : population) out.push_back(h.cell_of(b.position));
  return out;
}

// Builds StepMetrics rows from BFOA snapshots; positions are binned to the
// cells that contain them.
class BfoaMetricsRecorder {
public:
  explicit BfoaMetricsRecorder(std::optional<std::size_t> radius = std::nullopt) : radius_(radius) {}

  void operator()(const BfoaSnapshot& s) {
    const Lattice& lat = s.habitat.lattice();
    if (!target_) target_ = grid_extremum(s.habitat, s.objective);
    const std::size_t r = radius_.value_or(default_capture_radius(lat));
    const std::vector<CellIndex> cells = bacteria_cells(s.habitat, s.population);
    StepMetrics m;
    m.t = s.t;
    m.capture_ratio = capture_ratio(cells, *target_, r, lat);
    double sum = 0.0;
    double best = s.habitat.altitude(cells.front());
    for (CellIndex c : cells) {
      const double z = s.habitat.altitude(c);
      sum += z;
      if (better(z, best, s.objective)) best = z;
    }
    m.mean_altitude = sum / static_cast<double>(cells.size());
    m.best_altitude = best;
    m.best_so_far = s.objective == Objective::Maximize ? -s.best_so_far : s.best_so_far;
    trace_.steps.push_back(m);
  }

  const RunTrace& trace() const { return trace_; }
  RunTrace& trace() { return trace_; }

private:
  std::optional<std::size_t> radius_;
  std::optional<CellIndex> target_;
  RunTrace trace_;
};

}  // namespace swarmsearch
