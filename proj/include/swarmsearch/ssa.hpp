#pragma once

// Swarm Search Algorithm: ants on a toroidal habitat choosing among their
// free 8-neighbors by pheromone response times a turning penalty, laying
// altitude-dependent pheromone, and forgetting through evaporation.

#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmsearch/field.hpp"
#include "swarmsearch/landscape.hpp"
#include "swarmsearch/lattice.hpp"
#include "swarmsearch/rng.hpp"

namespace swarmsearch {

// Thrown for settings that cannot describe a valid run.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct AntState {
  CellIndex cell = 0;
  Heading heading = 0;
  bool operator==(const AntState&) const = default;
};

// Turning penalty indexed by the number of 45-degree steps between the
// previous heading and the candidate one.
struct DirectionWeights {
  std::array<double, 5> w{1.0, 1.0 / 2.0, 1.0 / 4.0, 1.0 / 12.0, 1.0 / 20.0};
  bool operator==(const DirectionWeights&) const = default;
};

inline void validate(const DirectionWeights& dw) {
  for (std::size_t i = 0; i < dw.w.size(); ++i) {
    if (!(dw.w[i] > 0.0)) throw ConfigError("direction weights must be strictly positive");
    if (i > 0 && dw.w[i] > dw.w[i - 1]) throw ConfigError("direction weights must be non-increasing");
  }
}

inline int heading_delta(Heading prev, Heading cand) {
  const int d = prev > cand ? prev - cand : cand - prev;
  return d <= 4 ? d : kNumHeadings - d;
}

struct Colony {
  Lattice lattice;
  std::vector<AntState> ants;
  std::vector<std::uint8_t> occupancy;
  Rng rng;
  std::vector<std::size_t> order;  // scratch for the per-step visiting order

  std::vector<CellIndex> cells() const {
    std::vector<CellIndex> out(ants.size());
    for (std::size_t i = 0; i < ants.size(); ++i) out[i] = ants[i].cell;
    return out;
  }
};

inline Colony init_colony(std::size_t n_ants, Lattice lattice, std::uint64_t seed) {
  if (n_ants > lattice.size()) {
    throw ConfigError("colony of " + std::to_string(n_ants) + " ants does not fit a lattice of " +
                      std::to_string(lattice.size()) + " cells");
  }
  Colony colony{lattice, {}, std::vector<std::uint8_t>(lattice.size(), 0), Rng(seed), {}};
  std::vector<CellIndex> pool(lattice.size());
  std::iota(pool.begin(), pool.end(), CellIndex{0});
  // Partial Fisher-Yates: the first n_ants entries are a uniform sample
  // without replacement.
  for (std::size_t i = 0; i < n_ants; ++i) {
    std::swap(pool[i], pool[i + colony.rng.below(pool.size() - i)]);
  }
  colony.ants.resize(n_ants);
  for (std::size_t i = 0; i < n_ants; ++i) {
    colony.ants[i].cell = pool[i];
    colony.ants[i].heading = static_cast<Heading>(colony.rng.below(kNumHeadings));
    colony.occupancy[pool[i]] = 1;
  }
  colony.order.resize(n_ants);
  return colony;
}

struct Candidate {
  CellIndex cell = 0;
  Heading heading = 0;
  double probability = 0.0;
};

// Normalized choice over the unoccupied neighbors; empty when boxed in.
struct TransitionDistribution {
  std::array<Candidate, kNumHeadings> items{};
  std::size_t count = 0;

  std::span<const Candidate> candidates() const { return {items.data(), count}; }
  bool empty() const { return count == 0; }
};

inline TransitionDistribution transition_distribution(const AntState& ant, const PheromoneField& field,
                                                      std::span<const std::uint8_t> occupancy,
                                                      const FieldParams& fp, const DirectionWeights& dw) {
  TransitionDistribution dist;
  const Lattice& lat = field.lattice();
  double total = 0.0;
  for (int h = 0; h < kNumHeadings; ++h) {
    const auto heading = static_cast<Heading>(h);
    const CellIndex next = lat.neighbor(ant.cell, heading);
    if (occupancy[next]) continue;
    const double score = weight(field[next], fp) * dw.w[heading_delta(ant.heading, heading)];
    dist.items[dist.count++] = {next, heading, score};
    total += score;
  }
  for (std::size_t i = 0; i < dist.count; ++i) dist.items[i].probability /= total;
  return dist;
}

// Inverse-CDF sampling with a single uniform draw u in [0, 1).
inline const Candidate& sample(const TransitionDistribution& dist, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < dist.count; ++i) {
    cumulative += dist.items[i].probability;
    if (u < cumulative) return dist.items[i];
  }
  return dist.items[dist.count - 1];
}

// One time step: every ant, in a fresh random order, moves to a sampled free
// neighbor (or stays when boxed in), folds its new altitude into the
// records, and deposits at its cell. The whole field then evaporates once.
template <typename Deposit = DynamicDeposit>
void step_colony(Colony& colony, const Habitat& habitat, PheromoneField& field, AltitudeRecords& records,
                 Objective obj, const FieldParams& fp, const DirectionWeights& dw) {
  if (habitat.lattice() != field.lattice() || field.lattice() != colony.lattice) {
    throw ConfigError("habitat, field and colony dimensions disagree");
  }
  std::iota(colony.order.begin(), colony.order.end(), std::size_t{0});
  colony.rng.shuffle(std::span<std::size_t>(colony.order));
  for (std::size_t idx : colony.order) {
    AntState& ant = colony.ants[idx];
    const TransitionDistribution dist = transition_distribution(ant, field, colony.occupancy, fp, dw);
    if (!dist.empty()) {
      const Candidate& pick = sample(dist, colony.rng.uniform());
      colony.occupancy[ant.cell] = 0;
      colony.occupancy[pick.cell] = 1;
      ant.cell = pick.cell;
      ant.heading = pick.heading;
    }
    const double z = habitat.altitude(ant.cell);
    records.update(z);
    field.add(ant.cell, Deposit::amount(z, records, obj, fp));
  }
  field.evaporate(fp.k);
}

// Throws std::logic_error when occupancy or the field is inconsistent.
inline void check_invariants(const Colony& colony, const PheromoneField& field) {
  std::vector<std::uint8_t> seen(colony.lattice.size(), 0);
  for (const AntState& a : colony.ants) {
    if (a.cell >= seen.size() || a.heading >= kNumHeadings) throw std::logic_error("ant state out of range");
    if (seen[a.cell]++) throw std::logic_error("two ants share a cell");
  }
  if (seen != colony.occupancy) throw std::logic_error("occupancy grid out of sync with ants");
  for (double s : field.values()) {
    if (!(s >= 0.0)) throw std::logic_error("negative pheromone concentration");
  }
}

struct SsaConfig {
  Schedule schedule;
  // One entry per phase, or a single entry shared by every phase.
  std::vector<FieldParams> phase_params{FieldParams{}};
  DirectionWeights direction_weights;
  std::size_t n_ants = 0;
  Lattice lattice;
  std::uint64_t seed = 0;
  bool check_invariants = false;

  const FieldParams& params_for(std::size_t phase) const {
    return phase_params.size() == 1 ? phase_params.front() : phase_params.at(phase);
  }
};

inline void validate(const SsaConfig& cfg) {
  try {
    validate(cfg.schedule);
    for (const FieldParams& fp : cfg.phase_params) validate(fp);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.phase_params.empty() ||
      (cfg.phase_params.size() != 1 && cfg.phase_params.size() != cfg.schedule.phases.size())) {
    throw ConfigError("phase_params must have one entry or one per phase");
  }
  validate(cfg.direction_weights);
  if (cfg.lattice.width < 2 || cfg.lattice.height < 2) throw ConfigError("grid must be at least 2 x 2");
  if (cfg.n_ants == 0) throw ConfigError("colony needs at least one ant");
  if (cfg.n_ants > cfg.lattice.size()) throw ConfigError("more ants than lattice cells");
}

// What an observer sees at t = 0 (initial placement) and after every step.
struct SsaSnapshot {
  long t;
  std::size_t phase;
  const Habitat& habitat;
  Objective objective;
  const Colony& colony;
  const PheromoneField& field;
  const AltitudeRecords& records;
};

using SsaObserver = std::function<void(const SsaSnapshot&)>;

struct SsaResult {
  Colony colony;
  PheromoneField field;
  AltitudeRecords records;
};

// Runs t = 1..t_max. Crossing into a phase with a different function swaps
// the habitat and clears the altitude records; an objective-only change
// keeps them, since the altitudes are unchanged.
template <typename Deposit = DynamicDeposit>
SsaResult run_ssa(const SsaConfig& cfg, const SsaObserver& observer = {}) {
  validate(cfg);
  const Schedule& sched = cfg.schedule;
  std::vector<Habitat> habitats;
  habitats.reserve(sched.phases.size());
  for (std::size_t i = 0; i < sched.phases.size(); ++i) {
    if (i > 0 && sched.phases[i].function == sched.phases[i - 1].function) {
      habitats.push_back(habitats.back());
    } else {
      habitats.push_back(discretize(sched.phases[i].function, cfg.lattice.width, cfg.lattice.height));
    }
  }

  SsaResult run{init_colony(cfg.n_ants, cfg.lattice, cfg.seed), PheromoneField(cfg.lattice), {}};
  std::size_t phase = 0;
  if (cfg.check_invariants) check_invariants(run.colony, run.field);
  if (observer) {
    observer({0, phase, habitats[phase], sched.phases[phase].objective, run.colony, run.field, run.records});
  }
  for (long t = 1; t <= sched.t_max; ++t) {
    const std::size_t now = sched.phase_at(t);
    if (now != phase) {
      if (!(sched.phases[now].function == sched.phases[phase].function)) run.records.clear();
      phase = now;
    }
    const Objective obj = sched.phases[phase].objective;
    step_colony<Deposit>(run.colony, habitats[phase], run.field, run.records, obj, cfg.params_for(phase),
                         cfg.direction_weights);
    if (cfg.check_invariants) check_invariants(run.colony, run.field);
    if (observer) observer({t, phase, habitats[phase], obj, run.colony, run.field, run.records});
  }
  return run;
}

}  // namespace swarmsearch
